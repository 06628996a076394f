//! Run manifests, deterministic number rendering, and output routing.
//!
//! Every report stream starts with `# key=value` manifest lines so that a
//! rerun with the same command and seed reproduces the output bytes.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use crate::CliError;

/// Floats are rendered with 17 significant digits so values at the
/// 1e-10 scale of the counterexamples survive a round trip unambiguously.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Default)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Vec<(String, String)>,
    pub seed: Option<u64>,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        RunManifest { command: command.to_string(), parameters: Vec::new(), seed: None }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.push((key.to_string(), value.to_string()));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// `# key=value` header block; parameters sorted by key.
    pub fn header(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# command={}\n", self.command));
        let mut params = self.parameters.clone();
        params.sort();
        for (k, v) in &params {
            out.push_str(&format!("# param.{k}={v}\n"));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("# seed={seed}\n"));
        }
        out.push_str(&format!("# artifact_version={}\n", env!("CARGO_PKG_VERSION")));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut params = serde_json::Map::new();
        let mut sorted = self.parameters.clone();
        sorted.sort();
        for (k, v) in sorted {
            params.insert(k, serde_json::Value::String(v));
        }
        let mut obj = serde_json::Map::new();
        obj.insert("command".into(), serde_json::Value::String(self.command.clone()));
        obj.insert("parameters".into(), serde_json::Value::Object(params));
        if let Some(seed) = self.seed {
            obj.insert("seed".into(), serde_json::Value::Number(seed.into()));
        }
        obj.insert(
            "artifact_version".into(),
            serde_json::Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        serde_json::Value::Object(obj)
    }
}

/// Stdout or a file, chosen by `--out`.
pub enum Sink {
    Stdout(io::Stdout),
    File(File),
}

impl Sink {
    pub fn open(out: &Option<PathBuf>) -> Result<Self, CliError> {
        match out {
            None => Ok(Sink::Stdout(io::stdout())),
            Some(path) => File::create(path)
                .map(Sink::File)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", path.display()))),
        }
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> io::Result<usize> {
        match self {
            Sink::Stdout(s) => s.write(buf),
            Sink::File(f) => f.write(buf),
        }
    }

    fn flush(&mut self) -> io::Result<()> {
        match self {
            Sink::Stdout(s) => s.flush(),
            Sink::File(f) => f.flush(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_rendering_has_17_significant_digits() {
        assert_eq!(fmt_f64(1.5e-10), "1.5000000000000000e-10");
        assert_eq!(fmt_f64(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn manifest_header_is_sorted_and_versioned() {
        let m = RunManifest::new("scan").param("step", "0.25").param("format", "csv").seed(7);
        let h = m.header();
        let lines: Vec<&str> = h.lines().collect();
        assert_eq!(lines[0], "# command=scan");
        assert_eq!(lines[1], "# param.format=csv");
        assert_eq!(lines[2], "# param.step=0.25");
        assert_eq!(lines[3], "# seed=7");
        assert!(lines[4].starts_with("# artifact_version="));
    }
}
