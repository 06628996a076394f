//! `tracelab gt`: profile the Golden-Thompson interpolation for a pair of
//! Hermitian matrices from files, or for a graph Laplacian plus diagonal
//! potential.

use std::io::Write;
use std::path::PathBuf;

use tracelab::gt::{self, GTProfile, GraphSpec};

use crate::io::read_hermitian;
use crate::output::{fmt_f64, Format, RunManifest, Sink};
use crate::CliError;

pub struct GtArgs {
    pub h_file: Option<PathBuf>,
    pub k_file: Option<PathBuf>,
    pub graph: Option<String>,
    pub potential: Option<String>,
    pub points: usize,
    pub format: Format,
    pub out: Option<PathBuf>,
}

/// `path:5`, `complete:4`, `cycle:6`.
fn parse_graph(spec: &str) -> Result<GraphSpec, CliError> {
    let (kind, count) = spec
        .split_once(':')
        .ok_or_else(|| CliError::input(format!("graph spec {spec:?} is not KIND:N")))?;
    let n: usize = count
        .parse()
        .map_err(|_| CliError::input(format!("vertex count {count:?} is not a number")))?;
    let built = match kind {
        "path" => GraphSpec::path(n),
        "complete" => GraphSpec::complete(n),
        "cycle" => GraphSpec::cycle(n),
        other => {
            return Err(CliError::input(format!(
                "unknown graph kind {other:?}; use path, complete, or cycle"
            )))
        }
    };
    built.map_err(|e| CliError::input(e.to_string()))
}

fn parse_potential(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| CliError::input(format!("potential entry {p:?} is not a number")))
        })
        .collect()
}

fn summary_line(p: &GTProfile) -> String {
    format!(
        "{{\"monotone\":{},\"min_derivative\":{},\"f0\":{},\"f1\":{},\"golden_thompson_ok\":{}}}",
        p.monotone,
        fmt_f64(p.min_derivative),
        fmt_f64(p.f0()),
        fmt_f64(p.f1()),
        p.golden_thompson_ok()
    )
}

pub fn run(args: &GtArgs) -> Result<i32, CliError> {
    let mut manifest = RunManifest::new("gt")
        .param("points", args.points)
        .param("format", if args.format == Format::Csv { "csv" } else { "json" });

    let profile = match (&args.h_file, &args.k_file, &args.graph, &args.potential) {
        (Some(h), Some(k), None, None) => {
            manifest = manifest.param("h", h.display()).param("k", k.display());
            let h = read_hermitian(h)?;
            let k = read_hermitian(k)?;
            gt::gt_profile(&h, &k, args.points).map_err(|e| CliError::input(e.to_string()))?
        }
        (None, None, Some(graph), Some(potential)) => {
            manifest = manifest.param("graph", graph).param("potential", potential);
            let g = parse_graph(graph)?;
            let v = parse_potential(potential)?;
            gt::gt_graph_demo(&g, &v, args.points).map_err(|e| CliError::input(e.to_string()))?
        }
        _ => {
            return Err(CliError::input(
                "give either both matrix files (--h-file, --k-file) or a graph demo (--graph, --potential)"
                    .into(),
            ))
        }
    };

    let mut sink = Sink::open(&args.out)?;
    match args.format {
        Format::Csv => {
            let mut body = manifest.header();
            body.push_str("u,f,fprime\n");
            for ((&u, &f), &fp) in profile
                .u_grid
                .iter()
                .zip(&profile.f_values)
                .zip(&profile.fprime_values)
            {
                body.push_str(&format!("{},{},{}\n", fmt_f64(u), fmt_f64(f), fmt_f64(fp)));
            }
            body.push_str(&summary_line(&profile));
            body.push('\n');
            sink.write_all(body.as_bytes()).map_err(CliError::io)?;
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = profile
                .u_grid
                .iter()
                .zip(&profile.f_values)
                .zip(&profile.fprime_values)
                .map(|((&u, &f), &fp)| serde_json::json!({"u": u, "f": f, "fprime": fp}))
                .collect();
            let doc = serde_json::json!({
                "manifest": manifest.to_json(),
                "rows": rows,
                "summary": {
                    "monotone": profile.monotone,
                    "min_derivative": profile.min_derivative,
                    "f0": profile.f0(),
                    "f1": profile.f1(),
                    "golden_thompson_ok": profile.golden_thompson_ok(),
                },
            });
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
            sink.write_all(text.as_bytes()).map_err(CliError::io)?;
            sink.write_all(b"\n").map_err(CliError::io)?;
        }
    }
    sink.flush().map_err(CliError::io)?;
    Ok(0)
}
