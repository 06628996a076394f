//! `tracelab scan`: sweep the upper and lower bound checks over the
//! exponent square for a matrix pair read from files.

use std::io::Write;
use std::path::PathBuf;

use tracelab::aho;

use crate::io::read_psd;
use crate::output::{fmt_f64, Format, RunManifest, Sink};
use crate::CliError;

pub struct ScanArgs {
    pub x_file: PathBuf,
    pub y_file: PathBuf,
    pub step: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

const COLUMNS: &str =
    "s,t,re_trace,im_trace,abs_trace,tr_xy,upper_margin,upper_ok,lower_value,lower_margin,lower_ok";

pub fn run(args: &ScanArgs) -> Result<i32, CliError> {
    let x = read_psd(&args.x_file)?;
    let y = read_psd(&args.y_file)?;
    let points = aho::scan(&x, &y, args.step)
        .map_err(|e| CliError::input(format!("scan failed: {e}")))?;
    let any_violation = points.iter().any(|p| !p.upper.holds() || !p.lower.holds());

    let manifest = RunManifest::new("scan")
        .param("x", args.x_file.display())
        .param("y", args.y_file.display())
        .param("step", fmt_f64(args.step))
        .param("format", if args.format == Format::Csv { "csv" } else { "json" });

    let mut sink = Sink::open(&args.out)?;
    match args.format {
        Format::Csv => {
            let mut body = manifest.header();
            body.push_str(COLUMNS);
            body.push('\n');
            for p in &points {
                body.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{}\n",
                    fmt_f64(p.s),
                    fmt_f64(p.t),
                    fmt_f64(p.trace_value.re),
                    fmt_f64(p.trace_value.im),
                    fmt_f64(p.trace_value.norm()),
                    fmt_f64(p.tr_xy),
                    fmt_f64(p.upper.margin),
                    p.upper.holds(),
                    fmt_f64(p.lower.left_side),
                    fmt_f64(p.lower.margin),
                    p.lower.holds(),
                ));
            }
            sink.write_all(body.as_bytes()).map_err(CliError::io)?;
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = points
                .iter()
                .map(|p| {
                    serde_json::json!({
                        "s": p.s,
                        "t": p.t,
                        "re_trace": p.trace_value.re,
                        "im_trace": p.trace_value.im,
                        "abs_trace": p.trace_value.norm(),
                        "tr_xy": p.tr_xy,
                        "upper_margin": p.upper.margin,
                        "upper_ok": p.upper.holds(),
                        "lower_value": p.lower.left_side,
                        "lower_margin": p.lower.margin,
                        "lower_ok": p.lower.holds(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "manifest": manifest.to_json(),
                "rows": rows,
            });
            let text = serde_json::to_string_pretty(&doc)
                .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
            sink.write_all(text.as_bytes()).map_err(CliError::io)?;
            sink.write_all(b"\n").map_err(CliError::io)?;
        }
    }
    sink.flush().map_err(CliError::io)?;
    Ok(if any_violation { 1 } else { 0 })
}
