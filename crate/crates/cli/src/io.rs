//! Matrix file format: a JSON document with fields `n`, `real`, and
//! optionally `imag` (parallel row-major arrays). Parsed matrices must be
//! Hermitian within `1e-10 * ||A||_F`; they are symmetrized on load.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use tracelab::matcore::{HermitianMatrix, Matrix};
use tracelab::PsdWitness;

use crate::CliError;

#[derive(Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub real: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<Vec<f64>>>,
}

impl MatrixFile {
    pub fn from_hermitian(h: &HermitianMatrix) -> Self {
        let m = h.as_matrix();
        let real = m.real_rows();
        let imag = if m.is_real() { None } else { Some(m.imag_rows()) };
        MatrixFile { n: h.dim(), real, imag }
    }

    pub fn to_hermitian(&self) -> Result<HermitianMatrix, CliError> {
        let n = self.n;
        let check_shape = |rows: &Vec<Vec<f64>>, part: &str| -> Result<(), CliError> {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(CliError::input(format!(
                    "{part} part must be an {n}x{n} array"
                )));
            }
            Ok(())
        };
        check_shape(&self.real, "real")?;
        if let Some(imag) = &self.imag {
            check_shape(imag, "imag")?;
        }
        let m = Matrix::from_fn(n, |i, j| {
            let re = self.real[i][j];
            let im = self.imag.as_ref().map_or(0.0, |rows| rows[i][j]);
            Complex64::new(re, im)
        });
        HermitianMatrix::new(m).map_err(|e| CliError::input(format!("matrix not Hermitian: {e}")))
    }
}

pub fn read_hermitian(path: &Path) -> Result<HermitianMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let file: MatrixFile = serde_json::from_str(&text)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", path.display())))?;
    file.to_hermitian()
}

pub fn read_psd(path: &Path) -> Result<PsdWitness, CliError> {
    let h = read_hermitian(path)?;
    PsdWitness::new(h)
        .map_err(|e| CliError::input(format!("{} is not PSD: {e}", path.display())))
}

pub fn write_matrix(path: &Path, h: &HermitianMatrix) -> Result<(), CliError> {
    let file = MatrixFile::from_hermitian(h);
    let text = serde_json::to_string_pretty(&file)
        .map_err(|e| CliError::input(format!("serialization failed: {e}")))?;
    fs::write(path, text + "\n")
        .map_err(|e| CliError::input(format!("cannot write {}: {e}", path.display())))
}
