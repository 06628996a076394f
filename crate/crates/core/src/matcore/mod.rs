//! Dense Hermitian spectral calculus: eigendecomposition, matrix functions
//! (powers, exp, log), Schatten norms, Hadamard products, and trace
//! utilities. Everything downstream is built from these primitives.

mod eig;
mod functions;
mod matrix;

pub use eig::{eig_hermitian, PsdWitness, SpectralDecomposition, JACOBI_TOL, PSD_TOL, RANK_TOL};
pub use functions::{
    complex_power, divided_difference_exp, divided_difference_kernel, frac_power, householder,
    mat_exp, mat_log, schatten_norm, singular_values,
};
pub use matrix::{trace_product, HermitianMatrix, Matrix, HERMITIAN_INPUT_TOL};

/// Entrywise (Hadamard) product. If both factors are PSD the result is PSD
/// by the Schur product theorem.
pub fn hadamard(a: &Matrix, b: &Matrix) -> crate::error::Result<Matrix> {
    a.hadamard(b)
}
