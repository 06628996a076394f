//! Numerical laboratory for trace inequalities of positive semidefinite
//! matrices.
//!
//! The crate evaluates the two-parameter trace functional
//! `Tr[X^s Y^t X^{1-s} Y^{1-t}]` together with its upper bound `Tr[XY]`
//! and lower bound `Tr[X^{1/2}Y^{1/2}X^{1/2}Y^{1/2}]`, checks the
//! Lieb-Thirring/Araki and generalized Hoelder inequalities behind them,
//! certifies entrywise-positivity conditions under which the two-sided
//! bound holds on all of [0,1]^2, profiles the interpolation
//! `f(u) = Tr[e^{H+(1-u)K} e^{uK}]` between the two sides of the
//! Golden-Thompson inequality, and constructs the 3x3 counterexample
//! family that defeats the bounds (and the monotonicity of `f`) outside
//! the `s + t <= 3/2` region.
//!
//! Modules:
//! - [`matcore`]: dense Hermitian spectral calculus (Jacobi
//!   eigendecomposition, matrix powers/exp/log, Schatten norms).
//! - [`aho`]: the trace functional, its bound checks, Hadamard-product
//!   profiles, positivity certification, and the small-perturbation
//!   expansion.
//! - [`gt`]: Golden-Thompson interpolation, exact derivative via the
//!   divided-difference kernel, monotonicity profiling, graph Laplacians.
//! - [`cex`]: the factored counterexample family with closed-form powers
//!   that stay exact at extreme eigenvalue scales.
//! - [`sampling`]: seeded deterministic matrix generators for the
//!   property suites.

pub mod aho;
pub mod cex;
pub mod error;
pub mod gt;
pub mod matcore;
pub mod sampling;

pub use error::{Error, Result};
pub use matcore::{HermitianMatrix, Matrix, PsdWitness, SpectralDecomposition};
