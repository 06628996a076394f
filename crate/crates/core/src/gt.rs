//! The Golden-Thompson interpolation `f(u) = Tr[e^{H+(1-u)K} e^{uK}]`:
//! values, the exact derivative through the divided-difference kernel,
//! monotonicity profiles, and graph-Laplacian demonstrations.
//!
//! `f(0) = Tr[e^{H+K}]` and `f(1) = Tr[e^H e^K]`, so the Golden-Thompson
//! inequality says `f(0) <= f(1)`. When K is diagonal and H has
//! nonnegative off-diagonal entries, `f` is monotone increasing on all
//! of [0, 1]; the counterexample family in [`crate::cex`] shows this
//! fails for general Hermitian pairs.

use crate::error::{Error, Result};
use crate::matcore::{
    divided_difference_kernel, eig_hermitian, mat_exp, trace_product, HermitianMatrix, Matrix,
};

/// Derivative tolerance for the monotone verdict, relative to the largest
/// |f| on the grid. The derivative is exact up to roundoff so this can be
/// much tighter than a finite-difference tolerance.
pub const MONOTONE_TOL: f64 = 1e-10;

/// Golden-Thompson slack tolerance, relative to scale.
pub const GT_TOL: f64 = 1e-12;

/// Values and derivatives of `f` on a uniform grid.
#[derive(Debug, Clone)]
pub struct GTProfile {
    pub u_grid: Vec<f64>,
    pub f_values: Vec<f64>,
    pub fprime_values: Vec<f64>,
    pub monotone: bool,
    pub min_derivative: f64,
}

impl GTProfile {
    pub fn f0(&self) -> f64 {
        *self.f_values.first().expect("grid is nonempty")
    }

    pub fn f1(&self) -> f64 {
        *self.f_values.last().expect("grid is nonempty")
    }

    /// Largest |f| on the grid; the scale for the tolerances.
    pub fn scale(&self) -> f64 {
        self.f_values.iter().fold(0.0_f64, |a, &v| a.max(v.abs()))
    }

    /// `f(0) <= f(1)` up to roundoff slack.
    pub fn golden_thompson_ok(&self) -> bool {
        self.f0() <= self.f1() + GT_TOL * self.scale()
    }

    /// Strictness indicator: smallest derivative at `u > 0` clears a
    /// positive floor. The derivative at `u = 0` vanishes identically
    /// (cyclicity makes the integral term constant in t there), so it
    /// carries no strictness information.
    pub fn strictly_increasing(&self) -> bool {
        let floor = 1e-13 * self.scale();
        self.u_grid
            .iter()
            .zip(&self.fprime_values)
            .filter(|(&u, _)| u > 0.0)
            .all(|(_, &fp)| fp > floor)
    }
}

fn check_same_dim(h: &HermitianMatrix, k: &HermitianMatrix) -> Result<()> {
    if h.dim() != k.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), got: k.dim() });
    }
    Ok(())
}

/// `f(u) = Tr[e^{H+(1-u)K} e^{uK}]`, strictly positive.
pub fn gt_f(h: &HermitianMatrix, k: &HermitianMatrix, u: f64) -> Result<f64> {
    check_same_dim(h, k)?;
    let h_u = h.add(&k.scale(1.0 - u))?;
    let left = mat_exp(&h_u);
    let right = mat_exp(&k.scale(u));
    Ok(trace_product(&[left.matrix().as_matrix(), right.matrix().as_matrix()])?.re)
}

/// Exact derivative
/// `f'(u) = Tr[e^{H_u} K e^{uK}] - int_0^1 Tr[e^{(1-t)H_u} K e^{t H_u} e^{uK}] dt`
/// with `H_u = H + (1-u)K`.
///
/// The integral is evaluated in closed form: in an eigenbasis of `H_u`
/// the (i, j) kernel entry is the divided difference
/// `(e^{l_i} - e^{l_j})/(l_i - l_j)`, so no quadrature enters.
pub fn gt_fprime(h: &HermitianMatrix, k: &HermitianMatrix, u: f64) -> Result<f64> {
    check_same_dim(h, k)?;
    let h_u = h.add(&k.scale(1.0 - u))?;
    let d = eig_hermitian(&h_u);
    let e_hu = d.apply(f64::exp);
    let e_uk = mat_exp(&k.scale(u));
    let term1 = trace_product(&[&e_hu, k.as_matrix(), e_uk.matrix().as_matrix()])?.re;

    let v = &d.eigenvectors;
    let k_tilde = v.adjoint().mul(k.as_matrix())?.mul(v)?;
    let kernel = divided_difference_kernel(&d);
    let integrand = kernel.hadamard(&k_tilde)?;
    let integral = v.mul(&integrand)?.mul(&v.adjoint())?;
    let term2 = trace_product(&[&integral, e_uk.matrix().as_matrix()])?.re;
    Ok(term1 - term2)
}

/// Profile `f` and `f'` on a uniform grid of `n_points >= 2` points.
pub fn gt_profile(h: &HermitianMatrix, k: &HermitianMatrix, n_points: usize) -> Result<GTProfile> {
    if n_points < 2 {
        return Err(Error::InvalidParams(format!("need at least 2 grid points, got {n_points}")));
    }
    let u_grid: Vec<f64> =
        (0..n_points).map(|i| i as f64 / (n_points - 1) as f64).collect();
    let mut f_values = Vec::with_capacity(n_points);
    let mut fprime_values = Vec::with_capacity(n_points);
    for &u in &u_grid {
        f_values.push(gt_f(h, k, u)?);
        fprime_values.push(gt_fprime(h, k, u)?);
    }
    let min_derivative = fprime_values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = f_values.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
    let monotone = min_derivative >= -MONOTONE_TOL * scale;
    Ok(GTProfile { u_grid, f_values, fprime_values, monotone, min_derivative })
}

/// Verify the shift covariance `f_{H+aI, K+bI}(u) = e^{a+b} f_{H,K}(u)`
/// to 1e-12 relative at every grid point.
pub fn shift_check(
    h: &HermitianMatrix,
    k: &HermitianMatrix,
    a: f64,
    b: f64,
    u_grid: &[f64],
) -> Result<bool> {
    check_same_dim(h, k)?;
    let n = h.dim();
    let h_shift = h.add(&HermitianMatrix::identity(n).scale(a))?;
    let k_shift = k.add(&HermitianMatrix::identity(n).scale(b))?;
    let factor = (a + b).exp();
    for &u in u_grid {
        let plain = gt_f(h, k, u)?;
        let shifted = gt_f(&h_shift, &k_shift, u)?;
        if (shifted - factor * plain).abs() > 1e-12 * shifted.abs().max(factor * plain.abs()) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A finite simple graph: vertices 0..n, undirected edges, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphSpec {
    n_vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    /// Edges are stored normalized as (min, max) with duplicates removed.
    pub fn new(n_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut normalized = Vec::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
            }
            if a >= n_vertices || b >= n_vertices {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) outside vertex range 0..{n_vertices}"
                )));
            }
            let e = (a.min(b), a.max(b));
            if !normalized.contains(&e) {
                normalized.push(e);
            }
        }
        normalized.sort_unstable();
        Ok(GraphSpec { n_vertices, edges: normalized })
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        GraphSpec::new(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        GraphSpec::new(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("cycle needs >= 3 vertices, got {n}")));
        }
        let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        GraphSpec::new(n, &edges)
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }
}

/// Graph Laplacian `D - A`: PSD, zero row sums, nonpositive off-diagonals.
pub fn graph_laplacian(g: &GraphSpec) -> Result<HermitianMatrix> {
    let n = g.n_vertices();
    let mut m = Matrix::zeros(n);
    for &(a, b) in g.edges() {
        m[(a, b)] = num_complex::Complex64::new(-1.0, 0.0);
        m[(b, a)] = num_complex::Complex64::new(-1.0, 0.0);
        m[(a, a)] += num_complex::Complex64::new(1.0, 0.0);
        m[(b, b)] += num_complex::Complex64::new(1.0, 0.0);
    }
    HermitianMatrix::new(m)
}

/// Example profile for `f(u) = Tr[e^{-(L + (1-u)V)} e^{-uV}]` with L the
/// graph Laplacian and V the diagonal potential: this is `f_{H,K}` with
/// `H = -L` and `K = -V`, which satisfies the monotonicity hypotheses
/// (K diagonal, off-diagonals of H nonnegative).
pub fn gt_graph_demo(g: &GraphSpec, potential: &[f64], n_points: usize) -> Result<GTProfile> {
    if potential.len() != g.n_vertices() {
        return Err(Error::DimensionMismatch { expected: g.n_vertices(), got: potential.len() });
    }
    let laplacian = graph_laplacian(g)?;
    let h = laplacian.scale(-1.0);
    let k = HermitianMatrix::diag(&potential.iter().map(|v| -v).collect::<Vec<_>>());
    gt_profile(&h, &k, n_points)
}
