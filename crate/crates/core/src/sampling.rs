//! Deterministic random matrix generation for the property suites.
//!
//! A SplitMix64 stream drives everything, so a (seed, dimension) pair
//! pins the generated matrix bit-for-bit across runs and platforms.
//! Matrix entries are built only from uniform draws and IEEE +/* so the
//! generators can be replicated exactly by external oracle tooling.

use num_complex::Complex64;

use crate::matcore::{HermitianMatrix, Matrix, PsdWitness};

/// SplitMix64 pseudo-random stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1). Exact: `2u` and `2u - 1` round to nothing.
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Real symmetric matrix with entries uniform in [-1, 1).
/// Draw order: upper triangle row-major, i <= j.
pub fn random_symmetric(n: usize, rng: &mut SplitMix64) -> HermitianMatrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let x = Complex64::new(rng.next_symmetric(), 0.0);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    HermitianMatrix::new(m).expect("symmetric by construction")
}

/// Complex Hermitian matrix: real diagonal uniform in [-1, 1), off-diagonal
/// entries with independent uniform real and imaginary parts.
/// Draw order: upper triangle row-major; re before im.
pub fn random_hermitian(n: usize, rng: &mut SplitMix64) -> HermitianMatrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if i == j {
                m[(i, i)] = Complex64::new(rng.next_symmetric(), 0.0);
            } else {
                let z = Complex64::new(rng.next_symmetric(), rng.next_symmetric());
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
    }
    HermitianMatrix::new(m).expect("hermitian by construction")
}

/// Real PSD matrix `G G^T / n` with `G` uniform in [-1, 1), filled
/// row-major. The inner product runs over k in increasing order.
pub fn random_psd(n: usize, rng: &mut SplitMix64) -> PsdWitness {
    let g: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.next_symmetric()).collect())
        .collect();
    let mut m = Matrix::zeros(n);
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for k in 0..n {
                s += g[i][k] * g[j][k];
            }
            m[(i, j)] = Complex64::new(s * inv_n, 0.0);
        }
    }
    let h = HermitianMatrix::new(m).expect("gram matrix is symmetric");
    PsdWitness::new(h).expect("gram matrix is PSD")
}

/// Complex PSD matrix `G G* / n` with independent uniform re/im parts of G.
pub fn random_psd_complex(n: usize, rng: &mut SplitMix64) -> PsdWitness {
    let g: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..n)
                .map(|_| Complex64::new(rng.next_symmetric(), rng.next_symmetric()))
                .collect()
        })
        .collect();
    let mut m = Matrix::zeros(n);
    let inv_n = 1.0 / n as f64;
    for i in 0..n {
        for j in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..n {
                s += g[i][k] * g[j][k].conj();
            }
            m[(i, j)] = s * inv_n;
        }
    }
    let h = HermitianMatrix::new(m).expect("gram matrix is hermitian");
    PsdWitness::new(h).expect("gram matrix is PSD")
}

/// Positive definite matrix: PSD Gram plus a 0.1 ridge.
pub fn random_pd(n: usize, rng: &mut SplitMix64) -> PsdWitness {
    let base = random_psd(n, rng);
    let ridged = base
        .matrix()
        .add(&HermitianMatrix::identity(n).scale(0.1))
        .expect("same dimension");
    PsdWitness::new(ridged).expect("ridged gram matrix is PD")
}

/// Hamiltonian with nonpositive off-diagonal entries, normalized to unit
/// Frobenius scale. Diagonal uniform in [-1, 1); off-diagonals -|uniform|.
pub fn random_bd_hamiltonian(n: usize, rng: &mut SplitMix64) -> HermitianMatrix {
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            if i == j {
                m[(i, i)] = Complex64::new(rng.next_symmetric(), 0.0);
            } else {
                let x = -rng.next_symmetric().abs();
                m[(i, j)] = Complex64::new(x, 0.0);
                m[(j, i)] = Complex64::new(x, 0.0);
            }
        }
    }
    let h = HermitianMatrix::new(m).expect("symmetric by construction");
    let norm = h.frobenius_norm();
    if norm > 0.0 {
        h.scale(1.0 / norm)
    } else {
        h
    }
}

/// Unit vector with uniform direction entries, normalized.
pub fn random_unit_vector(n: usize, rng: &mut SplitMix64) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.next_symmetric()).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 {
            return v.iter().map(|x| x / norm).collect();
        }
    }
}

/// Real vector with entries uniform in [-1, 1).
pub fn random_vector(n: usize, rng: &mut SplitMix64) -> Vec<f64> {
    (0..n).map(|_| rng.next_symmetric()).collect()
}
