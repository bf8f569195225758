//! Wedge products of complex vectors and Lagrange's identity
//! `|a|^2 |b|^2 - |a . conj(b)|^2 = |a ^ b|^2`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::{seeded, unit_disc};
use rand::Rng;

/// Largest vector length for which a dense [`Bivector`] is materialized.
pub const MAX_BIVECTOR_DIM: usize = 4096;

/// Coefficients of `a ^ b` on the basis `e_i ^ e_j`, `i < j`, in lexicographic
/// pair order `(0,1), (0,2), ..., (m-2, m-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    dim: usize,
    coeffs: Vec<Complex64>,
}

impl Bivector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Position of the pair `(i, j)`, `i < j`, in [`Bivector::coeffs`].
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        assert!(i < j && j < self.dim, "pair ({i}, {j}) out of range");
        // pairs before row i: sum_{r<i} (m-1-r)
        i * (2 * self.dim - i - 1) / 2 + (j - i - 1)
    }

    /// Sum of squared moduli of the coefficients.
    pub fn norm_sq(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

fn check_lengths(a: &[Complex64], b: &[Complex64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(())
}

pub fn wedge(a: &[Complex64], b: &[Complex64]) -> Result<Bivector> {
    check_lengths(a, b)?;
    let m = a.len();
    if m > MAX_BIVECTOR_DIM {
        return Err(Error::DimTooLarge {
            what: "dense bivector",
            dim: m,
            cap: MAX_BIVECTOR_DIM,
        });
    }
    let mut coeffs = Vec::with_capacity(m * m.saturating_sub(1) / 2);
    for i in 0..m {
        for j in i + 1..m {
            coeffs.push(a[i] * b[j] - a[j] * b[i]);
        }
    }
    Ok(Bivector { dim: m, coeffs })
}

/// `|a ^ b|^2` summed over every minor without materializing the bivector.
/// Costs `O(m^2)`; nothing is skipped even when coefficients vanish.
pub fn wedge_norm_sq(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_lengths(a, b)?;
    let m = a.len();
    let mut total = 0.0;
    for i in 0..m {
        let (ai, bi) = (a[i], b[i]);
        let mut row = 0.0;
        for j in i + 1..m {
            row += (ai * b[j] - a[j] * bi).norm_sqr();
        }
        total += row;
    }
    Ok(total)
}

/// `sum_k a_k conj(b_k)`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

/// Left-hand side of Lagrange's identity, `O(m)`.
pub fn lagrange_lhs(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    check_lengths(a, b)?;
    let na: f64 = a.iter().map(|x| x.norm_sqr()).sum();
    let nb: f64 = b.iter().map(|x| x.norm_sqr()).sum();
    Ok(na * nb - inner(a, b).norm_sqr())
}

/// `(|a|^2 |b|^2 - |a . conj(b)|^2) - |a ^ b|^2`; zero up to round-off.
pub fn lagrange_gap(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    Ok(lagrange_lhs(a, b)? - wedge_norm_sq(a, b)?)
}

/// Outcome of [`lagrange_fuzz`].
#[derive(Clone, Debug, Serialize)]
pub struct FuzzSummary {
    pub samples: usize,
    pub max_m: usize,
    /// Largest `|gap| / max(1, lhs)` observed.
    pub max_relative_gap: f64,
}

/// Checks Lagrange's identity on `samples` random pairs with lengths drawn
/// uniformly from `2..=max_m` and entries uniform in the unit disc.
pub fn lagrange_fuzz(samples: usize, max_m: usize, seed: u64) -> Result<FuzzSummary> {
    if max_m < 2 {
        return Err(Error::InvalidConfig(format!(
            "max_m must be >= 2, got {max_m}"
        )));
    }
    let mut rng = seeded(seed);
    let mut worst = 0.0f64;
    for _ in 0..samples {
        let m = rng.random_range(2..=max_m);
        let a: Vec<Complex64> = (0..m).map(|_| unit_disc(&mut rng)).collect();
        let b: Vec<Complex64> = (0..m).map(|_| unit_disc(&mut rng)).collect();
        let lhs = lagrange_lhs(&a, &b)?;
        let gap = lhs - wedge_norm_sq(&a, &b)?;
        worst = worst.max(gap.abs() / lhs.max(1.0));
    }
    Ok(FuzzSummary {
        samples,
        max_m,
        max_relative_gap: worst,
    })
}
