//! Reduced density matrices of pure states, purity, and a cyclic Jacobi
//! eigensolver for Hermitian matrices.

use num_complex::Complex64;

use crate::compensated::Dd;
use crate::error::{Error, Result};
use crate::exterior::inner;
use crate::qstate::{check_strict, PureState};

/// Largest kept-side dimension for which a reduced density matrix is formed.
pub const MAX_REDUCED_DIM: usize = 4096;

/// Jacobi stops when the off-diagonal Frobenius norm drops below `JACOBI_TOL * dim`.
pub const JACOBI_TOL: f64 = 1e-13;
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigenvalues in `[-PSD_SLACK, 0)` are round-off and clamp to zero.
pub const PSD_SLACK: f64 = 1e-10;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;

/// Hermitian, unit-trace, positive semidefinite matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    /// Validates shape, Hermiticity and unit trace. Positivity is checked
    /// separately by [`DensityMatrix::check_psd`] since it needs a diagonalization.
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != dim * dim || dim == 0 {
            return Err(Error::InvalidDensity(format!(
                "{} entries do not form a nonempty {dim}x{dim} matrix",
                entries.len()
            )));
        }
        let rho = Self { dim, entries };
        let asym = rho.hermitian_defect();
        if asym > HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (defect {asym:e})"
            )));
        }
        let tr = rho.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        Ok(rho)
    }

    /// Real diagonal matrix.
    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let dim = values.len();
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (k, &v) in values.iter().enumerate() {
            entries[k * dim + k] = Complex64::new(v, 0.0);
        }
        Self::from_entries(dim, entries)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    /// `max |rho_ij - conj(rho_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|k| self.get(k, k).re).sum()
    }

    /// `tr(rho^2) = sum_ij |rho_ij|^2`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `((tr rho)^2 - tr(rho^2)) / 2`, the `t^{m-2}` coefficient of the
    /// characteristic polynomial, i.e. `sum_{i<j} lambda_i lambda_j`.
    pub fn char_coeff2(&self) -> f64 {
        let tr = self.trace();
        0.5 * (tr * tr - self.purity())
    }

    /// Errors if any eigenvalue is below `-PSD_SLACK`.
    pub fn check_psd(&self) -> Result<()> {
        let eig = eigh(self.dim, &self.entries)?;
        match eig.values.last() {
            Some(&low) if low < -PSD_SLACK => Err(Error::InvalidDensity(format!(
                "negative eigenvalue {low:e}"
            ))),
            _ => Ok(()),
        }
    }
}

pub fn purity(rho: &DensityMatrix) -> f64 {
    rho.purity()
}

pub fn char_coeff2(rho: &DensityMatrix) -> f64 {
    rho.char_coeff2()
}

/// Reduced state on `keep`, obtained by tracing out the complement directly
/// from the amplitudes: `rho[j][i] = sum_k a[j,k] conj(a[i,k])`.
pub fn reduced_density(state: &PureState, keep: &[usize]) -> Result<DensityMatrix> {
    check_strict(state.dims(), keep)?;
    let dm = state.dims().subset_dim(keep);
    if dm > MAX_REDUCED_DIM {
        return Err(Error::DimTooLarge {
            what: "reduced density matrix",
            dim: dm,
            cap: MAX_REDUCED_DIM,
        });
    }
    let rows = state.conditional_vectors(keep)?;
    let mut entries = vec![Complex64::new(0.0, 0.0); dm * dm];
    for j in 0..dm {
        entries[j * dm + j] = Complex64::new(rows[j].iter().map(|z| z.norm_sqr()).sum(), 0.0);
        for i in j + 1..dm {
            let v = inner(&rows[j], &rows[i]);
            entries[j * dm + i] = v;
            entries[i * dm + j] = v.conj();
        }
    }
    Ok(DensityMatrix { dim: dm, entries })
}

/// `(tr rho)^2 - tr(rho^2)` for the reduced state on `keep`, accumulated in
/// double-double precision.
///
/// For a unit-trace `rho` this is `1 - purity`. Evaluating it as a plain
/// difference leaves an absolute error near 1e-16, which turns into a
/// concurrence floor near 1e-8 on product states; the compensated form keeps
/// the error around 1e-30 at twice the cost of [`reduced_density`].
pub fn purity_deficit(state: &PureState, keep: &[usize]) -> Result<f64> {
    check_strict(state.dims(), keep)?;
    let dm = state.dims().subset_dim(keep);
    if dm > MAX_REDUCED_DIM {
        return Err(Error::DimTooLarge {
            what: "reduced density matrix",
            dim: dm,
            cap: MAX_REDUCED_DIM,
        });
    }
    let rows = state.conditional_vectors(keep)?;
    let mut trace = Dd::default();
    let mut pur = Dd::default();
    for i in 0..dm {
        let d = rows[i].iter().fold(Dd::default(), |acc, z| {
            acc.add_prod(z.re, z.re).add_prod(z.im, z.im)
        });
        trace = trace.add(d);
        pur = pur.add(d.sqr());
        for j in i + 1..dm {
            let (mut re, mut im) = (Dd::default(), Dd::default());
            for (x, y) in rows[i].iter().zip(&rows[j]) {
                re = re.add_prod(x.re, y.re).add_prod(x.im, y.im);
                im = im.add_prod(x.im, y.re).add_prod(-x.re, y.im);
            }
            pur = pur.add(re.sqr().add(im.sqr()).scale2());
        }
    }
    Ok(trace.sqr().add(pur.neg()).value())
}

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub dim: usize,
    /// Descending, unclamped.
    pub values: Vec<f64>,
    /// Row-major; column `k` is the unit eigenvector of `values[k]`.
    pub vectors: Vec<Complex64>,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim)
            .map(|r| self.vectors[r * self.dim + k])
            .collect()
    }

    /// `V diag(values) V^dagger`, row-major.
    pub fn reconstruct(&self) -> Vec<Complex64> {
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n)
                    .map(|k| {
                        self.vectors[i * n + k] * self.values[k] * self.vectors[j * n + k].conj()
                    })
                    .sum();
            }
        }
        out
    }
}

fn off_diagonal_norm(n: usize, a: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic Jacobi diagonalization of the Hermitian `n x n` row-major matrix `a`.
///
/// Each rotation zeroes one off-diagonal pair `(p, q)` with the unitary
/// `U = diag(1, e^{-i phi}) R(theta)` on that plane, where `phi = arg a_pq`
/// and `R` is the classic real Jacobi rotation for the phase-stripped block.
/// Converges when the off-diagonal Frobenius norm is below
/// `JACOBI_TOL * n * max(1, |A|_F)`.
pub fn eigh(n: usize, a: &[Complex64]) -> Result<HermitianEigen> {
    assert_eq!(a.len(), n * n, "matrix is not {n}x{n}");
    let mut a = a.to_vec();
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for k in 0..n {
        v[k * n + k] = Complex64::new(1.0, 0.0);
        a[k * n + k].im = 0.0;
    }
    let scale = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let threshold = JACOBI_TOL * n as f64 * scale;

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(n, &a);
        if off < threshold {
            break;
        }
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // U_pp = c, U_pq = s, U_qp = -s e^{-i phi}, U_qq = c e^{-i phi}
                let e = phase.conj();
                // A <- A U (columns)
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * c - akq * e * s;
                    a[k * n + q] = akp * s + akq * e * c;
                    let vkp = v[k * n + p];
                    let vkq = v[k * n + q];
                    v[k * n + p] = vkp * c - vkq * e * s;
                    v[k * n + q] = vkp * s + vkq * e * c;
                }
                // A <- U^dagger A (rows)
                let ec = phase;
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = apk * c - aqk * ec * s;
                    a[q * n + k] = apk * s + aqk * ec * c;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[j * n + j].re.total_cmp(&a[i * n + i].re));
    let values = order.iter().map(|&k| a[k * n + k].re).collect();
    let mut vectors = vec![Complex64::new(0.0, 0.0); n * n];
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            vectors[r * n + dst] = v[r * n + src];
        }
    }
    Ok(HermitianEigen {
        dim: n,
        values,
        vectors,
        sweeps,
    })
}

/// Descending raw eigenvalues of `rho`.
pub fn eigs_hermitian(rho: &DensityMatrix) -> Result<Vec<f64>> {
    Ok(eigh(rho.dim, &rho.entries)?.values)
}

/// Clamps round-off negatives in `[-PSD_SLACK, 0)` to zero; larger negatives pass through.
pub fn clamp_psd(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&x| {
            if (-PSD_SLACK..0.0).contains(&x) {
                0.0
            } else {
                x
            }
        })
        .collect()
}
