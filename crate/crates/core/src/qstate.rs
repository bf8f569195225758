//! Dense pure states over a tensor product of qudits.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dims::QuditDims;
use crate::error::{Error, Result};

/// Input norms further than this from 1 set [`PureState::was_normalized`].
pub const NORM_WARN_TOL: f64 = 1e-6;

/// A normalized pure state. Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    dims: QuditDims,
    amplitudes: Vec<Complex64>,
    was_normalized: bool,
}

impl PureState {
    /// Builds a state, dividing by the Euclidean norm of `amplitudes`.
    pub fn from_amplitudes(dims: QuditDims, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != dims.total() {
            return Err(Error::LengthMismatch {
                expected: dims.total(),
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sq.is_finite() {
            return Err(Error::NonFinite);
        }
        if norm_sq == 0.0 {
            return Err(Error::ZeroState);
        }
        let norm = norm_sq.sqrt();
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            dims,
            amplitudes,
            was_normalized: (norm - 1.0).abs() > NORM_WARN_TOL,
        })
    }

    /// Basis state `|labels>`.
    pub fn basis(dims: QuditDims, labels: &[usize]) -> Result<Self> {
        if labels.len() != dims.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} particles",
                labels.len(),
                dims.len()
            )));
        }
        check_labels(&dims, labels)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        amps[dims.flat_index(labels)] = Complex64::new(1.0, 0.0);
        Self::from_amplitudes(dims, amps)
    }

    /// `phi` on the particles of `subset`, `chi` on the rest.
    pub fn product_across(
        dims: QuditDims,
        subset: &[usize],
        phi: &[Complex64],
        chi: &[Complex64],
    ) -> Result<Self> {
        let split = dims.split(subset)?;
        if phi.len() != split.kept.len() {
            return Err(Error::LengthMismatch {
                expected: split.kept.len(),
                got: phi.len(),
            });
        }
        if chi.len() != split.rest.len() {
            return Err(Error::LengthMismatch {
                expected: split.rest.len(),
                got: chi.len(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for (a, &ko) in split.kept.iter().enumerate() {
            for (b, &ro) in split.rest.iter().enumerate() {
                amps[ko + ro] = phi[a] * chi[b];
            }
        }
        Self::from_amplitudes(dims, amps)
    }

    pub fn dims(&self) -> &QuditDims {
        &self.dims
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Whether construction rescaled a norm that deviated from 1 by more than [`NORM_WARN_TOL`].
    pub fn was_normalized(&self) -> bool {
        self.was_normalized
    }

    pub fn num_particles(&self) -> usize {
        self.dims.len()
    }

    /// Amplitude of `|labels>`.
    pub fn amplitude(&self, labels: &[usize]) -> Complex64 {
        self.amplitudes[self.dims.flat_index(labels)]
    }

    /// Conditional vector `<k_M|psi>` over the complement of `index.subset`,
    /// ordered row-major over the complement's particles.
    pub fn conditional_vector(&self, index: &MultiIndex) -> Result<Vec<Complex64>> {
        let subset = index.subset();
        check_strict(&self.dims, subset)?;
        for (&k, &j) in subset.iter().zip(index.values()) {
            if j >= self.dims.dim(k) {
                return Err(Error::DimensionMismatch(format!(
                    "label {j} out of range for particle {k} of dimension {}",
                    self.dims.dim(k)
                )));
            }
        }
        let strides = self.dims.strides();
        let base: usize = subset
            .iter()
            .zip(index.values())
            .map(|(&k, &j)| j * strides[k])
            .sum();
        let split = self.dims.split(subset)?;
        Ok(split
            .rest
            .iter()
            .map(|&r| self.amplitudes[base + r])
            .collect())
    }

    /// All `D_m` conditional vectors for `subset`, indexed row-major by the
    /// subset's labels.
    pub fn conditional_vectors(&self, subset: &[usize]) -> Result<Vec<Vec<Complex64>>> {
        check_strict(&self.dims, subset)?;
        let split = self.dims.split(subset)?;
        Ok(split
            .kept
            .iter()
            .map(|&k| split.rest.iter().map(|&r| self.amplitudes[k + r]).collect())
            .collect())
    }

    /// Relabels particles: particle `k` of the result is particle `perm[k]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        let mut seen = vec![false; n];
        if perm.len() != n
            || perm
                .iter()
                .any(|&p| p >= n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::BadSubset(format!(
                "{perm:?} is not a permutation of 0..{n}"
            )));
        }
        let dims = QuditDims::new(perm.iter().map(|&p| self.dims.dim(p)).collect())?;
        let old_strides = self.dims.strides();
        let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
        for (flat, amp) in amps.iter_mut().enumerate() {
            let labels = dims.labels(flat);
            let old: usize = labels
                .iter()
                .zip(perm)
                .map(|(&j, &p)| j * old_strides[p])
                .sum();
            *amp = self.amplitudes[old];
        }
        Ok(Self {
            dims,
            amplitudes: amps,
            was_normalized: self.was_normalized,
        })
    }

    /// Applies the `d x d` matrix `u` (row-major) to a single particle.
    pub fn apply_local(&self, particle: usize, u: &[Complex64]) -> Result<Self> {
        if particle >= self.dims.len() {
            return Err(Error::BadSubset(format!(
                "particle {particle} out of range"
            )));
        }
        let d = self.dims.dim(particle);
        if u.len() != d * d {
            return Err(Error::LengthMismatch {
                expected: d * d,
                got: u.len(),
            });
        }
        let split = self.dims.split(&[particle])?;
        let mut amps = vec![Complex64::new(0.0, 0.0); self.dims.total()];
        for &r in &split.rest {
            for j in 0..d {
                amps[split.kept[j] + r] = (0..d)
                    .map(|k| u[j * d + k] * self.amplitudes[split.kept[k] + r])
                    .sum();
            }
        }
        Self::from_amplitudes(self.dims.clone(), amps)
    }

    /// Multiplies every amplitude by `e^{i theta}`.
    pub fn with_global_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self {
            dims: self.dims.clone(),
            amplitudes: self.amplitudes.iter().map(|a| a * phase).collect(),
            was_normalized: self.was_normalized,
        }
    }

    /// `|<self|other>|^2`; dims must agree.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        assert_eq!(
            self.dims, other.dims,
            "fidelity between states of different dims"
        );
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            .norm_sqr()
    }
}

/// Subset must be strictly increasing, nonempty and not every particle.
pub(crate) fn check_strict(dims: &QuditDims, subset: &[usize]) -> Result<()> {
    dims.check_subset(subset)?;
    if subset.is_empty() || subset.len() >= dims.len() {
        return Err(Error::BadSubset(format!(
            "{subset:?} is not a strict nonempty subset of {} particles",
            dims.len()
        )));
    }
    Ok(())
}

fn check_labels(dims: &QuditDims, labels: &[usize]) -> Result<()> {
    for (k, (&j, &d)) in labels.iter().zip(dims.as_slice()).enumerate() {
        if j >= d {
            return Err(Error::DimensionMismatch(format!(
                "label {j} out of range for particle {k} of dimension {d}"
            )));
        }
    }
    Ok(())
}

/// Fixed basis labels on an increasing list of particles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    subset: Vec<usize>,
    values: Vec<usize>,
}

impl MultiIndex {
    pub fn new(subset: Vec<usize>, values: Vec<usize>) -> Result<Self> {
        if subset.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} particles but {} labels",
                subset.len(),
                values.len()
            )));
        }
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSubset(format!(
                "indices must be strictly increasing, got {subset:?}"
            )));
        }
        Ok(Self { subset, values })
    }

    pub fn subset(&self) -> &[usize] {
        &self.subset
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }
}

/// Named benchmark states.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StandardState {
    Bell,
    Ghz,
    W,
    /// Four-qubit Higuchi-Sudbery state.
    Hs,
}

impl FromStr for StandardState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "bell" => Ok(Self::Bell),
            "ghz" => Ok(Self::Ghz),
            "w" => Ok(Self::W),
            "hs" => Ok(Self::Hs),
            other => Err(Error::UnsupportedParams(format!("unknown state {other:?}"))),
        }
    }
}

impl fmt::Display for StandardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Bell => "bell",
            Self::Ghz => "ghz",
            Self::W => "w",
            Self::Hs => "hs",
        })
    }
}

/// Builds a named state on `n` particles of dimension `d`.
///
/// `ghz` is `sum_k |k...k> / sqrt(d)` for any `n >= 2, d >= 2`; `w` needs qubits;
/// `hs` needs exactly four qubits; `bell` is `ghz(2, 2)` and ignores `n` and `d`.
pub fn standard_state(kind: StandardState, n: usize, d: usize) -> Result<PureState> {
    match kind {
        StandardState::Bell => standard_state(StandardState::Ghz, 2, 2),
        StandardState::Ghz => {
            if n < 2 || d < 2 {
                return Err(Error::UnsupportedParams(format!(
                    "ghz needs n >= 2 and d >= 2, got n={n}, d={d}"
                )));
            }
            let dims = QuditDims::uniform(n, d)?;
            let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
            let c = Complex64::new(1.0 / (d as f64).sqrt(), 0.0);
            for k in 0..d {
                amps[dims.flat_index(&vec![k; n])] = c;
            }
            PureState::from_amplitudes(dims, amps)
        }
        StandardState::W => {
            if n < 2 || d != 2 {
                return Err(Error::UnsupportedParams(format!(
                    "w needs n >= 2 and d = 2, got n={n}, d={d}"
                )));
            }
            let dims = QuditDims::uniform(n, 2)?;
            let mut amps = vec![Complex64::new(0.0, 0.0); dims.total()];
            let c = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
            for k in 0..n {
                amps[1 << (n - 1 - k)] = c;
            }
            PureState::from_amplitudes(dims, amps)
        }
        StandardState::Hs => {
            if n != 4 || d != 2 {
                return Err(Error::UnsupportedParams(format!(
                    "hs needs n = 4 and d = 2, got n={n}, d={d}"
                )));
            }
            let dims = QuditDims::uniform(4, 2)?;
            let omega = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
            let omega2 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::TAU / 3.0);
            let mut amps = vec![Complex64::new(0.0, 0.0); 16];
            for (bits, c) in [
                (0b0011, Complex64::new(1.0, 0.0)),
                (0b1100, Complex64::new(1.0, 0.0)),
                (0b1010, omega),
                (0b0101, omega),
                (0b1001, omega2),
                (0b0110, omega2),
            ] {
                amps[bits] = c / 6f64.sqrt();
            }
            PureState::from_amplitudes(dims, amps)
        }
    }
}
