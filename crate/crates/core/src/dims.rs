//! Local dimensions of a multiparticle system and mixed-radix index arithmetic.
//!
//! Flat indices are row-major with particle 0 as the most significant digit,
//! i.e. `flat = ((j0 * d1 + j1) * d2 + j2) * ...`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest total dimension accepted for a dense state.
pub const MAX_TOTAL_DIM: usize = 1 << 24;

/// Per-particle dimensions `d_0 .. d_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct QuditDims {
    dims: Vec<usize>,
    total: usize,
}

impl QuditDims {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidDims(
                "at least one particle is required".into(),
            ));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidDims(format!(
                "every local dimension must be >= 2, got {d}"
            )));
        }
        let total = dims
            .iter()
            .try_fold(1usize, |acc, &d| acc.checked_mul(d))
            .filter(|&t| t <= MAX_TOTAL_DIM)
            .ok_or(Error::DimTooLarge {
                what: "total dimension",
                dim: dims.iter().fold(1usize, |a, &d| a.saturating_mul(d)),
                cap: MAX_TOTAL_DIM,
            })?;
        Ok(Self { dims, total })
    }

    /// `n` particles of equal dimension `d`.
    pub fn uniform(n: usize, d: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    /// Number of particles.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Total Hilbert-space dimension `D`.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dim(&self, particle: usize) -> usize {
        self.dims[particle]
    }

    /// Stride of each particle in the flat index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for k in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.dims[k + 1];
        }
        strides
    }

    /// Product of the dimensions of the listed particles.
    pub fn subset_dim(&self, subset: &[usize]) -> usize {
        subset.iter().map(|&k| self.dims[k]).product()
    }

    /// Flat index of a full multi-index.
    pub fn flat_index(&self, labels: &[usize]) -> usize {
        debug_assert_eq!(labels.len(), self.dims.len());
        labels
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&j, &d)| acc * d + j)
    }

    /// Inverse of [`QuditDims::flat_index`].
    pub fn labels(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for k in (0..self.dims.len()).rev() {
            out[k] = flat % self.dims[k];
            flat /= self.dims[k];
        }
        out
    }

    /// Checks that `subset` is strictly increasing and in range. Emptiness is not checked.
    pub fn check_subset(&self, subset: &[usize]) -> Result<()> {
        if subset.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadSubset(format!(
                "indices must be strictly increasing, got {subset:?}"
            )));
        }
        if let Some(&k) = subset.iter().find(|&&k| k >= self.dims.len()) {
            return Err(Error::BadSubset(format!(
                "particle {k} out of range for {} particles",
                self.dims.len()
            )));
        }
        Ok(())
    }

    /// Increasing list of particles not in `subset`.
    pub fn complement(&self, subset: &[usize]) -> Vec<usize> {
        (0..self.dims.len())
            .filter(|k| !subset.contains(k))
            .collect()
    }

    /// Offset tables splitting every flat index as `kept[a] + rest[b]` for the
    /// cut `subset | complement`.
    pub fn split(&self, subset: &[usize]) -> Result<Split> {
        self.check_subset(subset)?;
        let strides = self.strides();
        let rest = self.complement(subset);
        Ok(Split {
            kept: offsets(&self.dims, &strides, subset),
            rest: offsets(&self.dims, &strides, &rest),
        })
    }
}

/// Flat-index contributions of every configuration of `particles`, enumerated
/// row-major in increasing particle order.
fn offsets(dims: &[usize], strides: &[usize], particles: &[usize]) -> Vec<usize> {
    let mut out = vec![0usize];
    for &k in particles {
        let mut next = Vec::with_capacity(out.len() * dims[k]);
        for &base in &out {
            for j in 0..dims[k] {
                next.push(base + j * strides[k]);
            }
        }
        out = next;
    }
    out
}

/// Offset tables for a cut: `flat = kept[a] + rest[b]`, where `a` enumerates the
/// kept particles' labels and `b` the complement's, both row-major.
#[derive(Clone, Debug)]
pub struct Split {
    pub kept: Vec<usize>,
    pub rest: Vec<usize>,
}

impl TryFrom<Vec<usize>> for QuditDims {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<QuditDims> for Vec<usize> {
    fn from(d: QuditDims) -> Self {
        d.dims
    }
}

/// Accepts `2,3,4`, `2x3x4` or whitespace-separated lists.
impl FromStr for QuditDims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let dims = s
            .split(|c: char| c == ',' || c == 'x' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidDims(format!("not a dimension: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dims)
    }
}

/// Joined by `x`, e.g. `2x2x3`.
impl fmt::Display for QuditDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, d) in self.dims.iter().enumerate() {
            if k > 0 {
                f.write_str("x")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_dims() {
        assert!(QuditDims::new(vec![]).is_err());
        assert!(QuditDims::new(vec![2, 1]).is_err());
        assert!(matches!(
            QuditDims::new(vec![2; 25]),
            Err(Error::DimTooLarge { .. })
        ));
        assert!(QuditDims::new(vec![2; 24]).is_ok());
        assert!(matches!(
            QuditDims::new(vec![usize::MAX, 3]),
            Err(Error::DimTooLarge { .. })
        ));
    }

    #[test]
    fn flat_index_roundtrip() {
        let d = QuditDims::new(vec![2, 3, 4]).unwrap();
        assert_eq!(d.total(), 24);
        assert_eq!(d.strides(), vec![12, 4, 1]);
        for flat in 0..24 {
            assert_eq!(d.flat_index(&d.labels(flat)), flat);
        }
        assert_eq!(d.flat_index(&[1, 2, 3]), 23);
    }

    #[test]
    fn split_covers_every_index_once() {
        let d = QuditDims::new(vec![2, 3, 2, 2]).unwrap();
        let s = d.split(&[1, 3]).unwrap();
        assert_eq!(s.kept.len(), 6);
        assert_eq!(s.rest.len(), 4);
        let mut seen = vec![false; d.total()];
        for &a in &s.kept {
            for &b in &s.rest {
                assert!(!seen[a + b]);
                seen[a + b] = true;
            }
        }
        assert!(seen.into_iter().all(|x| x));
        // kept labels (j1, j3) = (2, 1) sit at position 2*2 + 1 with offset 2*4 + 1*1
        assert_eq!(s.kept[5], 9);
    }

    #[test]
    fn parse_and_display() {
        let d: QuditDims = "2,3, 4".parse().unwrap();
        assert_eq!(d.as_slice(), &[2, 3, 4]);
        assert_eq!(d.to_string(), "2x3x4");
        assert_eq!("2x3x4".parse::<QuditDims>().unwrap(), d);
        assert!("2,a".parse::<QuditDims>().is_err());
    }

    #[test]
    fn subset_checks() {
        let d = QuditDims::uniform(3, 2).unwrap();
        assert!(d.check_subset(&[0, 2]).is_ok());
        assert!(d.check_subset(&[2, 0]).is_err());
        assert!(d.check_subset(&[1, 1]).is_err());
        assert!(d.check_subset(&[3]).is_err());
        assert_eq!(d.complement(&[1]), vec![0, 2]);
    }
}
