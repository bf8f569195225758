//! Generalized concurrence `E_M` of a pure state across a cut `M | M̄`.
//!
//! Three independent formulations are provided and agree to round-off:
//!
//! * [`Route::Wedge`]: `E_M^2 = 4 sum_{a<b} |v_a ^ v_b|^2`, where `v_a` are the
//!   conditional vectors obtained by fixing the labels of the particles in `M`.
//!   Quadratic in both the number of conditional vectors and their length.
//! * [`Route::Trace`]: `E_M^2 = 2 (1 - tr(rho_M^2))` from the reduced density
//!   matrix, evaluated as `2 ((tr rho)^2 - tr(rho^2))` in compensated
//!   arithmetic so that product states come out at round-off, not its square root.
//! * [`Route::Eigen`]: `E_M^2 = 4 sum_{i<j} lambda_i lambda_j` over the spectrum of `rho_M`.
//!
//! The trace and eigen routes work on whichever side of the cut has the
//! smaller dimension; both sides share the same nonzero spectrum.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::density::{clamp_psd, eigh, purity_deficit, reduced_density};
use crate::dims::QuditDims;
use crate::error::{Error, Result};
use crate::exterior::wedge_norm_sq;
use crate::par::{try_map_range, Execution};
use crate::qstate::PureState;

/// Largest total dimension accepted by the wedge route.
pub const MAX_WEDGE_TOTAL_DIM: usize = 1 << 16;

/// Default separability threshold, applied to `E^2`.
pub const DEFAULT_SEP_EPSILON: f64 = 1e-8;

/// A cut `M | M̄` of `n` particles, stored as the sorted members of `M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    n: usize,
    members: Vec<usize>,
}

impl Bipartition {
    /// Members are sorted; duplicates, out-of-range indices and trivial cuts are rejected.
    pub fn new(n: usize, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadSubset(format!(
                "duplicate particle in {members:?}"
            )));
        }
        if let Some(&k) = members.iter().find(|&&k| k >= n) {
            return Err(Error::BadSubset(format!(
                "particle {k} out of range for {n} particles"
            )));
        }
        if members.is_empty() || members.len() >= n {
            return Err(Error::BadSubset(format!(
                "{members:?} is not a strict nonempty subset of {n} particles"
            )));
        }
        Ok(Self { n, members })
    }

    /// Parses `0+2+3` style member lists.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let members = text
            .split('+')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::BadSubset(format!("bad particle index {t:?} in {text:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, members)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn complement(&self) -> Self {
        Self {
            n: self.n,
            members: (0..self.n).filter(|k| !self.members.contains(k)).collect(),
        }
    }

    /// The smaller side, ties broken by containing particle 0.
    pub fn is_canonical(&self) -> bool {
        let m = self.members.len();
        m < self.n - m || (2 * m == self.n && self.members[0] == 0)
    }

    pub fn canonical(&self) -> Self {
        if self.is_canonical() {
            self.clone()
        } else {
            self.complement()
        }
    }
}

/// Members joined by `+`.
impl fmt::Display for Bipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members.iter().map(|k| k.to_string()).collect();
        f.write_str(&parts.join("+"))
    }
}

/// Every canonical cut of `n` particles, ordered by size then lexicographically.
/// There are `2^(n-1) - 1` of them.
pub fn canonical_bipartitions(n: usize) -> Vec<Bipartition> {
    let mut out = Vec::new();
    for size in 1..=n / 2 {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if 2 * size < n || combo[0] == 0 {
                out.push(Bipartition {
                    n,
                    members: combo.clone(),
                });
            }
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| combo[i] < n - size + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    out
}

/// Which formulation evaluates `E_M`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Wedge,
    #[default]
    Trace,
    Eigen,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Wedge, Route::Trace, Route::Eigen];
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wedge" => Ok(Route::Wedge),
            "trace" => Ok(Route::Trace),
            "eigen" => Ok(Route::Eigen),
            other => Err(Error::UnsupportedParams(format!("unknown route {other:?}"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Wedge => "wedge",
            Route::Trace => "trace",
            Route::Eigen => "eigen",
        })
    }
}

fn check_cut(state: &PureState, cut: &Bipartition) -> Result<()> {
    if cut.n != state.num_particles() {
        return Err(Error::BadSubset(format!(
            "cut {cut} is for {} particles, state has {}",
            cut.n,
            state.num_particles()
        )));
    }
    Ok(())
}

/// Side of the cut with the smaller dimension (the given side on ties).
fn smaller_side(dims: &QuditDims, cut: &Bipartition) -> Vec<usize> {
    let rest = cut.complement();
    if dims.subset_dim(&rest.members) < dims.subset_dim(&cut.members) {
        rest.members
    } else {
        cut.members.clone()
    }
}

/// `E_M^2` by the chosen route, before clamping and square root.
pub fn concurrence_sq(state: &PureState, cut: &Bipartition, route: Route) -> Result<f64> {
    check_cut(state, cut)?;
    match route {
        Route::Wedge => {
            let total = state.dims().total();
            if total > MAX_WEDGE_TOTAL_DIM {
                return Err(Error::DimTooLarge {
                    what: "wedge route total dimension",
                    dim: total,
                    cap: MAX_WEDGE_TOTAL_DIM,
                });
            }
            let vecs = state.conditional_vectors(&cut.members)?;
            let mut sum = 0.0;
            for a in 0..vecs.len() {
                for b in a + 1..vecs.len() {
                    sum += wedge_norm_sq(&vecs[a], &vecs[b])?;
                }
            }
            Ok(4.0 * sum)
        }
        Route::Trace => Ok(2.0 * purity_deficit(state, &smaller_side(state.dims(), cut))?),
        Route::Eigen => {
            let rho = reduced_density(state, &smaller_side(state.dims(), cut))?;
            let lam = clamp_psd(&eigh(rho.dim(), rho.entries())?.values);
            // sum_{i<j} l_i l_j via suffix sums
            let mut suffix = 0.0;
            let mut pairs = 0.0;
            for &l in lam.iter().rev() {
                pairs += l * suffix;
                suffix += l;
            }
            Ok(4.0 * pairs)
        }
    }
}

/// Generalized concurrence `E_M >= 0`.
pub fn concurrence(state: &PureState, cut: &Bipartition, route: Route) -> Result<f64> {
    Ok(concurrence_sq(state, cut, route)?.max(0.0).sqrt())
}

/// Largest attainable `E_M`: `sqrt(2 - 2 / min(D_M, D_M̄))`.
pub fn max_concurrence(dims: &QuditDims, cut: &Bipartition) -> f64 {
    let dm = dims.subset_dim(&cut.members);
    let dr = dims.subset_dim(&cut.complement().members);
    (2.0 - 2.0 / dm.min(dr) as f64).sqrt()
}

/// `sum_k E_(k)^2` over all single-particle cuts, via the trace route.
/// Zero exactly when the state is a full product.
pub fn separability_residual(state: &PureState) -> Result<f64> {
    let n = state.num_particles();
    if n < 2 {
        return Err(Error::BadSubset(
            "residual needs at least two particles".into(),
        ));
    }
    (0..n)
        .map(|k| Ok(concurrence_sq(state, &Bipartition::new(n, vec![k])?, Route::Trace)?.max(0.0)))
        .sum()
}

/// One row of an [`EntanglementReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutReport {
    pub members: Vec<usize>,
    #[serde(rename = "E")]
    pub e: f64,
    #[serde(rename = "E_max")]
    pub e_max: f64,
    pub separable: bool,
}

/// Per-cut concurrences plus the global sum and the full-separability residual.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementReport {
    pub dims: Vec<usize>,
    pub route: Route,
    pub cuts: Vec<CutReport>,
    #[serde(rename = "global_E")]
    pub global_e: f64,
    pub residual: f64,
    pub sep_epsilon: f64,
}

impl EntanglementReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Header `members,E,E_max,separable`, one row per cut, members joined by `+`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("members,E,E_max,separable\n");
        for c in &self.cuts {
            let members: Vec<String> = c.members.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!(
                "{},{:?},{:?},{}\n",
                members.join("+"),
                c.e,
                c.e_max,
                c.separable
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let dims: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        let mut out = format!("dims {}  route {}\n", dims.join("x"), self.route);
        for c in &self.cuts {
            let members: Vec<String> = c.members.iter().map(|k| k.to_string()).collect();
            out.push_str(&format!(
                "  M={:<10} E={:.12}  E_max={:.12}{}\n",
                members.join("+"),
                c.e,
                c.e_max,
                if c.separable { "  separable" } else { "" }
            ));
        }
        out.push_str(&format!("global E = {:.12}\n", self.global_e));
        out.push_str(&format!("residual = {:.12}\n", self.residual));
        out
    }
}

/// Report over the given cuts. Cuts are evaluated independently (in parallel
/// under [`Execution::Parallel`]); ordering follows `cuts`.
pub fn report_for_cuts(
    state: &PureState,
    cuts: &[Bipartition],
    route: Route,
    sep_epsilon: f64,
    exec: Execution,
) -> Result<EntanglementReport> {
    if sep_epsilon.is_nan() || sep_epsilon <= 0.0 {
        return Err(Error::InvalidConfig(format!(
            "sep_epsilon must be positive, got {sep_epsilon}"
        )));
    }
    let dims = state.dims();
    let rows = try_map_range(exec, cuts.len(), |k| {
        let cut = &cuts[k];
        let e_sq = concurrence_sq(state, cut, route)?.max(0.0);
        Ok::<_, Error>(CutReport {
            members: cut.members.clone(),
            e: e_sq.sqrt(),
            e_max: max_concurrence(dims, cut),
            separable: e_sq <= sep_epsilon,
        })
    })?;
    Ok(EntanglementReport {
        dims: dims.as_slice().to_vec(),
        route,
        global_e: rows.iter().map(|r| r.e).sum(),
        cuts: rows,
        residual: separability_residual(state)?,
        sep_epsilon,
    })
}

/// Report over every canonical cut; `global_e` is the plain sum of their `E`.
pub fn global_report(
    state: &PureState,
    route: Route,
    sep_epsilon: f64,
) -> Result<EntanglementReport> {
    global_report_with(state, route, sep_epsilon, Execution::default())
}

pub fn global_report_with(
    state: &PureState,
    route: Route,
    sep_epsilon: f64,
    exec: Execution,
) -> Result<EntanglementReport> {
    let n = state.num_particles();
    if n < 2 {
        return Err(Error::BadSubset(
            "a report needs at least two particles".into(),
        ));
    }
    report_for_cuts(state, &canonical_bipartitions(n), route, sep_epsilon, exec)
}

/// Sum of `E` over canonical cuts without building a report.
pub fn global_concurrence(state: &PureState, route: Route) -> Result<f64> {
    canonical_bipartitions(state.num_particles())
        .iter()
        .map(|cut| concurrence(state, cut, route))
        .sum()
}

/// Wootters concurrence `|<psi| sigma_y (x) sigma_y |psi*>|` of a two-qubit state.
pub fn wootters_2qubit(state: &PureState) -> Result<f64> {
    if state.dims().as_slice() != [2, 2] {
        return Err(Error::WrongDims(state.dims().as_slice().to_vec()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let i = Complex64::i();
    let sigma_y = [[zero, -i], [i, zero]];
    let a = state.amplitudes();
    let mut flipped = [zero; 4];
    for (r, out) in flipped.iter_mut().enumerate() {
        for (c, amp) in a.iter().enumerate() {
            *out += sigma_y[r / 2][c / 2] * sigma_y[r % 2][c % 2] * amp.conj();
        }
    }
    Ok(a.iter()
        .zip(flipped)
        .map(|(x, y)| x.conj() * y)
        .sum::<Complex64>()
        .norm())
}

/// Result of [`is_separable`].
#[derive(Clone, Debug)]
pub struct SeparabilityWitness {
    pub separable: bool,
    pub concurrence: f64,
    /// When separable, the unit vector on `M` (dominant eigenvector of `rho_M`,
    /// phased so its largest component is real and positive).
    pub factor: Option<Vec<Complex64>>,
}

/// Tests `E_M^2 <= sep_epsilon` and, if so, extracts the `M`-side factor.
pub fn is_separable(
    state: &PureState,
    cut: &Bipartition,
    sep_epsilon: f64,
) -> Result<SeparabilityWitness> {
    let e_sq = concurrence_sq(state, cut, Route::Trace)?.max(0.0);
    let separable = e_sq <= sep_epsilon;
    let factor = if separable {
        let rho = reduced_density(state, &cut.members)?;
        let v = eigh(rho.dim(), rho.entries())?.vector(0);
        let pivot = v
            .iter()
            .copied()
            .max_by(|a, b| a.norm_sqr().total_cmp(&b.norm_sqr()))
            .unwrap_or(Complex64::new(1.0, 0.0));
        let phase = pivot.conj() / pivot.norm();
        Some(v.into_iter().map(|z| z * phase).collect())
    } else {
        None
    };
    Ok(SeparabilityWitness {
        separable,
        concurrence: e_sq.sqrt(),
        factor,
    })
}
