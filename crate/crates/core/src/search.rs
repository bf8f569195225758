//! Random-restart hill climbing for states with large global concurrence.
//!
//! Each restart owns a `ChaCha8Rng` seeded with `seed + restart` (wrapping),
//! draws a Gaussian-normalized starting state and repeatedly proposes
//! [`perturb`]ed neighbours, accepting only strict improvements. After every
//! run of [`STAGNATION`] consecutive rejections the step shrinks by `decay`.
//! Restarts are independent, so they may run in parallel; the merge picks the
//! largest value with ties going to the lowest restart index, which keeps the
//! result schedule-independent.

use rand::Rng;
use serde::Serialize;

use crate::dims::QuditDims;
use crate::error::{Error, Result};
use crate::measure::{
    global_concurrence, global_report_with, EntanglementReport, Route, DEFAULT_SEP_EPSILON,
};
use crate::par::{try_map_range, Execution};
use crate::qstate::PureState;
use crate::random::{complex_normal, random_state, seeded};

/// Consecutive rejections that trigger one step decay.
pub const STAGNATION: usize = 20;

/// Largest total dimension the search accepts.
pub const MAX_SEARCH_DIM: usize = 1 << 12;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub dims: QuditDims,
    pub restarts: usize,
    pub iters_per_restart: usize,
    pub initial_step: f64,
    pub decay: f64,
    pub seed: u64,
    pub route: Route,
    pub exec: Execution,
}

impl SearchConfig {
    /// Default budget: 16 restarts of 5000 proposals, step 0.3, decay 0.97, trace route.
    pub fn new(dims: QuditDims, seed: u64) -> Self {
        Self {
            dims,
            restarts: 16,
            iters_per_restart: 5000,
            initial_step: 0.3,
            decay: 0.97,
            seed,
            route: Route::Trace,
            exec: Execution::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.dims.len() < 2 {
            return bad("search needs at least two particles".into());
        }
        if self.dims.total() > MAX_SEARCH_DIM {
            return bad(format!(
                "total dimension {} exceeds {MAX_SEARCH_DIM}",
                self.dims.total()
            ));
        }
        if self.restarts == 0 || self.iters_per_restart == 0 {
            return bad("restarts and iterations must be positive".into());
        }
        if !self.initial_step.is_finite() || self.initial_step <= 0.0 {
            return bad(format!(
                "initial step must be positive, got {}",
                self.initial_step
            ));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return bad(format!("decay must lie in (0, 1), got {}", self.decay));
        }
        Ok(())
    }
}

/// Adds complex Gaussian noise with per-component scale `step / sqrt(2 D)` to
/// every amplitude and renormalizes. `step == 0` returns the state unchanged.
pub fn perturb<R: Rng + ?Sized>(state: &PureState, step: f64, rng: &mut R) -> PureState {
    if step == 0.0 {
        return state.clone();
    }
    let sigma = step / (2.0 * state.dims().total() as f64).sqrt();
    let amps = state
        .amplitudes()
        .iter()
        .map(|a| a + complex_normal(rng, sigma))
        .collect();
    // a perturbation that lands exactly on zero or overflows is kept as the original
    PureState::from_amplitudes(state.dims().clone(), amps).unwrap_or_else(|_| state.clone())
}

/// Summary of one restart.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RestartOutcome {
    pub restart: usize,
    pub best: f64,
    pub evals: usize,
    pub accepted: usize,
    /// Largest value seen among all evaluated states, accepted or not.
    pub max_evaluated: f64,
    pub final_step: f64,
}

/// Climbs from `start`, calling `on_accept` with every accepted value (the
/// starting value first).
pub fn climb<R: Rng + ?Sized>(
    start: PureState,
    config: &SearchConfig,
    restart: usize,
    rng: &mut R,
    mut on_accept: impl FnMut(f64),
) -> Result<(PureState, RestartOutcome)> {
    let mut current = start;
    let mut value = global_concurrence(&current, config.route)?;
    on_accept(value);
    let mut max_evaluated = value;
    let mut step = config.initial_step;
    let mut streak = 0;
    let mut accepted = 0;
    for _ in 0..config.iters_per_restart {
        let candidate = perturb(&current, step, rng);
        let v = global_concurrence(&candidate, config.route)?;
        max_evaluated = max_evaluated.max(v);
        if v > value {
            current = candidate;
            value = v;
            accepted += 1;
            streak = 0;
            on_accept(v);
        } else {
            streak += 1;
            if streak == STAGNATION {
                step *= config.decay;
                streak = 0;
            }
        }
    }
    Ok((
        current,
        RestartOutcome {
            restart,
            best: value,
            evals: config.iters_per_restart + 1,
            accepted,
            max_evaluated,
            final_step: step,
        },
    ))
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub best_state: PureState,
    pub best_report: EntanglementReport,
    /// Best value of each restart, in restart order.
    pub trajectory: Vec<f64>,
    pub restarts: Vec<RestartOutcome>,
    pub evaluations: usize,
    pub max_evaluated: f64,
}

pub fn maximize(config: &SearchConfig) -> Result<SearchResult> {
    config.validate()?;
    let runs = try_map_range(config.exec, config.restarts, |k| {
        let mut rng = seeded(config.seed.wrapping_add(k as u64));
        let start = random_state(&config.dims, &mut rng);
        climb(start, config, k, &mut rng, |_| {})
    })?;

    let mut best_idx = 0;
    for (k, (_, out)) in runs.iter().enumerate() {
        if out.best > runs[best_idx].1.best {
            best_idx = k;
        }
    }
    let trajectory = runs.iter().map(|(_, o)| o.best).collect();
    let evaluations = runs.iter().map(|(_, o)| o.evals).sum();
    let max_evaluated = runs
        .iter()
        .map(|(_, o)| o.max_evaluated)
        .fold(f64::NEG_INFINITY, f64::max);
    let restarts: Vec<RestartOutcome> = runs.iter().map(|(_, o)| o.clone()).collect();
    let best_state = runs
        .into_iter()
        .nth(best_idx)
        .map(|(s, _)| s)
        .expect("at least one restart");
    let best_report = global_report_with(
        &best_state,
        config.route,
        DEFAULT_SEP_EPSILON,
        Execution::Sequential,
    )?;
    Ok(SearchResult {
        best_state,
        best_report,
        trajectory,
        restarts,
        evaluations,
        max_evaluated,
    })
}
