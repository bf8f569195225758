//! Wall-clock comparison of the wedge and trace formulations.
//!
//! Every configuration gets one warm-up evaluation, which is discarded but
//! used to size a batch so that each timed sample spans at least
//! [`MIN_SAMPLE_NS`]; this keeps microsecond-scale routes above the
//! resolution of `std::time::Instant` (nanosecond ticks, tens of ns of
//! overhead). The reported time is the median per-evaluation cost over `reps`
//! samples. Timed sections are strictly single-threaded.

use std::hint::black_box;
use std::time::Instant;

use crate::dims::QuditDims;
use crate::error::{Error, Result};
use crate::measure::{concurrence, Bipartition, Route};
use crate::qstate::PureState;
use crate::random::{random_state, seeded};

/// Minimum duration of one timed sample.
pub const MIN_SAMPLE_NS: u128 = 200_000;

/// Largest batch size used for fast routes.
const MAX_BATCH: u128 = 100_000;

/// Routes agree within this on every row.
pub const ECHO_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub dims: QuditDims,
    pub cut: Bipartition,
    pub route: Route,
    /// Median nanoseconds per evaluation.
    pub wall_ns: u64,
    pub reps: usize,
    /// Value computed by the route, echoed as a sanity check.
    pub e: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Median per-evaluation time of `route` on `state`, plus the computed value.
pub fn time_route(
    state: &PureState,
    cut: &Bipartition,
    route: Route,
    reps: usize,
) -> Result<(u64, f64)> {
    let t = Instant::now();
    let e = concurrence(black_box(state), cut, route)?;
    let warm = t.elapsed().as_nanos().max(1);
    let batch = MIN_SAMPLE_NS.div_ceil(warm).clamp(1, MAX_BATCH) as usize;
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        for _ in 0..batch {
            black_box(concurrence(black_box(state), cut, route)?);
        }
        samples.push(t.elapsed().as_nanos() as f64 / batch as f64);
    }
    Ok(((median(samples).round() as u64).max(1), e))
}

/// Times `routes` for every `(dims, cut)` combination, in input order.
///
/// Each `dims` entry gets one random state drawn from `seed`; all of its cuts
/// and routes share it.
pub fn run_bench_routes(
    dims_list: &[QuditDims],
    cuts: &[Vec<usize>],
    routes: &[Route],
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    if reps < 3 {
        return Err(Error::InvalidConfig(format!(
            "reps must be >= 3, got {reps}"
        )));
    }
    let mut rows = Vec::new();
    for dims in dims_list {
        let state = random_state(dims, &mut seeded(seed));
        for members in cuts {
            let cut = Bipartition::new(dims.len(), members.clone())?;
            let first = rows.len();
            for &route in routes {
                let (wall_ns, e) = time_route(&state, &cut, route, reps)?;
                rows.push(BenchRow {
                    dims: dims.clone(),
                    cut: cut.clone(),
                    route,
                    wall_ns,
                    reps,
                    e,
                });
            }
            let group = &rows[first..];
            if let Some(bad) = group.iter().find(|r| (r.e - group[0].e).abs() > ECHO_TOL) {
                return Err(Error::RouteMismatch(format!(
                    "dims {dims} cut {cut}: {} gives {} but {} gives {}",
                    group[0].route, group[0].e, bad.route, bad.e
                )));
            }
        }
    }
    Ok(rows)
}

/// Wedge and trace routes for every `(dims, cut)`.
pub fn run_bench(
    dims_list: &[QuditDims],
    cuts: &[Vec<usize>],
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRow>> {
    run_bench_routes(dims_list, cuts, &[Route::Wedge, Route::Trace], reps, seed)
}

/// CSV with header `dims,cut,route,reps,median_ns,E`.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from("dims,cut,route,reps,median_ns,E\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{:?}\n",
            r.dims, r.cut, r.route, r.reps, r.wall_ns, r.e
        ));
    }
    out
}

/// `wall_ns(wedge) / wall_ns(trace)` for the first matching pair of rows.
pub fn wedge_trace_ratio(rows: &[BenchRow], dims: &QuditDims, cut: &Bipartition) -> Option<f64> {
    let find = |route| {
        rows.iter()
            .find(|r| &r.dims == dims && &r.cut == cut && r.route == route)
            .map(|r| r.wall_ns as f64)
    };
    Some(find(Route::Wedge)? / find(Route::Trace)?)
}
