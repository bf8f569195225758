//! Generalized concurrence for multiparticle pure states.
//!
//! For a pure state over qudits of arbitrary (mixed) local dimensions and a
//! cut `M | M̄`, the concurrence `E_M` vanishes exactly when the state factors
//! across the cut. It is computed three ways: from wedge products of the
//! conditional vectors `<k_M|psi>`, from the purity of the reduced density
//! matrix, and from its spectrum. Lagrange's identity makes the three equal.
//!
//! ```
//! use gconc::{global_report, standard_state, Route, StandardState, DEFAULT_SEP_EPSILON};
//!
//! let ghz = standard_state(StandardState::Ghz, 3, 2).unwrap();
//! let report = global_report(&ghz, Route::Trace, DEFAULT_SEP_EPSILON).unwrap();
//! assert!((report.global_e - 3.0).abs() < 1e-12);
//! ```
//!
//! The `parallel` feature (default) spreads independent cuts, search
//! restarts and batch evaluations over rayon; without it everything runs
//! sequentially with identical results.

pub mod bench;
mod compensated;
pub mod density;
pub mod dims;
pub mod error;
pub mod exterior;
pub mod ket;
pub mod measure;
pub mod par;
pub mod qsfile;
pub mod qstate;
pub mod random;
pub mod search;

pub use density::{
    char_coeff2, eigs_hermitian, purity, purity_deficit, reduced_density, DensityMatrix,
};
pub use dims::QuditDims;
pub use error::{Error, Result};
pub use exterior::{lagrange_gap, wedge, Bivector};
pub use ket::{parse_ket, render};
pub use measure::{
    canonical_bipartitions, concurrence, global_concurrence, global_report, global_report_with,
    is_separable, max_concurrence, report_for_cuts, separability_residual, wootters_2qubit,
    Bipartition, EntanglementReport, Route, DEFAULT_SEP_EPSILON,
};
pub use par::Execution;
pub use qstate::{standard_state, MultiIndex, PureState, StandardState};
pub use search::{maximize, SearchConfig, SearchResult};

pub use num_complex::Complex64;
