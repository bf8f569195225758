mod common;

use common::{dims, CORPUS};
use gconc::qsfile::{parse_qs, write_qs};
use gconc::random::{random_state, seeded};
use gconc::{
    global_report, parse_ket, render, standard_state, EntanglementReport, Route, StandardState,
    DEFAULT_SEP_EPSILON,
};

#[test]
fn state_files_round_trip() {
    let mut rng = seeded(3);
    for d in CORPUS {
        let s = random_state(&dims(d), &mut rng);
        let back = parse_qs(&write_qs(&s)).unwrap();
        // digits survive exactly; re-normalizing may move the last bit
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() <= 1e-15);
        }
        assert_eq!(back.dims(), s.dims());
    }
}

#[test]
fn rendered_kets_parse_back() {
    let mut rng = seeded(9);
    for d in CORPUS {
        let s = random_state(&dims(d), &mut rng);
        let back = parse_ket(&render(&s), Some(s.dims())).unwrap();
        for (a, b) in back.amplitudes().iter().zip(s.amplitudes()) {
            assert!((a - b).norm() <= 1e-12);
        }
    }
}

#[test]
fn hs_expression_matches_generator() {
    let text = "1/sqrt(6)*(|0011>+|1100>) + exp(2i*pi/3)/sqrt(6)*(|1010>+|0101>) + exp(4i*pi/3)/sqrt(6)*(|1001>+|0110>)";
    let parsed = parse_ket(text, None).unwrap();
    let built = standard_state(StandardState::Hs, 4, 2).unwrap();
    assert!(parsed.fidelity(&built) >= 1.0 - 1e-14);
    let r = global_report(&parsed, Route::Trace, DEFAULT_SEP_EPSILON).unwrap();
    assert!((r.global_e - (4.0 + 2.0 * 3f64.sqrt())).abs() <= 1e-9);
}

#[test]
fn reports_round_trip_through_json() {
    let s = standard_state(StandardState::W, 4, 2).unwrap();
    let r = global_report(&s, Route::Eigen, DEFAULT_SEP_EPSILON).unwrap();
    let back: EntanglementReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert!(v["global_E"].is_f64());
    assert!(v["cuts"][0]["E_max"].is_f64());
}
