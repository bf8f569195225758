mod common;

use approx::assert_abs_diff_eq;
use common::{dims, oracle_e, CORPUS};
use gconc::random::{random_state, seeded};
use gconc::{
    canonical_bipartitions, char_coeff2, concurrence, eigs_hermitian, global_report,
    reduced_density, standard_state, wootters_2qubit, Bipartition, Complex64, PureState, Route,
    StandardState, DEFAULT_SEP_EPSILON,
};

#[test]
fn routes_agree_with_each_other_and_the_oracle() {
    let mut rng = seeded(2024);
    for d in CORPUS {
        let dims = dims(d);
        for _ in 0..40 {
            let s = random_state(&dims, &mut rng);
            for cut in canonical_bipartitions(d.len()) {
                let want = oracle_e(&s, cut.members());
                for route in Route::ALL {
                    let got = concurrence(&s, &cut, route).unwrap();
                    assert!(
                        (got - want).abs() <= 1e-10,
                        "{route} on {dims} cut {cut}: {got} vs {want}"
                    );
                }
            }
        }
    }
}

#[test]
fn golden_values() {
    let cases = [
        (StandardState::Bell, 2, 1.0),
        (StandardState::Ghz, 3, 3.0),
        (StandardState::W, 3, 2.0 * 2f64.sqrt()),
        (StandardState::Ghz, 4, 7.0),
        (StandardState::Hs, 4, 4.0 + 2.0 * 3f64.sqrt()),
    ];
    for (kind, n, want) in cases {
        let s = standard_state(kind, n, 2).unwrap();
        let oracle: f64 = canonical_bipartitions(n)
            .iter()
            .map(|c| oracle_e(&s, c.members()))
            .sum();
        assert_abs_diff_eq!(oracle, want, epsilon = 1e-12);
        for route in Route::ALL {
            let r = global_report(&s, route, DEFAULT_SEP_EPSILON).unwrap();
            assert_abs_diff_eq!(r.global_e, want, epsilon = 1e-9);
        }
    }
}

#[test]
fn two_qubit_closed_form() {
    // E = 2 |ad - bc| for (a, b, c, d)
    let mut rng = seeded(5);
    for _ in 0..200 {
        let s = random_state(&dims(&[2, 2]), &mut rng);
        let a = s.amplitudes();
        let want = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        assert_abs_diff_eq!(wootters_2qubit(&s).unwrap(), want, epsilon = 1e-12);
        let cut = Bipartition::new(2, vec![0]).unwrap();
        for route in Route::ALL {
            assert_abs_diff_eq!(concurrence(&s, &cut, route).unwrap(), want, epsilon = 1e-10);
        }
    }
}

#[test]
fn generalized_ghz_saturates_the_qudit_bound() {
    for d in 2..=5 {
        let s = standard_state(StandardState::Ghz, 3, d).unwrap();
        let want = (2.0 - 2.0 / d as f64).sqrt();
        for cut in canonical_bipartitions(3) {
            for route in Route::ALL {
                assert_abs_diff_eq!(concurrence(&s, &cut, route).unwrap(), want, epsilon = 1e-10);
            }
        }
    }
}

#[test]
fn characteristic_coefficient_matches_spectrum() {
    let mut rng = seeded(8);
    for _ in 0..50 {
        let s = random_state(&dims(&[3, 2, 4]), &mut rng);
        let rho = reduced_density(&s, &[0, 2]).unwrap();
        let lam = eigs_hermitian(&rho).unwrap();
        let mut pairs = 0.0;
        for i in 0..lam.len() {
            for j in i + 1..lam.len() {
                pairs += lam[i] * lam[j];
            }
        }
        assert_abs_diff_eq!(char_coeff2(&rho), pairs, epsilon = 1e-12);
        assert_abs_diff_eq!(lam.iter().sum::<f64>(), 1.0, epsilon = 1e-10);
    }
}

#[test]
fn hand_built_mixed_dimension_state() {
    // (|0,0> + |1,2>)/sqrt(2) on a qubit and a qutrit: maximally entangled within rank 2
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut a = vec![Complex64::new(0.0, 0.0); 6];
    a[0] = Complex64::new(h, 0.0);
    a[5] = Complex64::new(0.0, h);
    let s = PureState::from_amplitudes(dims(&[2, 3]), a).unwrap();
    let cut = Bipartition::new(2, vec![1]).unwrap();
    for route in Route::ALL {
        assert_abs_diff_eq!(concurrence(&s, &cut, route).unwrap(), 1.0, epsilon = 1e-12);
    }
}
