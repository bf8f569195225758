//! Seeded randomness shared by the search, the benchmark and the test corpora.
//!
//! All streams are `ChaCha8Rng::seed_from_u64(seed)`; standard normals come from
//! `rand_distr::StandardNormal`. Both are portable, so seeded results
//! reproduce across platforms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::dims::QuditDims;
use crate::qstate::PureState;

pub type StateRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> StateRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Complex number with independent `N(0, sigma^2)` real and imaginary parts.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(sigma * re, sigma * im)
}

/// Gaussian-normalized random pure state (unitarily invariant distribution).
pub fn random_state<R: Rng + ?Sized>(dims: &QuditDims, rng: &mut R) -> PureState {
    loop {
        let amps: Vec<Complex64> = (0..dims.total())
            .map(|_| complex_normal(rng, 1.0))
            .collect();
        // a zero draw has probability zero, but retry rather than panic
        if let Ok(s) = PureState::from_amplitudes(dims.clone(), amps) {
            return s;
        }
    }
}

/// Uniform point in the closed unit disc.
pub fn unit_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let r = rng.random::<f64>().sqrt();
    let theta = rng.random::<f64>() * std::f64::consts::TAU;
    Complex64::from_polar(r, theta)
}

/// Random `d x d` unitary (row-major) composed of complex Givens rotations on
/// random index pairs followed by random diagonal phases.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Vec<Complex64> {
    let mut u = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..d {
        u[k * d + k] = Complex64::new(1.0, 0.0);
    }
    for _ in 0..(2 * d * d) {
        let p = rng.random_range(0..d);
        let mut q = rng.random_range(0..d - 1);
        if q >= p {
            q += 1;
        }
        let theta = rng.random::<f64>() * std::f64::consts::TAU;
        let phase = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
        let (c, s) = (theta.cos(), theta.sin());
        // left-multiply by G acting on rows p, q: [[c, -s e^{-i phi}], [s e^{i phi}, c]]
        for col in 0..d {
            let up = u[p * d + col];
            let uq = u[q * d + col];
            u[p * d + col] = up * c - phase.conj() * uq * s;
            u[q * d + col] = phase * up * s + uq * c;
        }
    }
    for row in 0..d {
        let phase = Complex64::from_polar(1.0, rng.random::<f64>() * std::f64::consts::TAU);
        for col in 0..d {
            u[row * d + col] *= phase;
        }
    }
    u
}
