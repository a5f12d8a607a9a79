#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use spincorr_core::{evolved_coherent, BlochAngles, DickeState, EvolutionSpec};

/// Normalized state with independent Gaussian-ish complex amplitudes.
pub fn random_state<R: Rng>(rng: &mut R, n: usize) -> DickeState {
    let amps = (0..=n)
        .map(|_| {
            // Box-Muller keeps the phase distribution uniform
            let r = (-2.0 * rng.gen_range(1e-12f64..1.0).ln()).sqrt();
            let a = rng.gen_range(0.0..std::f64::consts::TAU);
            Complex64::from_polar(r, a)
        })
        .collect();
    DickeState::from_unnormalized(n, amps).unwrap()
}

pub fn evolved(n: usize, theta: f64, phi: f64, tau: f64) -> DickeState {
    let spec = EvolutionSpec::new(n, BlochAngles::new(theta, phi).unwrap(), tau).unwrap();
    evolved_coherent(&spec).unwrap()
}
