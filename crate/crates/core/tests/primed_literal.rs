//! Second transcription of the primed-frame variances, written directly in
//! terms of the lab-frame moments, checked against the rotation route.

mod common;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spincorr_core::{all_moments, primed_fluctuations, SpinMoments};

use common::{evolved, random_state};

fn literal(m: &SpinMoments) -> (f64, f64, f64) {
    let (jx, jy, jz) = (m.jx, m.jy, m.jz);
    let len2 = jx * jx + jy * jy + jz * jz;
    let rho2 = jx * jx + jy * jy;
    let dx2 = (m.jx2 * jx * jx * jz * jz
        + m.jy2 * jy * jy * jz * jz
        + m.jz2 * rho2 * rho2
        + m.xy * jx * jy * jz * jz
        - rho2 * (m.xz * jx * jz + m.yz * jy * jz))
        / (len2 * rho2);
    let dy2 = (m.jx2 * jy * jy + m.jy2 * jx * jx - m.xy * jx * jy) / rho2;
    let dz2 = ((m.jx2 - jx * jx) * jx * jx
        + (m.jy2 - jy * jy) * jy * jy
        + (m.jz2 - jz * jz) * jz * jz
        + (m.xy - 2.0 * jx * jy) * jx * jy
        + (m.yz - 2.0 * jy * jz) * jy * jz
        + (m.xz - 2.0 * jx * jz) * jx * jz)
        / len2;
    (dx2, dy2, dz2)
}

fn check(state: &spincorr_core::DickeState) {
    let m = all_moments(state);
    let f = primed_fluctuations(state).unwrap();
    let (dx2, dy2, dz2) = literal(&m);
    let scale = 1.0 + m.casimir();
    assert!((dx2 - f.dx2).abs() < 1e-10 * scale, "{dx2} vs {}", f.dx2);
    assert!((dy2 - f.dy2).abs() < 1e-10 * scale, "{dy2} vs {}", f.dy2);
    assert!((dz2 - f.dz2).abs() < 1e-10 * scale, "{dz2} vs {}", f.dz2);
}

#[test]
fn literal_formulas_match_rotation_on_evolved_states() {
    for n in [2, 5, 10, 31] {
        for theta in [0.3, 1.0, 2.0] {
            for tau in [0.1, 0.5, 1.3, 2.9] {
                check(&evolved(n, theta, 0.4, tau));
            }
        }
    }
}

#[test]
fn literal_formulas_match_rotation_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for n in 2..40 {
        check(&random_state(&mut rng, n));
    }
}
