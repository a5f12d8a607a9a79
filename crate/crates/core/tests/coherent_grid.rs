mod common;

use std::f64::consts::{FRAC_PI_4, PI};

use approx::assert_abs_diff_eq;
use spincorr_core::{
    all_moments, classify_css_sss, coherent_state, correlation_triple, BlochAngles, SpinClass,
};

use common::evolved;

#[test]
fn coherent_grid() {
    for n in 1..=30usize {
        let j = n as f64 / 2.0;
        for i in 0..=8 {
            let theta = PI * i as f64 / 8.0;
            for phi in [0.0, PI / 3.0, 1.7] {
                let state = coherent_state(n, BlochAngles::new(theta, phi).unwrap()).unwrap();
                assert_abs_diff_eq!(state.norm(), 1.0, epsilon = 1e-12);
                let m = all_moments(&state);
                assert_abs_diff_eq!(m.jx, j * theta.sin() * phi.cos(), epsilon = 1e-10);
                assert_abs_diff_eq!(m.jy, j * theta.sin() * phi.sin(), epsilon = 1e-10);
                assert_abs_diff_eq!(m.jz, -j * theta.cos(), epsilon = 1e-10);

                let c = classify_css_sss(&state).unwrap();
                assert_eq!(c.class, SpinClass::Coherent, "N={n} theta={theta}");
                assert_abs_diff_eq!(c.dx2, j / 2.0, epsilon = 1e-9);
                assert_abs_diff_eq!(c.dy2, j / 2.0, epsilon = 1e-9);

                let t = correlation_triple(&state).unwrap();
                assert!(t.s < 1e-9, "N={n} theta={theta} S={}", t.s);
            }
        }
    }
}

#[test]
fn evolved_state_classification_fixture() {
    let c = classify_css_sss(&evolved(10, FRAC_PI_4, 0.0, PI / 10.0)).unwrap();
    assert_eq!(c.class, SpinClass::Neither);
    assert_abs_diff_eq!(c.dx2, 2.618977472376341, epsilon = 1e-10);
    assert_abs_diff_eq!(c.dy2, 5.584907378920252, epsilon = 1e-10);
}
