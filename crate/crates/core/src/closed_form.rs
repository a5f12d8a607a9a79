//! Closed-form moments of the evolved coherent state.
//!
//! These formulas are an independent route to the nine moments returned by
//! [`crate::all_moments`] for `exp(-i tau H)|theta, phi>`. They exist to
//! validate the matrix path, which remains the ground truth.
//!
//! Each formula carries a factor `T^(j-1) e^{i(2j-2)Theta}`, i.e. the
//! `(N-2)`-th power of a complex number `z` with `|z|^2 = T` and
//! `arg z = Theta`. With [`ArctanBranch::TwoArgument`], `Theta` is computed by
//! `atan2` and is the true argument of `z`, so the power is exact for every
//! `tau`. [`ArctanBranch::Principal`] evaluates the single-argument arctangent
//! of the ratio instead; it lands on the wrong sheet (off by `pi`) whenever
//! the denominator is negative, which flips the sign of the oscillating terms
//! for odd `N - 2`, i.e. odd `N`. Even `N` is unaffected.

use crate::dicke::SpinMoments;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ArctanBranch {
    /// `atan2(numerator, denominator)`.
    #[default]
    TwoArgument,
    /// `atan(numerator / denominator)`, restricted to `(-pi/2, pi/2)`.
    Principal,
}

impl ArctanBranch {
    fn angle(self, numerator: f64, denominator: f64) -> f64 {
        match self {
            ArctanBranch::TwoArgument => numerator.atan2(denominator),
            ArctanBranch::Principal => (numerator / denominator).atan(),
        }
    }
}

/// Moments from the closed-form expressions, plus the intermediate
/// magnitudes `T1`, `T2` and phases `Theta1..3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticMoments {
    pub moments: SpinMoments,
    pub t1: f64,
    pub t2: f64,
    pub theta_cap1: f64,
    pub theta_cap2: f64,
    pub theta_cap3: f64,
}

pub fn analytic_moments(
    n_atoms: usize,
    theta: f64,
    phi: f64,
    tau: f64,
    branch: ArctanBranch,
) -> AnalyticMoments {
    let j = n_atoms as f64 / 2.0;
    let (sin_half, cos_half) = (theta / 2.0).sin_cos();
    let s2 = sin_half * sin_half;
    let c2 = cos_half * cos_half;
    let (sin_t, cos_t) = theta.sin_cos();
    let sin_t2 = sin_t * sin_t;
    let pol4 = s2 * s2 + c2 * c2;

    let t1 = pol4 + 0.5 * sin_t2 * (2.0 * tau).cos();
    let t2 = pol4 + 0.5 * sin_t2 * (4.0 * tau).cos();

    // tan(Theta1) = -tan(tau) cos(theta)
    let theta_cap1 = branch.angle(-tau.sin() * cos_t, tau.cos());
    let theta_cap2 = branch.angle(c2 * (4.0 * tau).sin(), s2 + c2 * (4.0 * tau).cos());
    let theta_cap3 = branch.angle(c2 * (2.0 * tau).sin(), s2 + c2 * (2.0 * tau).cos());

    let p1 = t1.powf(j - 1.0);
    let p2 = t2.powf(j - 1.0);

    let a1 = 2.0 * j * theta_cap1 - phi;
    let a2 = a1 - 2.0 * tau;
    let jx = j * sin_t * p1 * (c2 * a1.cos() + s2 * a2.cos());
    let jy = -j * sin_t * p1 * (c2 * a1.sin() + s2 * a2.sin());
    let jz = -j * cos_t;

    let osc = (6.0 - 4.0 * j) * tau + 2.0 * phi + (2.0 * j - 2.0) * theta_cap2;
    let amp2 = j * (2.0 * j - 1.0) / 4.0 * sin_t2 * p2;
    let base = j * (j + 1.0) / 2.0
        - 0.5 * (j * j * s2 * s2 - 0.5 * j * j * sin_t2 + 0.5 * j * sin_t2 + j * j * c2 * c2);
    let jx2 = amp2 * osc.cos() + base;
    let jy2 = -amp2 * osc.cos() + base;
    let xy = 2.0 * amp2 * osc.sin();
    let jz2 = 0.5 * j * sin_t2 + j * j * (pol4 - 0.5 * sin_t2);

    let mixed = (1.0 - j) * 2.0 * tau + phi + (2.0 * j - 2.0) * theta_cap3;
    let amp3 = j * (2.0 * j - 1.0) * sin_t * p1;
    let lead = s2 - c2 * (2.0 * tau).cos();
    let side = c2 * (2.0 * tau).sin();
    let yz = amp3 * (lead * mixed.sin() - side * mixed.cos());
    let xz = amp3 * (lead * mixed.cos() + side * mixed.sin());

    AnalyticMoments {
        moments: SpinMoments {
            jx,
            jy,
            jz,
            jx2,
            jy2,
            jz2,
            xy,
            yz,
            xz,
        },
        t1,
        t2,
        theta_cap1,
        theta_cap2,
        theta_cap3,
    }
}

/// `(<Jx>, <Jy>, <Jz>)` for the evolved coherent state.
pub fn analytic_first_moments(n_atoms: usize, theta: f64, phi: f64, tau: f64) -> (f64, f64, f64) {
    let m = analytic_moments(n_atoms, theta, phi, tau, ArctanBranch::TwoArgument).moments;
    (m.jx, m.jy, m.jz)
}

/// `(<Jx^2>, <Jy^2>, <Jz^2>, <{Jx,Jy}>, <{Jy,Jz}>, <{Jx,Jz}>)`.
pub fn analytic_second_moments(
    n_atoms: usize,
    theta: f64,
    phi: f64,
    tau: f64,
) -> (f64, f64, f64, f64, f64, f64) {
    let m = analytic_moments(n_atoms, theta, phi, tau, ArctanBranch::TwoArgument).moments;
    (m.jx2, m.jy2, m.jz2, m.xy, m.yz, m.xz)
}

/// Agreement test used by the oracle grid: `|a - b| <= tol * max(1, |b|)`.
pub fn agrees(analytic: f64, numeric: f64, tol: f64) -> bool {
    (analytic - numeric).abs() <= tol * numeric.abs().max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::BlochAngles;
    use crate::dicke::all_moments;
    use crate::dynamics::{evolved_coherent, EvolutionSpec};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn numeric(n: usize, theta: f64, phi: f64, tau: f64) -> SpinMoments {
        let spec = EvolutionSpec::new(n, BlochAngles::new(theta, phi).unwrap(), tau).unwrap();
        all_moments(&evolved_coherent(&spec).unwrap())
    }

    #[test]
    fn initial_state_first_moments() {
        let (theta, phi) = (1.1, 0.7);
        let (jx, jy, jz) = analytic_first_moments(8, theta, phi, 0.0);
        assert_abs_diff_eq!(jx, 4.0 * theta.sin() * phi.cos(), epsilon = 1e-12);
        assert_abs_diff_eq!(jy, 4.0 * theta.sin() * phi.sin(), epsilon = 1e-12);
        assert_abs_diff_eq!(jz, -4.0 * theta.cos(), epsilon = 1e-12);
    }

    #[test]
    fn polar_state() {
        for tau in [0.2, 1.0, 2.5] {
            let (jx, jy, jz) = analytic_first_moments(6, 0.0, 0.3, tau);
            assert_eq!((jx, jy), (0.0, 0.0));
            assert_abs_diff_eq!(jz, -3.0, epsilon = 1e-15);
            let (_, _, jz2, ..) = analytic_second_moments(6, 0.0, 0.3, tau);
            assert_abs_diff_eq!(jz2, 9.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn cross_moment_vanishes_at_start() {
        let (.., xy, _, _) = analytic_second_moments(5, 1.0, 0.0, 0.0);
        assert_abs_diff_eq!(xy, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn pair_of_atoms_on_equator() {
        let (jx2, ..) = analytic_second_moments(2, FRAC_PI_2, 0.0, 0.0);
        assert_abs_diff_eq!(jx2, numeric(2, FRAC_PI_2, 0.0, 0.0).jx2, epsilon = 1e-10);
        assert_abs_diff_eq!(jx2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn matches_matrix_path_at_reference_point() {
        let a = analytic_moments(10, FRAC_PI_4, 0.0, 0.3, ArctanBranch::TwoArgument);
        let b = numeric(10, FRAC_PI_4, 0.0, 0.3);
        for (x, y) in a.moments.as_array().iter().zip(b.as_array()) {
            assert!(agrees(*x, y, 1e-9), "{x} vs {y}");
        }
        assert!((0.0..=1.0).contains(&a.t1) && (0.0..=1.0).contains(&a.t2));
    }

    #[test]
    fn principal_branch_only_disturbs_odd_n() {
        // tau = pi/6 at theta = pi/4 puts the Theta2 denominator below zero
        let tau = PI / 6.0;
        for n in [4usize, 6, 10] {
            let p = analytic_moments(n, FRAC_PI_4, 0.0, tau, ArctanBranch::Principal).moments;
            let t = analytic_moments(n, FRAC_PI_4, 0.0, tau, ArctanBranch::TwoArgument).moments;
            for (x, y) in p.as_array().iter().zip(t.as_array()) {
                assert_abs_diff_eq!(*x, y, epsilon = 1e-10);
            }
        }
        let p = analytic_moments(5, FRAC_PI_4, 0.0, tau, ArctanBranch::Principal).moments;
        let t = analytic_moments(5, FRAC_PI_4, 0.0, tau, ArctanBranch::TwoArgument).moments;
        assert!((p.jx2 - t.jx2).abs() > 1e-3);
    }
}
