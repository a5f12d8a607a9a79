//! Atomic coherent states `|theta, phi>` and the CSS / SSS classification.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::correlation::{primed_fluctuations, PrimedFluctuations};
use crate::dicke::{check_atoms, DickeState};
use crate::error::{Result, SpinError};

/// Tolerance on `N/4` when classifying the transverse variances.
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;

/// Polar and azimuthal angles on the Bloch sphere.
///
/// `theta` is a polar angle and must lie in `[0, pi]`; `phi` is reduced into
/// `[0, 2 pi)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAngles {
    theta: f64,
    phi: f64,
}

impl BlochAngles {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(SpinError::NonFiniteAngle);
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(SpinError::ThetaOutOfRange(theta));
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { theta, phi })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `|theta, phi> = sum_k sqrt(C(N,k)) e^{i k phi} sin^{N-k}(theta/2) cos^k(theta/2) |N/2 - k>`.
///
/// Magnitudes are accumulated in log space from the ratio
/// `C(N,k)/C(N,k-1) = (N-k+1)/k`, so no factorial is ever formed.
pub fn coherent_state(n_atoms: usize, angles: BlochAngles) -> Result<DickeState> {
    check_atoms(n_atoms)?;
    let (sin_half, cos_half) = (angles.theta / 2.0).sin_cos();
    let ln_sin = sin_half.ln();
    let ln_cos = cos_half.ln();
    let n = n_atoms;

    let mut ln_binom = 0.0;
    let mut amplitudes = Vec::with_capacity(n + 1);
    for k in 0..=n {
        if k > 0 {
            ln_binom += ((n - k + 1) as f64 / k as f64).ln();
        }
        let mut ln_mag = 0.5 * ln_binom;
        // 0 * ln(0) terms are exactly 1 in the product
        if n - k > 0 {
            ln_mag += (n - k) as f64 * ln_sin;
        }
        if k > 0 {
            ln_mag += k as f64 * ln_cos;
        }
        let mag = ln_mag.exp();
        let phase = (k as f64 * angles.phi).rem_euclid(TAU);
        amplitudes.push(Complex64::from_polar(mag, phase));
    }
    DickeState::from_unnormalized(n_atoms, amplitudes)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinClass {
    /// Both transverse variances equal `N/4`.
    Coherent,
    /// At least one transverse variance below `N/4`.
    Squeezed,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinClassification {
    pub class: SpinClass,
    /// Variance along `x'`, the first transverse axis of the mean-spin frame.
    pub dx2: f64,
    /// Variance along `y'`.
    pub dy2: f64,
}

/// Classifies `state` from the variances perpendicular to its mean spin.
pub fn classify_css_sss(state: &DickeState) -> Result<SpinClassification> {
    let fluct = primed_fluctuations(state)?;
    classify_fluctuations(&fluct, state.n_atoms())
}

pub(crate) fn classify_fluctuations(
    fluct: &PrimedFluctuations,
    n_atoms: usize,
) -> Result<SpinClassification> {
    if fluct.frame.degenerate_full {
        return Err(SpinError::DegenerateFrame {
            len: fluct.mean_spin_len2.sqrt(),
        });
    }
    let quarter = n_atoms as f64 / 4.0;
    let (dx2, dy2) = (fluct.dx2, fluct.dy2);
    let class = if (dx2 - quarter).abs() <= CLASSIFY_TOLERANCE
        && (dy2 - quarter).abs() <= CLASSIFY_TOLERANCE
    {
        SpinClass::Coherent
    } else if dx2.min(dy2) < quarter - CLASSIFY_TOLERANCE {
        SpinClass::Squeezed
    } else {
        SpinClass::Neither
    };
    Ok(SpinClassification { class, dx2, dy2 })
}
