//! Mean-spin frame, primed-frame fluctuations and the correlation measure.
//!
//! The frame `{x', y', z'}` has `z'` along `<J>`:
//!
//! ```text
//! x' = ( cos t cos p,  cos t sin p, -sin t)
//! y' = (-sin p,        cos p,        0    )
//! z' = ( sin t cos p,  sin t sin p,  cos t)
//! ```
//!
//! with `cos t = <Jz>/|<J>|` and `(cos p, sin p) = (<Jx>, <Jy>)/sqrt(<Jx>^2 + <Jy>^2)`.
//! For a symmetric state each atom contributes `1/4` to the transverse
//! variances and `1/4 - |<J>|^2/N^2` along `z'`, so the correlation terms are
//!
//! ```text
//! C_X = dJx'^2 - N/4,   C_Y = dJy'^2 - N/4,   C_Z = dJz'^2 - N/4 + |<J>|^2/N
//! ```
//!
//! and `S = sqrt((C_X^2 + C_Y^2 + C_Z^2)/3)`.

use crate::dicke::{all_moments, DickeState, SpinMoments};
use crate::error::{Result, SpinError};

/// Relative degeneracy threshold; the absolute threshold is this times `N`.
pub const DEGENERACY_SCALE: f64 = 1e-10;

/// Relative rounding floor for variances; see [`variance_floor`].
pub const VARIANCE_FLOOR_SCALE: f64 = 1e-10;

pub fn degeneracy_threshold(n_atoms: usize) -> f64 {
    DEGENERACY_SCALE * n_atoms as f64
}

/// Most negative variance that is treated as rounding noise and clamped to
/// zero: `1e-10 * max(1, j(j+1))`.
pub fn variance_floor(n_atoms: usize) -> f64 {
    let j = n_atoms as f64 / 2.0;
    VARIANCE_FLOOR_SCALE * (j * (j + 1.0)).max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameAngles {
    pub theta1: f64,
    pub phi1: f64,
    /// `<Jx>, <Jy>` both vanish; `phi1` was set to 0.
    pub degenerate_phi: bool,
    /// `<J>` vanishes; the frame is the lab frame.
    pub degenerate_full: bool,
}

impl FrameAngles {
    pub const IDENTITY: FrameAngles = FrameAngles {
        theta1: 0.0,
        phi1: 0.0,
        degenerate_phi: true,
        degenerate_full: true,
    };

    /// Lab-frame components of the unit vectors `[x', y', z']`.
    pub fn axes(&self) -> [[f64; 3]; 3] {
        let (st, ct) = self.theta1.sin_cos();
        let (sp, cp) = self.phi1.sin_cos();
        [
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
            [st * cp, st * sp, ct],
        ]
    }
}

/// Frame angles with `z'` along the mean spin of `moments`.
pub fn frame_angles(moments: &SpinMoments, n_atoms: usize) -> FrameAngles {
    let eps = degeneracy_threshold(n_atoms);
    let len = moments.mean_len();
    if len < eps {
        return FrameAngles::IDENTITY;
    }
    let transverse = moments.jx.hypot(moments.jy);
    let degenerate_phi = transverse < eps;
    let phi1 = if degenerate_phi {
        0.0
    } else {
        moments.jy.atan2(moments.jx)
    };
    let theta1 = if degenerate_phi {
        // keep the pole exact
        if moments.jz >= 0.0 {
            0.0
        } else {
            std::f64::consts::PI
        }
    } else {
        transverse.atan2(moments.jz)
    };
    FrameAngles {
        theta1,
        phi1,
        degenerate_phi,
        degenerate_full: false,
    }
}

/// Variances along the primed axes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimedFluctuations {
    pub dx2: f64,
    pub dy2: f64,
    pub dz2: f64,
    /// `|<J>|^2`
    pub mean_spin_len2: f64,
    pub frame: FrameAngles,
}

impl PrimedFluctuations {
    pub fn degenerate(&self) -> bool {
        self.frame.degenerate_full
    }
}

fn quadratic_form(cov: &[[f64; 3]; 3], n: &[f64; 3]) -> f64 {
    (0..3)
        .map(|a| (0..3).map(|b| n[a] * cov[a][b] * n[b]).sum::<f64>())
        .sum()
}

fn clamp_variance(value: f64, floor: f64, axis: &'static str) -> Result<f64> {
    if value >= 0.0 {
        Ok(value)
    } else if value >= -floor {
        Ok(0.0)
    } else {
        Err(SpinError::NegativeVariance { axis, value })
    }
}

/// Rotates the covariance of `moments` into the mean-spin frame.
pub fn primed_from_moments(moments: &SpinMoments, n_atoms: usize) -> Result<PrimedFluctuations> {
    let frame = frame_angles(moments, n_atoms);
    let cov = moments.covariance();
    let [xp, yp, zp] = frame.axes();
    let floor = variance_floor(n_atoms);
    Ok(PrimedFluctuations {
        dx2: clamp_variance(quadratic_form(&cov, &xp), floor, "x'")?,
        dy2: clamp_variance(quadratic_form(&cov, &yp), floor, "y'")?,
        dz2: clamp_variance(quadratic_form(&cov, &zp), floor, "z'")?,
        mean_spin_len2: moments.mean_len2(),
        frame,
    })
}

pub fn primed_fluctuations(state: &DickeState) -> Result<PrimedFluctuations> {
    primed_from_moments(&all_moments(state), state.n_atoms())
}

/// `(C_X, C_Y, C_Z)` and the total measure `S`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTriple {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
    pub s: f64,
    /// Mean spin vanished; values were computed in the lab frame.
    pub degenerate: bool,
}

impl CorrelationTriple {
    pub fn from_terms(cx: f64, cy: f64, cz: f64, degenerate: bool) -> Self {
        Self {
            cx,
            cy,
            cz,
            s: ((cx * cx + cy * cy + cz * cz) / 3.0).sqrt(),
            degenerate,
        }
    }
}

pub fn correlation_from_fluctuations(
    fluct: &PrimedFluctuations,
    n_atoms: usize,
) -> CorrelationTriple {
    let n = n_atoms as f64;
    let quarter = n / 4.0;
    CorrelationTriple::from_terms(
        fluct.dx2 - quarter,
        fluct.dy2 - quarter,
        fluct.dz2 - quarter + fluct.mean_spin_len2 / n,
        fluct.degenerate(),
    )
}

pub fn correlation_from_moments(
    moments: &SpinMoments,
    n_atoms: usize,
) -> Result<CorrelationTriple> {
    let fluct = primed_from_moments(moments, n_atoms)?;
    Ok(correlation_from_fluctuations(&fluct, n_atoms))
}

pub fn correlation_triple(state: &DickeState) -> Result<CorrelationTriple> {
    correlation_from_moments(&all_moments(state), state.n_atoms())
}

/// `S` written directly in terms of the primed variances and `|<J>|^2`,
/// without forming the correlation terms.
pub fn s_from_fluctuations(fluct: &PrimedFluctuations, n_atoms: usize) -> f64 {
    let n = n_atoms as f64;
    let len2 = fluct.mean_spin_len2;
    let (dx, dy, dz) = (fluct.dx2, fluct.dy2, fluct.dz2);
    let radicand = dx * (dx - n / 2.0)
        + dy * (dy - n / 2.0)
        + dz * (dz - n / 2.0 + 2.0 * len2 / n)
        + (len2 / n - n / 4.0).powi(2)
        + n * n / 8.0;
    (radicand.max(0.0) / 3.0).sqrt()
}

/// Ramsey squeezing parameters `xi_a = sqrt(2j) dJ_a' / |<J>|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RamseyParameters {
    pub xi_x: f64,
    pub xi_y: f64,
    pub xi_z: f64,
}

pub fn ramsey_from_fluctuations(
    fluct: &PrimedFluctuations,
    n_atoms: usize,
) -> Result<RamseyParameters> {
    let len = fluct.mean_spin_len2.sqrt();
    if fluct.degenerate() || len < degeneracy_threshold(n_atoms) {
        return Err(SpinError::DegenerateFrame { len });
    }
    // sqrt(2j) = sqrt(N)
    let scale = (n_atoms as f64).sqrt() / len;
    Ok(RamseyParameters {
        xi_x: scale * fluct.dx2.sqrt(),
        xi_y: scale * fluct.dy2.sqrt(),
        xi_z: scale * fluct.dz2.sqrt(),
    })
}

pub fn ramsey_parameters(state: &DickeState) -> Result<RamseyParameters> {
    ramsey_from_fluctuations(&primed_fluctuations(state)?, state.n_atoms())
}

/// `S` from the Ramsey parameters and `|<J>|^2`.
pub fn s_from_ramsey(params: &RamseyParameters, mean_spin_len2: f64, n_atoms: usize) -> f64 {
    let n = n_atoms as f64;
    let two_j = n;
    let var = |xi: f64| xi * xi * mean_spin_len2 / two_j;
    let (vx, vy, vz) = (var(params.xi_x), var(params.xi_y), var(params.xi_z));
    let radicand = vx * (vx - n / 2.0)
        + vy * (vy - n / 2.0)
        + vz * (vz - n / 2.0 + 2.0 * mean_spin_len2 / n)
        + (mean_spin_len2 / n - n / 4.0).powi(2)
        + n * n / 8.0;
    (radicand.max(0.0) / 3.0).sqrt()
}
