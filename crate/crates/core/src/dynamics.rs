//! Dispersive evolution `H = J^2 - Jz^2 + Jz` (in units of `eta`, `hbar = 1`)
//! and its cat-state decomposition at `tau = pi/m`.

use std::f64::consts::{PI, TAU};

use ndarray::Array2;
use num_complex::Complex64;

use crate::coherent::{coherent_state, BlochAngles};
use crate::dicke::{check_atoms, DickeState, OperatorMatrix};
use crate::error::{Result, SpinError};

/// Initial coherent state plus dimensionless interaction time `tau = eta t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolutionSpec {
    n_atoms: usize,
    angles: BlochAngles,
    tau: f64,
}

impl EvolutionSpec {
    pub fn new(n_atoms: usize, angles: BlochAngles, tau: f64) -> Result<Self> {
        check_atoms(n_atoms)?;
        if !tau.is_finite() || tau < 0.0 {
            return Err(SpinError::InvalidTau(tau));
        }
        Ok(Self {
            n_atoms,
            angles,
            tau,
        })
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn angles(&self) -> BlochAngles {
        self.angles
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }
}

/// Integer eigenvalue of `H` on basis index `k`: `N + (N-1)k - k^2`,
/// which equals `j(j+1) - m^2 + m` with `m = N/2 - k`.
pub fn energy_index(n_atoms: usize, k: usize) -> i64 {
    let (n, k) = (n_atoms as i64, k as i64);
    n + (n - 1) * k - k * k
}

/// The diagonal Hamiltonian matrix, for cross-checks against the phase form.
pub fn hamiltonian_matrix(n_atoms: usize) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    let dim = n_atoms + 1;
    let mut entries = Array2::<Complex64>::zeros((dim, dim));
    for k in 0..dim {
        entries[[k, k]] = Complex64::new(energy_index(n_atoms, k) as f64, 0.0);
    }
    OperatorMatrix::from_array(entries)
}

/// Applies `exp(-i tau H)`.
///
/// `H` is diagonal in the Dicke basis, so this multiplies each amplitude by
/// `exp(-i tau E_k)` with the integer `E_k` of [`energy_index`]. Panics if
/// `tau` is not finite.
pub fn evolve(state: &DickeState, tau: f64) -> DickeState {
    assert!(tau.is_finite(), "evolve: non-finite tau {tau}");
    let n = state.n_atoms();
    // E_k is an integer, so tau only matters modulo 2 pi.
    let tau = tau.rem_euclid(TAU);
    let amplitudes = state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let angle = (tau * energy_index(n, k) as f64).rem_euclid(TAU);
            a * Complex64::from_polar(1.0, -angle)
        })
        .collect();
    DickeState::from_parts(n, amplitudes)
}

pub fn evolved_coherent(spec: &EvolutionSpec) -> Result<DickeState> {
    let initial = coherent_state(spec.n_atoms, spec.angles)?;
    Ok(evolve(&initial, spec.tau))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Weights `f_q` of the `m` coherent components of the state at `tau = pi/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatDecomposition {
    pub m: u32,
    pub parity: Parity,
    pub coefficients: Vec<Complex64>,
}

impl CatDecomposition {
    /// Overall phase `exp(-i pi N / m)`.
    pub fn global_phase(&self, n_atoms: usize) -> Complex64 {
        let angle = (PI * n_atoms as f64 / self.m as f64).rem_euclid(TAU);
        Complex64::from_polar(1.0, -angle)
    }

    /// Azimuthal shift of component `q`: `pi (2q - N)/m` for odd `m`,
    /// `pi (2q - N + 1)/m` for even `m`.
    pub fn phase_offset(&self, n_atoms: usize, q: usize) -> f64 {
        let shift = match self.parity {
            Parity::Odd => 0,
            Parity::Even => 1,
        };
        let numer = 2 * q as i64 - n_atoms as i64 + shift;
        PI * numer as f64 / self.m as f64
    }
}

/// `f_q = (1/m) sum_k exp(-2 pi i q k/m) exp(i pi g(k)/m)` with
/// `g(k) = k(k+1)` for odd `m` and `g(k) = k^2` for even `m`.
pub fn cat_coefficients(m: u32) -> Result<CatDecomposition> {
    if m < 2 {
        return Err(SpinError::InvalidCatOrder(m));
    }
    let parity = if m % 2 == 1 {
        Parity::Odd
    } else {
        Parity::Even
    };
    let mi = m as i64;
    let coefficients = (0..mi)
        .map(|q| {
            let sum: Complex64 = (0..mi)
                .map(|k| {
                    let g = match parity {
                        Parity::Odd => k * (k + 1),
                        Parity::Even => k * k,
                    };
                    // exponent in units of pi/m, reduced mod 2m
                    let units = (g - 2 * q * k).rem_euclid(2 * mi);
                    Complex64::from_polar(1.0, PI * units as f64 / m as f64)
                })
                .sum();
            sum / m as f64
        })
        .collect();
    Ok(CatDecomposition {
        m,
        parity,
        coefficients,
    })
}

/// Superposition of `m` phase-shifted coherent states equal to the evolved
/// coherent state at `tau = pi/m`.
pub fn cat_state(n_atoms: usize, angles: BlochAngles, m: u32) -> Result<DickeState> {
    let decomposition = cat_coefficients(m)?;
    check_atoms(n_atoms)?;
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_atoms + 1];
    for (q, f) in decomposition.coefficients.iter().enumerate() {
        let phi = angles.phi() + decomposition.phase_offset(n_atoms, q);
        let component = coherent_state(n_atoms, BlochAngles::new(angles.theta(), phi)?)?;
        for (acc, a) in amplitudes.iter_mut().zip(component.amplitudes()) {
            *acc += f * a;
        }
    }
    let global = decomposition.global_phase(n_atoms);
    amplitudes.iter_mut().for_each(|a| *a *= global);
    Ok(DickeState::from_parts(n_atoms, amplitudes))
}
