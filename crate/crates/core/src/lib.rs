//! Quantum-correlation measures for symmetric states of `N` two-level atoms.
//!
//! States live in the maximal-spin Dicke manifold (`j = N/2`). Basis index
//! `k` runs from `m = +N/2` (`k = 0`) down to `m = -N/2` (`k = N`), and every
//! module in this crate uses that ordering.
//!
//! The main pipeline is
//!
//! 1. build a state ([`coherent_state`], [`evolved_coherent`], [`cat_state`]
//!    or [`DickeState::new`]),
//! 2. collect its first and second moments ([`all_moments`]),
//! 3. rotate into the mean-spin frame and extract the correlation triple
//!    `(C_X, C_Y, C_Z)` and the total measure `S` ([`correlation_triple`]).
//!
//! [`closed_form`] and [`product`] are independent cross-checks of the
//! numeric path: analytic moment formulas for the evolved coherent state, and
//! a brute-force `2^N` product-basis engine.

pub mod closed_form;
pub mod coherent;
pub mod correlation;
pub mod dicke;
pub mod dynamics;
mod error;
pub mod product;
pub mod sweep;

pub use coherent::{classify_css_sss, coherent_state, BlochAngles, SpinClass, SpinClassification};
pub use correlation::{
    correlation_from_moments, correlation_triple, frame_angles, primed_fluctuations,
    primed_from_moments, ramsey_parameters, s_from_fluctuations, s_from_ramsey, CorrelationTriple,
    FrameAngles, PrimedFluctuations, RamseyParameters,
};
pub use dicke::{
    all_moments, collective_operator, expectation, Axis, DickeState, OperatorMatrix, SpinMoments,
    MAX_ATOMS,
};
pub use dynamics::{
    cat_coefficients, cat_state, evolve, evolved_coherent, CatDecomposition, EvolutionSpec, Parity,
};
pub use error::{Result, SpinError};

pub use num_complex::Complex64;
