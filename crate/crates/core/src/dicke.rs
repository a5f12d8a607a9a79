//! Dicke-basis states and collective pseudo-spin operators.
//!
//! Basis index `k` holds `|j, m = j - k>` with `j = N/2`. All operators use
//! `hbar = 1`.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Result, SpinError};

/// Largest atom count accepted by the Dicke-basis constructors.
pub const MAX_ATOMS: usize = 2000;

/// Accepted deviation of the input norm from 1 before renormalizing.
pub const NORM_TOLERANCE: f64 = 1e-9;

pub(crate) fn check_atoms(n_atoms: usize) -> Result<()> {
    if n_atoms == 0 {
        return Err(SpinError::NoAtoms);
    }
    if n_atoms > MAX_ATOMS {
        return Err(SpinError::TooManyAtoms {
            n: n_atoms,
            max: MAX_ATOMS,
        });
    }
    Ok(())
}

/// A pure state in the symmetric (`j = N/2`) manifold of `N` two-level atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeState {
    n_atoms: usize,
    amplitudes: Vec<Complex64>,
}

impl DickeState {
    /// Validates and renormalizes `amplitudes`.
    ///
    /// The norm must already be within [`NORM_TOLERANCE`] of 1; larger
    /// deviations are rejected rather than silently rescaled.
    pub fn new(n_atoms: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitude_norm(&amplitudes);
        let state = Self::from_unnormalized(n_atoms, amplitudes)?;
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SpinError::NormOutOfTolerance { norm });
        }
        Ok(state)
    }

    /// Like [`DickeState::new`] but accepts any non-zero norm.
    pub fn from_unnormalized(n_atoms: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_atoms(n_atoms)?;
        if amplitudes.len() != n_atoms + 1 {
            return Err(SpinError::DimensionMismatch {
                expected: n_atoms + 1,
                actual: amplitudes.len(),
            });
        }
        let norm = amplitude_norm(&amplitudes);
        if !norm.is_finite() || norm == 0.0 {
            return Err(SpinError::ZeroNorm);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            n_atoms,
            amplitudes,
        })
    }

    /// The Dicke basis state with `k` atoms in the lower level (`m = N/2 - k`).
    pub fn basis(n_atoms: usize, k: usize) -> Result<Self> {
        check_atoms(n_atoms)?;
        if k > n_atoms {
            return Err(SpinError::DimensionMismatch {
                expected: n_atoms + 1,
                actual: k + 1,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); n_atoms + 1];
        amplitudes[k] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_atoms,
            amplitudes,
        })
    }

    /// Internal constructor for amplitudes that are unit-norm by construction.
    pub(crate) fn from_parts(n_atoms: usize, amplitudes: Vec<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), n_atoms + 1);
        Self {
            n_atoms,
            amplitudes,
        }
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    /// Total spin quantum number `j = N/2`.
    pub fn j(&self) -> f64 {
        self.n_atoms as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        amplitude_norm(&self.amplitudes)
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &DickeState) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance between amplitude vectors (no phase alignment).
    pub fn distance(&self, other: &DickeState) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }
}

fn amplitude_norm(amplitudes: &[Complex64]) -> f64 {
    amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];
}

/// Dense complex matrix of a collective observable in the Dicke basis.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    entries: Array2<Complex64>,
}

impl OperatorMatrix {
    pub fn from_array(entries: Array2<Complex64>) -> Result<Self> {
        let (rows, cols) = entries.dim();
        if rows != cols {
            return Err(SpinError::DimensionMismatch {
                expected: rows,
                actual: cols,
            });
        }
        Ok(Self { entries })
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn into_entries(self) -> Array2<Complex64> {
        self.entries
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        let n = self.dim();
        (0..n).all(|a| {
            (0..n).all(|b| (self.entries[[a, b]] - self.entries[[b, a]].conj()).norm() <= tol)
        })
    }

    /// Matrix-vector product `Op |psi>`.
    pub fn apply(&self, state: &DickeState) -> Result<Vec<Complex64>> {
        if self.dim() != state.dim() {
            return Err(SpinError::DimensionMismatch {
                expected: self.dim(),
                actual: state.dim(),
            });
        }
        Ok(self
            .entries
            .rows()
            .into_iter()
            .map(|row| row.iter().zip(state.amplitudes()).map(|(o, a)| o * a).sum())
            .collect())
    }
}

/// Matrix element `<j, m+1| J+ |j, m>`.
fn raising_element(j: f64, m: f64) -> f64 {
    (j * (j + 1.0) - m * (m + 1.0)).max(0.0).sqrt()
}

/// Builds `J_x`, `J_y` or `J_z` for `n_atoms` atoms.
///
/// `J_z` is diagonal with entries `m = N/2 - k`; `J_x = (J+ + J-)/2` and
/// `J_y = (J+ - J-)/(2i)`.
pub fn collective_operator(n_atoms: usize, axis: Axis) -> Result<OperatorMatrix> {
    check_atoms(n_atoms)?;
    let dim = n_atoms + 1;
    let j = n_atoms as f64 / 2.0;
    let mut entries = Array2::<Complex64>::zeros((dim, dim));
    match axis {
        Axis::Z => {
            for k in 0..dim {
                entries[[k, k]] = Complex64::new(j - k as f64, 0.0);
            }
        }
        Axis::X | Axis::Y => {
            // J+ maps index k (m = j - k) to k - 1.
            for k in 1..dim {
                let up = raising_element(j, j - k as f64);
                let (upper, lower) = match axis {
                    Axis::X => (Complex64::new(up / 2.0, 0.0), Complex64::new(up / 2.0, 0.0)),
                    _ => (
                        Complex64::new(0.0, -up / 2.0),
                        Complex64::new(0.0, up / 2.0),
                    ),
                };
                entries[[k - 1, k]] = upper;
                entries[[k, k - 1]] = lower;
            }
        }
    }
    Ok(OperatorMatrix { entries })
}

/// `<psi| Op |psi>`.
pub fn expectation(state: &DickeState, op: &OperatorMatrix) -> Result<Complex64> {
    let image = op.apply(state)?;
    Ok(state
        .amplitudes()
        .iter()
        .zip(&image)
        .map(|(a, b)| a.conj() * b)
        .sum())
}

/// First moments, second moments and symmetrized cross moments of the
/// collective spin.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpinMoments {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub jx2: f64,
    pub jy2: f64,
    pub jz2: f64,
    /// `<JxJy + JyJx>`
    pub xy: f64,
    /// `<JyJz + JzJy>`
    pub yz: f64,
    /// `<JxJz + JzJx>`
    pub xz: f64,
}

impl SpinMoments {
    pub fn mean(&self) -> [f64; 3] {
        [self.jx, self.jy, self.jz]
    }

    pub fn mean_len2(&self) -> f64 {
        self.jx * self.jx + self.jy * self.jy + self.jz * self.jz
    }

    pub fn mean_len(&self) -> f64 {
        self.mean_len2().sqrt()
    }

    /// Symmetric covariance matrix `(<{Ja, Jb}>/2 - <Ja><Jb>)`.
    pub fn covariance(&self) -> [[f64; 3]; 3] {
        let cxy = self.xy / 2.0 - self.jx * self.jy;
        let cyz = self.yz / 2.0 - self.jy * self.jz;
        let cxz = self.xz / 2.0 - self.jx * self.jz;
        [
            [self.jx2 - self.jx * self.jx, cxy, cxz],
            [cxy, self.jy2 - self.jy * self.jy, cyz],
            [cxz, cyz, self.jz2 - self.jz * self.jz],
        ]
    }

    pub fn casimir(&self) -> f64 {
        self.jx2 + self.jy2 + self.jz2
    }

    pub fn as_array(&self) -> [f64; 9] {
        [
            self.jx, self.jy, self.jz, self.jx2, self.jy2, self.jz2, self.xy, self.yz, self.xz,
        ]
    }
}

/// All nine moments of `state`, from the actions `J_a |psi>` of the three
/// collective operators: `<Ja Jb> = <Ja psi | Jb psi>`.
pub fn all_moments(state: &DickeState) -> SpinMoments {
    let [vx, vy, vz] = ladder_images(state);
    let psi = state.amplitudes();
    let braket = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
    };
    SpinMoments {
        jx: braket(psi, &vx).re,
        jy: braket(psi, &vy).re,
        jz: braket(psi, &vz).re,
        jx2: braket(&vx, &vx).re,
        jy2: braket(&vy, &vy).re,
        jz2: braket(&vz, &vz).re,
        xy: 2.0 * braket(&vx, &vy).re,
        yz: 2.0 * braket(&vy, &vz).re,
        xz: 2.0 * braket(&vx, &vz).re,
    }
}

/// `(Jx|psi>, Jy|psi>, Jz|psi>)` using only the non-zero entries of the
/// tridiagonal operator matrices built by [`collective_operator`].
fn ladder_images(state: &DickeState) -> [Vec<Complex64>; 3] {
    let psi = state.amplitudes();
    let dim = psi.len();
    let j = state.j();
    let zero = Complex64::new(0.0, 0.0);
    let mut raised = vec![zero; dim];
    let mut lowered = vec![zero; dim];
    for k in 1..dim {
        let up = raising_element(j, j - k as f64);
        raised[k - 1] = psi[k] * up;
        lowered[k] = psi[k - 1] * up;
    }
    let i = Complex64::new(0.0, 1.0);
    let vx = raised
        .iter()
        .zip(&lowered)
        .map(|(p, m)| (p + m) / 2.0)
        .collect();
    let vy = raised
        .iter()
        .zip(&lowered)
        .map(|(p, m)| (p - m) / (2.0 * i))
        .collect();
    let vz = psi
        .iter()
        .enumerate()
        .map(|(k, a)| a * (j - k as f64))
        .collect();
    [vx, vy, vz]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> Array2<Complex64> {
        a.entries().dot(b.entries()) - b.entries().dot(a.entries())
    }

    #[test]
    fn basis_state_construction() {
        let s = DickeState::new(2, vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.n_atoms(), 2);
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-15);
        assert_eq!(s, DickeState::basis(2, 0).unwrap());
    }

    #[test]
    fn rejects_bad_norm_and_shape() {
        let err = DickeState::new(2, vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap_err();
        assert!(
            matches!(err, SpinError::NormOutOfTolerance { norm } if (norm - 2.0).abs() < 1e-12)
        );
        assert_eq!(
            DickeState::new(2, vec![c(1.0, 0.0)]).unwrap_err(),
            SpinError::DimensionMismatch {
                expected: 3,
                actual: 1
            }
        );
        assert_eq!(
            DickeState::from_unnormalized(1, vec![c(0.0, 0.0); 2]).unwrap_err(),
            SpinError::ZeroNorm
        );
        assert_eq!(
            DickeState::new(0, vec![c(1.0, 0.0)]).unwrap_err(),
            SpinError::NoAtoms
        );
        assert!(matches!(
            collective_operator(MAX_ATOMS + 1, Axis::Z),
            Err(SpinError::TooManyAtoms { .. })
        ));
    }

    #[test]
    fn renormalizes_within_tolerance() {
        let s = DickeState::new(1, vec![c(1.0 + 4e-10, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(s.amplitudes()[0], c(1.0, 0.0));
    }

    #[test]
    fn single_spin_operators() {
        let z = collective_operator(1, Axis::Z).unwrap();
        assert_eq!(z.entries()[[0, 0]], c(0.5, 0.0));
        assert_eq!(z.entries()[[1, 1]], c(-0.5, 0.0));
        let x = collective_operator(1, Axis::X).unwrap();
        assert_eq!(x.entries()[[0, 1]], c(0.5, 0.0));
        assert_eq!(x.entries()[[1, 0]], c(0.5, 0.0));
        assert_eq!(x.entries()[[0, 0]], c(0.0, 0.0));
    }

    #[test]
    fn spin_one_x_is_tridiagonal() {
        let x = collective_operator(2, Axis::X).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        for (a, b) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            assert_abs_diff_eq!(x.entries()[[a, b]].re, s, epsilon = 1e-15);
        }
        assert_eq!(x.entries()[[0, 2]], c(0.0, 0.0));
        assert_eq!(x.entries()[[1, 1]], c(0.0, 0.0));
    }

    #[test]
    fn commutation_and_casimir() {
        for n in 1..=20 {
            let [x, y, z] = Axis::ALL.map(|a| collective_operator(n, a).unwrap());
            let i = c(0.0, 1.0);
            for (a, b, cc) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
                let diff = commutator(a, b) - cc.entries().mapv(|e| e * i);
                assert!(diff.iter().all(|e| e.norm() < 1e-12), "n={n}");
            }
            let j = n as f64 / 2.0;
            let cas = x.entries().dot(x.entries())
                + y.entries().dot(y.entries())
                + z.entries().dot(z.entries());
            for ((r, col), e) in cas.indexed_iter() {
                let expect = if r == col { j * (j + 1.0) } else { 0.0 };
                assert!((e - c(expect, 0.0)).norm() < 1e-12, "n={n}");
            }
            for op in [&x, &y, &z] {
                assert!(op.is_hermitian(1e-14));
            }
        }
    }

    #[test]
    fn highest_weight_expectation() {
        for n in 1..8 {
            let s = DickeState::basis(n, 0).unwrap();
            let z = collective_operator(n, Axis::Z).unwrap();
            assert_abs_diff_eq!(
                expectation(&s, &z).unwrap().re,
                n as f64 / 2.0,
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn expectation_dimension_mismatch() {
        let s = DickeState::basis(2, 0).unwrap();
        let z = collective_operator(3, Axis::Z).unwrap();
        assert!(matches!(
            expectation(&s, &z),
            Err(SpinError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn polarized_moments_n2() {
        let m = all_moments(&DickeState::basis(2, 0).unwrap());
        assert_abs_diff_eq!(m.jz, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.jz2, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.jx2, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.jy2, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(m.jx, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.xy, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.yz, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.xz, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn moments_agree_with_dense_expectations() {
        let amps: Vec<_> = (0..7)
            .map(|k| c((k as f64 * 0.7).sin() + 0.2, (k as f64 * 1.3).cos()))
            .collect();
        let s = DickeState::from_unnormalized(6, amps).unwrap();
        let m = all_moments(&s);
        let [x, y, z] = Axis::ALL.map(|a| collective_operator(6, a).unwrap());
        let prod = |a: &OperatorMatrix, b: &OperatorMatrix| {
            OperatorMatrix::from_array(a.entries().dot(b.entries())).unwrap()
        };
        let anti = |a: &OperatorMatrix, b: &OperatorMatrix| {
            OperatorMatrix::from_array(a.entries().dot(b.entries()) + b.entries().dot(a.entries()))
                .unwrap()
        };
        let e = |op: &OperatorMatrix| expectation(&s, op).unwrap();
        let dense = [
            e(&x),
            e(&y),
            e(&z),
            e(&prod(&x, &x)),
            e(&prod(&y, &y)),
            e(&prod(&z, &z)),
            e(&anti(&x, &y)),
            e(&anti(&y, &z)),
            e(&anti(&x, &z)),
        ];
        for (fast, d) in m.as_array().iter().zip(dense) {
            assert!(d.im.abs() < 1e-12);
            assert_abs_diff_eq!(*fast, d.re, epsilon = 1e-12);
        }
        let j = 3.0;
        assert_abs_diff_eq!(m.casimir(), j * (j + 1.0), epsilon = 1e-10);
    }
}
