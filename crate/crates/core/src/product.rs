//! Brute-force product-basis engine over all `2^N` atomic configurations.
//!
//! Bit `b` of an amplitude index is the level of atom `b` (1 = upper, 0 =
//! lower). Expectations are taken from one- and two-atom reduced density
//! matrices, so no `2^N x 2^N` operator is ever formed.
//!
//! This path is a cross-check of the Dicke-basis route: it evaluates the
//! per-atom fluctuations and the `i != l` covariance sums that make up
//! `C_X`, `C_Y` and `C_Z` term by term.

use num_complex::Complex64;

use crate::correlation::FrameAngles;
use crate::dicke::{DickeState, SpinMoments};
use crate::error::{Result, SpinError};

/// Largest `N` accepted by the product-basis engine.
pub const PRODUCT_MAX_ATOMS: usize = 14;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct ProductState {
    n_atoms: usize,
    amplitudes: Vec<Complex64>,
}

fn check_cap(n_atoms: usize) -> Result<()> {
    if n_atoms == 0 {
        return Err(SpinError::NoAtoms);
    }
    if n_atoms > PRODUCT_MAX_ATOMS {
        return Err(SpinError::ProductCapExceeded {
            n: n_atoms,
            max: PRODUCT_MAX_ATOMS,
        });
    }
    Ok(())
}

impl ProductState {
    /// Arbitrary (not necessarily symmetric) product-basis state; renormalized.
    pub fn new(n_atoms: usize, mut amplitudes: Vec<Complex64>) -> Result<Self> {
        check_cap(n_atoms)?;
        if amplitudes.len() != 1 << n_atoms {
            return Err(SpinError::DimensionMismatch {
                expected: 1 << n_atoms,
                actual: amplitudes.len(),
            });
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            return Err(SpinError::ZeroNorm);
        }
        amplitudes.iter_mut().for_each(|a| *a /= norm);
        Ok(Self {
            n_atoms,
            amplitudes,
        })
    }

    /// Tensor product of single-atom states `(lower, upper)`; atom 0 first.
    pub fn tensor(atoms: &[[Complex64; 2]]) -> Result<Self> {
        let n = atoms.len();
        check_cap(n)?;
        let amplitudes = (0..1usize << n)
            .map(|idx| {
                atoms
                    .iter()
                    .enumerate()
                    .map(|(b, a)| a[(idx >> b) & 1])
                    .product()
            })
            .collect();
        Self::new(n, amplitudes)
    }

    pub fn n_atoms(&self) -> usize {
        self.n_atoms
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn check_atom(&self, atom: usize) -> Result<()> {
        if atom >= self.n_atoms {
            return Err(SpinError::AtomIndexOutOfRange {
                index: atom,
                n: self.n_atoms,
            });
        }
        Ok(())
    }

    /// Reduced density matrix of one atom, indexed by level (0 = lower).
    fn reduced_one(&self, atom: usize) -> [[Complex64; 2]; 2] {
        let bit = 1usize << atom;
        let mut rho = [[ZERO; 2]; 2];
        for idx in (0..self.amplitudes.len()).filter(|i| i & bit == 0) {
            let amps = [self.amplitudes[idx], self.amplitudes[idx | bit]];
            for a in 0..2 {
                for b in 0..2 {
                    rho[a][b] += amps[a] * amps[b].conj();
                }
            }
        }
        rho
    }

    /// Reduced density matrix of two atoms; local index `2 * level_i + level_l`.
    fn reduced_pair(&self, i: usize, l: usize) -> [[Complex64; 4]; 4] {
        let (bi, bl) = (1usize << i, 1usize << l);
        let mut rho = [[ZERO; 4]; 4];
        for idx in (0..self.amplitudes.len()).filter(|x| x & (bi | bl) == 0) {
            let amps = [
                self.amplitudes[idx],
                self.amplitudes[idx | bl],
                self.amplitudes[idx | bi],
                self.amplitudes[idx | bi | bl],
            ];
            for a in 0..4 {
                for b in 0..4 {
                    rho[a][b] += amps[a] * amps[b].conj();
                }
            }
        }
        rho
    }
}

/// Spreads Dicke amplitude `k` evenly over the `C(N, k)` configurations with
/// `k` atoms in the lower level.
pub fn embed_symmetric(state: &DickeState) -> Result<ProductState> {
    let n = state.n_atoms();
    check_cap(n)?;
    let mut binom = vec![1.0f64; n + 1];
    for k in 1..=n {
        binom[k] = binom[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    let amplitudes = (0..1usize << n)
        .map(|idx| {
            let lower = n - idx.count_ones() as usize;
            state.amplitudes()[lower] / binom[lower].sqrt()
        })
        .collect();
    Ok(ProductState {
        n_atoms: n,
        amplitudes,
    })
}

/// Single-atom pseudo-spin matrices in the `(lower, upper)` basis:
/// `Jx = (|u><l| + |l><u|)/2`, `Jy = -i(|u><l| - |l><u|)/2`, `Jz = (|u><u| - |l><l|)/2`.
fn pauli_half() -> [[[Complex64; 2]; 2]; 3] {
    let h = Complex64::new(0.5, 0.0);
    let ih = Complex64::new(0.0, 0.5);
    [
        [[ZERO, h], [h, ZERO]],
        [[ZERO, ih], [-ih, ZERO]],
        [[-h, ZERO], [ZERO, h]],
    ]
}

fn trace_one(rho: &[[Complex64; 2]; 2], op: &[[Complex64; 2]; 2]) -> f64 {
    let mut acc = ZERO;
    for a in 0..2 {
        for b in 0..2 {
            acc += rho[a][b] * op[b][a];
        }
    }
    acc.re
}

fn mat2_mul(a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> [[Complex64; 2]; 2] {
    let mut out = [[ZERO; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            out[r][c] = a[r][0] * b[0][c] + a[r][1] * b[1][c];
        }
    }
    out
}

/// `Tr(rho (A (x) B))` on the pair space.
fn trace_pair(rho: &[[Complex64; 4]; 4], a: &[[Complex64; 2]; 2], b: &[[Complex64; 2]; 2]) -> f64 {
    let mut acc = ZERO;
    for r in 0..4 {
        for c in 0..4 {
            let op = a[c >> 1][r >> 1] * b[c & 1][r & 1];
            acc += rho[r][c] * op;
        }
    }
    acc.re
}

/// Moments of one atom's pseudo-spin; same field layout as the collective
/// [`SpinMoments`].
pub fn single_atom_moments(state: &ProductState, atom: usize) -> Result<SpinMoments> {
    state.check_atom(atom)?;
    let rho = state.reduced_one(atom);
    let [x, y, z] = pauli_half();
    let e = |op: &[[Complex64; 2]; 2]| trace_one(&rho, op);
    let anti = |a, b| e(&mat2_mul(a, b)) + e(&mat2_mul(b, a));
    Ok(SpinMoments {
        jx: e(&x),
        jy: e(&y),
        jz: e(&z),
        jx2: e(&mat2_mul(&x, &x)),
        jy2: e(&mat2_mul(&y, &y)),
        jz2: e(&mat2_mul(&z, &z)),
        xy: anti(&x, &y),
        yz: anti(&y, &z),
        xz: anti(&x, &z),
    })
}

/// `<J_{i,a} J_{l,b}> - <J_{i,a}><J_{l,b}>` for all `a, b in {x, y, z}`.
pub fn pair_covariance(state: &ProductState, i: usize, l: usize) -> Result<[[f64; 3]; 3]> {
    state.check_atom(i)?;
    state.check_atom(l)?;
    if i == l {
        return Err(SpinError::AtomIndexOutOfRange {
            index: l,
            n: state.n_atoms,
        });
    }
    let ops = pauli_half();
    let rho = state.reduced_pair(i, l);
    let mean_i = single_atom_moments(state, i)?.mean();
    let mean_l = single_atom_moments(state, l)?.mean();
    let mut cov = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            cov[a][b] = trace_pair(&rho, &ops[a], &ops[b]) - mean_i[a] * mean_l[b];
        }
    }
    Ok(cov)
}

/// Frame weights for the six covariance types `[xx, yy, zz, xy, xz, yz]`
/// along one primed axis, written out from the frame angles.
///
/// Cross types carry a factor 2 because both orderings `(a, b)` and `(b, a)`
/// appear when summing over ordered pairs `i != l`.
pub fn frame_weights(frame: &FrameAngles) -> [[f64; 6]; 3] {
    let (st, ct) = frame.theta1.sin_cos();
    let (sp, cp) = frame.phi1.sin_cos();
    [
        // x'
        [
            ct * ct * cp * cp,
            ct * ct * sp * sp,
            st * st,
            2.0 * ct * ct * sp * cp,
            -2.0 * st * ct * cp,
            -2.0 * st * ct * sp,
        ],
        // y'
        [sp * sp, cp * cp, 0.0, -2.0 * sp * cp, 0.0, 0.0],
        // z'
        [
            st * st * cp * cp,
            st * st * sp * sp,
            ct * ct,
            2.0 * st * st * sp * cp,
            2.0 * st * ct * cp,
            2.0 * st * ct * sp,
        ],
    ]
}

fn six_types(cov: &[[f64; 3]; 3]) -> [f64; 6] {
    [
        cov[0][0], cov[1][1], cov[2][2], cov[0][1], cov[0][2], cov[1][2],
    ]
}

/// The three `i != l` double sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationSums {
    pub cx: f64,
    pub cy: f64,
    pub cz: f64,
}

/// Evaluates the `i != l` covariance sums in the given frame.
///
/// Pairs are visited in a fixed order so repeated calls give identical sums.
pub fn pairwise_correlation_sums(
    state: &ProductState,
    frame: &FrameAngles,
) -> Result<CorrelationSums> {
    let weights = frame_weights(frame);
    let mut totals = [0.0f64; 6];
    let n = state.n_atoms();
    for i in 0..n {
        for l in (0..n).filter(|&l| l != i) {
            let cov = six_types(&pair_covariance(state, i, l)?);
            totals.iter_mut().zip(cov).for_each(|(t, c)| *t += c);
        }
    }
    let dot = |w: &[f64; 6]| w.iter().zip(&totals).map(|(a, b)| a * b).sum::<f64>();
    Ok(CorrelationSums {
        cx: dot(&weights[0]),
        cy: dot(&weights[1]),
        cz: dot(&weights[2]),
    })
}

/// Per-atom variances along `x', y', z'` for one atom.
pub fn single_atom_primed_variances(
    state: &ProductState,
    atom: usize,
    frame: &FrameAngles,
) -> Result<[f64; 3]> {
    let cov = single_atom_moments(state, atom)?.covariance();
    Ok(frame.axes().map(|n| {
        (0..3)
            .map(|a| (0..3).map(|b| n[a] * cov[a][b] * n[b]).sum::<f64>())
            .sum()
    }))
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerAtomReport {
    /// `[dJ_{i,x'}^2, dJ_{i,y'}^2, dJ_{i,z'}^2]` per atom.
    pub variances: Vec<[f64; 3]>,
    /// Expected `[1/4, 1/4, 1/4 - |<J>|^2/N^2]`.
    pub expected: [f64; 3],
    pub max_deviation: f64,
}

/// Compares every atom's primed variances with `1/4, 1/4, 1/4 - |<J>|^2/N^2`.
pub fn per_atom_fluctuation_check(
    state: &ProductState,
    frame: &FrameAngles,
) -> Result<PerAtomReport> {
    let n = state.n_atoms();
    let collective = collective_moments(state);
    let len2 = collective.mean_len2();
    let expected = [0.25, 0.25, 0.25 - len2 / (n * n) as f64];
    let variances = (0..n)
        .map(|i| single_atom_primed_variances(state, i, frame))
        .collect::<Result<Vec<_>>>()?;
    let max_deviation = variances
        .iter()
        .flat_map(|v| v.iter().zip(&expected).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max);
    Ok(PerAtomReport {
        variances,
        expected,
        max_deviation,
    })
}

/// Collective moments assembled from one- and two-atom expectations.
pub fn collective_moments(state: &ProductState) -> SpinMoments {
    let n = state.n_atoms();
    let ops = pauli_half();
    let mut mean = [0.0f64; 3];
    let mut second = [[0.0f64; 3]; 3];
    for i in 0..n {
        let rho = state.reduced_one(i);
        for a in 0..3 {
            mean[a] += trace_one(&rho, &ops[a]);
            for b in 0..3 {
                second[a][b] += trace_one(&rho, &mat2_mul(&ops[a], &ops[b]));
            }
        }
        for l in (0..n).filter(|&l| l != i) {
            let rho = state.reduced_pair(i, l);
            for a in 0..3 {
                for b in 0..3 {
                    second[a][b] += trace_pair(&rho, &ops[a], &ops[b]);
                }
            }
        }
    }
    SpinMoments {
        jx: mean[0],
        jy: mean[1],
        jz: mean[2],
        jx2: second[0][0],
        jy2: second[1][1],
        jz2: second[2][2],
        xy: second[0][1] + second[1][0],
        yz: second[1][2] + second[2][1],
        xz: second[0][2] + second[2][0],
    }
}
