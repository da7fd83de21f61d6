//! Exact complex linear algebra for the three-qubit register the games run on.
//!
//! Everything is dense and fixed at dimension 8: states are vectors of eight
//! amplitudes, operators are 2x2 (one qubit) or 8x8 (the full register), and
//! the only measurement is the projective measurement of the first qubit in
//! the computational basis. Basis states are indexed by `x = 4*x1 + 2*x2 + x3`
//! with qubit 1 most significant.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Dimension of the three-qubit Hilbert space.
pub const DIM: usize = 8;

/// Tolerance for algebraic identities (unitarity, normalization, traces).
pub const ALGEBRA_TOL: f64 = 1e-12;

/// Tolerance accepted on externally supplied amplitudes before renormalizing.
pub const INPUT_NORM_TOL: f64 = 1e-9;

/// Below this, a measurement branch is reported as empty rather than
/// normalized by a vanishing probability.
pub const ZERO_BRANCH_TOL: f64 = 1e-15;

/// Basis index of the computational state `|x1 x2 x3>`.
#[inline]
pub fn basis_index(x1: u8, x2: u8, x3: u8) -> usize {
    debug_assert!(x1 <= 1 && x2 <= 1 && x3 <= 1);
    (4 * x1 + 2 * x2 + x3) as usize
}

/// Bits `(x1, x2, x3)` of a basis index.
#[inline]
pub fn basis_bits(index: usize) -> (u8, u8, u8) {
    debug_assert!(index < DIM);
    ((index as u8 >> 2) & 1, (index as u8 >> 1) & 1, index as u8 & 1)
}

/// A 2x2 complex operator acting on a single qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator2 {
    pub entries: [[C64; 2]; 2],
}

impl Operator2 {
    pub fn identity() -> Self {
        Self {
            entries: [
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(0.0, 0.0), C64::new(1.0, 0.0)],
            ],
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut entries = [[C64::new(0.0, 0.0); 2]; 2];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.entries[j][i].conj();
            }
        }
        Self { entries }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut entries = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    entries[i][j] += self.entries[i][k] * other.entries[k][j];
                }
            }
        }
        Self { entries }
    }

    /// Max absolute deviation of `U† U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.adjoint().mul(self);
        let mut defect: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((product.entries[i][j] - expected).norm());
            }
        }
        defect
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

/// The identity (`index = 0`) or the bit flip (`index = 1`).
pub fn pauli(index: u8) -> Operator2 {
    assert!(index <= 1, "pauli index must be 0 or 1");
    let z = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    if index == 0 {
        Operator2 {
            entries: [[one, z], [z, one]],
        }
    } else {
        Operator2 {
            entries: [[z, one], [one, z]],
        }
    }
}

/// The two-parameter unitary
/// `[[cos(θ/2), i e^{iβ} sin(θ/2)], [i e^{-iβ} sin(θ/2), cos(θ/2)]]`
/// with `θ ∈ [0, π]` and `β ∈ [0, π/2]`.
pub fn u_theta_beta(theta: f64, beta: f64) -> Result<Operator2> {
    check_angle("theta", theta, 0.0, std::f64::consts::PI)?;
    check_angle("beta", beta, 0.0, std::f64::consts::FRAC_PI_2)?;
    let half = theta / 2.0;
    let (sin, cos) = (half.sin(), half.cos());
    let i = C64::new(0.0, 1.0);
    let phase = C64::from_polar(1.0, beta);
    Ok(Operator2 {
        entries: [
            [C64::new(cos, 0.0), i * phase * sin],
            [i * phase.conj() * sin, C64::new(cos, 0.0)],
        ],
    })
}

pub(crate) fn check_angle(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    // Tiny slack so values like 2*acos(sqrt(p)) landing a few ulp past the
    // boundary are accepted and clamped.
    if !value.is_finite() || value < min - INPUT_NORM_TOL || value > max + INPUT_NORM_TOL {
        return Err(Error::AngleOutOfRange {
            name,
            value,
            min,
            max,
        });
    }
    Ok(value.clamp(min, max))
}

/// An 8x8 complex operator acting on the full register.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Operator8 {
    pub entries: [[C64; DIM]; DIM],
}

impl Operator8 {
    pub fn zero() -> Self {
        Self {
            entries: [[C64::new(0.0, 0.0); DIM]; DIM],
        }
    }

    pub fn identity() -> Self {
        let mut op = Self::zero();
        for (x, row) in op.entries.iter_mut().enumerate() {
            row[x] = C64::new(1.0, 0.0);
        }
        op
    }

    pub fn adjoint(&self) -> Self {
        let mut op = Self::zero();
        for i in 0..DIM {
            for j in 0..DIM {
                op.entries[i][j] = self.entries[j][i].conj();
            }
        }
        op
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut op = Self::zero();
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.entries[i][k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..DIM {
                    op.entries[i][j] += a * other.entries[k][j];
                }
            }
        }
        op
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut op = *self;
        for (i, row) in op.entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e += other.entries[i][j];
            }
        }
        op
    }

    /// Max absolute deviation of `U† U` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let product = self.adjoint().mul(self);
        let mut defect: f64 = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                let expected = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((product.entries[i][j] - expected).norm());
            }
        }
        defect
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

/// Kronecker product `a ⊗ b ⊗ c`, qubit 1 most significant.
pub fn tensor3(a: &Operator2, b: &Operator2, c: &Operator2) -> Operator8 {
    let mut op = Operator8::zero();
    for i in 0..DIM {
        let (i1, i2, i3) = basis_bits(i);
        for j in 0..DIM {
            let (j1, j2, j3) = basis_bits(j);
            op.entries[i][j] = a.entries[i1 as usize][j1 as usize]
                * b.entries[i2 as usize][j2 as usize]
                * c.entries[i3 as usize][j3 as usize];
        }
    }
    op
}

/// The measurement projector `M_ι = |ι><ι| ⊗ I ⊗ I` on the first qubit.
pub fn first_qubit_projector(iota: u8) -> Operator8 {
    assert!(iota <= 1, "measurement outcome must be 0 or 1");
    let mut op = Operator8::zero();
    for x in 0..DIM {
        let (x1, _, _) = basis_bits(x);
        if x1 == iota {
            op.entries[x][x] = C64::new(1.0, 0.0);
        }
    }
    op
}

/// A normalized pure state of the three-qubit register.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState {
    amplitudes: [C64; DIM],
}

impl PureState {
    /// Builds a state from raw amplitudes. Rejects non-finite entries and
    /// squared norms further than `1e-9` from 1, then renormalizes exactly.
    pub fn new(amplitudes: [C64; DIM]) -> Result<Self> {
        for (x, amp) in amplitudes.iter().enumerate() {
            if !amp.re.is_finite() || !amp.im.is_finite() {
                return Err(Error::NonFiniteAmplitude(x));
            }
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        let defect = (norm_sqr - 1.0).abs();
        if defect > INPUT_NORM_TOL {
            return Err(Error::NotNormalized(defect));
        }
        let scale = 1.0 / norm_sqr.sqrt();
        let mut amplitudes = amplitudes;
        for amp in amplitudes.iter_mut() {
            *amp *= scale;
        }
        Ok(Self { amplitudes })
    }

    /// The computational basis state `|x1 x2 x3>`.
    pub fn basis(x1: u8, x2: u8, x3: u8) -> Self {
        let mut amplitudes = [C64::new(0.0, 0.0); DIM];
        amplitudes[basis_index(x1, x2, x3)] = C64::new(1.0, 0.0);
        Self { amplitudes }
    }

    pub fn amplitudes(&self) -> &[C64; DIM] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> C64 {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Inner product `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Matrix-vector product `op |state>`. The result is not renormalized, so
/// norm preservation under unitaries is observable.
pub fn apply(op: &Operator8, state: &PureState) -> PureState {
    let mut amplitudes = [C64::new(0.0, 0.0); DIM];
    for (i, out) in amplitudes.iter_mut().enumerate() {
        for j in 0..DIM {
            *out += op.entries[i][j] * state.amplitudes[j];
        }
    }
    PureState { amplitudes }
}

/// An 8x8 density matrix. Normalized states carry trace 1; intermediate
/// measurement pieces may carry trace equal to their branch probability.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix {
    pub entries: [[C64; DIM]; DIM],
}

impl DensityMatrix {
    pub fn zero() -> Self {
        Self {
            entries: [[C64::new(0.0, 0.0); DIM]; DIM],
        }
    }

    pub fn trace(&self) -> f64 {
        (0..DIM).map(|x| self.entries[x][x].re).sum()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let mut defect: f64 = 0.0;
        for i in 0..DIM {
            for j in 0..DIM {
                defect = defect.max((self.entries[i][j] - self.entries[j][i].conj()).norm());
            }
        }
        defect
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    /// Smallest eigenvalue, for positive-semidefiniteness checks.
    ///
    /// Embeds the Hermitian matrix `A + iB` as the real symmetric matrix
    /// `[[A, -B], [B, A]]` (same spectrum, doubled) and runs cyclic Jacobi.
    pub fn min_eigenvalue(&self) -> f64 {
        const N: usize = 2 * DIM;
        let mut m = [[0.0_f64; N]; N];
        for i in 0..DIM {
            for j in 0..DIM {
                m[i][j] = self.entries[i][j].re;
                m[i][j + DIM] = -self.entries[i][j].im;
                m[i + DIM][j] = self.entries[i][j].im;
                m[i + DIM][j + DIM] = self.entries[i][j].re;
            }
        }
        for _sweep in 0..60 {
            let mut off = 0.0;
            for p in 0..N {
                for q in (p + 1)..N {
                    off += m[p][q] * m[p][q];
                }
            }
            if off.sqrt() < 1e-14 {
                break;
            }
            for p in 0..N - 1 {
                for q in (p + 1)..N {
                    if m[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..N {
                        let mkp = m[k][p];
                        let mkq = m[k][q];
                        m[k][p] = c * mkp - s * mkq;
                        m[k][q] = s * mkp + c * mkq;
                    }
                    for k in 0..N {
                        let mpk = m[p][k];
                        let mqk = m[q][k];
                        m[p][k] = c * mpk - s * mqk;
                        m[q][k] = s * mpk + c * mqk;
                    }
                }
            }
        }
        (0..N).map(|i| m[i][i]).fold(f64::INFINITY, f64::min)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = *self;
        for row in out.entries.iter_mut() {
            for e in row.iter_mut() {
                *e *= factor;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = *self;
        for (i, row) in out.entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e += other.entries[i][j];
            }
        }
        out
    }
}

/// Outer product `|state><state|`.
pub fn to_density(state: &PureState) -> DensityMatrix {
    let mut rho = DensityMatrix::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            rho.entries[i][j] = state.amplitude(i) * state.amplitude(j).conj();
        }
    }
    rho
}

/// Conjugation `op · rho · op†`.
pub fn conjugate_density(op: &Operator8, rho: &DensityMatrix) -> DensityMatrix {
    // (op · rho) · op†
    let mut tmp = [[C64::new(0.0, 0.0); DIM]; DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            let a = op.entries[i][k];
            if a == C64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..DIM {
                tmp[i][j] += a * rho.entries[k][j];
            }
        }
    }
    let mut out = DensityMatrix::zero();
    for i in 0..DIM {
        for j in 0..DIM {
            let mut sum = C64::new(0.0, 0.0);
            for k in 0..DIM {
                sum += tmp[i][k] * op.entries[j][k].conj();
            }
            out.entries[i][j] = sum;
        }
    }
    out
}

/// One outcome of the first-qubit measurement. A branch of (numerically)
/// zero probability carries no post-state.
#[derive(Clone, Copy, Debug)]
pub struct MeasurementBranch {
    pub outcome: u8,
    pub probability: f64,
    pub post_state: Option<DensityMatrix>,
}

/// Projective measurement of the first qubit with `M_ι = |ι><ι| ⊗ I ⊗ I`.
///
/// Branch `ι` has probability `tr(M_ι ρ)` and normalized post-state
/// `M_ι ρ M_ι / p_ι`; the two probabilities sum to `tr(ρ)`.
pub fn measure_first_qubit(rho: &DensityMatrix) -> [MeasurementBranch; 2] {
    [0u8, 1u8].map(|iota| {
        let block = |x: usize| basis_bits(x).0 == iota;
        let probability: f64 = (0..DIM).filter(|&x| block(x)).map(|x| rho.entries[x][x].re).sum();
        if probability < ZERO_BRANCH_TOL {
            return MeasurementBranch {
                outcome: iota,
                probability: 0.0,
                post_state: None,
            };
        }
        let mut post = DensityMatrix::zero();
        for i in (0..DIM).filter(|&x| block(x)) {
            for j in (0..DIM).filter(|&x| block(x)) {
                post.entries[i][j] = rho.entries[i][j] / probability;
            }
        }
        MeasurementBranch {
            outcome: iota,
            probability,
            post_state: Some(post),
        }
    })
}
