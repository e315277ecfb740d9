//! Dense statevector simulation of multi-qubit registers.
//!
//! Amplitudes are stored little-endian: bit `k` of an amplitude index is the
//! basis value of qubit `k`. All public operations return fresh, normalized
//! states; a [`StateVector`] is immutable once built and can be shared freely
//! across threads.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex amplitude of a basis state.
pub type Amplitude = Complex64;

/// Index of a qubit within a register (little-endian bit position).
pub type QubitIndex = usize;

/// Hard cap on register width for the dense representation.
pub const MAX_QUBITS: usize = 24;

/// Tolerance for the Σ|amplitude|² = 1 invariant of public states.
pub const NORM_TOL: f64 = 1e-10;

/// Maximum allowed deviation of U†U from the identity.
pub const UNITARY_TOL: f64 = 1e-8;

/// Branch weights below this are treated as numerically zero.
const ZERO_WEIGHT: f64 = 1e-14;

/// A 2×2 unitary matrix acting on a single qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2 {
    entries: [[Complex64; 2]; 2],
}

impl Unitary2 {
    /// Builds a unitary from row-major entries, rejecting matrices whose
    /// U†U deviates from the identity by more than [`UNITARY_TOL`].
    pub fn new(entries: [[Complex64; 2]; 2]) -> Result<Self> {
        let u = Self { entries };
        let dev = u.unitarity_deviation();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        Ok(u)
    }

    pub(crate) fn from_entries_unchecked(entries: [[Complex64; 2]; 2]) -> Self {
        Self { entries }
    }

    pub fn identity() -> Self {
        Self::from_entries_unchecked([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn pauli_x() -> Self {
        Self::from_entries_unchecked([
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
    }

    pub fn hadamard() -> Self {
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::from_entries_unchecked([[h, h], [h, -h]])
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row][col]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_entries_unchecked([
            [self.entries[0][0].conj(), self.entries[1][0].conj()],
            [self.entries[0][1].conj(), self.entries[1][1].conj()],
        ])
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Unitary2) -> Self {
        let a = &self.entries;
        let b = &other.entries;
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self::from_entries_unchecked(out)
    }

    /// Applies the matrix to a bare 2-component vector.
    pub fn apply_to(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        [
            self.entries[0][0] * v[0] + self.entries[0][1] * v[1],
            self.entries[1][0] * v[0] + self.entries[1][1] * v[1],
        ]
    }

    /// Max entrywise deviation of U†U from the identity.
    pub fn unitarity_deviation(&self) -> f64 {
        let prod = self.adjoint().mul(self);
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let expect = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                dev = dev.max((prod.entries[i][j] - expect).norm());
            }
        }
        dev
    }

    /// Max entrywise distance to another matrix.
    pub fn max_entry_distance(&self, other: &Unitary2) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                dev = dev.max((self.entries[i][j] - other.entries[i][j]).norm());
            }
        }
        dev
    }
}

/// One branch of a projective measurement: the observed bits (in the order
/// the measured qubits were listed), its exact Born probability, and the
/// renormalized post-measurement state on all qubits.
#[derive(Debug, Clone)]
pub struct MeasuredBranch {
    pub bits: Vec<u8>,
    pub prob: f64,
    pub collapsed: StateVector,
}

/// Normalized pure state of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Amplitude>,
}

impl StateVector {
    /// The all-zeros state |0…0⟩.
    pub fn zero_state(num_qubits: usize) -> Result<Self> {
        Self::computational_basis(num_qubits, 0)
    }

    /// Basis state with the given little-endian index.
    pub fn computational_basis(num_qubits: usize, index: usize) -> Result<Self> {
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::InvalidState {
                reason: format!("basis index {index} out of range for dimension {dim}"),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amps })
    }

    /// Builds a state from raw amplitudes, which must be finite, of
    /// power-of-two length, and normalized within [`NORM_TOL`].
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let dim = amps.len();
        if dim == 0 || !dim.is_power_of_two() {
            return Err(Error::InvalidState {
                reason: format!("amplitude count {dim} is not a power of two"),
            });
        }
        let num_qubits = dim.trailing_zeros() as usize;
        if num_qubits > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: num_qubits,
                max: MAX_QUBITS,
            });
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::InvalidState {
                reason: "non-finite amplitude".into(),
            });
        }
        let norm_sqr: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState {
                reason: format!("norm² = {norm_sqr} is not 1"),
            });
        }
        Ok(Self { num_qubits, amps })
    }

    /// Single-qubit state a₀|0⟩ + a₁|1⟩.
    pub fn single_qubit(a0: Amplitude, a1: Amplitude) -> Result<Self> {
        Self::from_amplitudes(vec![a0, a1])
    }

    /// Bloch-sphere state cos(θ/2)|0⟩ + e^{iφ} sin(θ/2)|1⟩.
    pub fn from_bloch(theta: f64, phi: f64) -> Self {
        let a0 = Complex64::new((theta / 2.0).cos(), 0.0);
        let a1 = Complex64::from_polar((theta / 2.0).sin(), phi);
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        Self {
            num_qubits: 1,
            amps: vec![a0 / norm, a1 / norm],
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Tensor product; qubits of `self` keep the low indices, qubits of
    /// `other` move to the high indices.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let total = self.num_qubits + other.num_qubits;
        if total > MAX_QUBITS {
            return Err(Error::Capacity {
                requested: total,
                max: MAX_QUBITS,
            });
        }
        let mut amps = Vec::with_capacity(1 << total);
        for b in &other.amps {
            for a in &self.amps {
                amps.push(a * b);
            }
        }
        Ok(StateVector {
            num_qubits: total,
            amps,
        })
    }

    /// Applies a single-qubit unitary to qubit `q`.
    pub fn apply_single(&self, u: &Unitary2, q: QubitIndex) -> Result<StateVector> {
        self.check_qubit(q)?;
        let dev = u.unitarity_deviation();
        if dev > UNITARY_TOL {
            return Err(Error::NotUnitary { deviation: dev });
        }
        let mut amps = self.amps.clone();
        let step = 1usize << q;
        let u00 = u.entry(0, 0);
        let u01 = u.entry(0, 1);
        let u10 = u.entry(1, 0);
        let u11 = u.entry(1, 1);
        for base in (0..amps.len()).step_by(2 * step) {
            for offset in 0..step {
                let i = base + offset;
                let j = i + step;
                let a = amps[i];
                let b = amps[j];
                amps[i] = u00 * a + u01 * b;
                amps[j] = u10 * a + u11 * b;
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// Multi-controlled X: flips `target` on exactly those basis states where
    /// every control bit is 1. An empty control list is a plain X.
    pub fn apply_mcx(&self, controls: &[QubitIndex], target: QubitIndex) -> Result<StateVector> {
        self.check_qubit(target)?;
        let mut seen = vec![false; self.num_qubits];
        seen[target] = true;
        for &c in controls {
            self.check_qubit(c)?;
            if seen[c] {
                return Err(Error::DuplicateQubit { index: c });
            }
            seen[c] = true;
        }
        let control_mask: usize = controls.iter().map(|&c| 1usize << c).sum();
        let target_mask = 1usize << target;
        let mut amps = self.amps.clone();
        for i in 0..amps.len() {
            if i & control_mask == control_mask && i & target_mask == 0 {
                amps.swap(i, i | target_mask);
            }
        }
        Ok(StateVector {
            num_qubits: self.num_qubits,
            amps,
        })
    }

    /// ⟨self|other⟩, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Amplitude> {
        if self.num_qubits != other.num_qubits {
            return Err(Error::DimensionMismatch {
                left: self.num_qubits,
                right: other.num_qubits,
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// |⟨self|other⟩| ∈ [0,1]; invariant under global phases on either state.
    pub fn fidelity_up_to_phase(&self, other: &StateVector) -> Result<f64> {
        Ok(self.inner_product(other)?.norm())
    }

    /// Projectively measures the listed qubits in the computational basis.
    ///
    /// The outcome is drawn from the Born distribution by cumulative
    /// inversion of `random_draw` ∈ [0,1), walking outcomes in lexicographic
    /// order of their bitstrings (first listed qubit = leftmost bit). The
    /// returned probability is exact, and the collapsed state keeps all
    /// qubits, with the measured ones fixed to the outcome.
    pub fn measure_subset(
        &self,
        qubits: &[QubitIndex],
        random_draw: f64,
    ) -> Result<MeasuredBranch> {
        let probs = self.outcome_probabilities(qubits)?;
        let mut cumulative = 0.0;
        let mut chosen = None;
        let mut last_nonzero = None;
        for (outcome, &p) in probs.iter().enumerate() {
            if p <= ZERO_WEIGHT {
                continue;
            }
            last_nonzero = Some(outcome);
            cumulative += p;
            if random_draw < cumulative {
                chosen = Some(outcome);
                break;
            }
        }
        // A draw at the very top of [0,1) can overshoot the rounded
        // cumulative sum; it belongs to the last nonzero branch.
        let outcome = chosen
            .or(last_nonzero)
            .ok_or(Error::VanishingBranch { prob: 0.0 })?;
        self.collapse_outcome(qubits, outcome, probs[outcome])
    }

    /// Every outcome of nonzero probability for a measurement of `qubits`,
    /// in lexicographic bitstring order. Probabilities sum to 1.
    pub fn enumerate_branches(&self, qubits: &[QubitIndex]) -> Result<Vec<MeasuredBranch>> {
        let probs = self.outcome_probabilities(qubits)?;
        let mut branches = Vec::new();
        for (outcome, &p) in probs.iter().enumerate() {
            if p > ZERO_WEIGHT {
                branches.push(self.collapse_outcome(qubits, outcome, p)?);
            }
        }
        Ok(branches)
    }

    /// Probability-only variant of [`enumerate_branches`]: all nonzero
    /// outcomes with their exact Born probabilities, no collapsed states.
    /// One pass over the amplitudes, so it stays cheap for wide registers.
    ///
    /// [`enumerate_branches`]: StateVector::enumerate_branches
    pub fn branch_probabilities(&self, qubits: &[QubitIndex]) -> Result<Vec<(Vec<u8>, f64)>> {
        let probs = self.outcome_probabilities(qubits)?;
        Ok(probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > ZERO_WEIGHT)
            .map(|(outcome, &p)| (outcome_bits(outcome, qubits.len()), p))
            .collect())
    }

    /// Born probabilities for all 2^m outcomes, indexed big-endian in the
    /// order of `qubits` (lexicographic bitstring order).
    fn outcome_probabilities(&self, qubits: &[QubitIndex]) -> Result<Vec<f64>> {
        let m = qubits.len();
        let mut seen = vec![false; self.num_qubits];
        for &q in qubits {
            self.check_qubit(q)?;
            if seen[q] {
                return Err(Error::DuplicateQubit { index: q });
            }
            seen[q] = true;
        }
        let mut probs = vec![0.0f64; 1 << m];
        for (i, a) in self.amps.iter().enumerate() {
            probs[outcome_key(i, qubits)] += a.norm_sqr();
        }
        Ok(probs)
    }

    fn collapse_outcome(
        &self,
        qubits: &[QubitIndex],
        outcome: usize,
        prob: f64,
    ) -> Result<MeasuredBranch> {
        if prob < ZERO_WEIGHT {
            return Err(Error::VanishingBranch { prob });
        }
        let scale = 1.0 / prob.sqrt();
        let mut amps = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            if outcome_key(i, qubits) == outcome {
                amps[i] = a * scale;
            }
        }
        Ok(MeasuredBranch {
            bits: outcome_bits(outcome, qubits.len()),
            prob,
            collapsed: StateVector {
                num_qubits: self.num_qubits,
                amps,
            },
        })
    }

    fn check_qubit(&self, q: QubitIndex) -> Result<()> {
        if q >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                index: q,
                num_qubits: self.num_qubits,
            });
        }
        Ok(())
    }
}

/// Big-endian outcome key of amplitude index `i`: the first listed qubit is
/// the most significant bit, so ascending keys walk bitstrings in
/// lexicographic order.
fn outcome_key(i: usize, qubits: &[QubitIndex]) -> usize {
    let m = qubits.len();
    let mut key = 0usize;
    for (j, &q) in qubits.iter().enumerate() {
        key |= ((i >> q) & 1) << (m - 1 - j);
    }
    key
}

fn outcome_bits(outcome: usize, m: usize) -> Vec<u8> {
    (0..m)
        .map(|j| ((outcome >> (m - 1 - j)) & 1) as u8)
        .collect()
}
