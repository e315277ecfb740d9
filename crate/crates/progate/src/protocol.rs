//! Storage and stochastic retrieval of z-axis rotations.
//!
//! A rotation angle is written into an N-qubit register of equatorial
//! states (qubit l holds the doubled angle 2^{l-1}·α), retrieved by a
//! cascade of multi-controlled X gates that kick the rotation back onto the
//! data qubit, and heralded by measuring the program register: any outcome
//! other than all-ones leaves the data in the rotated state, while all-ones
//! leaves a known residual that later attempts can correct.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::statevec::{MeasuredBranch, StateVector, Unitary2};

/// Largest supported program register.
pub const MAX_PROGRAM_QUBITS: usize = 20;

/// Default retry budget for [`run_adaptive`]; leaves an un-terminated-run
/// probability of 2^-64.
pub const DEFAULT_MAX_ATTEMPTS: usize = 64;

/// Rotation angle in radians, canonicalized to [0, 2π) on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    pub fn new(radians: f64) -> Self {
        let tau = std::f64::consts::TAU;
        let mut r = radians.rem_euclid(tau);
        // rem_euclid of a tiny negative value can round up to τ itself.
        if r >= tau {
            r = 0.0;
        }
        Angle(r)
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    /// The angle 2^doublings · self, canonicalized. The doubling itself is
    /// exact in binary floating point.
    pub fn doubled(self, doublings: u32) -> Self {
        Angle::new(self.0 * f64::powi(2.0, doublings as i32))
    }

    /// Sum of two angles, canonicalized.
    pub fn plus(self, other: Angle) -> Self {
        Angle::new(self.0 + other.0)
    }
}

/// The z-rotation diag(e^{iα/2}, e^{-iα/2}).
pub fn rotation_z(alpha: Angle) -> Unitary2 {
    rotation_z_raw(alpha.radians())
}

/// Half-angle z-rotation matrix for a raw, un-canonicalized angle. Needed
/// where exact matrix powers matter: diag(e^{ikα/2}, e^{-ikα/2}) is the
/// k-th power of the α rotation, while the canonicalized angle differs from
/// it by a global sign whenever kα wraps past 2π.
pub(crate) fn rotation_z_raw(radians: f64) -> Unitary2 {
    Unitary2::from_entries_unchecked([
        [
            Complex64::from_polar(1.0, radians / 2.0),
            Complex64::new(0.0, 0.0),
        ],
        [
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(1.0, -radians / 2.0),
        ],
    ])
}

/// The equatorial state (e^{iθ/2}|0⟩ + e^{-iθ/2}|1⟩)/√2 storing θ.
pub fn equatorial_state(theta: Angle) -> StateVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let t = theta.radians();
    StateVector::single_qubit(
        Complex64::from_polar(r, t / 2.0),
        Complex64::from_polar(r, -t / 2.0),
    )
    .expect("equatorial state is normalized by construction")
}

/// An N-qubit program register storing a rotation angle.
///
/// Built by [`encode_program`], qubit l-1 (little-endian) holds the
/// equatorial state of angle 2^{l-1}·α.
#[derive(Debug, Clone)]
pub struct ProgramRegister {
    n: usize,
    state: StateVector,
}

impl ProgramRegister {
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn state(&self) -> &StateVector {
        &self.state
    }
}

/// Encodes α into n program qubits: |α⟩ ⊗ |2α⟩ ⊗ … ⊗ |2^{n-1}α⟩.
pub fn encode_program(alpha: Angle, n: usize) -> Result<ProgramRegister> {
    if n == 0 || n > MAX_PROGRAM_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_PROGRAM_QUBITS,
        });
    }
    let mut state = equatorial_state(alpha);
    for l in 1..n {
        state = state.tensor(&equatorial_state(alpha.doubled(l as u32)))?;
    }
    Ok(ProgramRegister { n, state })
}

/// Shifts the stored angle by α₀ without knowing it: applies the exact
/// power U_{α₀}^{2^{l-1}} to program qubit l-1, mapping the program for α
/// to the program for α+α₀ up to a global phase.
pub fn twirl_program(program: &ProgramRegister, alpha0: Angle) -> ProgramRegister {
    let mut state = program.state.clone();
    for l in 0..program.n {
        let power = rotation_z_raw(alpha0.radians() * f64::powi(2.0, l as i32));
        state = state
            .apply_single(&power, l)
            .expect("twirl rotation is unitary and in range");
    }
    ProgramRegister {
        n: program.n,
        state,
    }
}

/// Runs the coherent retrieval circuit on a 1-qubit data state.
///
/// The joint register is data qubit 0 followed by program qubits 1..=N.
/// Gate l is a multi-controlled X targeting program qubit l with the data
/// qubit and all earlier program qubits as controls (l = 1 is a plain CNOT,
/// l = 2 a Toffoli). No measurement is performed here.
pub fn cascade(data: &StateVector, program: &ProgramRegister) -> Result<StateVector> {
    if data.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            left: data.num_qubits(),
            right: 1,
        });
    }
    let mut joint = data.tensor(&program.state)?;
    for l in 1..=program.n {
        let controls: Vec<usize> = (0..l).collect();
        joint = joint.apply_mcx(&controls, l)?;
    }
    Ok(joint)
}

/// Result of measuring the program register after the cascade.
#[derive(Debug, Clone)]
pub struct CascadeOutcome {
    /// Measured program bits, first program qubit first.
    pub bits: Vec<u8>,
    /// Born probability of this outcome.
    pub prob: f64,
    /// The data qubit after the measurement.
    pub collapsed_data: StateVector,
    /// True unless every program bit came out 1.
    pub success: bool,
}

/// Measures the n program qubits of a cascade output and classifies the
/// run: any outcome other than all-ones heralds success.
pub fn classify_and_collapse(
    joint: &StateVector,
    n: usize,
    random_draw: f64,
) -> Result<CascadeOutcome> {
    if joint.num_qubits() != n + 1 {
        return Err(Error::DimensionMismatch {
            left: joint.num_qubits(),
            right: n + 1,
        });
    }
    let qubits: Vec<usize> = (1..=n).collect();
    let branch = joint.measure_subset(&qubits, random_draw)?;
    outcome_from_branch(branch)
}

/// Exact branch table of the cascade measurement: every program outcome
/// with its probability and collapsed data state.
pub fn cascade_branches(joint: &StateVector, n: usize) -> Result<Vec<CascadeOutcome>> {
    if joint.num_qubits() != n + 1 {
        return Err(Error::DimensionMismatch {
            left: joint.num_qubits(),
            right: n + 1,
        });
    }
    let qubits: Vec<usize> = (1..=n).collect();
    joint
        .enumerate_branches(&qubits)?
        .into_iter()
        .map(outcome_from_branch)
        .collect()
}

fn outcome_from_branch(branch: MeasuredBranch) -> Result<CascadeOutcome> {
    let success = !branch.bits.iter().all(|&b| b == 1);
    let collapsed_data = extract_data_qubit(&branch.collapsed, &branch.bits)?;
    Ok(CascadeOutcome {
        bits: branch.bits,
        prob: branch.prob,
        collapsed_data,
        success,
    })
}

/// Pulls the 1-qubit data state out of a joint state whose program qubits
/// have collapsed to definite values.
fn extract_data_qubit(collapsed: &StateVector, program_bits: &[u8]) -> Result<StateVector> {
    let mut pattern = 0usize;
    for (j, &b) in program_bits.iter().enumerate() {
        pattern |= (b as usize) << (j + 1);
    }
    StateVector::single_qubit(
        collapsed.amplitude(pattern),
        collapsed.amplitude(pattern | 1),
    )
}

/// Encodes, runs the cascade, and measures, drawing from a seeded generator.
/// Deterministic for a fixed seed.
pub fn run_once(data: &StateVector, alpha: Angle, n: usize, seed: u64) -> Result<CascadeOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_once_with_rng(data, alpha, n, &mut rng)
}

pub(crate) fn run_once_with_rng(
    data: &StateVector,
    alpha: Angle,
    n: usize,
    rng: &mut impl Rng,
) -> Result<CascadeOutcome> {
    let program = encode_program(alpha, n)?;
    let joint = cascade(data, &program)?;
    classify_and_collapse(&joint, n, rng.gen::<f64>())
}

/// Statistics of one adaptive storage-and-retrieval run.
#[derive(Debug, Clone)]
pub struct AdaptiveRunStats {
    pub attempts: usize,
    /// One program qubit is consumed per attempt.
    pub program_qubits_consumed: usize,
    pub final_data: StateVector,
    pub succeeded: bool,
}

/// Retries the single-qubit gate until it succeeds, doubling the program
/// angle each attempt so that one success corrects all earlier failures.
///
/// Attempt l uses program angle 2^{l-1}·α on the current data state. After
/// k consecutive failures the data holds the residual rotated by the
/// adjoint of the (2^k - 1)-fold angle; the next success restores exactly
/// the intended rotation. An exhausted budget reports `succeeded = false`
/// with the residual state rather than an error.
pub fn run_adaptive(
    data: &StateVector,
    alpha: Angle,
    seed: u64,
    max_attempts: usize,
) -> Result<AdaptiveRunStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run_adaptive_with_rng(data, alpha, max_attempts, &mut rng)
}

pub(crate) fn run_adaptive_with_rng(
    data: &StateVector,
    alpha: Angle,
    max_attempts: usize,
    rng: &mut impl Rng,
) -> Result<AdaptiveRunStats> {
    if data.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            left: data.num_qubits(),
            right: 1,
        });
    }
    let mut current = data.clone();
    for attempt in 1..=max_attempts.max(1) {
        let angle = alpha.doubled((attempt - 1) as u32);
        let outcome = run_once_with_rng(&current, angle, 1, rng)?;
        current = outcome.collapsed_data;
        if outcome.success {
            return Ok(AdaptiveRunStats {
                attempts: attempt,
                program_qubits_consumed: attempt,
                final_data: current,
                succeeded: true,
            });
        }
    }
    Ok(AdaptiveRunStats {
        attempts: max_attempts.max(1),
        program_qubits_consumed: max_attempts.max(1),
        final_data: current,
        succeeded: false,
    })
}

/// One branch of the sequential measure-after-each-attempt protocol.
#[derive(Debug, Clone)]
pub struct SequentialBranch {
    /// Measured bits up to and including the stopping attempt.
    pub bits: Vec<u8>,
    pub prob: f64,
    pub data: StateVector,
    pub success: bool,
}

/// Exact branch table of the sequential protocol: run the single-qubit gate
/// with program angle 2^{l-1}·α at attempt l, measuring after each gate and
/// stopping at the first 0 outcome, for at most n attempts.
///
/// Returns n+1 branches: success at attempt k (probability 2^-k) for
/// k = 1..=n, plus the all-ones failure branch (probability 2^-n). The
/// coherent [`cascade`] reproduces this table branch by branch once its
/// outcomes are grouped by the position of their first 0.
pub fn sequential_branches(
    data: &StateVector,
    alpha: Angle,
    n: usize,
) -> Result<Vec<SequentialBranch>> {
    if data.num_qubits() != 1 {
        return Err(Error::DimensionMismatch {
            left: data.num_qubits(),
            right: 1,
        });
    }
    if n == 0 || n > MAX_PROGRAM_QUBITS {
        return Err(Error::Capacity {
            requested: n,
            max: MAX_PROGRAM_QUBITS,
        });
    }
    let mut branches = Vec::with_capacity(n + 1);
    let mut prefix: Vec<u8> = Vec::new();
    let mut prob_so_far = 1.0;
    let mut current = data.clone();
    for attempt in 0..n {
        let program = encode_program(alpha.doubled(attempt as u32), 1)?;
        let joint = cascade(&current, &program)?;
        let step = cascade_branches(&joint, 1)?;
        debug_assert_eq!(step.len(), 2);
        for outcome in &step {
            if outcome.success {
                let mut bits = prefix.clone();
                bits.push(0);
                branches.push(SequentialBranch {
                    bits,
                    prob: prob_so_far * outcome.prob,
                    data: outcome.collapsed_data.clone(),
                    success: true,
                });
            } else {
                prefix.push(1);
                prob_so_far *= outcome.prob;
                current = outcome.collapsed_data.clone();
            }
        }
    }
    branches.push(SequentialBranch {
        bits: prefix,
        prob: prob_so_far,
        data: current,
        success: false,
    });
    Ok(branches)
}
