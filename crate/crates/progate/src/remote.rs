//! Remote execution of SU(2) operations and its resource cost.
//!
//! An arbitrary single-qubit unitary is split into three z-rotations
//! interleaved with fixed Hadamards (z–x–z, with the middle rotation
//! conjugated into the x axis). Each rotation is stored in program qubits
//! and retrieved with the adaptive protocol; teleporting one program qubit
//! costs one ebit and one classical bit, which is all this module accounts
//! for — the receiving side applies the Hadamards locally for free.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::analysis::expected_program_length;
use crate::error::{Error, Result};
use crate::protocol::{rotation_z, run_adaptive_with_rng, Angle, DEFAULT_MAX_ATTEMPTS};
use crate::statevec::{StateVector, Unitary2, UNITARY_TOL};

/// Angle tolerance below which the middle rotation counts as degenerate.
const DEGENERACY_TOL: f64 = 1e-12;

/// Number of z-rotations a general SU(2) operation decomposes into.
const ROTATIONS_PER_SU2: usize = 3;

/// z–x–z decomposition of a single-qubit unitary:
/// u = e^{iφ} · Rz(a) · H · Rz(b) · H · Rz(c).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SU2Decomposition {
    pub global_phase: f64,
    pub a: Angle,
    pub b: Angle,
    pub c: Angle,
}

impl SU2Decomposition {
    /// Multiplies the decomposition back together, phase included.
    pub fn reconstruct(&self) -> Unitary2 {
        let h = Unitary2::hadamard();
        let bare = rotation_z(self.a)
            .mul(&h)
            .mul(&rotation_z(self.b))
            .mul(&h)
            .mul(&rotation_z(self.c));
        let phase = num_complex::Complex64::from_polar(1.0, self.global_phase);
        let mut entries = [[num_complex::Complex64::new(0.0, 0.0); 2]; 2];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = bare.entry(i, j) * phase;
            }
        }
        Unitary2::from_entries_unchecked(entries)
    }
}

/// Entanglement and classical-communication cost of a remote execution.
/// One teleported program qubit costs one ebit and one classical bit, so
/// the three counters always agree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ResourceTally {
    pub ebits: usize,
    pub cbits: usize,
    pub program_qubits: usize,
}

impl ResourceTally {
    fn charge_program_qubits(&mut self, count: usize) {
        self.ebits += count;
        self.cbits += count;
        self.program_qubits += count;
    }
}

/// Result of one remote execution: the processed data qubit, the resource
/// bill, and whether all three adaptive retrievals succeeded within budget.
#[derive(Debug, Clone)]
pub struct RemoteRunOutcome {
    pub final_data: StateVector,
    pub tally: ResourceTally,
    pub succeeded: bool,
}

/// Decomposes a single-qubit unitary into z–x–z Euler angles.
///
/// Branch convention: b ∈ [0, π] and a, c ∈ [0, 2π). When the middle angle
/// is degenerate (b = 0 or b = π within 1e-12) the whole z-rotation folds
/// into `a` and `c` is set to 0. Any determinant phase goes into
/// `global_phase`, so the reconstruction matches entrywise, not merely up
/// to phase.
pub fn euler_zxz(u: &Unitary2) -> Result<SU2Decomposition> {
    let dev = u.unitarity_deviation();
    if dev > UNITARY_TOL {
        return Err(Error::NotUnitary { deviation: dev });
    }
    let u00 = u.entry(0, 0);
    let u01 = u.entry(0, 1);
    let u10 = u.entry(1, 0);
    let u11 = u.entry(1, 1);

    // atan2 recovers b accurately even where one of cos(b/2), sin(b/2)
    // underflows.
    let b_raw = 2.0 * u01.norm().atan2(u00.norm());

    let decomposition = if b_raw <= DEGENERACY_TOL {
        // Diagonal: u = e^{iφ} diag(e^{ia/2}, e^{-ia/2}).
        let a = Angle::new((u00 * u11.conj()).arg());
        SU2Decomposition {
            global_phase: normalize_phase(u00.arg() - a.radians() / 2.0),
            a,
            b: Angle::ZERO,
            c: Angle::ZERO,
        }
    } else if b_raw >= std::f64::consts::PI - DEGENERACY_TOL {
        // Antidiagonal: u = e^{iφ} [[0, i e^{ia/2}], [i e^{-ia/2}, 0]].
        let a = Angle::new((u01 * u10.conj()).arg());
        SU2Decomposition {
            global_phase: normalize_phase(
                u01.arg() - a.radians() / 2.0 - std::f64::consts::FRAC_PI_2,
            ),
            a,
            b: Angle::new(std::f64::consts::PI),
            c: Angle::ZERO,
        }
    } else {
        // Generic: relative entry phases pin a and c modulo 2π each.
        //   u00·conj(u01) ∝ e^{i(c - π/2)},  u00·conj(u11) ∝ e^{i(a + c)}.
        let c = Angle::new((u00 * u01.conj()).arg() + std::f64::consts::FRAC_PI_2);
        let a = Angle::new((u00 * u11.conj()).arg() - c.radians());
        let b = Angle::new(b_raw);
        let half_sum = (a.radians() + c.radians()) / 2.0;
        SU2Decomposition {
            global_phase: normalize_phase(u00.arg() - half_sum),
            a,
            b,
            c,
        }
    };
    Ok(decomposition)
}

fn normalize_phase(phi: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut p = phi.rem_euclid(tau);
    if p > std::f64::consts::PI {
        p -= tau;
    }
    p
}

/// Executes `u` on the data qubit through the storage protocol: decomposes
/// it into three z-rotations, retrieves each adaptively, and bills one
/// ebit plus one classical bit per program qubit consumed.
///
/// A zero decomposition angle still runs its rotation — the program qubit
/// gets teleported whether or not the stored angle is trivial — so every
/// run bills at least 3 of each resource. Deterministic for a fixed seed.
/// If any adaptive run exhausts its budget (probability 3·2⁻⁶⁴), the
/// outcome reports `succeeded = false` with the partial tally.
pub fn simulate_remote(u: &Unitary2, data: &StateVector, seed: u64) -> Result<RemoteRunOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    simulate_remote_with_rng(u, data, &mut rng)
}

pub(crate) fn simulate_remote_with_rng(
    u: &Unitary2,
    data: &StateVector,
    rng: &mut impl Rng,
) -> Result<RemoteRunOutcome> {
    let decomposition = euler_zxz(u)?;
    let hadamard = Unitary2::hadamard();
    let rotations = [decomposition.c, decomposition.b, decomposition.a];
    let mut state = data.clone();
    let mut tally = ResourceTally::default();
    for (step, &angle) in rotations.iter().enumerate() {
        let stats = run_adaptive_with_rng(&state, angle, DEFAULT_MAX_ATTEMPTS, rng)?;
        tally.charge_program_qubits(stats.program_qubits_consumed);
        state = stats.final_data;
        if !stats.succeeded {
            return Ok(RemoteRunOutcome {
                final_data: state,
                tally,
                succeeded: false,
            });
        }
        // Bob's local basis changes around the middle rotation are free.
        if step < 2 {
            state = state.apply_single(&hadamard, 0)?;
        }
    }
    Ok(RemoteRunOutcome {
        final_data: state,
        tally,
        succeeded: true,
    })
}

/// Expected resource cost (ebits, classical bits) of remotely executing a
/// general SU(2) operation: three rotations at the expected program length
/// apiece, one ebit and one bit per program qubit.
pub fn expected_resources() -> (f64, f64) {
    expected_resources_for(ROTATIONS_PER_SU2)
}

/// Expected cost of a task consisting of `rotations` stored rotations.
pub fn expected_resources_for(rotations: usize) -> (f64, f64) {
    let per_rotation = expected_program_length(60);
    let total = rotations as f64 * per_rotation;
    (total, total)
}

/// Draws a Haar-distributed SU(2) matrix: a uniformly random unit
/// quaternion mapped to [[α, −β̄], [β, ᾱ]].
pub fn haar_random_su2(rng: &mut impl Rng) -> Unitary2 {
    let mut q = [0.0f64; 4];
    let mut norm_sqr = 0.0;
    while norm_sqr < 1e-12 {
        for pair in q.chunks_mut(2) {
            let (g0, g1) = gaussian_pair(rng);
            pair[0] = g0;
            pair[1] = g1;
        }
        norm_sqr = q.iter().map(|x| x * x).sum();
    }
    let norm = norm_sqr.sqrt();
    let alpha = num_complex::Complex64::new(q[0] / norm, q[1] / norm);
    let beta = num_complex::Complex64::new(q[2] / norm, q[3] / norm);
    Unitary2::from_entries_unchecked([[alpha, -beta.conj()], [beta, alpha.conj()]])
}

/// Box–Muller transform of two uniform draws.
fn gaussian_pair(rng: &mut impl Rng) -> (f64, f64) {
    let u1: f64 = 1.0 - rng.gen::<f64>(); // (0, 1], keeps the log finite
    let u2: f64 = rng.gen();
    let radius = (-2.0 * u1.ln()).sqrt();
    let angle = std::f64::consts::TAU * u2;
    (radius * angle.cos(), radius * angle.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;
    use std::f64::consts::{PI, TAU};

    fn apply_matrix(u: &Unitary2, s: &StateVector) -> StateVector {
        let v = u.apply_to([s.amplitude(0), s.amplitude(1)]);
        StateVector::single_qubit(v[0], v[1]).unwrap()
    }

    #[test]
    fn identity_decomposes_to_all_zero() {
        let d = euler_zxz(&Unitary2::identity()).unwrap();
        assert_eq!(d.a, Angle::ZERO);
        assert_eq!(d.b, Angle::ZERO);
        assert_eq!(d.c, Angle::ZERO);
        assert!(d.global_phase.abs() < 1e-15);
    }

    #[test]
    fn plain_z_rotation_folds_into_the_first_angle() {
        for alpha in [0.4, 2.0, 4.4, 6.0] {
            let d = euler_zxz(&rotation_z(Angle::new(alpha))).unwrap();
            assert!((d.a.radians() - alpha).abs() < 1e-12, "alpha={alpha}");
            assert_eq!(d.b, Angle::ZERO);
            assert_eq!(d.c, Angle::ZERO);
            let err = d
                .reconstruct()
                .max_entry_distance(&rotation_z(Angle::new(alpha)));
            assert!(err < 1e-12);
        }
    }

    #[test]
    fn antidiagonal_edge_case_reconstructs() {
        let x = Unitary2::pauli_x();
        let d = euler_zxz(&x).unwrap();
        assert!((d.b.radians() - PI).abs() < 1e-12);
        assert_eq!(d.c, Angle::ZERO);
        assert!(d.reconstruct().max_entry_distance(&x) < 1e-12);
    }

    #[test]
    fn hadamard_reconstructs() {
        let h = Unitary2::hadamard();
        let d = euler_zxz(&h).unwrap();
        assert!(d.reconstruct().max_entry_distance(&h) < 1e-12);
    }

    #[test]
    fn random_su2_reconstructs_entrywise() {
        let mut rng = ChaCha8Rng::seed_from_u64(211);
        for i in 0..1000 {
            let u = haar_random_su2(&mut rng);
            let d = euler_zxz(&u).unwrap();
            assert!((d.b.radians() - PI / 2.0).abs() <= PI / 2.0 + 1e-12);
            let err = d.reconstruct().max_entry_distance(&u);
            assert!(err < 1e-10, "sample {i}: reconstruction error {err}");
        }
    }

    #[test]
    fn phased_unitaries_reconstruct_entrywise() {
        // Exercise determinant phases away from the SU(2) slice.
        let mut rng = ChaCha8Rng::seed_from_u64(223);
        for _ in 0..200 {
            let bare = haar_random_su2(&mut rng);
            let phase = Complex64::from_polar(1.0, rng.gen::<f64>() * TAU);
            let mut entries = [[Complex64::new(0.0, 0.0); 2]; 2];
            for (i, row) in entries.iter_mut().enumerate() {
                for (j, cell) in row.iter_mut().enumerate() {
                    *cell = bare.entry(i, j) * phase;
                }
            }
            let u = Unitary2::new(entries).unwrap();
            let d = euler_zxz(&u).unwrap();
            assert!(d.reconstruct().max_entry_distance(&u) < 1e-10);
        }
    }

    #[test]
    fn non_unitary_input_is_rejected() {
        let bad = Unitary2::from_entries_unchecked([
            [Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ]);
        assert!(matches!(euler_zxz(&bad), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn remote_identity_returns_the_data_and_bills_three_rotations() {
        let d = StateVector::from_bloch(1.0, 2.0);
        let outcome = simulate_remote(&Unitary2::identity(), &d, 5).unwrap();
        assert!(outcome.succeeded);
        assert!(outcome.tally.ebits >= 3);
        assert_eq!(outcome.tally.ebits, outcome.tally.cbits);
        assert_eq!(outcome.tally.ebits, outcome.tally.program_qubits);
        let fid = outcome.final_data.fidelity_up_to_phase(&d).unwrap();
        assert!((fid - 1.0).abs() < 1e-10);
    }

    #[test]
    fn remote_execution_applies_the_target_up_to_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(227);
        for seed in 0..50u64 {
            let u = haar_random_su2(&mut rng);
            let d = StateVector::from_bloch(rng.gen::<f64>() * PI, rng.gen::<f64>() * TAU);
            let outcome = simulate_remote(&u, &d, seed).unwrap();
            assert!(outcome.succeeded);
            let expect = apply_matrix(&u, &d);
            let fid = outcome.final_data.fidelity_up_to_phase(&expect).unwrap();
            assert!((fid - 1.0).abs() < 1e-10, "seed={seed} fid={fid}");
        }
    }

    #[test]
    fn identical_seeds_give_identical_runs() {
        let mut rng = ChaCha8Rng::seed_from_u64(229);
        let u = haar_random_su2(&mut rng);
        let d = StateVector::from_bloch(0.7, 0.9);
        let first = simulate_remote(&u, &d, 77).unwrap();
        let second = simulate_remote(&u, &d, 77).unwrap();
        assert_eq!(first.tally, second.tally);
        for i in 0..2 {
            assert_eq!(
                first.final_data.amplitude(i),
                second.final_data.amplitude(i)
            );
        }
    }

    #[test]
    fn mean_resource_cost_approaches_six() {
        // 2·10⁴ runs; each rotation consumes geometric(1/2) attempts with
        // mean 2 and variance 2, so 4 standard errors is ~0.07.
        let mut rng = ChaCha8Rng::seed_from_u64(233);
        let u = haar_random_su2(&mut rng);
        let d = StateVector::from_bloch(0.3, 4.0);
        let trials = 20_000u64;
        let total: usize = (0..trials)
            .map(|seed| simulate_remote(&u, &d, seed).unwrap().tally.ebits)
            .sum();
        let mean = total as f64 / trials as f64;
        let se = (6.0 / trials as f64).sqrt();
        assert!((mean - 6.0).abs() < 4.0 * se, "mean={mean}");
    }

    #[test]
    fn expected_costs_are_six_and_six() {
        let (ebits, cbits) = expected_resources();
        assert!((ebits - 6.0).abs() < 1e-12);
        assert!((cbits - 6.0).abs() < 1e-12);
        let (single, _) = expected_resources_for(1);
        assert!((single - 2.0).abs() < 1e-12);
    }

    #[test]
    fn tally_equals_the_replayed_attempt_count() {
        // Replay the same random stream through three explicit adaptive
        // runs and check the billed resources against the attempts, one
        // ebit and one classical bit apiece.
        let mut source = ChaCha8Rng::seed_from_u64(239);
        for seed in 0..20u64 {
            let u = haar_random_su2(&mut source);
            let d = StateVector::from_bloch(1.3, 2.4);
            let outcome = simulate_remote(&u, &d, seed).unwrap();

            let decomposition = euler_zxz(&u).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut state = d.clone();
            let mut attempts = 0usize;
            let hadamard = Unitary2::hadamard();
            for (step, angle) in [decomposition.c, decomposition.b, decomposition.a]
                .into_iter()
                .enumerate()
            {
                let stats =
                    run_adaptive_with_rng(&state, angle, DEFAULT_MAX_ATTEMPTS, &mut rng).unwrap();
                attempts += stats.attempts;
                state = stats.final_data;
                if step < 2 {
                    state = state.apply_single(&hadamard, 0).unwrap();
                }
            }
            assert_eq!(outcome.tally.ebits, attempts);
            assert_eq!(outcome.tally.cbits, attempts);
            assert_eq!(outcome.tally.program_qubits, attempts);
        }
    }
}
