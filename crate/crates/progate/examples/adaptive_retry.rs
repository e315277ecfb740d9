//! The adaptive loop: after a failure the residual is a known wrong
//! rotation, and retrying with a doubled program angle corrects it. Each
//! attempt succeeds with probability 1/2, so the consumed program length
//! is geometric with mean 2.
//!
//! Run with: cargo run -p progate --example adaptive_retry

use progate::analysis::expected_program_length;
use progate::protocol::{rotation_z, run_adaptive, Angle, DEFAULT_MAX_ATTEMPTS};
use progate::statevec::StateVector;

fn main() {
    let alpha = Angle::new(0.9);
    let data = StateVector::from_bloch(2.0, 1.0);
    let trials = 100_000u64;

    let mut histogram = [0usize; 12];
    let mut total_attempts = 0usize;
    let mut worst_fidelity = f64::INFINITY;
    let rotated = data.apply_single(&rotation_z(alpha), 0).unwrap();

    for seed in 0..trials {
        let stats = run_adaptive(&data, alpha, seed, DEFAULT_MAX_ATTEMPTS).unwrap();
        total_attempts += stats.attempts;
        if stats.attempts <= histogram.len() {
            histogram[stats.attempts - 1] += 1;
        }
        let fidelity = stats.final_data.fidelity_up_to_phase(&rotated).unwrap();
        worst_fidelity = worst_fidelity.min(fidelity);
    }

    println!("attempts histogram over {trials} runs (expected fraction 2^-k):");
    for (k, count) in histogram.iter().enumerate().filter(|(_, &c)| c > 0) {
        let frac = *count as f64 / trials as f64;
        println!(
            "  {:2} attempts: {:>6}  ({:.4}, expected {:.4})",
            k + 1,
            count,
            frac,
            0.5f64.powi(k as i32 + 1)
        );
    }
    println!(
        "\nmean program qubits consumed: {:.4} (series value {:.12})",
        total_attempts as f64 / trials as f64,
        expected_program_length(60)
    );
    println!("worst final fidelity vs U_α|d⟩: {worst_fidelity:.12}");
}
