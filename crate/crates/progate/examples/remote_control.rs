//! Quantum remote control: store each z–x–z factor of an SU(2) target in
//! program qubits, teleport those qubits, and retrieve adaptively on the
//! receiving side. One-way classical communication, at an average cost of
//! 6 ebits and 6 bits per operation.
//!
//! Run with: cargo run -p progate --example remote_control

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use progate::remote::{euler_zxz, expected_resources, haar_random_su2, simulate_remote};
use progate::statevec::StateVector;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let target = haar_random_su2(&mut rng);
    let data = StateVector::from_bloch(0.6, 3.8);

    let decomposition = euler_zxz(&target).unwrap();
    println!("target decomposition (z–x–z):");
    println!("  a = {:.6} rad", decomposition.a.radians());
    println!("  b = {:.6} rad", decomposition.b.radians());
    println!("  c = {:.6} rad", decomposition.c.radians());
    println!("  global phase = {:+.6} rad", decomposition.global_phase);
    println!(
        "  reconstruction error = {:.3e}",
        decomposition.reconstruct().max_entry_distance(&target)
    );

    let expect_vec = target.apply_to([data.amplitude(0), data.amplitude(1)]);
    let expect = StateVector::single_qubit(expect_vec[0], expect_vec[1]).unwrap();

    println!("\nfirst runs:");
    for seed in 0..5u64 {
        let outcome = simulate_remote(&target, &data, seed).unwrap();
        let fidelity = outcome.final_data.fidelity_up_to_phase(&expect).unwrap();
        println!(
            "  seed {seed}: {} ebits, {} cbits, fidelity {:.12}",
            outcome.tally.ebits, outcome.tally.cbits, fidelity
        );
    }

    let trials = 50_000u64;
    let total: usize = (0..trials)
        .map(|seed| simulate_remote(&target, &data, seed).unwrap().tally.ebits)
        .sum();
    let (expected_ebits, expected_cbits) = expected_resources();
    println!(
        "\nmean over {trials} runs: {:.4} ebits (expected {expected_ebits:.4}), same in cbits (expected {expected_cbits:.4})",
        total as f64 / trials as f64
    );
}
