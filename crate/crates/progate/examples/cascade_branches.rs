//! Exact branch table of the N-qubit retrieval cascade: every program
//! outcome has probability 2⁻ᴺ, and only the all-ones outcome fails.
//!
//! Run with: cargo run -p progate --example cascade_branches

use progate::analysis::exact_success_probability;
use progate::protocol::{cascade, cascade_branches, encode_program, rotation_z, Angle};
use progate::statevec::StateVector;

fn main() {
    let n = 3;
    let alpha = Angle::new(2.0);
    let data = StateVector::from_bloch(0.8, 5.2);

    let joint = cascade(&data, &encode_program(alpha, n).unwrap()).unwrap();
    let rotated = data.apply_single(&rotation_z(alpha), 0).unwrap();

    println!("cascade with N = {n}, alpha = {:.4} rad", alpha.radians());
    println!("\nbits   probability   success   fidelity vs U_α|d⟩");
    for branch in cascade_branches(&joint, n).unwrap() {
        let bits: String = branch.bits.iter().map(|b| char::from(b'0' + b)).collect();
        let fidelity = branch
            .collapsed_data
            .fidelity_up_to_phase(&rotated)
            .unwrap();
        println!(
            "{bits}    {:.6}      {}       {:.12}",
            branch.prob,
            if branch.success { "yes" } else { "no " },
            fidelity,
        );
    }

    println!("\nexact success probability by register size:");
    for size in 1..=10usize {
        let p = exact_success_probability(alpha, size).unwrap();
        println!(
            "  N = {size:2}   p = {p:.10}   (1 - 2^-N = {:.10})",
            1.0 - 0.5f64.powi(size as i32)
        );
    }
}
