//! The single-qubit storage gate: a CNOT from the data qubit onto an
//! equatorial program qubit kicks the stored rotation (or its adjoint)
//! back onto the data, heralded by the program measurement.
//!
//! Run with: cargo run -p progate --example phase_kickback

use progate::protocol::{cascade, cascade_branches, encode_program, rotation_z, Angle};
use progate::statevec::StateVector;

fn main() {
    let alpha = Angle::new(std::f64::consts::FRAC_PI_3);
    let data = StateVector::from_bloch(1.1, 0.4);
    println!(
        "storing alpha = {:.6} rad in one program qubit",
        alpha.radians()
    );

    let program = encode_program(alpha, 1).unwrap();
    let joint = cascade(&data, &program).unwrap();

    println!("\njoint state after the CNOT (data qubit 0, program qubit 1):");
    for (index, amp) in joint.amplitudes().iter().enumerate() {
        println!(
            "  |{}{}⟩  {:+.6} {:+.6}i",
            (index >> 1) & 1,
            index & 1,
            amp.re,
            amp.im
        );
    }

    let rotated = data.apply_single(&rotation_z(alpha), 0).unwrap();
    println!("\nmeasuring the program qubit:");
    for branch in cascade_branches(&joint, 1).unwrap() {
        let fidelity = branch
            .collapsed_data
            .fidelity_up_to_phase(&rotated)
            .unwrap();
        println!(
            "  outcome {}  p = {:.3}  {}  fidelity vs U_α|d⟩ = {:.12}",
            branch.bits[0],
            branch.prob,
            if branch.success { "success" } else { "failure" },
            fidelity,
        );
    }
    println!("\noutcome 0 leaves U_α|d⟩ exactly; outcome 1 leaves the adjoint residual.");
}
