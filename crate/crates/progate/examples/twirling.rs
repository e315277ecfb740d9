//! Twirling: shifting a stored program by a random offset α₀ with local
//! rotations, running the gate, and undoing the offset afterwards. The
//! success statistics are untouched, which is what makes a constant
//! success probability achievable for any encoding.
//!
//! Run with: cargo run -p progate --example twirling

use progate::protocol::{
    cascade, cascade_branches, encode_program, rotation_z, twirl_program, Angle,
};
use progate::statevec::StateVector;

fn main() {
    let n = 3;
    let alpha = Angle::new(1.3);
    let alpha0 = Angle::new(4.9);
    let data = StateVector::from_bloch(1.9, 0.2);

    let program = encode_program(alpha, n).unwrap();
    let twirled = twirl_program(&program, alpha0);

    let target = encode_program(alpha.plus(alpha0), n).unwrap();
    let fidelity = twirled
        .state()
        .fidelity_up_to_phase(target.state())
        .unwrap();
    println!(
        "twirl by {:.4} rad maps the α = {:.4} program onto the α+α₀ program: fidelity {:.12}",
        alpha0.radians(),
        alpha.radians(),
        fidelity
    );

    let plain = cascade_branches(&cascade(&data, &program).unwrap(), n).unwrap();
    let shifted = cascade_branches(&cascade(&data, &twirled).unwrap(), n).unwrap();
    let undo = rotation_z(alpha0).adjoint();

    println!("\nbits   p(plain)   p(twirled)   fidelity after compensating U_α₀†");
    for (a, b) in plain.iter().zip(&shifted) {
        let bits: String = a.bits.iter().map(|bit| char::from(b'0' + bit)).collect();
        let compensated = b.collapsed_data.apply_single(&undo, 0).unwrap();
        // A single U_α₀† does not undo the shift on the failure residual,
        // so only success branches are compared.
        let agreement = if a.success {
            format!(
                "{:.12}",
                compensated.fidelity_up_to_phase(&a.collapsed_data).unwrap()
            )
        } else {
            "n/a (failure residual)".to_string()
        };
        println!("{bits}   {:.6}   {:.6}     {agreement}", a.prob, b.prob);
    }
}
