//! The single-qubit ceiling: no storage gate using one program qubit can
//! average better than 1/2 success. The optimizer searches the feasible
//! (p₀, p_π) region and lands on the balanced point, where the success
//! probability is flat in the stored angle.
//!
//! Run with: cargo run -p progate --example single_qubit_optimum

use progate::analysis::{single_qubit_max_avg, single_qubit_p_alpha, SingleQubitGateParams};
use progate::protocol::Angle;

fn main() {
    let (best, value) = single_qubit_max_avg();
    println!("optimal average success probability: {value:.9}");
    println!("attained at p0 = {:.9}, p_pi = {:.9}", best.p0, best.p_pi);

    println!("\np_alpha at the optimum (flat by construction):");
    for k in 0..8 {
        let alpha = Angle::new(std::f64::consts::TAU * k as f64 / 8.0);
        let p = single_qubit_p_alpha(alpha, &best).unwrap();
        println!("  alpha = {:.4}   p = {:.12}", alpha.radians(), p);
    }

    println!("\nunbalanced parameters trade angle coverage for peak probability:");
    let skewed = SingleQubitGateParams::new(0.8, 0.2, 0.0);
    println!("  feasible: {}", skewed.is_feasible());
    for k in 0..8 {
        let alpha = Angle::new(std::f64::consts::TAU * k as f64 / 8.0);
        let p = single_qubit_p_alpha(alpha, &skewed).unwrap();
        println!("  alpha = {:.4}   p = {:.6}", alpha.radians(), p);
    }
    let infeasible = SingleQubitGateParams::new(0.9, 0.9, 0.0);
    println!(
        "\n(p0, p_pi) = (0.9, 0.9) is infeasible: {}",
        !infeasible.is_feasible()
    );
}
