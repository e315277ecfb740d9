//! The retrieval ceiling: unitarity forces any gate consuming the doubled
//! angle encoding to fail with probability at least 2⁻ᴺ, and the cascade
//! attains the ceiling exactly.
//!
//! Run with: cargo run -p progate --example retrieval_bound

use progate::analysis::{bound_product, exact_success_probability, retrieval_bound};
use progate::protocol::Angle;

fn main() {
    println!("N    retrieval bound      cascade probability   gap");
    let alpha = Angle::new(0.77);
    for n in 1..=8usize {
        let bound = retrieval_bound(n).unwrap();
        let achieved = exact_success_probability(alpha, n).unwrap();
        println!(
            "{n}    {bound:.12}    {achieved:.12}    {:+.3e}",
            bound - achieved
        );
    }

    let n = 3;
    println!(
        "\nbound product sweep at N = {n} (peak 2^-N = {}):",
        0.5f64.powi(n as i32)
    );
    let points = 24;
    for k in 0..=points {
        let delta = std::f64::consts::TAU * k as f64 / points as f64;
        let value = bound_product(delta, n).unwrap();
        let bar = "#".repeat((value * 256.0).round() as usize);
        println!("  delta = {delta:6.4}   {value:.6}  {bar}");
    }
    println!(
        "\nthe first peak sits at delta = pi/2^N = {:.6}",
        std::f64::consts::PI * 0.5f64.powi(n as i32)
    );
}
