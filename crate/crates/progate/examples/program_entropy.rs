//! Averaged over the stored angle, the N-qubit program ensemble is the
//! maximally mixed state: the register carries as much information about
//! the angle as N qubits possibly can.
//!
//! Run with: cargo run -p progate --example program_entropy

use progate::analysis::{default_density_grid, program_density_average};

fn main() {
    println!("N   grid    max entry deviation from I/2^N");
    for n in 1..=6usize {
        let grid = default_density_grid(n);
        let rho = program_density_average(n, grid).unwrap();
        println!(
            "{n}   {grid:4}    {:.3e}",
            rho.max_deviation_from_maximally_mixed()
        );
    }

    let rho = program_density_average(2, 16).unwrap();
    println!("\naveraged 2-qubit projector (16-point grid):");
    for row in 0..rho.dim() {
        let cells: Vec<String> = (0..rho.dim())
            .map(|col| {
                let e = rho.entry(row, col);
                format!("{:+.4}{:+.4}i", e.re, e.im)
            })
            .collect();
        println!("  [{}]", cells.join("  "));
    }

    println!("\na grid below 2^(N+1) points is rejected:");
    match program_density_average(3, 8) {
        Err(err) => println!("  {err}"),
        Ok(_) => unreachable!(),
    }
}
