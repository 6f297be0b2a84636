//! Distance of the iterated channel to the twirling projector against the
//! a-priori bound d²(d⁴−2)·λ_maxⁿ — the qutrit optimum obeys it, the qubit
//! optimum violates it (the channel is not diagonalizable).
//!
//! ```bash
//! cargo run -p werner-ruo --example convergence_bound
//! ```

use werner_ruo::reference::REFERENCE_ROWS;
use werner_ruo::spectral::{bound_prefactor, distances_to_twirl};

fn main() -> werner_ruo::Result<()> {
    for (d, n_max) in [(3usize, 30usize), (2, 15)] {
        let row = REFERENCE_ROWS
            .iter()
            .find(|r| r.table == 1 && r.d == d && r.weights.len() == 2)
            .expect("three-generator catalog row");
        let t = row.channel()?;
        let distances = distances_to_twirl(&t, n_max)?;
        let prefactor = bound_prefactor(d);
        println!("d = {d}, words {} (λ_max = {}):", row.words, row.lambda_max);
        println!("  {:>3} {:>13} {:>13}", "n", "distance", "bound");
        let mut violations = Vec::new();
        for (n, dist) in distances.iter().enumerate() {
            let bound = prefactor * row.lambda_max.powi(n as i32);
            if n % 5 == 0 {
                println!("  {n:>3} {dist:>13.4e} {bound:>13.4e}");
            }
            if n >= 1 && *dist > bound {
                violations.push(n);
            }
        }
        if violations.is_empty() {
            println!("  bound holds for n = 1..{n_max}\n");
        } else {
            println!("  bound violated at n = {violations:?} -> not diagonalizable\n");
        }
    }
    Ok(())
}
