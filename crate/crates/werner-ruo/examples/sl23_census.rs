//! Census of the 24-element qubit generator group: which pairs and triples
//! generate it, how many of the resulting channels are stationary, and the
//! best pair convergence rate.
//!
//! ```bash
//! cargo run -p werner-ruo --example sl23_census
//! ```

use werner_ruo::group::{builtin_group, census_summary, CensusOptions};

fn main() -> werner_ruo::Result<()> {
    let g = builtin_group("sl23")?;
    println!("group order: {}", g.order());

    let pairs = g.census(2, CensusOptions { lift: true, optimize_rate: true })?;
    let ps = census_summary(&pairs);
    println!(
        "pairs: {} tuples, {} generating, {} stationary, {} diagonalizable",
        ps.tuples, ps.generating, ps.stationary, ps.diagonalizable
    );
    let best = pairs
        .iter()
        .filter_map(|r| r.optimal_lambda_max)
        .fold(f64::MAX, f64::min);
    let attaining = pairs
        .iter()
        .filter(|r| r.optimal_lambda_max.map(|v| (v - best).abs() < 1e-5) == Some(true))
        .count();
    println!("best pair rate: {best:.8}, attained by {attaining} pairs");

    let triples = g.census(3, CensusOptions::default())?;
    let ts = census_summary(&triples);
    println!(
        "triples: {} tuples, {} generating, {} non-stationary",
        ts.tuples, ts.generating, ts.non_stationary
    );
    Ok(())
}
