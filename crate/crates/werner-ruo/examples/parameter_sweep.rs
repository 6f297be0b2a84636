//! One-dimensional λ_max landscapes: the weight sweep of the best qubit
//! generator pair (piecewise smooth with a single sharp minimum) and the
//! flat φ direction of the qutrit family.
//!
//! ```bash
//! cargo run -p werner-ruo --example parameter_sweep
//! ```

use werner_ruo::construction::{parse_word_list, ParamPoint};
use werner_ruo::optimize::{sl23_best_pair_problem, Coordinate, OptimizationProblem};

fn main() -> werner_ruo::Result<()> {
    let problem = sl23_best_pair_problem()?;
    let fixed = ParamPoint::new(0.0, 0.5, 0.0, 0.0, vec![0.5])?;
    let grid: Vec<f64> = (1..100).map(|k| k as f64 / 100.0).collect();
    let curve = problem.sweep(Coordinate::Weight(0), &grid, &fixed)?;
    println!("qubit pair, λ_max over the weight p (every 10th point):");
    for (p, v) in curve.iter().step_by(10) {
        let bar = "#".repeat((v * 40.0) as usize);
        println!("  p = {p:.2}: {v:.6} {bar}");
    }
    let (best_p, best_v) = curve
        .iter()
        .copied()
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    println!("grid minimum {best_v:.6} at p = {best_p}");

    // refine to the tabulated optimum
    let start = ParamPoint::new(0.0, 0.5, 0.0, 0.0, vec![best_p])?;
    let (point, value) = problem.local_search(&start, 200)?;
    println!("refined: {:.8} at p = {:.8}", value, point.weights[0]);

    // the qutrit family's rate does not depend on phi at all
    let problem = OptimizationProblem::words(3, parse_word_list("h,UV")?)?;
    let fixed = ParamPoint::new(2.86002806, 0.74921865, 3.66908666, 2.32545709, vec![0.49097422])?;
    let grid: Vec<f64> = (0..8).map(|k| k as f64 * 0.7).collect();
    let curve = problem.sweep(Coordinate::Phi, &grid, &fixed)?;
    println!("\nqutrit (h, UV), λ_max over phi:");
    for (phi, v) in &curve {
        println!("  phi = {phi:.2}: {v:.10}");
    }
    Ok(())
}
