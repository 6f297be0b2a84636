//! Multi-start minimization of the convergence rate, demonstrated with
//! reduced budgets on the best three-element generator tuple of the qubit
//! group and on the qutrit word family (h, UV).
//!
//! ```bash
//! cargo run -p werner-ruo --example rate_optimization
//! ```

use werner_ruo::construction::parse_word_list;
use werner_ruo::optimize::{sl23_best_triple_problem, OptimizationProblem};

fn main() -> werner_ruo::Result<()> {
    // weights-only problem: three fixed lifted unitaries
    let triple = sl23_best_triple_problem()?;
    let result = triple.multistart(60, 8, 42)?;
    println!("qubit triple: best λ_max = {:.8} (tabulated optimum 0.17157291)", result.best_lambda_max);
    println!(
        "  weights: {:?}",
        result
            .best_point
            .full_weights()
            .iter()
            .map(|w| format!("{w:.6}"))
            .collect::<Vec<_>>()
    );

    // word-family problem: five free parameters
    let problem = OptimizationProblem::words(3, parse_word_list("h,UV")?)?;
    let result = problem.multistart(60, 8, 42)?;
    println!("\nqutrit (h, UV): best λ_max = {:.8} (tabulated optimum 0.67402461)", result.best_lambda_max);
    let p = &result.best_point;
    println!(
        "  phi {:.4}, |alpha| {:.4}, arg(alpha) {:.4}, arg(beta) {:.4}, p1 {:.4}",
        p.phi, p.alpha_abs, p.alpha_arg, p.beta_arg, p.weights[0]
    );
    println!("  restarts: {}", result.history.len());
    Ok(())
}
