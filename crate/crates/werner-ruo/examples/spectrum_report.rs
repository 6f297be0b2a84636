//! Spectral analysis of the best tabulated qutrit two-generator channel:
//! eigenvalues, the unit-modulus part, λ_max and the fixed space.
//!
//! ```bash
//! cargo run -p werner-ruo --example spectrum_report
//! ```

use werner_ruo::reference::REFERENCE_ROWS;
use werner_ruo::spectral::{analyze, fixed_space, projection_residual};
use werner_ruo::werner::WernerKit;
use werner_ruo::TOL;

fn main() -> werner_ruo::Result<()> {
    let row = REFERENCE_ROWS
        .iter()
        .find(|r| r.table == 1 && r.d == 3 && r.weights.len() == 1)
        .expect("catalog row");
    println!("channel: d={} words {} at the tabulated optimum", row.d, row.words);

    let t = row.channel()?;
    let report = analyze(&t, TOL)?;
    println!("eigenvalues: {}", report.eigenvalues.len());
    let mut moduli: Vec<f64> = report.eigenvalues.iter().map(|l| l.norm()).collect();
    moduli.sort_by(|a, b| b.partial_cmp(a).unwrap());
    println!("largest moduli: {:.6} {:.6} {:.6} {:.6}", moduli[0], moduli[1], moduli[2], moduli[3]);
    println!("sigma1 size:   {}", report.sigma1.len());
    println!("lambda_max:    {:.8} (tabulated {:.8})", report.lambda_max, row.lambda_max);
    println!("stationary:    {}", report.stationary);
    println!("diagonalizable: {:?}", report.diagonalizable);
    println!("fixed space:   {}", report.fixed_space_dim);

    // the fixed space is exactly the span of the two Werner projectors
    let kit = WernerKit::new(row.d)?;
    let fs = fixed_space(&t, 1e-7)?;
    println!(
        "projector residuals against the fixed space: sym {:.2e}, asym {:.2e}",
        projection_residual(&kit.p_sym, &fs)?,
        projection_residual(&kit.p_asym, &fs)?
    );
    Ok(())
}
