//! Iterating a channel versus its asymptotic formula: a stationary channel
//! converges to the twirl of the initial state, a non-stationary one keeps
//! oscillating between two accumulation points.
//!
//! ```bash
//! cargo run -p werner-ruo --example asymptotic_dynamics
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use werner_ruo::channel::{lift_otimes, RandomUnitaryOperation};
use werner_ruo::construction::qubit_sl23;
use werner_ruo::mat::{dagger, hs_norm, C64, CMat};
use werner_ruo::spectral::{analyze, x_infinity};
use werner_ruo::werner::{haar_sample, WernerKit};
use werner_ruo::TOL;

fn main() -> werner_ruo::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let raw = CMat::from_shape_fn((4, 4), |_| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let x0 = &raw + &dagger(&raw);
    let kit = WernerKit::new(2)?;

    // stationary: two random lifted unitaries
    let t = RandomUnitaryOperation::new(
        4,
        vec![
            (0.5, lift_otimes(&haar_sample(2, &mut rng))),
            (0.5, lift_otimes(&haar_sample(2, &mut rng))),
        ],
    )?;
    let report = analyze(&t, TOL)?;
    println!("random pair: stationary = {}, λ_max = {:.4}", report.stationary, report.lambda_max);
    let limit = kit.twirl(&x0)?;
    println!("  ‖Tⁿx₀ − twirl(x₀)‖:");
    for n in [0usize, 5, 10, 20, 40] {
        let err = hs_norm(&(&t.iterate(&x0, n)? - &limit));
        println!("    n = {n:>2}: {err:.3e}");
    }

    // non-stationary: the two phase generators alone have a −1 eigenvalue
    let (h1, h2, _) = qubit_sl23();
    let t = RandomUnitaryOperation::new(
        4,
        vec![(0.5, lift_otimes(&h1)), (0.5, lift_otimes(&h2))],
    )?;
    let report = analyze(&t, TOL)?;
    println!("\nphase pair: stationary = {}", report.stationary);
    println!("  the asymptotic formula oscillates with period two:");
    for n in [20usize, 21, 22, 23] {
        let xi = x_infinity(&t, &x0, n)?;
        let err = hs_norm(&(&t.iterate(&x0, n)? - &xi));
        println!("    n = {n}: ‖X∞(n) − X∞(n−2)‖ small, ‖Tⁿx₀ − X∞(n)‖ = {err:.3e}");
    }
    Ok(())
}
