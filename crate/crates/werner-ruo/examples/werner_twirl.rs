//! Werner-state geometry: projectors, the twirling projector and its
//! Monte-Carlo oracle over Haar samples.
//!
//! ```bash
//! cargo run -p werner-ruo --example werner_twirl
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use werner_ruo::mat::{dagger, hs_norm, trace, C64, CMat};
use werner_ruo::werner::{mc_twirl, werner_state, WernerKit};

fn main() -> werner_ruo::Result<()> {
    let d = 3;
    let kit = WernerKit::new(d)?;
    println!("d = {d}: Tr P_sym = {}, Tr P_asym = {}", trace(&kit.p_sym).re, trace(&kit.p_asym).re);

    let w = werner_state(d, 0.4)?;
    println!("Werner state at p = 0.4: trace {}", trace(&w.rho).re);

    // twirl a random Hermitian operator: closed form vs Monte Carlo
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let raw = CMat::from_shape_fn((d * d, d * d), |_| {
        C64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
    });
    let x = &raw + &dagger(&raw);
    let exact = kit.twirl(&x)?;
    println!("\nMonte-Carlo twirl error vs sample count (expct ~ N^-1/2):");
    for n in [100usize, 400, 1600, 6400] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let approx = mc_twirl(&x, n, &mut rng)?;
        println!("  N = {n:5}: {:.5}", hs_norm(&(&approx - &exact)));
    }

    // the twirl of anything lands on the Werner line
    let p_back = trace(&exact.dot(&kit.p_sym)).re / trace(&exact).re;
    println!("\nsymmetric fraction of the twirled operator: {p_back:.4}");
    Ok(())
}
