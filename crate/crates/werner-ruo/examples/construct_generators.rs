//! Build the three generators for a qutrit system, check their algebra and
//! show the lifted Kraus operators of the word channel (h, UV).
//!
//! ```bash
//! cargo run -p werner-ruo --example construct_generators
//! ```

use werner_ruo::construction::{parse_word_list, standard_ruo, GeneratorSet, ParamPoint};
use werner_ruo::mat::{unitarity_deviation, CMat};

fn show(name: &str, m: &CMat) {
    println!("{name} ({}x{}):", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|j| format!("{:+.3}{:+.3}i", m[[i, j]].re, m[[i, j]].im))
            .collect();
        println!("  [{}]", row.join(", "));
    }
}

fn main() -> werner_ruo::Result<()> {
    let d = 3;
    let params = ParamPoint::new(0.7, 0.8, 1.1, 2.2, vec![0.5])?;
    let set = GeneratorSet::new(d, &params)?;

    show("h (binary-fraction phases)", &set.h);
    show("U (cyclic shift)", &set.u);
    show("V (2x2 block rotation)", &set.v);
    for (name, m) in [("h", &set.h), ("U", &set.u), ("V", &set.v)] {
        println!("unitarity deviation of {name}: {:.2e}", unitarity_deviation(m));
    }

    // words are parsed from text and realized as matrix products
    let words = parse_word_list("h,UV")?;
    let t = standard_ruo(d, &words, &params)?;
    println!("\nchannel on dimension {} with {} Kraus operators:", t.dim(), t.kraus().len());
    for (word, (p, u)) in words.iter().zip(t.kraus()) {
        println!("  weight {p:.4} on ({word})⊗({word}): {}x{} unitary", u.nrows(), u.ncols());
    }
    Ok(())
}
