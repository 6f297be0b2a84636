//! Concrete generator families.
//!
//! `h` puts a distinct binary-fraction phase on every single-particle state,
//! `U` cyclically shifts the single-particle states, and `V` acts as a
//! general 2×2 unitary block on `span(|1⟩,|2⟩)` (times the identity
//! elsewhere). Lifted to `g ⊗ g`, products of these generators form random
//! unitary operations whose fixed space is exactly the Werner span.
//!
//! Generator words ("hV", "UV^-2", ...) are parsed by a small grammar:
//! `word := term+`, `term := ('h'|'U'|'V') ('^' signed-int)?`, juxtaposition
//! is matrix product in reading order.

use std::fmt;

use crate::channel::{lift_otimes, RandomUnitaryOperation};
use crate::mat::{dagger, eye, zeros, C64, CMat};
use crate::{Error, Result};

/// Construction parameters: the global phase φ, the polar pieces of α and β
/// (with |β| forced to √(1−|α|²)) and the free weights `p₁..p_{k−1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamPoint {
    pub phi: f64,
    pub alpha_abs: f64,
    pub alpha_arg: f64,
    pub beta_arg: f64,
    pub weights: Vec<f64>,
}

/// Weights are kept this far away from the simplex boundary.
pub const WEIGHT_EPS: f64 = 1e-6;

impl ParamPoint {
    /// Validate ranges; angles are wrapped into `[0, 2π)`.
    pub fn new(
        phi: f64,
        alpha_abs: f64,
        alpha_arg: f64,
        beta_arg: f64,
        weights: Vec<f64>,
    ) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha_abs) {
            return Err(Error::InfeasibleParams(format!("|alpha| = {alpha_abs} outside [0, 1]")));
        }
        for v in [phi, alpha_arg, beta_arg] {
            if !v.is_finite() {
                return Err(Error::InfeasibleParams("non-finite angle".into()));
            }
        }
        let tau = std::f64::consts::TAU;
        let wrap = |x: f64| x.rem_euclid(tau);
        let mut sum = 0.0;
        for (i, w) in weights.iter().enumerate() {
            if !(*w > 0.0 && *w < 1.0) {
                return Err(Error::InfeasibleParams(format!("weight p{} = {w} outside (0, 1)", i + 1)));
            }
            sum += w;
        }
        if sum >= 1.0 {
            return Err(Error::InfeasibleParams(format!("weights sum to {sum} >= 1")));
        }
        Ok(ParamPoint {
            phi: wrap(phi),
            alpha_abs,
            alpha_arg: wrap(alpha_arg),
            beta_arg: wrap(beta_arg),
            weights,
        })
    }

    pub fn alpha(&self) -> C64 {
        C64::from_polar(self.alpha_abs, self.alpha_arg)
    }

    pub fn beta(&self) -> C64 {
        C64::from_polar((1.0 - self.alpha_abs * self.alpha_abs).max(0.0).sqrt(), self.beta_arg)
    }

    /// θ = arccos(ℜα) ∈ [0, π]; only cos θ enters the spectrum of `V`.
    pub fn theta(&self) -> f64 {
        self.alpha().re.clamp(-1.0, 1.0).acos()
    }

    /// All k weights including the implied last one.
    pub fn full_weights(&self) -> Vec<f64> {
        let mut w = self.weights.clone();
        w.push(1.0 - w.iter().sum::<f64>());
        w
    }
}

/// The 2×2 generators used in the qubit chapter: `iσ₃`, `−iσ₂`, and the
/// Bell-state permuting unitary `U`.
pub fn qubit_sl23() -> (CMat, CMat, CMat) {
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let mut h1 = zeros(2, 2);
    h1[[0, 0]] = i;
    h1[[1, 1]] = -i;
    let mut h2 = zeros(2, 2);
    h2[[0, 1]] = -one;
    h2[[1, 0]] = one;
    let mut u = zeros(2, 2);
    u[[0, 0]] = (i + one) * 0.5;
    u[[0, 1]] = (i + one) * 0.5;
    u[[1, 0]] = (i - one) * 0.5;
    u[[1, 1]] = (one - i) * 0.5;
    let _ = zero;
    (h1, h2, u)
}

/// Diagonal phase generator: entry `exp(2πi·2^{k−1}/2^d)` at position `k`.
/// All entries are distinct 2^d-th roots of unity; the last one is −1.
pub fn h_general(d: usize) -> Result<CMat> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut m = zeros(d, d);
    for k in 1..=d {
        let angle = std::f64::consts::TAU * (1u64 << (k - 1)) as f64 / (1u64 << d) as f64;
        m[[k - 1, k - 1]] = C64::from_polar(1.0, angle);
    }
    Ok(m)
}

/// Cyclic shift of the single-particle states: `|k⟩ ↦ |k−1⟩` with `|1⟩ ↦ |d⟩`.
///
/// Any transitive cycle works for the construction; this orientation is the
/// one the reference optima were computed with, so the tabulated rates
/// reproduce exactly.
pub fn u_cycle(d: usize) -> Result<CMat> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let mut m = zeros(d, d);
    for col in 0..d {
        m[[(col + d - 1) % d, col]] = C64::new(1.0, 0.0);
    }
    Ok(m)
}

/// Rotation-like generator `V = e^{iφ}·([[α, β], [−β̄, ᾱ]] ⊕ 1_{d−2})`.
///
/// The phase multiplies the whole matrix (this is what makes the convergence
/// rate independent of φ for the lifted channel, and what the tabulated
/// optima assume). Unitary to machine precision by construction.
pub fn v_general(d: usize, params: &ParamPoint) -> Result<CMat> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    let alpha = params.alpha();
    let beta = params.beta();
    let phase = C64::from_polar(1.0, params.phi);
    let mut m = eye(d).mapv(|x| x * phase);
    m[[0, 0]] = phase * alpha;
    m[[0, 1]] = phase * beta;
    m[[1, 0]] = -phase * beta.conj();
    m[[1, 1]] = phase * alpha.conj();
    Ok(m)
}

/// One of the three generator letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    H,
    U,
    V,
}

impl Gen {
    fn letter(self) -> char {
        match self {
            Gen::H => 'h',
            Gen::U => 'U',
            Gen::V => 'V',
        }
    }
}

/// A product of generator powers, e.g. `V^-1U^-1h` or `hV^2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    pub terms: Vec<(Gen, i64)>,
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, e) in &self.terms {
            write!(f, "{}", g.letter())?;
            if *e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for GeneratorWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

impl GeneratorWord {
    /// For words of the shape `V^a·x·V^b` (x a single `h` or `U`), the
    /// multi-index `(a, b)`; `None` for anything else.
    pub fn kappa(&self) -> Option<(i64, i64)> {
        let mut leading = 0i64;
        let mut trailing = 0i64;
        let mut center: Option<(Gen, i64)> = None;
        let mut seen_center = false;
        for &(g, e) in &self.terms {
            match (g, seen_center) {
                (Gen::V, false) => leading += e,
                (Gen::V, true) => trailing += e,
                (_, false) => {
                    center = Some((g, e));
                    seen_center = true;
                }
                (_, true) => return None, // second non-V letter
            }
        }
        match center {
            Some((_, 1)) => Some((leading, trailing)),
            _ => None,
        }
    }

    /// 1-norm of the multi-index, when the word has κ shape.
    pub fn kappa_norm(&self) -> Option<i64> {
        self.kappa().map(|(a, b)| a.abs() + b.abs())
    }
}

/// Parse a generator word; errors carry the 1-based column.
pub fn parse_word(text: &str) -> Result<GeneratorWord> {
    let chars: Vec<char> = text.chars().collect();
    if chars.is_empty() {
        return Err(Error::Parse { column: 1, message: "empty word".into() });
    }
    let mut terms = Vec::new();
    let mut i = 0usize;
    while i < chars.len() {
        let g = match chars[i] {
            'h' => Gen::H,
            'U' => Gen::U,
            'V' => Gen::V,
            other => {
                return Err(Error::Parse {
                    column: i + 1,
                    message: format!("expected one of h, U, V, found {other:?}"),
                })
            }
        };
        i += 1;
        let mut exp = 1i64;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let start = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if i == start || (i == start + 1 && !chars[start].is_ascii_digit()) {
                return Err(Error::Parse { column: start + 1, message: "expected integer exponent".into() });
            }
            let text: String = chars[start..i].iter().collect();
            exp = text
                .parse()
                .map_err(|_| Error::Parse { column: start + 1, message: "bad exponent".into() })?;
        }
        terms.push((g, exp));
    }
    Ok(GeneratorWord { terms })
}

/// Parse a comma-separated list of words, as used by the command line.
pub fn parse_word_list(text: &str) -> Result<Vec<GeneratorWord>> {
    let mut out = Vec::new();
    let mut offset = 0usize;
    for part in text.split(',') {
        let trimmed = part.trim();
        parse_word(trimmed).map(|w| out.push(w)).map_err(|e| match e {
            Error::Parse { column, message } => Error::Parse { column: offset + column, message },
            other => other,
        })?;
        offset += part.len() + 1;
    }
    Ok(out)
}

/// Concrete matrices for the three letters in one dimension/parameter choice.
#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub h: CMat,
    pub u: CMat,
    pub v: CMat,
}

impl GeneratorSet {
    pub fn new(d: usize, params: &ParamPoint) -> Result<Self> {
        Ok(GeneratorSet { h: h_general(d)?, u: u_cycle(d)?, v: v_general(d, params)? })
    }

    pub fn from_matrices(h: CMat, u: CMat, v: CMat) -> Self {
        GeneratorSet { h, u, v }
    }

    /// Left-to-right matrix product of the word; negative exponents use the
    /// adjoint (the letters are unitary), exponent 0 contributes the identity.
    pub fn realize(&self, word: &GeneratorWord) -> CMat {
        let d = self.h.nrows();
        let mut out = eye(d);
        for &(g, e) in &word.terms {
            let base = match g {
                Gen::H => &self.h,
                Gen::U => &self.u,
                Gen::V => &self.v,
            };
            let factor = if e >= 0 { base.clone() } else { dagger(base) };
            for _ in 0..e.unsigned_abs() {
                out = out.dot(&factor);
            }
        }
        out
    }
}

/// Build the lifted channel `Σ p_i (w_i ⊗ w_i) X (w_i ⊗ w_i)†` from words and
/// parameters. Requires `params.weights.len() == words.len() − 1`; the last
/// weight is implied.
pub fn standard_ruo(
    d: usize,
    words: &[GeneratorWord],
    params: &ParamPoint,
) -> Result<RandomUnitaryOperation> {
    if words.is_empty() {
        return Err(Error::InfeasibleParams("empty word list".into()));
    }
    if params.weights.len() + 1 != words.len() {
        return Err(Error::InfeasibleParams(format!(
            "{} weights given for {} words (need words − 1)",
            params.weights.len(),
            words.len()
        )));
    }
    let set = GeneratorSet::new(d, params)?;
    let weights = params.full_weights();
    let last = *weights.last().expect("nonempty");
    if last <= 0.0 {
        return Err(Error::InfeasibleParams(format!("implied last weight {last} <= 0")));
    }
    let pairs = words
        .iter()
        .zip(weights)
        .map(|(w, p)| (p, lift_otimes(&set.realize(w))))
        .collect();
    RandomUnitaryOperation::new(d * d, pairs)
}

/// Sufficient (not necessary) condition for asymptotic stationarity of the
/// qubit three-generator channel: none of `φ`, `θ`, `±2φ` equals `π/2`
/// modulo `2π`.
pub fn stationarity_condition_qubit(params: &ParamPoint) -> bool {
    let tau = std::f64::consts::TAU;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let near = |x: f64| {
        let w = x.rem_euclid(tau);
        (w - half_pi).abs() <= 1e-8
    };
    !(near(params.phi) || near(params.theta()) || near(2.0 * params.phi) || near(-2.0 * params.phi))
}
