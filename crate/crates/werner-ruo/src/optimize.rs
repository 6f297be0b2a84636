//! Convergence-rate optimization.
//!
//! The objective is λ_max of the constructed channel, set to 1 whenever more
//! than two eigenvalues (counted with algebraic multiplicity) sit on the
//! unit circle — that keeps the search inside the asymptotically stationary
//! region. The objective is piecewise smooth but not differentiable where
//! the maximal eigenvalue switches branch, so the local method is a
//! derivative-free Nelder–Mead simplex with feasibility projection.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::channel::RandomUnitaryOperation;
use crate::construction::{standard_ruo, GeneratorWord, ParamPoint, WEIGHT_EPS};
use crate::mat::{C64, CMat};
use crate::{Error, Result, TOL};

/// Which of the four matrix parameters vary during optimization; the k−1
/// free weights always vary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FreeParams {
    pub phi: bool,
    pub alpha_abs: bool,
    pub alpha_arg: bool,
    pub beta_arg: bool,
}

impl FreeParams {
    pub fn all() -> Self {
        FreeParams { phi: true, alpha_abs: true, alpha_arg: true, beta_arg: true }
    }

    pub fn none() -> Self {
        FreeParams { phi: false, alpha_abs: false, alpha_arg: false, beta_arg: false }
    }

    fn count(&self) -> usize {
        [self.phi, self.alpha_abs, self.alpha_arg, self.beta_arg]
            .iter()
            .filter(|b| **b)
            .count()
    }
}

#[derive(Debug, Clone)]
enum KrausFamily {
    /// Lifted word channel in the h/U/V family.
    Words { d: usize, words: Vec<GeneratorWord> },
    /// Fixed unitaries (already lifted or otherwise); only weights vary.
    Fixed { dim: usize, unitaries: Vec<CMat> },
}

/// A convergence-rate minimization problem: the channel family, which
/// parameters vary, and base values for the frozen ones.
#[derive(Debug, Clone)]
pub struct OptimizationProblem {
    family: KrausFamily,
    free: FreeParams,
    base: ParamPoint,
    weight_count: usize,
}

/// Effort profile of the per-restart refinement: the simplex budget per
/// descent and the number of deterministic trust-region re-seeds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchEffort {
    pub nm_budget: usize,
    pub hops: usize,
}

/// Deterministic low-discrepancy offsets in `[-1, 1]^n` (Halton bases).
fn halton_offset(index: usize, n: usize) -> Vec<f64> {
    const PRIMES: [usize; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    (0..n)
        .map(|i| {
            let base = PRIMES[i % PRIMES.len()];
            let mut f = 1.0;
            let mut r = 0.0;
            let mut k = index + 1;
            while k > 0 {
                f /= base as f64;
                r += f * (k % base) as f64;
                k /= base;
            }
            2.0 * r - 1.0
        })
        .collect()
}

/// One multi-start repetition: the best raw sample and its refinement.
#[derive(Debug, Clone)]
pub struct RestartRecord {
    pub restart: usize,
    pub sampled_best: f64,
    pub refined: f64,
    pub point: ParamPoint,
}

/// Outcome of [`OptimizationProblem::multistart`].
#[derive(Debug, Clone)]
pub struct OptimizationResult {
    pub best_lambda_max: f64,
    pub best_point: ParamPoint,
    pub history: Vec<RestartRecord>,
    pub seed: u64,
}

/// A sweepable coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coordinate {
    Phi,
    AlphaAbs,
    AlphaArg,
    BetaArg,
    Weight(usize),
}

impl std::str::FromStr for Coordinate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phi" => Ok(Coordinate::Phi),
            "alpha-abs" => Ok(Coordinate::AlphaAbs),
            "alpha-arg" => Ok(Coordinate::AlphaArg),
            "beta-arg" => Ok(Coordinate::BetaArg),
            other => {
                if let Some(num) = other.strip_prefix('p') {
                    if let Ok(k) = num.parse::<usize>() {
                        if k >= 1 {
                            return Ok(Coordinate::Weight(k - 1));
                        }
                    }
                }
                Err(Error::UnknownCoordinate(other.into()))
            }
        }
    }
}

impl OptimizationProblem {
    /// Word-family problem with all four matrix parameters free.
    pub fn words(d: usize, words: Vec<GeneratorWord>) -> Result<Self> {
        if words.is_empty() {
            return Err(Error::InfeasibleParams("empty word list".into()));
        }
        let weight_count = words.len() - 1;
        let base = neutral_point(weight_count)?;
        Ok(OptimizationProblem { family: KrausFamily::Words { d, words }, free: FreeParams::all(), base, weight_count })
    }

    /// Weights-only problem over fixed unitaries.
    pub fn fixed_unitaries(dim: usize, unitaries: Vec<CMat>) -> Result<Self> {
        if unitaries.len() < 2 {
            return Err(Error::InfeasibleParams("need at least two unitaries".into()));
        }
        let weight_count = unitaries.len() - 1;
        let base = neutral_point(weight_count)?;
        Ok(OptimizationProblem {
            family: KrausFamily::Fixed { dim, unitaries },
            free: FreeParams::none(),
            base,
            weight_count,
        })
    }

    pub fn with_free(mut self, free: FreeParams) -> Self {
        self.free = free;
        self
    }

    /// Base values for frozen parameters (weights in `base` are ignored).
    pub fn with_base(mut self, base: ParamPoint) -> Self {
        self.base = base;
        self
    }

    pub fn weight_count(&self) -> usize {
        self.weight_count
    }

    /// Build the channel at a parameter point.
    pub fn channel(&self, point: &ParamPoint) -> Result<RandomUnitaryOperation> {
        if point.weights.len() != self.weight_count {
            return Err(Error::InfeasibleParams(format!(
                "expected {} weights, got {}",
                self.weight_count,
                point.weights.len()
            )));
        }
        match &self.family {
            KrausFamily::Words { d, words } => standard_ruo(*d, words, point),
            KrausFamily::Fixed { dim, unitaries } => {
                let weights = point.full_weights();
                let last = *weights.last().expect("nonempty");
                if last <= 0.0 {
                    return Err(Error::InfeasibleParams(format!("implied last weight {last} <= 0")));
                }
                let pairs = weights
                    .into_iter()
                    .zip(unitaries.iter().cloned())
                    .collect();
                RandomUnitaryOperation::new(*dim, pairs)
            }
        }
    }

    /// λ_max of the channel at `point`, with the stationarity penalty: 1.0
    /// when more than two eigenvalues (with multiplicity) have unit modulus.
    pub fn objective(&self, point: &ParamPoint) -> Result<f64> {
        let t = self.channel(point)?;
        let evs = t.superoperator().eigvals()?;
        let unit_count = evs.iter().filter(|l| l.norm() >= 1.0 - TOL).count();
        if unit_count > 2 {
            return Ok(1.0);
        }
        Ok(evs
            .iter()
            .map(|l| l.norm())
            .filter(|m| *m < 1.0 - TOL)
            .fold(0.0, f64::max))
    }

    /// Uniform feasible sample: box parameters uniform, weights uniform on
    /// the open simplex via sorted-uniform spacings.
    pub fn sample_feasible<R: Rng + ?Sized>(&self, rng: &mut R) -> ParamPoint {
        let tau = std::f64::consts::TAU;
        loop {
            let phi = if self.free.phi { rng.random::<f64>() * tau } else { self.base.phi };
            let alpha_abs = if self.free.alpha_abs { rng.random::<f64>() } else { self.base.alpha_abs };
            let alpha_arg = if self.free.alpha_arg { rng.random::<f64>() * tau } else { self.base.alpha_arg };
            let beta_arg = if self.free.beta_arg { rng.random::<f64>() * tau } else { self.base.beta_arg };
            let weights = simplex_spacings(self.weight_count, rng);
            let ok = weights.iter().all(|w| *w > WEIGHT_EPS)
                && weights.iter().sum::<f64>() < 1.0 - WEIGHT_EPS;
            if !ok {
                continue;
            }
            if let Ok(p) = ParamPoint::new(phi, alpha_abs, alpha_arg, beta_arg, weights) {
                return p;
            }
        }
    }

    fn pack(&self, point: &ParamPoint) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.free.count() + self.weight_count);
        if self.free.phi {
            v.push(point.phi);
        }
        if self.free.alpha_abs {
            v.push(point.alpha_abs);
        }
        if self.free.alpha_arg {
            v.push(point.alpha_arg);
        }
        if self.free.beta_arg {
            v.push(point.beta_arg);
        }
        v.extend_from_slice(&point.weights);
        v
    }

    fn unpack(&self, coords: &[f64]) -> Result<ParamPoint> {
        let mut it = coords.iter().copied();
        let phi = if self.free.phi { it.next().unwrap() } else { self.base.phi };
        let alpha_abs = if self.free.alpha_abs { it.next().unwrap() } else { self.base.alpha_abs };
        let alpha_arg = if self.free.alpha_arg { it.next().unwrap() } else { self.base.alpha_arg };
        let beta_arg = if self.free.beta_arg { it.next().unwrap() } else { self.base.beta_arg };
        let weights: Vec<f64> = it.collect();
        ParamPoint::new(phi, alpha_abs, alpha_arg, beta_arg, weights)
    }

    /// Clamp a raw coordinate vector into the feasible region.
    fn project(&self, coords: &mut [f64]) {
        let mut idx = 0usize;
        if self.free.phi {
            idx += 1; // angles are periodic; wrapping happens in ParamPoint
        }
        if self.free.alpha_abs {
            coords[idx] = coords[idx].clamp(0.0, 1.0);
            idx += 1;
        }
        if self.free.alpha_arg {
            idx += 1;
        }
        if self.free.beta_arg {
            idx += 1;
        }
        let weights = &mut coords[idx..];
        for w in weights.iter_mut() {
            *w = w.clamp(WEIGHT_EPS, 1.0 - WEIGHT_EPS);
        }
        let sum: f64 = weights.iter().sum();
        if sum > 1.0 - WEIGHT_EPS {
            let scale = (1.0 - WEIGHT_EPS) / sum;
            for w in weights.iter_mut() {
                *w = (*w * scale).max(WEIGHT_EPS);
            }
        }
    }

    fn eval_coords(&self, coords: &[f64]) -> Result<f64> {
        self.objective(&self.unpack(coords)?)
    }

    /// Deterministic Nelder–Mead descent from `x0` with at most `budget`
    /// objective evaluations. Whenever the simplex collapses before the
    /// budget runs out, it is re-seeded around the incumbent with halved
    /// steps; the non-smooth objective (eigenvalue branch switches) tends to
    /// collapse simplexes early, and the restarts recover most of what a
    /// converged smooth-solver run would find. Returns the best point found
    /// and its value, never worse than the start.
    pub fn local_search(&self, x0: &ParamPoint, budget: usize) -> Result<(ParamPoint, f64)> {
        let mut start = self.pack(x0);
        self.project(&mut start);
        let n = start.len();
        let mut evals = 0usize;
        let f0 = {
            evals += 1;
            self.eval_coords(&start)?
        };
        if n == 0 || budget <= 1 {
            return Ok((self.unpack(&start)?, f0));
        }
        let mut best = (f0, start);
        let mut round = 0u32;
        while evals < budget && round < 20 {
            let scale = 0.5f64.powi(round as i32);
            let improved = self.nm_descent(&mut best, scale, budget, &mut evals)?;
            round += 1;
            // once the steps are tiny and nothing moves, stop early
            if !improved && scale < 1e-6 {
                break;
            }
        }
        Ok((self.unpack(&best.1)?, best.0))
    }

    /// One simplex descent around `best`, updating it in place. Returns
    /// whether the incumbent improved.
    fn nm_descent(
        &self,
        best: &mut (f64, Vec<f64>),
        step_scale: f64,
        budget: usize,
        evals: &mut usize,
    ) -> Result<bool> {
        let n = best.1.len();
        let start_value = best.0;
        let eval = |coords: &[f64], evals: &mut usize| -> Result<f64> {
            *evals += 1;
            self.eval_coords(coords)
        };

        // initial simplex: coordinate steps, scaled to the parameter kind
        let mut simplex: Vec<(f64, Vec<f64>)> = vec![best.clone()];
        for i in 0..n {
            let mut v = best.1.clone();
            let step = step_scale
                * if i < self.free.count() {
                    if self.free.alpha_abs && i == usize::from(self.free.phi) { 0.08 } else { 0.25 }
                } else {
                    0.05
                };
            v[i] += step;
            self.project(&mut v);
            if v == best.1 {
                v[i] -= 2.0 * step;
                self.project(&mut v);
            }
            if *evals >= budget {
                return Ok(false);
            }
            let fv = eval(&v, evals)?;
            simplex.push((fv, v));
        }

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        while *evals < budget {
            simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
            let spread = simplex.last().unwrap().0 - simplex[0].0;
            let size: f64 = (1..simplex.len())
                .map(|i| {
                    simplex[i]
                        .1
                        .iter()
                        .zip(&simplex[0].1)
                        .map(|(a, b)| (a - b).abs())
                        .fold(0.0, f64::max)
                })
                .fold(0.0, f64::max);
            if spread < 1e-12 && size < 1e-10 {
                break;
            }
            let worst = simplex.len() - 1;
            let centroid: Vec<f64> = (0..n)
                .map(|j| simplex[..worst].iter().map(|(_, v)| v[j]).sum::<f64>() / worst as f64)
                .collect();
            let mut reflected: Vec<f64> = centroid
                .iter()
                .zip(&simplex[worst].1)
                .map(|(c, w)| c + alpha * (c - w))
                .collect();
            self.project(&mut reflected);
            let fr = eval(&reflected, evals)?;
            if fr < simplex[0].0 {
                // try expansion
                let mut expanded: Vec<f64> = centroid
                    .iter()
                    .zip(&reflected)
                    .map(|(c, r)| c + gamma * (r - c))
                    .collect();
                self.project(&mut expanded);
                if *evals < budget {
                    let fe = eval(&expanded, evals)?;
                    simplex[worst] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
                } else {
                    simplex[worst] = (fr, reflected);
                }
            } else if fr < simplex[worst - 1].0 {
                simplex[worst] = (fr, reflected);
            } else {
                // contraction
                let mut contracted: Vec<f64> = centroid
                    .iter()
                    .zip(&simplex[worst].1)
                    .map(|(c, w)| c + rho * (w - c))
                    .collect();
                self.project(&mut contracted);
                let fc = if *evals < budget { eval(&contracted, evals)? } else { f64::MAX };
                if fc < simplex[worst].0 {
                    simplex[worst] = (fc, contracted);
                } else {
                    // shrink towards the best vertex
                    let anchor = simplex[0].1.clone();
                    for entry in simplex.iter_mut().skip(1) {
                        let mut v: Vec<f64> = anchor
                            .iter()
                            .zip(&entry.1)
                            .map(|(b, w)| b + sigma * (w - b))
                            .collect();
                        self.project(&mut v);
                        if *evals >= budget {
                            break;
                        }
                        let fv = eval(&v, evals)?;
                        *entry = (fv, v);
                    }
                }
            }
        }
        simplex.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if simplex[0].0 < best.0 {
            *best = simplex[0].clone();
        }
        Ok(best.0 < start_value - 1e-15)
    }

    /// Default per-restart search effort. Cheap channels (unit evaluations
    /// well under a millisecond) get the fully globalized search; larger
    /// channels keep the restart loop affordable.
    pub fn default_effort(&self) -> SearchEffort {
        let dim = match &self.family {
            KrausFamily::Words { d, .. } => d * d,
            KrausFamily::Fixed { dim, .. } => *dim,
        };
        if dim <= 4 {
            SearchEffort { nm_budget: 500, hops: 20 }
        } else {
            SearchEffort { nm_budget: 400, hops: 0 }
        }
    }

    /// Simplex descent plus deterministic trust-region re-seeds around the
    /// incumbent (low-discrepancy offsets, alternating radii). The plain
    /// descent stalls on the curved valleys of this objective where the
    /// maximal eigenvalue switches branch; the re-seeds recover the deep
    /// minima at a bounded, reproducible cost. Never worse than the start.
    pub fn globalized_search(
        &self,
        x0: &ParamPoint,
        effort: &SearchEffort,
    ) -> Result<(ParamPoint, f64)> {
        let (mut best_point, mut best_value) = self.local_search(x0, effort.nm_budget)?;
        let n = self.pack(&best_point).len();
        for hop in 0..effort.hops {
            let offsets = halton_offset(hop, n);
            let radius = if hop % 2 == 0 { 0.2 } else { 0.45 };
            let mut coords = self.pack(&best_point);
            let mut idx = 0usize;
            let apply = |coords: &mut Vec<f64>, idx: &mut usize, scale: f64| {
                coords[*idx] += radius * scale * offsets[*idx];
                *idx += 1;
            };
            if self.free.phi {
                apply(&mut coords, &mut idx, std::f64::consts::TAU / 2.0);
            }
            if self.free.alpha_abs {
                apply(&mut coords, &mut idx, 0.25);
            }
            if self.free.alpha_arg {
                apply(&mut coords, &mut idx, std::f64::consts::TAU / 2.0);
            }
            if self.free.beta_arg {
                apply(&mut coords, &mut idx, std::f64::consts::TAU / 2.0);
            }
            while idx < n {
                apply(&mut coords, &mut idx, 0.15);
            }
            self.project(&mut coords);
            let seed_point = self.unpack(&coords)?;
            let (candidate, value) = self.local_search(&seed_point, effort.nm_budget)?;
            if value < best_value {
                best_value = value;
                best_point = candidate;
            }
        }
        Ok((best_point, best_value))
    }

    /// The multi-start protocol: per repetition, sample `n_ran` feasible
    /// points, locally optimize the best; repeat `n_opt` times and keep the
    /// overall best. Per-restart RNG streams are derived from the master
    /// seed by counter, so the result is reproducible.
    pub fn multistart(&self, n_ran: usize, n_opt: usize, seed: u64) -> Result<OptimizationResult> {
        self.multistart_with(n_ran, n_opt, seed, &self.default_effort())
    }

    /// [`multistart`](Self::multistart) with an explicit effort profile.
    pub fn multistart_with(
        &self,
        n_ran: usize,
        n_opt: usize,
        seed: u64,
        effort: &SearchEffort,
    ) -> Result<OptimizationResult> {
        if n_ran == 0 || n_opt == 0 {
            return Err(Error::InfeasibleParams("budgets must be >= 1".into()));
        }
        let mut history = Vec::with_capacity(n_opt);
        let mut best: Option<(f64, ParamPoint)> = None;
        for restart in 0..n_opt {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(restart as u64 + 1);
            let mut raw_best: Option<(f64, ParamPoint)> = None;
            for _ in 0..n_ran {
                let p = self.sample_feasible(&mut rng);
                let v = self.objective(&p)?;
                if raw_best.as_ref().map(|(b, _)| v < *b).unwrap_or(true) {
                    raw_best = Some((v, p));
                }
            }
            let (sampled_best, start) = raw_best.expect("n_ran >= 1");
            let (point, refined) = self.globalized_search(&start, effort)?;
            if best.as_ref().map(|(b, _)| refined < *b).unwrap_or(true) {
                best = Some((refined, point.clone()));
            }
            history.push(RestartRecord { restart, sampled_best, refined, point });
        }
        let (best_lambda_max, best_point) = best.expect("n_opt >= 1");
        debug_assert!((self.objective(&best_point)? - best_lambda_max).abs() < 1e-10);
        Ok(OptimizationResult { best_lambda_max, best_point, history, seed })
    }

    /// Objective along one coordinate, all other parameters fixed.
    pub fn sweep(
        &self,
        coordinate: Coordinate,
        grid: &[f64],
        fixed: &ParamPoint,
    ) -> Result<Vec<(f64, f64)>> {
        if grid.is_empty() {
            return Err(Error::EmptyGrid);
        }
        let mut out = Vec::with_capacity(grid.len());
        for &value in grid {
            let point = set_coordinate(fixed, coordinate, value)?;
            out.push((value, self.objective(&point)?));
        }
        Ok(out)
    }

    /// Objective over a 2-coordinate grid (e.g. the weight simplex).
    /// Infeasible grid nodes (weights summing past 1) are skipped.
    pub fn sweep_pair(
        &self,
        coords: (Coordinate, Coordinate),
        grids: (&[f64], &[f64]),
        fixed: &ParamPoint,
    ) -> Result<Vec<(f64, f64, f64)>> {
        if grids.0.is_empty() || grids.1.is_empty() {
            return Err(Error::EmptyGrid);
        }
        let mut out = Vec::new();
        for &a in grids.0 {
            for &b in grids.1 {
                let point = match set_coordinate(fixed, coords.0, a)
                    .and_then(|p| set_coordinate(&p, coords.1, b))
                {
                    Ok(p) => p,
                    Err(Error::InfeasibleParams(_)) => continue,
                    Err(e) => return Err(e),
                };
                out.push((a, b, self.objective(&point)?));
            }
        }
        Ok(out)
    }
}

fn neutral_point(weight_count: usize) -> Result<ParamPoint> {
    let weights = vec![1.0 / (weight_count + 1) as f64; weight_count];
    ParamPoint::new(0.0, 0.5, 0.0, 0.0, weights)
}

/// First k−1 coordinates of a uniform sample on the k-simplex, via sorted
/// uniform spacings.
fn simplex_spacings<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<f64> {
    if count == 0 {
        return Vec::new();
    }
    let mut cuts: Vec<f64> = (0..count).map(|_| rng.random::<f64>()).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut prev = 0.0;
    let mut spacings = Vec::with_capacity(count);
    for c in cuts {
        spacings.push(c - prev);
        prev = c;
    }
    spacings
}

fn set_coordinate(point: &ParamPoint, coordinate: Coordinate, value: f64) -> Result<ParamPoint> {
    let mut phi = point.phi;
    let mut alpha_abs = point.alpha_abs;
    let mut alpha_arg = point.alpha_arg;
    let mut beta_arg = point.beta_arg;
    let mut weights = point.weights.clone();
    match coordinate {
        Coordinate::Phi => phi = value,
        Coordinate::AlphaAbs => alpha_abs = value,
        Coordinate::AlphaArg => alpha_arg = value,
        Coordinate::BetaArg => beta_arg = value,
        Coordinate::Weight(i) => {
            if i >= weights.len() {
                return Err(Error::UnknownCoordinate(format!("p{}", i + 1)));
            }
            weights[i] = value;
        }
    }
    ParamPoint::new(phi, alpha_abs, alpha_arg, beta_arg, weights)
}

/// The lifted SL(2,3) pair with the best convergence rate, `−iσ₃` and
/// `iσ₂U²`, as a weights-only problem.
pub fn sl23_best_pair_problem() -> Result<OptimizationProblem> {
    let (h1, _, u) = crate::construction::qubit_sl23();
    let minus_i_s3 = crate::mat::dagger(&h1);
    let mut i_s2 = crate::mat::zeros(2, 2);
    i_s2[[0, 1]] = C64::new(1.0, 0.0);
    i_s2[[1, 0]] = C64::new(-1.0, 0.0);
    let g2 = i_s2.dot(&u).dot(&u);
    OptimizationProblem::fixed_unitaries(
        4,
        vec![
            crate::channel::lift_otimes(&minus_i_s3),
            crate::channel::lift_otimes(&g2),
        ],
    )
}

/// The SL(2,3) triple with the best three-generator rate:
/// `iσ₃U`, `−iσ₃`, `−iσ₃U²`.
pub fn sl23_best_triple_problem() -> Result<OptimizationProblem> {
    let (h1, _, u) = crate::construction::qubit_sl23();
    let minus_i_s3 = crate::mat::dagger(&h1);
    let g1 = h1.dot(&u);
    let g2 = minus_i_s3.clone();
    let g3 = minus_i_s3.dot(&u).dot(&u);
    OptimizationProblem::fixed_unitaries(
        4,
        vec![
            crate::channel::lift_otimes(&g1),
            crate::channel::lift_otimes(&g2),
            crate::channel::lift_otimes(&g3),
        ],
    )
}
