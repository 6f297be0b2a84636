//! Finite matrix groups: closure from generators, generation tests, tuple
//! censuses and finite twirling.
//!
//! Element identity is decided by a canonical key (entries rounded to six
//! decimals); every key hit is verified entry-wise, so a collision of two
//! genuinely different elements is detected rather than silently merged.
//! Censuses enumerate unordered tuples of distinct elements.

use std::collections::HashMap;

use crate::channel::{lift_otimes, RandomUnitaryOperation};
use crate::mat::{dagger, eye, max_abs_diff, unitarity_deviation, C64, CMat};
use crate::{Error, Result, TOL};

type Key = Vec<(i64, i64)>;

fn canonical_key(m: &CMat) -> Key {
    m.iter()
        .map(|z| {
            // avoid the -0.0 vs 0.0 split
            let re = (z.re * 1e6).round();
            let im = (z.im * 1e6).round();
            ((re + 0.0) as i64, (im + 0.0) as i64)
        })
        .collect()
}

/// Result of a closure computation: either the finite group or the verdict
/// that the cap was exceeded.
#[derive(Debug, Clone)]
pub enum ClosureOutcome {
    Group(FiniteMatrixGroup),
    Infinite,
}

impl ClosureOutcome {
    pub fn group(self) -> Option<FiniteMatrixGroup> {
        match self {
            ClosureOutcome::Group(g) => Some(g),
            ClosureOutcome::Infinite => None,
        }
    }
}

/// A finite group of unitary matrices, with its Cayley table when the order
/// is small enough for fast subgroup computations.
#[derive(Debug, Clone)]
pub struct FiniteMatrixGroup {
    dim: usize,
    elements: Vec<CMat>,
    index: HashMap<Key, usize>,
    generators: Vec<CMat>,
    cayley: Option<Vec<Vec<usize>>>,
    tol: f64,
}

/// Breadth-first product closure of the generators. Identity is element 0;
/// elements appear in discovery order, which makes indices reproducible.
/// Returns [`ClosureOutcome::Infinite`] once more than `cap` elements appear.
pub fn closure(generators: &[CMat], cap: usize, tol: f64) -> Result<ClosureOutcome> {
    if generators.is_empty() {
        return Err(Error::InfeasibleParams("no generators".into()));
    }
    let dim = generators[0].nrows();
    for (index, g) in generators.iter().enumerate() {
        if g.nrows() != dim || g.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.nrows() });
        }
        let deviation = unitarity_deviation(g);
        if deviation > TOL {
            return Err(Error::NonUnitaryKraus { index, deviation });
        }
    }
    let mut elements: Vec<CMat> = vec![eye(dim)];
    let mut index: HashMap<Key, usize> = HashMap::new();
    index.insert(canonical_key(&elements[0]), 0);
    let mut head = 0usize;
    while head < elements.len() {
        for g in generators {
            let prod = elements[head].dot(g);
            let key = canonical_key(&prod);
            match index.get(&key) {
                Some(&at) => {
                    if max_abs_diff(&prod, &elements[at]) > 10.0 * tol {
                        return Err(Error::ClosureInconsistent);
                    }
                }
                None => {
                    index.insert(key, elements.len());
                    elements.push(prod);
                    if elements.len() > cap {
                        return Ok(ClosureOutcome::Infinite);
                    }
                }
            }
        }
        head += 1;
    }
    let cayley = if elements.len() <= 1024 {
        let n = elements.len();
        let mut table = vec![vec![0usize; n]; n];
        for a in 0..n {
            for b in 0..n {
                let prod = elements[a].dot(&elements[b]);
                let at = *index
                    .get(&canonical_key(&prod))
                    .ok_or(Error::ClosureInconsistent)?;
                if max_abs_diff(&prod, &elements[at]) > 10.0 * tol {
                    return Err(Error::ClosureInconsistent);
                }
                table[a][b] = at;
            }
        }
        Some(table)
    } else {
        None
    };
    Ok(ClosureOutcome::Group(FiniteMatrixGroup {
        dim,
        elements,
        index,
        generators: generators.to_vec(),
        cayley,
        tol,
    }))
}

/// Flag with an explicit "could not decide numerically" state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Yes,
    No,
    Undetermined,
}

impl Flag {
    pub fn from_option(v: Option<bool>) -> Self {
        match v {
            Some(true) => Flag::Yes,
            Some(false) => Flag::No,
            None => Flag::Undetermined,
        }
    }
}

/// One row of a census: the sorted element indices, whether they generate
/// the whole group, and (for generating tuples) the spectral flags of the
/// lifted equal-weight channel.
#[derive(Debug, Clone)]
pub struct CensusRecord {
    pub tuple: Vec<usize>,
    pub generates: bool,
    pub stationary: Option<bool>,
    pub diagonalizable: Option<Flag>,
    pub optimal_lambda_max: Option<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    /// Lift elements to `g ⊗ g` before building the channel.
    pub lift: bool,
    /// For pair censuses, also minimize λ_max over the weight.
    pub optimize_rate: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { lift: true, optimize_rate: false }
    }
}

/// Aggregate counts over census records.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CensusSummary {
    pub tuples: usize,
    pub generating: usize,
    pub stationary: usize,
    pub non_stationary: usize,
    pub diagonalizable: usize,
}

pub fn census_summary(records: &[CensusRecord]) -> CensusSummary {
    let generating = records.iter().filter(|r| r.generates).count();
    let stationary = records.iter().filter(|r| r.stationary == Some(true)).count();
    let non_stationary = records.iter().filter(|r| r.stationary == Some(false)).count();
    let diagonalizable = records.iter().filter(|r| r.diagonalizable == Some(Flag::Yes)).count();
    CensusSummary { tuples: records.len(), generating, stationary, non_stationary, diagonalizable }
}

impl FiniteMatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[CMat] {
        &self.elements
    }

    pub fn generators(&self) -> &[CMat] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> Result<&CMat> {
        self.elements.get(i).ok_or(Error::NotGroupElement(i))
    }

    /// Index of a matrix in the element list, if it is a member.
    pub fn element_index(&self, m: &CMat) -> Option<usize> {
        let at = *self.index.get(&canonical_key(m))?;
        (max_abs_diff(m, &self.elements[at]) <= 10.0 * self.tol).then_some(at)
    }

    /// One full verification sweep: products and inverses stay inside.
    pub fn verify_closed(&self) -> bool {
        for a in &self.elements {
            if self.element_index(&dagger(a)).is_none() {
                return false;
            }
            for b in &self.elements {
                if self.element_index(&a.dot(b)).is_none() {
                    return false;
                }
            }
        }
        true
    }

    fn cayley(&self) -> Result<&Vec<Vec<usize>>> {
        self.cayley.as_ref().ok_or(Error::CensusTooLarge { order: self.order(), size: 0 })
    }

    /// Does the tuple of element indices generate the whole group?
    pub fn generates(&self, tuple: &[usize]) -> Result<bool> {
        let cayley = self.cayley()?;
        let n = self.order();
        for &i in tuple {
            if i >= n {
                return Err(Error::NotGroupElement(i));
            }
        }
        let mut in_set = vec![false; n];
        in_set[0] = true;
        let mut stack = vec![0usize];
        let mut count = 1usize;
        while let Some(e) = stack.pop() {
            for &g in tuple {
                let p = cayley[e][g];
                if !in_set[p] {
                    in_set[p] = true;
                    count += 1;
                    stack.push(p);
                }
            }
        }
        Ok(count == n)
    }

    /// Census over unordered tuples of distinct elements. For each
    /// generating tuple the lifted equal-weight channel is analyzed for
    /// stationarity and diagonalizability; for pairs, `optimize_rate`
    /// additionally minimizes λ_max over the free weight.
    pub fn census(&self, tuple_size: usize, options: CensusOptions) -> Result<Vec<CensusRecord>> {
        if !(1..=3).contains(&tuple_size) {
            return Err(Error::CensusTooLarge { order: self.order(), size: tuple_size });
        }
        let n = self.order();
        let combos = match tuple_size {
            1 => n,
            2 => n * (n - 1) / 2,
            _ => n * (n - 1) * (n - 2) / 6,
        };
        if combos > 200_000 {
            return Err(Error::CensusTooLarge { order: n, size: tuple_size });
        }
        let lifted: Vec<CMat> = self
            .elements
            .iter()
            .map(|e| if options.lift { lift_otimes(e) } else { e.clone() })
            .collect();
        let chan_dim = if options.lift { self.dim * self.dim } else { self.dim };

        let mut tuples: Vec<Vec<usize>> = Vec::with_capacity(combos);
        match tuple_size {
            1 => {
                for a in 0..n {
                    tuples.push(vec![a]);
                }
            }
            2 => {
                for a in 0..n {
                    for b in a + 1..n {
                        tuples.push(vec![a, b]);
                    }
                }
            }
            _ => {
                for a in 0..n {
                    for b in a + 1..n {
                        for c in b + 1..n {
                            tuples.push(vec![a, b, c]);
                        }
                    }
                }
            }
        }

        let mut records = Vec::with_capacity(tuples.len());
        for tuple in tuples {
            let generates = self.generates(&tuple)?;
            if !generates {
                records.push(CensusRecord {
                    tuple,
                    generates,
                    stationary: None,
                    diagonalizable: None,
                    optimal_lambda_max: None,
                });
                continue;
            }
            let unitaries: Vec<CMat> = tuple.iter().map(|&i| lifted[i].clone()).collect();
            let t = RandomUnitaryOperation::equal_weights(chan_dim, unitaries.clone())?;
            let report = crate::spectral::analyze(&t, TOL)?;
            let optimal_lambda_max = if options.optimize_rate && tuple_size == 2 && report.stationary {
                Some(minimize_pair_rate(&unitaries[0], &unitaries[1], chan_dim)?)
            } else {
                None
            };
            records.push(CensusRecord {
                tuple,
                generates,
                stationary: Some(report.stationary),
                diagonalizable: Some(Flag::from_option(report.diagonalizable)),
                optimal_lambda_max,
            });
        }
        Ok(records)
    }

    /// `u · g · u† ∈ g` for every group element.
    pub fn normalizes(&self, u: &CMat) -> bool {
        let ud = dagger(u);
        self.elements
            .iter()
            .all(|e| self.element_index(&u.dot(e).dot(&ud)).is_some())
    }

    /// Exact group average `(1/|G|) Σ g x g†`, optionally over the lifted
    /// elements `g ⊗ g`. Idempotent as a map.
    pub fn finite_twirl(&self, x: &CMat, lift: bool) -> Result<CMat> {
        let expected = if lift { self.dim * self.dim } else { self.dim };
        if x.nrows() != expected || x.ncols() != expected {
            return Err(Error::DimensionMismatch { expected, got: x.nrows() });
        }
        let mut acc = crate::mat::zeros(expected, expected);
        for e in &self.elements {
            let g = if lift { lift_otimes(e) } else { e.clone() };
            acc = acc + g.dot(x).dot(&dagger(&g));
        }
        Ok(acc.mapv(|z| z / self.order() as f64))
    }
}

/// λ_max of the two-unitary channel `p A·A† + (1−p) B·B†`, with the
/// more-than-two-unit-eigenvalues penalty.
fn pair_rate(a: &CMat, b: &CMat, dim: usize, p: f64) -> Result<f64> {
    let t = RandomUnitaryOperation::new(dim, vec![(p, a.clone()), (1.0 - p, b.clone())])?;
    let evs = t.superoperator().eigvals()?;
    let units = evs.iter().filter(|l| l.norm() >= 1.0 - TOL).count();
    if units > 2 {
        return Ok(1.0);
    }
    Ok(evs
        .iter()
        .map(|l| l.norm())
        .filter(|m| *m < 1.0 - TOL)
        .fold(0.0, f64::max))
}

/// Coarse grid plus golden-section refinement of `p ↦ λ_max(p)`.
fn minimize_pair_rate(a: &CMat, b: &CMat, dim: usize) -> Result<f64> {
    let grid = 200usize;
    let mut best_p = 0.5;
    let mut best = f64::MAX;
    for k in 1..grid {
        let p = k as f64 / grid as f64;
        let v = pair_rate(a, b, dim, p)?;
        if v < best {
            best = v;
            best_p = p;
        }
    }
    let (mut lo, mut hi) = ((best_p - 0.01).max(1e-6), (best_p + 0.01).min(1.0 - 1e-6));
    const INV_PHI2: f64 = 0.381_966_011_250_105;
    for _ in 0..40 {
        let m1 = lo + INV_PHI2 * (hi - lo);
        let m2 = hi - INV_PHI2 * (hi - lo);
        if pair_rate(a, b, dim, m1)? < pair_rate(a, b, dim, m2)? {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    pair_rate(a, b, dim, 0.5 * (lo + hi))
}

/// The groups used throughout: `q8`, `sl23` and `d2-order192`.
pub fn builtin_group(name: &str) -> Result<FiniteMatrixGroup> {
    let (h1, h2, u) = crate::construction::qubit_sl23();
    let gens: Vec<CMat> = match name {
        "q8" => vec![h1, h2],
        "sl23" => vec![h1, h2, u],
        "d2-order192" => {
            let h = crate::construction::h_general(2)?;
            let uc = crate::construction::u_cycle(2)?;
            let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
            let mut hadamard = crate::mat::zeros(2, 2);
            hadamard[[0, 0]] = s;
            hadamard[[0, 1]] = s;
            hadamard[[1, 0]] = s;
            hadamard[[1, 1]] = -s;
            vec![h, uc.dot(&hadamard)]
        }
        other => return Err(Error::InfeasibleParams(format!("unknown group spec {other:?}"))),
    };
    match closure(&gens, 100_000, TOL)? {
        ClosureOutcome::Group(g) => Ok(g),
        ClosureOutcome::Infinite => Err(Error::ClosureCap(100_000)),
    }
}
