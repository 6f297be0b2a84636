//! Werner-state geometry on a bipartite d×d system.
//!
//! The flip operator `F` swaps the two tensor factors; its ±1 eigenspaces are
//! the ranges of the symmetric/antisymmetric projectors `P_sym = (1+F)/2` and
//! `P_asym = (1−F)/2`. Werner states are exactly the convex mixes of the two
//! normalized projectors, and the twirling projector maps any operator to its
//! Werner part. A seeded Haar sampler provides the Monte-Carlo oracle for the
//! twirl.

use ndarray_linalg::QRSquare;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::mat::{
    dagger, eye, hs_inner, kron, scale, vectorize, zeros, C64, CMat, CVec,
};
use crate::{Error, Result};

/// Flip operator, projectors and the canonical `F`-eigenbasis for one
/// subsystem dimension.
///
/// Basis ordering: the `d` diagonal vectors `|i⟩|i⟩`, then the symmetric
/// pairs `(|i⟩|j⟩ + |j⟩|i⟩)/√2` for `i<j` in lexicographic order, then the
/// antisymmetric pairs, same order.
#[derive(Debug, Clone)]
pub struct WernerKit {
    pub d: usize,
    pub flip: CMat,
    pub p_sym: CMat,
    pub p_asym: CMat,
    pub basis: Vec<CVec>,
}

impl WernerKit {
    pub fn new(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DimensionTooSmall(d));
        }
        let n = d * d;
        let mut flip = zeros(n, n);
        for i in 0..d {
            for j in 0..d {
                flip[[j * d + i, i * d + j]] = C64::new(1.0, 0.0);
            }
        }
        let half = C64::new(0.5, 0.0);
        let p_sym = (&eye(n) + &flip).mapv(|x| x * half);
        let p_asym = (&eye(n) - &flip).mapv(|x| x * half);

        let mut basis = Vec::with_capacity(n);
        let e = |i: usize, j: usize| -> CVec {
            let mut v = CVec::zeros(n);
            v[i * d + j] = C64::new(1.0, 0.0);
            v
        };
        for i in 0..d {
            basis.push(e(i, i));
        }
        let s = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        for i in 0..d {
            for j in i + 1..d {
                basis.push((e(i, j) + e(j, i)).mapv(|x| x * s));
            }
        }
        for i in 0..d {
            for j in i + 1..d {
                basis.push((e(i, j) - e(j, i)).mapv(|x| x * s));
            }
        }
        Ok(WernerKit { d, flip, p_sym, p_asym, basis })
    }

    /// Number of symmetric basis vectors, `d(d+1)/2`.
    pub fn sym_dim(&self) -> usize {
        self.d * (self.d + 1) / 2
    }

    /// Number of antisymmetric basis vectors, `d(d−1)/2`.
    pub fn asym_dim(&self) -> usize {
        self.d * (self.d - 1) / 2
    }

    /// Closed-form twirl: orthogonal projection of `x` onto
    /// `span(P_sym, P_asym)` in the Hilbert–Schmidt sense.
    pub fn twirl(&self, x: &CMat) -> Result<CMat> {
        let cs = C64::new(2.0 / (self.d * (self.d + 1)) as f64, 0.0);
        let ca = C64::new(2.0 / (self.d * (self.d - 1)) as f64, 0.0);
        let ws = hs_inner(&self.p_sym, x)? * cs;
        let wa = hs_inner(&self.p_asym, x)? * ca;
        Ok(scale(&self.p_sym, ws) + scale(&self.p_asym, wa))
    }

    /// The twirl as a superoperator matrix (d⁴×d⁴) in the crate-wide
    /// vectorization convention. Idempotent, Hermitian, rank 2.
    pub fn twirl_matrix(&self) -> CMat {
        let vs = vectorize(&self.p_sym).expect("projector is square");
        let va = vectorize(&self.p_asym).expect("projector is square");
        let cs = 2.0 / (self.d * (self.d + 1)) as f64;
        let ca = 2.0 / (self.d * (self.d - 1)) as f64;
        let n2 = vs.len();
        let mut t = zeros(n2, n2);
        for r in 0..n2 {
            for c in 0..n2 {
                t[[r, c]] = C64::new(cs, 0.0) * vs[r] * vs[c].conj()
                    + C64::new(ca, 0.0) * va[r] * va[c].conj();
            }
        }
        t
    }
}

/// Superoperator matrix of the twirling projector for subsystem dimension `d`.
pub fn twirl_projector(d: usize) -> Result<CMat> {
    Ok(WernerKit::new(d)?.twirl_matrix())
}

/// A Werner state `p·2/(d(d+1))·P_sym + (1−p)·2/(d(d−1))·P_asym`.
#[derive(Debug, Clone)]
pub struct WernerState {
    pub d: usize,
    pub p: f64,
    pub rho: CMat,
}

pub fn werner_state(d: usize, p: f64) -> Result<WernerState> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InfeasibleParams(format!("p = {p} outside [0, 1]")));
    }
    let kit = WernerKit::new(d)?;
    let cs = C64::new(p * 2.0 / (d * (d + 1)) as f64, 0.0);
    let ca = C64::new((1.0 - p) * 2.0 / (d * (d - 1)) as f64, 0.0);
    let rho = scale(&kit.p_sym, cs) + scale(&kit.p_asym, ca);
    Ok(WernerState { d, p, rho })
}

/// Haar-distributed random unitary of dimension `d`.
///
/// An i.i.d. complex-Gaussian (Ginibre) matrix is orthonormalized by QR and
/// the R-diagonal phases are absorbed into Q, which makes the distribution
/// left-invariant.
pub fn haar_sample<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let mut g = zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            g[[i, j]] = C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
        }
    }
    let (q, r) = g.qr_square().expect("QR of a Ginibre sample");
    let mut u = q;
    for j in 0..d {
        let rjj = r[[j, j]];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..d {
            u[[i, j]] *= phase;
        }
    }
    u
}

/// Monte-Carlo twirl: empirical average of `(U⊗U) x (U⊗U)†` over Haar
/// samples. Converges to the twirling projector applied to `x` at rate
/// `O(n_samples^{-1/2})`.
pub fn mc_twirl<R: Rng + ?Sized>(x: &CMat, n_samples: usize, rng: &mut R) -> Result<CMat> {
    let n = x.nrows();
    if n != x.ncols() {
        return Err(Error::NonSquare { rows: n, cols: x.ncols() });
    }
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::NotVectorized(n));
    }
    let mut acc = zeros(n, n);
    for _ in 0..n_samples {
        let u = haar_sample(d, rng);
        let lifted = kron(&u, &u);
        acc = acc + lifted.dot(x).dot(&dagger(&lifted));
    }
    Ok(acc.mapv(|z| z / n_samples as f64))
}
