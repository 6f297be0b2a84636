//! Asymptotic analysis of random unitary operations.
//!
//! The channel spectrum splits into the unit-modulus part σ₁ (whose
//! eigenvectors survive iteration) and the strict interior (which decays
//! geometrically at rate λ_max). For RUOs the identity is a positive fixed
//! point, so dual eigenvectors coincide with eigenvectors on σ₁ and every
//! unit-modulus eigenvector satisfies the per-Kraus attractor equation
//! `U_j X U_j† = λ X`.

use crate::channel::RandomUnitaryOperation;
use crate::mat::{
    dagger, devectorize, eye, hs_inner, hs_norm, null_space, scale, C64, CMat, CVec,
};
use crate::werner::WernerKit;
use crate::{Error, Result, TOL};

/// Eigenvalues within this distance of each other are treated as one
/// (possibly degenerate) eigenvalue when grouping.
const CLUSTER_TOL: f64 = 1e-7;

/// Spectrum summary of a channel.
#[derive(Debug, Clone)]
pub struct SpectralReport {
    /// All superoperator eigenvalues, with algebraic multiplicity.
    pub eigenvalues: Vec<C64>,
    /// The unit-modulus part: `|λ| ≥ 1 − unit_tol`.
    pub sigma1: Vec<C64>,
    /// Largest modulus strictly inside the unit circle; 0 when the whole
    /// spectrum is unit-modulus.
    pub lambda_max: f64,
    /// σ₁ ⊆ {1}: iterates converge instead of oscillating.
    pub stationary: bool,
    /// `Some(flag)` when the rank decisions are clear, `None` when any
    /// singular value falls too close to the rank threshold to call.
    pub diagonalizable: Option<bool>,
    /// Dimension of ker(T − 1).
    pub fixed_space_dim: usize,
}

/// Group eigenvalues into clusters of diameter ~`CLUSTER_TOL`.
fn cluster_eigenvalues(evs: &[C64]) -> Vec<(C64, usize)> {
    let mut clusters: Vec<(C64, usize)> = Vec::new();
    for &l in evs {
        match clusters.iter_mut().find(|(c, _)| (l - *c).norm() < CLUSTER_TOL) {
            Some((_, count)) => *count += 1,
            None => clusters.push((l, 1)),
        }
    }
    clusters
}

/// Full spectral report for a channel at the given unit-circle tolerance.
///
/// Unit-modulus clusters are semisimple for quantum channels (their Jordan
/// blocks are trivial), so only repeated clusters strictly inside the disk
/// need a rank computation. Rank decisions within a factor 10 of the
/// threshold make the diagonalizability flag `None`.
pub fn analyze(t: &RandomUnitaryOperation, unit_tol: f64) -> Result<SpectralReport> {
    let s = t.superoperator();
    let n2 = s.matrix.nrows();
    let evs = s.eigvals()?;
    let sigma1: Vec<C64> = evs.iter().copied().filter(|l| l.norm() >= 1.0 - unit_tol).collect();
    let lambda_max = evs
        .iter()
        .map(|l| l.norm())
        .filter(|m| *m < 1.0 - unit_tol)
        .fold(0.0, f64::max);
    let stationary = sigma1.iter().all(|l| (l - C64::new(1.0, 0.0)).norm() <= unit_tol);
    let fixed_space_dim = evs
        .iter()
        .filter(|l| (*l - C64::new(1.0, 0.0)).norm() <= unit_tol)
        .count();

    let threshold = unit_tol * hs_norm(&s.matrix);
    let mut geo_sum = 0usize;
    let mut undetermined = false;
    for (rep, alg) in cluster_eigenvalues(&evs) {
        if alg == 1 || rep.norm() >= 1.0 - unit_tol {
            geo_sum += alg;
            continue;
        }
        let mut shifted = s.matrix.clone();
        for k in 0..n2 {
            shifted[[k, k]] -= rep;
        }
        let svs = crate::mat::singular_values(&shifted)?;
        if svs
            .iter()
            .any(|sv| *sv > threshold / 10.0 && *sv < threshold * 10.0)
        {
            undetermined = true;
        }
        let nullity = svs.iter().filter(|sv| **sv < threshold).count();
        geo_sum += nullity.clamp(1, alg);
    }
    let diagonalizable = if undetermined { None } else { Some(geo_sum == n2) };

    Ok(SpectralReport { eigenvalues: evs, sigma1, lambda_max, stationary, diagonalizable, fixed_space_dim })
}

/// Orthonormal basis (Hilbert–Schmidt) of ker(T − 1), computed from the
/// superoperator matrix.
pub fn fixed_space(t: &RandomUnitaryOperation, tol: f64) -> Result<Vec<CMat>> {
    let s = t.superoperator();
    let n2 = s.matrix.nrows();
    let mut shifted = s.matrix;
    for k in 0..n2 {
        shifted[[k, k]] -= C64::new(1.0, 0.0);
    }
    let threshold = tol * hs_norm(&shifted).max(1.0);
    let basis = null_space(&shifted, threshold)?;
    basis.iter().map(devectorize).collect()
}

/// Does the channel asymptotically prepare Werner states?
///
/// True iff it is stationary, its fixed space is two-dimensional, and both
/// projectors of the kit lie in the fixed space up to `tol`.
pub fn is_werner_preparing(t: &RandomUnitaryOperation, kit: &WernerKit, tol: f64) -> Result<bool> {
    let n = kit.d * kit.d;
    if t.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, got: t.dim() });
    }
    let evs = t.superoperator().eigvals()?;
    let stationary = evs
        .iter()
        .filter(|l| l.norm() >= 1.0 - TOL)
        .all(|l| (l - C64::new(1.0, 0.0)).norm() <= TOL);
    if !stationary {
        return Ok(false);
    }
    let fs = fixed_space(t, tol)?;
    if fs.len() != 2 {
        return Ok(false);
    }
    for p in [&kit.p_sym, &kit.p_asym] {
        if projection_residual(p, &fs)? > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `‖x − Σ_i b_i ⟨b_i, x⟩‖` for an HS-orthonormal family `basis`.
pub fn projection_residual(x: &CMat, basis: &[CMat]) -> Result<f64> {
    let mut residual = x.clone();
    for b in basis {
        let w = hs_inner(b, x)?;
        residual = residual - scale(b, w);
    }
    Ok(hs_norm(&residual))
}

/// σ₁ eigenvalue clusters with orthonormal eigenvector bases. For RUOs the
/// dual vectors coincide with the eigenvectors, so this is all that the
/// asymptotic formula needs.
#[derive(Debug, Clone)]
pub struct AsymptoticDecomposition {
    pub pairs: Vec<(C64, Vec<CMat>)>,
}

pub fn asymptotic_decomposition(
    t: &RandomUnitaryOperation,
    unit_tol: f64,
) -> Result<AsymptoticDecomposition> {
    let s = t.superoperator();
    let n2 = s.matrix.nrows();
    let evs = s.eigvals()?;
    let unit: Vec<C64> = evs.into_iter().filter(|l| l.norm() >= 1.0 - unit_tol).collect();
    let mut pairs = Vec::new();
    for (rep, alg) in cluster_eigenvalues(&unit) {
        let mut shifted = s.matrix.clone();
        for k in 0..n2 {
            shifted[[k, k]] -= rep;
        }
        // unit-circle Jordan blocks are trivial, so the null space has the
        // full algebraic dimension; SVD returns it orthonormal
        let threshold = CLUSTER_TOL * hs_norm(&s.matrix).max(1.0);
        let vecs = null_space(&shifted, threshold)?;
        debug_assert!(vecs.len() >= alg.min(1));
        let mats: Result<Vec<CMat>> = vecs.iter().map(devectorize).collect();
        pairs.push((rep, mats?));
    }
    Ok(AsymptoticDecomposition { pairs })
}

/// The asymptotic formula `X_∞(n) = Σ_{λ∈σ₁} λⁿ Σ_i X_{λ,i} ⟨X_{λ,i}, x0⟩`.
pub fn x_infinity(t: &RandomUnitaryOperation, x0: &CMat, n: usize) -> Result<CMat> {
    let dec = asymptotic_decomposition(t, TOL)?;
    let mut out = crate::mat::zeros(t.dim(), t.dim());
    for (lambda, vecs) in &dec.pairs {
        let phase = lambda.powu(n as u32);
        for v in vecs {
            let w = hs_inner(v, x0)?;
            out = out + scale(v, phase * w);
        }
    }
    Ok(out)
}

/// `max_j ‖U_j X U_j† − λX‖`, the residual of the attractor equation for a
/// unit-modulus eigenvalue candidate.
pub fn attractor_residual(t: &RandomUnitaryOperation, x: &CMat, lambda: C64) -> Result<f64> {
    if (lambda.norm() - 1.0).abs() > 1e-6 {
        return Err(Error::InfeasibleParams(format!(
            "attractor eigenvalue must be unit-modulus, got |λ| = {}",
            lambda.norm()
        )));
    }
    let mut worst: f64 = 0.0;
    for (_, u) in t.kraus() {
        let moved = u.dot(x).dot(&dagger(u));
        worst = worst.max(hs_norm(&(moved - scale(x, lambda))));
    }
    Ok(worst)
}

/// `d²(d⁴−2)`, the prefactor of the convergence estimate.
pub fn bound_prefactor(d: usize) -> f64 {
    (d * d * (d.pow(4) - 2)) as f64
}

/// `d²(d⁴−2)·λ_maxⁿ`.
pub fn convergence_bound(d: usize, lambda_max: f64, n: usize) -> Result<f64> {
    if d < 2 {
        return Err(Error::DimensionTooSmall(d));
    }
    if !(0.0..1.0).contains(&lambda_max) {
        return Err(Error::RateOutOfRange(lambda_max));
    }
    Ok(bound_prefactor(d) * lambda_max.powi(n as i32))
}

/// `‖Tⁿ − 𝒫‖` in the Hilbert–Schmidt norm on superoperator matrices for
/// n = 0..=n_max, computed by powering the superoperator. Values are clamped
/// below at 1e−300. Refuses channels that are not stationary.
pub fn distances_to_twirl(t: &RandomUnitaryOperation, n_max: usize) -> Result<Vec<f64>> {
    let n = t.dim();
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::NotVectorized(n));
    }
    let report_stationary = {
        let evs = t.superoperator().eigvals()?;
        evs.iter()
            .filter(|l| l.norm() >= 1.0 - TOL)
            .all(|l| (l - C64::new(1.0, 0.0)).norm() <= TOL)
    };
    if !report_stationary {
        return Err(Error::NotStationary);
    }
    let twirl = WernerKit::new(d)?.twirl_matrix();
    let s = t.superoperator().matrix;
    let mut power = eye(n * n);
    let mut out = Vec::with_capacity(n_max + 1);
    for _ in 0..=n_max {
        out.push(hs_norm(&(&power - &twirl)).max(1e-300));
        power = s.dot(&power);
    }
    Ok(out)
}

/// Single-n convenience over [`distances_to_twirl`].
pub fn distance_to_twirl(t: &RandomUnitaryOperation, n: usize) -> Result<f64> {
    Ok(distances_to_twirl(t, n)?[n])
}

/// A-priori bound on `‖Tⁿ(x0) − X_∞(n)‖` for diagonalizable channels.
///
/// For a unitarily diagonalizable (normal) superoperator this is
/// `ν·‖x0‖·λ_maxⁿ` with ν the number of distinct eigenvalues outside σ₁;
/// otherwise the dual-basis norms are summed. Errors when the channel is not
/// diagonalizable (or too close to call).
pub fn diag_bound(t: &RandomUnitaryOperation, x0: &CMat, n: usize) -> Result<f64> {
    let report = analyze(t, TOL)?;
    if report.diagonalizable != Some(true) {
        return Err(Error::NotDiagonalizable);
    }
    let s = t.superoperator().matrix;
    let herm_dev = hs_norm(&(&s.dot(&dagger(&s)) - &dagger(&s).dot(&s)));
    let x0_norm = hs_norm(x0);
    let rate = report.lambda_max.powi(n as i32);
    if herm_dev <= 1e-10 * hs_norm(&s).powi(2).max(1.0) {
        // normal superoperator: orthogonal eigenprojections of norm 1
        let interior: Vec<C64> = report
            .eigenvalues
            .iter()
            .copied()
            .filter(|l| l.norm() < 1.0 - TOL)
            .collect();
        let nu = cluster_eigenvalues(&interior).len() as f64;
        return Ok(nu * x0_norm * rate);
    }
    // merely diagonalizable: bound each eigenprojection by its dual norms
    let dec = crate::mat::eig(&s)?;
    let n2 = s.nrows();
    let mut vmat = crate::mat::zeros(n2, n2);
    for (k, v) in dec.right_eigenvectors.iter().enumerate() {
        for i in 0..n2 {
            vmat[[i, k]] = v[i];
        }
    }
    let vinv = invert(&vmat)?;
    let mut dual_norm_sum = 0.0;
    for (k, lambda) in dec.eigenvalues.iter().enumerate() {
        if lambda.norm() < 1.0 - TOL {
            let row_norm: f64 = (0..n2).map(|j| vinv[[k, j]].norm_sqr()).sum::<f64>().sqrt();
            dual_norm_sum += row_norm;
        }
    }
    Ok(dual_norm_sum * x0_norm * rate)
}

fn invert(m: &CMat) -> Result<CMat> {
    use ndarray_linalg::Inverse;
    m.inv().map_err(|e| Error::EigFailure(e.to_string()))
}

/// Cosines of the principal angles between two subspaces given by
/// orthonormal (vectorized) bases.
pub fn principal_angle_cosines(a: &[CVec], b: &[CVec]) -> Result<Vec<f64>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let n = a[0].len();
    let mut cross = crate::mat::zeros(a.len(), b.len());
    for (i, va) in a.iter().enumerate() {
        for (j, vb) in b.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += va[k].conj() * vb[k];
            }
            cross[[i, j]] = acc;
        }
    }
    crate::mat::singular_values(&cross)
}

/// Vectorized orthonormal basis of `ker(conj(u)⊗u − λ)`, the eigenvalue-λ
/// eigenspace of conjugation by a single unitary.
pub fn conjugation_eigenspace(u: &CMat, lambda: C64, tol: f64) -> Result<Vec<CVec>> {
    let b = crate::mat::kron(&u.mapv(|x| x.conj()), u);
    let n2 = b.nrows();
    let mut shifted = b;
    for k in 0..n2 {
        shifted[[k, k]] -= lambda;
    }
    let threshold = tol * hs_norm(&shifted).max(1.0);
    null_space(&shifted, threshold)
}

/// Orthonormal basis of the intersection of two spans (orthonormal inputs).
pub fn intersect_spans(a: &[CVec], b: &[CVec], tol: f64) -> Result<Vec<CVec>> {
    if a.is_empty() || b.is_empty() {
        return Ok(Vec::new());
    }
    let n = a[0].len();
    // columns of Qa†Qb with singular value ~1 give common directions
    let mut cross = crate::mat::zeros(a.len(), b.len());
    for (i, va) in a.iter().enumerate() {
        for (j, vb) in b.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..n {
                acc += va[k].conj() * vb[k];
            }
            cross[[i, j]] = acc;
        }
    }
    use ndarray_linalg::SVD;
    let (u_opt, s, _) = cross.svd(true, false).map_err(|e| Error::EigFailure(e.to_string()))?;
    let u = u_opt.expect("requested U");
    let mut out = Vec::new();
    for (k, sv) in s.iter().enumerate() {
        if *sv > 1.0 - tol {
            let mut v = CVec::zeros(n);
            for (i, va) in a.iter().enumerate() {
                let w = u[[i, k]];
                for p in 0..n {
                    v[p] += w * va[p];
                }
            }
            let norm = crate::mat::vec_norm(&v);
            if norm > 0.0 {
                v.mapv_inplace(|x| x / norm);
            }
            out.push(v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::vectorize;
    use crate::channel::{lift_otimes, RandomUnitaryOperation};
    use crate::mat::{eye, max_abs_diff, zeros};
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn identity_channel(n: usize) -> RandomUnitaryOperation {
        RandomUnitaryOperation::new(n, vec![(1.0, eye(n))]).unwrap()
    }

    fn random_hermitian(n: usize, rng: &mut ChaCha8Rng) -> CMat {
        let x = CMat::from_shape_fn((n, n), |_| {
            c(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5)
        });
        &x + &dagger(&x)
    }

    fn qubit_bell_pair_channel(p: f64) -> RandomUnitaryOperation {
        // the two lifted phase/flip generators of the quaternion group
        let h1 = array![[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]];
        let h2 = array![[c(0.0, 0.0), c(-1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]];
        RandomUnitaryOperation::new(
            4,
            vec![(p, lift_otimes(&h1)), (1.0 - p, lift_otimes(&h2))],
        )
        .unwrap()
    }

    #[test]
    fn identity_channel_report() {
        let t = identity_channel(3);
        let r = analyze(&t, TOL).unwrap();
        assert_eq!(r.sigma1.len(), 9);
        assert_eq!(r.fixed_space_dim, 9);
        assert_eq!(r.lambda_max, 0.0);
        assert!(r.stationary);
        assert_eq!(r.diagonalizable, Some(true));
        assert_eq!(fixed_space(&t, 1e-8).unwrap().len(), 9);
    }

    #[test]
    fn sl23_pair_rate() {
        let (h1, _, u) = crate::construction::qubit_sl23();
        let g1 = scale(&crate::mat::dagger(&h1), c(1.0, 0.0)); // -i sigma3 = (i sigma3)†
        let is2 = array![[c(0.0, 0.0), c(1.0, 0.0)], [c(-1.0, 0.0), c(0.0, 0.0)]];
        let g2 = is2.dot(&u).dot(&u);
        let p = 0.51705601;
        let t = RandomUnitaryOperation::new(
            4,
            vec![(p, lift_otimes(&g1)), (1.0 - p, lift_otimes(&g2))],
        )
        .unwrap();
        let r = analyze(&t, TOL).unwrap();
        assert!(r.stationary);
        assert!((r.lambda_max - 0.64324745).abs() < 1e-6, "got {}", r.lambda_max);
    }

    #[test]
    fn oscillating_pair_sigma() {
        let t = qubit_bell_pair_channel(0.5);
        let r = analyze(&t, TOL).unwrap();
        assert!(!r.stationary);
        // unit eigenvalues are only ±1
        for l in &r.sigma1 {
            let near_one = (l - c(1.0, 0.0)).norm() < 1e-8;
            let near_minus = (l + c(1.0, 0.0)).norm() < 1e-8;
            assert!(near_one || near_minus);
        }
        assert!(r.sigma1.iter().any(|l| (l + c(1.0, 0.0)).norm() < 1e-8));
    }

    #[test]
    fn fixed_space_of_generic_pair_is_werner_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        let kit = WernerKit::new(2).unwrap();
        let u1 = crate::werner::haar_sample(2, &mut rng);
        let u2 = crate::werner::haar_sample(2, &mut rng);
        let t = RandomUnitaryOperation::new(
            4,
            vec![(0.4, lift_otimes(&u1)), (0.6, lift_otimes(&u2))],
        )
        .unwrap();
        let fs = fixed_space(&t, 1e-7).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(projection_residual(&kit.p_sym, &fs).unwrap() < 1e-7);
        assert!(projection_residual(&kit.p_asym, &fs).unwrap() < 1e-7);
        assert!(is_werner_preparing(&t, &kit, 1e-7).unwrap());
    }

    #[test]
    fn identity_is_not_werner_preparing() {
        let kit = WernerKit::new(2).unwrap();
        let t = identity_channel(4);
        assert!(!is_werner_preparing(&t, &kit, 1e-7).unwrap());
    }

    #[test]
    fn x_infinity_matches_twirl_for_werner_preparing() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        let kit = WernerKit::new(2).unwrap();
        let t = RandomUnitaryOperation::new(
            4,
            vec![
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
            ],
        )
        .unwrap();
        let x0 = random_hermitian(4, &mut rng);
        for n in [0usize, 1, 7] {
            let xi = x_infinity(&t, &x0, n).unwrap();
            let tw = kit.twirl(&x0).unwrap();
            assert!(max_abs_diff(&xi, &tw) < 1e-8);
        }
        // fixed point stays fixed
        let xi = x_infinity(&t, &kit.p_asym, 3).unwrap();
        assert!(max_abs_diff(&xi, &kit.p_asym) < 1e-8);
    }

    #[test]
    fn x_infinity_oscillates_and_tracks_iteration() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let t = qubit_bell_pair_channel(0.5);
        let x0 = random_hermitian(4, &mut rng);
        let x1 = x_infinity(&t, &x0, 1).unwrap();
        let x2 = x_infinity(&t, &x0, 2).unwrap();
        let x3 = x_infinity(&t, &x0, 3).unwrap();
        // period two: components flip sign with λ = −1
        assert!(max_abs_diff(&x1, &x3) < 1e-8);
        assert!(max_abs_diff(&x1, &x2) > 1e-3);
        // iteration converges to the oscillating envelope
        let mut err_prev = f64::MAX;
        for n in [5usize, 15, 30] {
            let it = t.iterate(&x0, n).unwrap();
            let xi = x_infinity(&t, &x0, n).unwrap();
            let err = hs_norm(&(&it - &xi));
            assert!(err < err_prev + 1e-12);
            err_prev = err;
        }
        assert!(err_prev < 1e-6);
    }

    #[test]
    fn attractor_residual_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        let kit = WernerKit::new(2).unwrap();
        let u = crate::werner::haar_sample(2, &mut rng);
        let t = RandomUnitaryOperation::new(4, vec![(1.0, lift_otimes(&u))]).unwrap();
        assert!(attractor_residual(&t, &kit.p_sym, c(1.0, 0.0)).unwrap() < 1e-10);

        // single lifted phase generator sends |Φ+⟩⟨Ψ+| to its negative
        let h1 = array![[c(0.0, 1.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, -1.0)]];
        let t1 = RandomUnitaryOperation::new(4, vec![(1.0, lift_otimes(&h1))]).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut phi_plus = CVec::zeros(4);
        phi_plus[0] = c(s, 0.0);
        phi_plus[3] = c(s, 0.0);
        let mut psi_plus = CVec::zeros(4);
        psi_plus[1] = c(s, 0.0);
        psi_plus[2] = c(s, 0.0);
        let x = CMat::from_shape_fn((4, 4), |(i, j)| phi_plus[i] * psi_plus[j].conj());
        assert!(attractor_residual(&t1, &x, c(-1.0, 0.0)).unwrap() < 1e-12);

        // two-generator channel: Bell projectors are fixed, and the signs of
        // the two lifted generators on the Bell coherences multiply out to
        // −1 on |Φ−⟩⟨Ψ−| and to neither ±1 jointly on |Φ+⟩⟨Φ−|
        let t2 = qubit_bell_pair_channel(0.5);
        let mut phi_minus = CVec::zeros(4);
        phi_minus[0] = c(s, 0.0);
        phi_minus[3] = c(-s, 0.0);
        let mut psi_minus = CVec::zeros(4);
        psi_minus[1] = c(s, 0.0);
        psi_minus[2] = c(-s, 0.0);
        let proj = CMat::from_shape_fn((4, 4), |(i, j)| phi_minus[i] * phi_minus[j].conj());
        assert!(attractor_residual(&t2, &proj, c(1.0, 0.0)).unwrap() < 1e-12);
        let y = CMat::from_shape_fn((4, 4), |(i, j)| phi_minus[i] * psi_minus[j].conj());
        assert!(attractor_residual(&t2, &y, c(-1.0, 0.0)).unwrap() < 1e-12);
        // the phase generator alone fixes |Φ+⟩⟨Φ−| but the flip generator
        // negates it, so it is not a joint λ=1 attractor
        let z = CMat::from_shape_fn((4, 4), |(i, j)| phi_plus[i] * phi_minus[j].conj());
        assert!(attractor_residual(&t1, &z, c(1.0, 0.0)).unwrap() < 1e-12);
        assert!(attractor_residual(&t2, &z, c(1.0, 0.0)).unwrap() > 1.0);

        assert!(attractor_residual(&t2, &y, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn bound_prefactor_values() {
        assert_eq!(bound_prefactor(2), 56.0);
        assert_eq!(bound_prefactor(3), 711.0);
        assert!((convergence_bound(3, 0.55847203, 0).unwrap() - 711.0).abs() < 1e-12);
        assert!(convergence_bound(3, 1.0, 1).is_err());
        assert!(convergence_bound(1, 0.5, 1).is_err());
    }

    #[test]
    fn distance_at_zero_is_projector_rank_norm() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let t = RandomUnitaryOperation::new(
            4,
            vec![
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
            ],
        )
        .unwrap();
        let d0 = distance_to_twirl(&t, 0).unwrap();
        assert!((d0 - 14f64.sqrt()).abs() < 1e-10);
    }

    #[test]
    fn distance_refuses_non_stationary() {
        let t = qubit_bell_pair_channel(0.5);
        assert!(matches!(distances_to_twirl(&t, 3), Err(Error::NotStationary)));
    }

    #[test]
    fn diag_bound_dominates_for_symmetrized() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let base = RandomUnitaryOperation::new(
            4,
            vec![
                (0.3, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                (0.7, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
            ],
        )
        .unwrap();
        let t = base.symmetrize();
        let x0 = random_hermitian(4, &mut rng);
        for n in [1usize, 5, 10, 25, 50] {
            let bound = diag_bound(&t, &x0, n).unwrap();
            let measured = hs_norm(&(&t.iterate(&x0, n).unwrap() - &x_infinity(&t, &x0, n).unwrap()));
            assert!(
                measured <= bound + 1e-9,
                "n={n}: measured {measured} exceeds bound {bound}"
            );
        }
    }

    #[test]
    fn diag_bound_identity() {
        let t = identity_channel(2);
        // ν = 0: the whole spectrum is σ₁
        assert_eq!(diag_bound(&t, &eye(2), 5).unwrap(), 0.0);
    }

    #[test]
    fn unit_eigenvectors_satisfy_attractor_equation() {
        let mut rng = ChaCha8Rng::seed_from_u64(45);
        for _ in 0..3 {
            let t = RandomUnitaryOperation::new(
                4,
                vec![
                    (0.35, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                    (0.65, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                ],
            )
            .unwrap();
            let dec = asymptotic_decomposition(&t, TOL).unwrap();
            for (lambda, vecs) in &dec.pairs {
                for x in vecs {
                    assert!(attractor_residual(&t, x, *lambda).unwrap() <= 1e-6);
                }
            }
        }
    }

    #[test]
    fn brute_force_intersection_matches_fixed_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let u1 = lift_otimes(&crate::werner::haar_sample(2, &mut rng));
        let u2 = lift_otimes(&crate::werner::haar_sample(2, &mut rng));
        let t = RandomUnitaryOperation::new(4, vec![(0.5, u1.clone()), (0.5, u2.clone())]).unwrap();
        let e1 = conjugation_eigenspace(&u1, c(1.0, 0.0), 1e-7).unwrap();
        let e2 = conjugation_eigenspace(&u2, c(1.0, 0.0), 1e-7).unwrap();
        let inter = intersect_spans(&e1, &e2, 1e-6).unwrap();
        let fs = fixed_space(&t, 1e-7).unwrap();
        assert_eq!(inter.len(), fs.len());
        let fs_vecs: Vec<CVec> = fs.iter().map(|m| vectorize(m).unwrap()).collect();
        for cosine in principal_angle_cosines(&inter, &fs_vecs).unwrap() {
            assert!((cosine - 1.0).abs() < 1e-6, "principal angle cosine {cosine}");
        }
    }

    #[test]
    fn stationary_implies_envelope_decay() {
        let mut rng = ChaCha8Rng::seed_from_u64(49);
        let t = RandomUnitaryOperation::new(
            4,
            vec![
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
                (0.5, lift_otimes(&crate::werner::haar_sample(2, &mut rng))),
            ],
        )
        .unwrap();
        let r = analyze(&t, TOL).unwrap();
        assert!(r.stationary);
        let kit = WernerKit::new(2).unwrap();
        let x0 = random_hermitian(4, &mut rng);
        let limit = kit.twirl(&x0).unwrap();
        let rate = r.lambda_max + 0.05;
        let c0 = hs_norm(&(&t.iterate(&x0, 0).unwrap() - &limit)) / 1.0;
        for n in [20usize, 50, 100] {
            let err = hs_norm(&(&t.iterate(&x0, n).unwrap() - &limit));
            assert!(err <= (c0 + 1.0) * rate.powi(n as i32) + 1e-12);
        }
    }

    #[test]
    fn zeros_matrix_has_no_unit_spectrum_issue() {
        // degenerate guard: channel on 2x2 with sigma = sigma1
        let t = identity_channel(2);
        let r = analyze(&t, TOL).unwrap();
        assert_eq!(r.lambda_max, 0.0);
        let _ = zeros(2, 2);
    }
}
