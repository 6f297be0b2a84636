//! Dense complex matrix substrate.
//!
//! All higher modules work with [`CMat`] (row-major `Array2<Complex64>`) and
//! the handful of operations here: Kronecker products, adjoints, the
//! Hilbert–Schmidt inner product, column-stacking vectorization and a general
//! complex eigendecomposition (LAPACK `zgeev` underneath).
//!
//! Vectorization convention, fixed once for the whole crate: `vectorize`
//! stacks columns, so column `j` of `X` occupies block `j` of `vec(X)` and
//! `vec(A·X·B) = (Bᵀ ⊗ A)·vec(X)`. The map `X ↦ U X U†` therefore has the
//! matrix `conj(U) ⊗ U`.

use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, EigVals, SVD};

use crate::{Error, Result, TOL};

pub type C64 = num_complex::Complex64;
pub type CMat = Array2<C64>;
pub type CVec = Array1<C64>;

pub fn zeros(rows: usize, cols: usize) -> CMat {
    Array2::zeros((rows, cols))
}

pub fn eye(n: usize) -> CMat {
    Array2::eye(n)
}

pub fn scale(m: &CMat, s: C64) -> CMat {
    m.mapv(|x| x * s)
}

/// Kronecker product; dimensions multiply.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    ndarray::linalg::kron(a, b)
}

/// Conjugate transpose.
pub fn dagger(a: &CMat) -> CMat {
    a.t().mapv(|x| x.conj())
}

/// Hilbert–Schmidt inner product `Tr(a† b)`, antilinear in `a`.
pub fn hs_inner(a: &CMat, b: &CMat) -> Result<C64> {
    if a.dim() != b.dim() || a.nrows() != a.ncols() {
        return Err(Error::ShapeMismatch {
            left: format!("{}x{}", a.nrows(), a.ncols()),
            right: format!("{}x{}", b.nrows(), b.ncols()),
        });
    }
    Ok(a.iter().zip(b.iter()).map(|(x, y)| x.conj() * y).sum())
}

/// Hilbert–Schmidt (Frobenius) norm.
pub fn hs_norm(a: &CMat) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

pub fn vec_norm(v: &CVec) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entry-wise deviation between two matrices.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Deviation of `u` from unitarity, `max |(u†u − 1)_ij|`.
pub fn unitarity_deviation(u: &CMat) -> f64 {
    let n = u.nrows();
    max_abs_diff(&dagger(u).dot(u), &eye(n))
}

pub fn trace(m: &CMat) -> C64 {
    m.diag().iter().sum()
}

pub fn ensure_finite(m: &CMat) -> Result<()> {
    if m.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

/// Column-stacking vectorization of a square matrix.
pub fn vectorize(x: &CMat) -> Result<CVec> {
    let n = x.nrows();
    if n != x.ncols() {
        return Err(Error::NonSquare { rows: n, cols: x.ncols() });
    }
    let mut v = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            v.push(x[[i, j]]);
        }
    }
    Ok(Array1::from_vec(v))
}

/// Inverse of [`vectorize`]; the length must be a perfect square.
pub fn devectorize(v: &CVec) -> Result<CMat> {
    let len = v.len();
    let n = (len as f64).sqrt().round() as usize;
    if n * n != len {
        return Err(Error::NotVectorized(len));
    }
    let mut m = zeros(n, n);
    for j in 0..n {
        for i in 0..n {
            m[[i, j]] = v[j * n + i];
        }
    }
    Ok(m)
}

/// Eigendecomposition of a general complex matrix.
///
/// Eigenvalues come with algebraic repetition; each right eigenvector is
/// normalized to unit Euclidean norm with its first nonzero component made
/// real-positive so repeated runs and platforms agree on phases.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<C64>,
    pub right_eigenvectors: Vec<CVec>,
}

/// Full eigendecomposition of a general (non-normal) square matrix.
///
/// The residual `‖Mv − λv‖ ≤ 1e−8·‖M‖` is verified for every returned pair;
/// a violation is reported as [`Error::EigFailure`].
pub fn eig(m: &CMat) -> Result<EigenDecomposition> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::NonSquare { rows: n, cols: m.ncols() });
    }
    ensure_finite(m)?;
    let (vals, vecs) = m
        .eig()
        .map_err(|e| Error::EigFailure(e.to_string()))?;
    let scale = hs_norm(m).max(1.0);
    let mut eigenvalues = Vec::with_capacity(n);
    let mut right_eigenvectors = Vec::with_capacity(n);
    for (k, &lambda) in vals.iter().enumerate() {
        let mut v: CVec = vecs.column(k).to_owned();
        let norm = vec_norm(&v);
        if norm > 0.0 {
            v.mapv_inplace(|x| x / norm);
        }
        // phase convention: first component above noise made real-positive
        if let Some(z) = v.iter().find(|z| z.norm() > 1e-12) {
            let phase = z.conj() / z.norm();
            v.mapv_inplace(|x| x * phase);
        }
        let residual: f64 = {
            let mv = m.dot(&v);
            mv.iter()
                .zip(v.iter())
                .map(|(a, b)| (a - lambda * b).norm_sqr())
                .sum::<f64>()
                .sqrt()
        };
        if residual > TOL * scale {
            return Err(Error::EigFailure(format!(
                "residual {residual:.3e} exceeds {:.3e} for eigenvalue {lambda}",
                TOL * scale
            )));
        }
        eigenvalues.push(lambda);
        right_eigenvectors.push(v);
    }
    Ok(EigenDecomposition { eigenvalues, right_eigenvectors })
}

/// Eigenvalues only; cheaper than [`eig`] when eigenvectors are not needed.
pub fn eigvals(m: &CMat) -> Result<Vec<C64>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::NonSquare { rows: n, cols: m.ncols() });
    }
    ensure_finite(m)?;
    let vals = m
        .eigvals()
        .map_err(|e| Error::EigFailure(e.to_string()))?;
    Ok(vals.to_vec())
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Result<Vec<f64>> {
    let (_, s, _) = m
        .svd(false, false)
        .map_err(|e| Error::EigFailure(e.to_string()))?;
    Ok(s.to_vec())
}

/// Orthonormal basis of the (numerical) null space of `m`, i.e. the right
/// singular vectors whose singular values fall below `threshold`.
pub fn null_space(m: &CMat, threshold: f64) -> Result<Vec<CVec>> {
    let (_, s, vt) = m
        .svd(false, true)
        .map_err(|e| Error::EigFailure(e.to_string()))?;
    let vt = vt.expect("requested Vt");
    let mut basis = Vec::new();
    for (k, &sv) in s.iter().enumerate() {
        if sv < threshold {
            basis.push(vt.row(k).mapv(|x| x.conj()));
        }
    }
    Ok(basis)
}

/// Numerical rank at `threshold`.
pub fn rank(m: &CMat, threshold: f64) -> Result<usize> {
    Ok(singular_values(m)?.iter().filter(|s| **s >= threshold).count())
}
