//! Random unitary operations and their superoperator matrices.

use crate::mat::{
    dagger, devectorize, ensure_finite, eye, kron, scale, unitarity_deviation, vectorize, zeros,
    C64, CMat,
};
use crate::{Error, Result, TOL, WEIGHT_TOL};

/// A quantum channel `X ↦ Σ p_i U_i X U_i†` with unitary Kraus operators and
/// probability weights summing to one.
#[derive(Debug, Clone)]
pub struct RandomUnitaryOperation {
    dim: usize,
    kraus: Vec<(f64, CMat)>,
}

/// `U ⊗ U`, the lift of a single-system unitary to the bipartite system.
pub fn lift_otimes(u: &CMat) -> CMat {
    kron(u, u)
}

impl RandomUnitaryOperation {
    /// Validate weights and unitarity and build the channel.
    pub fn new(dim: usize, pairs: Vec<(f64, CMat)>) -> Result<Self> {
        let mut sum = 0.0;
        for (index, (p, u)) in pairs.iter().enumerate() {
            if !(*p > 0.0 && *p <= 1.0) {
                return Err(Error::WeightRange { index, value: *p });
            }
            sum += p;
            if u.nrows() != dim || u.ncols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: u.nrows() });
            }
            ensure_finite(u)?;
            let deviation = unitarity_deviation(u);
            if deviation > TOL {
                return Err(Error::NonUnitaryKraus { index, deviation });
            }
        }
        if (sum - 1.0).abs() > WEIGHT_TOL {
            return Err(Error::WeightSum { sum, tol: WEIGHT_TOL });
        }
        Ok(RandomUnitaryOperation { dim, kraus: pairs })
    }

    /// Equal-weight channel over the given unitaries.
    pub fn equal_weights(dim: usize, unitaries: Vec<CMat>) -> Result<Self> {
        let k = unitaries.len();
        let p = 1.0 / k as f64;
        let mut pairs: Vec<(f64, CMat)> = unitaries.into_iter().map(|u| (p, u)).collect();
        // make the weights sum to exactly 1
        if let Some(last) = pairs.last_mut() {
            last.0 = 1.0 - p * (k - 1) as f64;
        }
        Self::new(dim, pairs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[(f64, CMat)] {
        &self.kraus
    }

    pub fn weights(&self) -> Vec<f64> {
        self.kraus.iter().map(|(p, _)| *p).collect()
    }

    /// Apply the channel once: `Σ p_i U_i x U_i†`.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        if x.nrows() != self.dim || x.ncols() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.nrows() });
        }
        let mut out = zeros(self.dim, self.dim);
        for (p, u) in &self.kraus {
            out = out + scale(&u.dot(x).dot(&dagger(u)), C64::new(*p, 0.0));
        }
        Ok(out)
    }

    /// n-fold application via the Kraus sum; `n = 0` returns `x0`.
    pub fn iterate(&self, x0: &CMat, n: usize) -> Result<CMat> {
        let mut x = x0.clone();
        for _ in 0..n {
            x = self.apply(&x)?;
        }
        Ok(x)
    }

    /// Matrix of the channel in the column-stacking convention,
    /// `Σ p_i conj(U_i) ⊗ U_i`.
    pub fn superoperator(&self) -> Superoperator {
        let n = self.dim;
        let mut matrix = zeros(n * n, n * n);
        for (p, u) in &self.kraus {
            let c = u.mapv(|x| x.conj());
            matrix = matrix + scale(&kron(&c, u), C64::new(*p, 0.0));
        }
        Superoperator { n, matrix }
    }

    /// Adjoint channel: same weights, each `U_i` replaced by `U_i†`.
    pub fn adjoint(&self) -> Self {
        RandomUnitaryOperation {
            dim: self.dim,
            kraus: self.kraus.iter().map(|(p, u)| (*p, dagger(u))).collect(),
        }
    }

    /// Self-adjoint variant with weights `p_i/2` on `U_i` and `U_i†`; its
    /// superoperator is Hermitian, hence unitarily diagonalizable.
    pub fn symmetrize(&self) -> Self {
        let mut kraus = Vec::with_capacity(2 * self.kraus.len());
        for (p, u) in &self.kraus {
            kraus.push((p / 2.0, u.clone()));
            kraus.push((p / 2.0, dagger(u)));
        }
        RandomUnitaryOperation { dim: self.dim, kraus }
    }

    /// Mix in the identity with weight `p0`, rescaling the rest by `1 − p0`.
    /// The result is asymptotically stationary and keeps the fixed space.
    pub fn augment_identity(&self, p0: f64) -> Result<Self> {
        if !(p0 > 0.0 && p0 < 1.0) {
            return Err(Error::InfeasibleParams(format!("p0 = {p0} outside (0, 1)")));
        }
        let mut kraus: Vec<(f64, CMat)> = self
            .kraus
            .iter()
            .map(|(p, u)| (p * (1.0 - p0), u.clone()))
            .collect();
        kraus.push((p0, eye(self.dim)));
        Ok(RandomUnitaryOperation { dim: self.dim, kraus })
    }
}

/// Dense matrix realization of a channel on vectorized operators.
#[derive(Debug, Clone)]
pub struct Superoperator {
    pub n: usize,
    pub matrix: CMat,
}

impl Superoperator {
    /// Act on an operator by vectorizing, multiplying and devectorizing.
    pub fn apply(&self, x: &CMat) -> Result<CMat> {
        devectorize(&self.matrix.dot(&vectorize(x)?))
    }

    pub fn eigvals(&self) -> Result<Vec<C64>> {
        crate::mat::eigvals(&self.matrix)
    }
}
