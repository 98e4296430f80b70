use nalgebra::{DMatrix, DVector};

use super::BiharmonicError;

/// Tangent vector of the Grassmannian at `P`, as an `m x n` coefficient matrix
/// in bases of `P` and `P^⊥`. A rank-one pair `X* ⊗ η` is the outer product `X ηᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrassmannTangent {
    pub matrix: DMatrix<f64>,
}

impl GrassmannTangent {
    pub fn new(matrix: DMatrix<f64>) -> Self {
        GrassmannTangent { matrix }
    }

    pub fn rank_one(x: &[f64], eta: &[f64]) -> Self {
        let x = DVector::from_column_slice(x);
        let eta = DVector::from_column_slice(eta);
        GrassmannTangent { matrix: &x * eta.transpose() }
    }

    pub fn zeros(m: usize, n: usize) -> Self {
        GrassmannTangent { matrix: DMatrix::zeros(m, n) }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.matrix.shape()
    }

    /// Metric in which the `e_i* ⊗ e_a` are orthonormal.
    pub fn inner(&self, other: &GrassmannTangent) -> f64 {
        self.matrix.dot(&other.matrix)
    }

    pub fn norm(&self) -> f64 {
        self.matrix.norm()
    }
}

/// `R(ρ1, ρ2)ρ3 = (ρ1ρ2ᵀ − ρ2ρ1ᵀ)ρ3 + ρ3(ρ2ᵀρ1 − ρ1ᵀρ2)`.
///
/// On rank-one pairs this is the four-term expression in inner products of
/// the `X_i` and `η_i`; general tangents follow by bilinearity.
pub fn grassmann_curvature(
    r1: &GrassmannTangent,
    r2: &GrassmannTangent,
    r3: &GrassmannTangent,
) -> Result<GrassmannTangent, BiharmonicError> {
    let d = r1.dims();
    if r2.dims() != d || r3.dims() != d {
        return Err(BiharmonicError::DimensionMismatch(format!(
            "tangents of shapes {:?}, {:?}, {:?}",
            d,
            r2.dims(),
            r3.dims()
        )));
    }
    let (a, b, c) = (&r1.matrix, &r2.matrix, &r3.matrix);
    let (m, n) = d;
    // termwise commutators, so that swapping r1 and r2 negates the result exactly
    let s = DMatrix::from_fn(m, m, |i, j| (0..n).map(|k| a[(i, k)] * b[(j, k)] - b[(i, k)] * a[(j, k)]).sum::<f64>());
    let t = DMatrix::from_fn(n, n, |p, q| (0..m).map(|i| b[(i, p)] * a[(i, q)] - a[(i, p)] * b[(i, q)]).sum::<f64>());
    Ok(GrassmannTangent { matrix: s * c + c * t })
}

/// Four-term expression on rank-one pairs `(X_i, η_i)`.
pub fn grassmann_curvature_rank_one(
    (x1, e1): (&[f64], &[f64]),
    (x2, e2): (&[f64], &[f64]),
    (x3, e3): (&[f64], &[f64]),
) -> GrassmannTangent {
    let dot = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    let term = |c: f64, x: &[f64], e: &[f64]| GrassmannTangent::rank_one(x, e).matrix * c;
    let m = term(dot(x1, x2) * dot(e2, e3), x3, e1) - term(dot(x1, x2) * dot(e1, e3), x3, e2)
        + term(dot(x2, x3) * dot(e1, e2), x1, e3)
        - term(dot(x1, x3) * dot(e1, e2), x2, e3);
    GrassmannTangent { matrix: m }
}
