//! Induced metric, Levi-Civita connection and shape operator of a chart.
//!
//! All quantities are carried as jets so that covariant derivatives can be
//! taken by differentiating coefficients. Starting from order-5 jets of the
//! immersion the orders drop as follows: tangents and metric 4, Christoffel
//! symbols 3, second fundamental form, shape operator and mean curvature 3,
//! gradient of the mean curvature 2.

mod chart;
pub mod linalg;
pub mod quadrature;

use nalgebra::{DMatrix, DVector};
use thiserror::Error;

use crate::exprjet::{dot, JetError, JetValue, ParseError, MAX_ORDER};

pub use chart::{default_count, Ambient, Component, ImmersionChart, Sampling, QUADRATURE_TOL, SPHERE_TOL};
#[allow(unused_imports)]
pub(crate) use chart::unique_name;

/// Largest admissible condition number of the metric at a sample point.
pub const MAX_METRIC_CONDITION: f64 = 1e10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Jet(#[from] JetError),
    #[error("singular immersion at {point:?} (metric condition number {condition:e})")]
    SingularImmersion { point: Vec<f64>, condition: f64 },
    #[error("point {point:?} is off the unit sphere by {deviation:e}")]
    SphereConstraint { point: Vec<f64>, deviation: f64 },
    #[error("point {point:?} lies outside the chart domain")]
    OutOfDomain { point: Vec<f64> },
    #[error("{0}")]
    Precondition(String),
}

/// Choice of unit normal relative to the generalized cross product.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Positive,
    Negative,
}

impl Orientation {
    pub fn sign(self) -> f64 {
        match self {
            Orientation::Positive => 1.0,
            Orientation::Negative => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    pub fn from_sign(sign: i32) -> Option<Self> {
        match sign {
            1 => Some(Orientation::Positive),
            -1 => Some(Orientation::Negative),
            _ => None,
        }
    }
}

/// Metric, inverse metric and Christoffel symbols at a point.
#[derive(Debug, Clone)]
pub struct FundamentalData {
    point: Vec<f64>,
    position: Vec<JetValue>,
    tangents: Vec<Vec<JetValue>>,
    metric: Vec<Vec<JetValue>>,
    inverse: Vec<Vec<JetValue>>,
    /// `christoffel[k][i][j]` = Gamma^k_ij
    christoffel: Vec<Vec<Vec<JetValue>>>,
}

impl FundamentalData {
    pub fn dim(&self) -> usize {
        self.metric.len()
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn position(&self) -> &[JetValue] {
        &self.position
    }

    /// `tangents[i]` = dX/du_i.
    pub fn tangents(&self) -> &[Vec<JetValue>] {
        &self.tangents
    }

    pub fn metric(&self) -> &[Vec<JetValue>] {
        &self.metric
    }

    pub fn inverse_metric(&self) -> &[Vec<JetValue>] {
        &self.inverse
    }

    pub fn christoffel(&self) -> &[Vec<Vec<JetValue>>] {
        &self.christoffel
    }

    pub fn metric_at_base(&self) -> DMatrix<f64> {
        base_matrix(&self.metric)
    }

    pub fn inverse_at_base(&self) -> DMatrix<f64> {
        base_matrix(&self.inverse)
    }

    /// Length of a coordinate-frame vector in the metric at the base point.
    pub fn norm(&self, v: &[f64]) -> f64 {
        let g = self.metric_at_base();
        let v = DVector::from_column_slice(v);
        (v.transpose() * &g * &v)[(0, 0)].max(0.0).sqrt()
    }

    /// Lower an index at the base point.
    pub fn lower(&self, v: &[f64]) -> Vec<f64> {
        (self.metric_at_base() * DVector::from_column_slice(v)).iter().copied().collect()
    }
}

/// Unit normal, second fundamental form, shape operator and mean curvature.
#[derive(Debug, Clone)]
pub struct ShapeData {
    fundamental: FundamentalData,
    ambient: Ambient,
    orientation: Orientation,
    normal: Vec<JetValue>,
    second_form: Vec<Vec<JetValue>>,
    /// `shape_operator[i][j]` = A^i_j
    shape_operator: Vec<Vec<JetValue>>,
    mean_curvature: JetValue,
    norm_sq: JetValue,
}

impl ShapeData {
    pub fn fundamental(&self) -> &FundamentalData {
        &self.fundamental
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    pub fn normal(&self) -> &[JetValue] {
        &self.normal
    }

    pub fn second_form(&self) -> &[Vec<JetValue>] {
        &self.second_form
    }

    pub fn shape_operator(&self) -> &[Vec<JetValue>] {
        &self.shape_operator
    }

    pub fn mean_curvature(&self) -> &JetValue {
        &self.mean_curvature
    }

    /// |A|^2 = trace(A^2).
    pub fn norm_sq(&self) -> &JetValue {
        &self.norm_sq
    }

    /// Numeric snapshot at the base point.
    pub fn at_base(&self) -> PointShape {
        PointShape {
            metric: self.fundamental.metric_at_base(),
            shape: base_matrix(&self.shape_operator),
            mean_curvature: self.mean_curvature.value(),
            norm_sq: self.norm_sq.value(),
        }
    }
}

/// Shape data evaluated at a single point, in the coordinate frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PointShape {
    pub metric: DMatrix<f64>,
    /// Mixed tensor A^i_j.
    pub shape: DMatrix<f64>,
    pub mean_curvature: f64,
    pub norm_sq: f64,
}

impl PointShape {
    pub fn dim(&self) -> usize {
        self.metric.nrows()
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        (&self.shape * DVector::from_column_slice(v)).iter().copied().collect()
    }

    pub fn apply_sq(&self, v: &[f64]) -> Vec<f64> {
        self.apply(&self.apply(v))
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        let v = DVector::from_column_slice(v);
        (v.transpose() * &self.metric * &v)[(0, 0)].max(0.0).sqrt()
    }

    /// Principal curvatures in ascending order.
    pub fn principal_curvatures(&self) -> Vec<f64> {
        // A = g^-1 h is self-adjoint for g; symmetrize with a Cholesky factor.
        let chol = self.metric.clone().cholesky().expect("metric is positive definite");
        let l = chol.l();
        let h = &self.metric * &self.shape;
        let linv = l.clone().try_inverse().expect("Cholesky factor is invertible");
        let sym = &linv * h * linv.transpose();
        let sym = (&sym + sym.transpose()) * 0.5;
        let mut ev: Vec<f64> = sym.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }
}

/// Tangent vector field in the coordinate frame.
#[derive(Debug, Clone)]
pub struct TangentField {
    pub components: Vec<JetValue>,
}

impl TangentField {
    pub fn at_base(&self) -> Vec<f64> {
        self.components.iter().map(JetValue::value).collect()
    }
}

fn base_matrix(m: &[Vec<JetValue>]) -> DMatrix<f64> {
    let n = m.len();
    DMatrix::from_fn(n, m[0].len(), |i, j| m[i][j].value())
}

fn check_point(chart: &ImmersionChart, p: &[f64]) -> Result<(), GeometryError> {
    if !chart.contains(p) {
        return Err(GeometryError::OutOfDomain { point: p.to_vec() });
    }
    Ok(())
}

fn fundamental_from_jets(p: &[f64], position: Vec<JetValue>) -> Result<FundamentalData, GeometryError> {
    let m = p.len();
    let tangents: Vec<Vec<JetValue>> =
        (0..m).map(|i| position.iter().map(|x| x.derivative(i)).collect()).collect();
    let metric: Vec<Vec<JetValue>> =
        (0..m).map(|i| (0..m).map(|j| dot(&tangents[i], &tangents[j])).collect()).collect();

    let g0 = base_matrix(&metric);
    let g0 = (&g0 + g0.transpose()) * 0.5;
    let eig = g0.symmetric_eigen().eigenvalues;
    let (lo, hi) = eig.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &e| (lo.min(e), hi.max(e)));
    let condition = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(condition <= MAX_METRIC_CONDITION) {
        return Err(GeometryError::SingularImmersion { point: p.to_vec(), condition });
    }
    let inverse = linalg::inverse(&metric)?;

    // first kind: [ij, l] = (d_i g_jl + d_j g_il - d_l g_ij) / 2
    let dg: Vec<Vec<Vec<JetValue>>> = (0..m)
        .map(|k| (0..m).map(|i| (0..m).map(|j| metric[i][j].derivative(k)).collect()).collect())
        .collect();
    let first: Vec<Vec<Vec<JetValue>>> = (0..m)
        .map(|l| {
            (0..m)
                .map(|i| (0..m).map(|j| (&dg[i][j][l] + &dg[j][i][l] - &dg[l][i][j]).scale(0.5)).collect())
                .collect()
        })
        .collect();
    let christoffel = (0..m)
        .map(|k| {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let col: Vec<JetValue> = (0..m).map(|l| first[l][i][j].clone()).collect();
                            dot(&inverse[k], &col)
                        })
                        .collect()
                })
                .collect()
        })
        .collect();

    Ok(FundamentalData { point: p.to_vec(), position, tangents, metric, inverse, christoffel })
}

/// Induced metric and Levi-Civita connection at `p`.
pub fn fundamental_data(chart: &ImmersionChart, p: &[f64]) -> Result<FundamentalData, GeometryError> {
    check_point(chart, p)?;
    fundamental_from_jets(p, chart.jets(p, MAX_ORDER)?)
}

fn shape_from_fundamental(
    fd: FundamentalData,
    ambient: Ambient,
    orientation: Orientation,
) -> Result<ShapeData, GeometryError> {
    let m = fd.dim();
    let mut rows: Vec<Vec<JetValue>> = fd.tangents.clone();
    if ambient == Ambient::Sphere {
        rows.push(fd.position.iter().map(|x| x.truncate(MAX_ORDER - 1)).collect());
    }
    let raw = linalg::cross(&rows);
    let len = dot(&raw, &raw).sqrt().map_err(|_| GeometryError::SingularImmersion {
        point: fd.point.clone(),
        condition: f64::INFINITY,
    })?;
    let inv_len = len.recip()?.scale(orientation.sign());
    let normal: Vec<JetValue> = raw.iter().map(|c| c * &inv_len).collect();

    let second_form: Vec<Vec<JetValue>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| {
                    let dij: Vec<JetValue> = fd.tangents[i].iter().map(|t| t.derivative(j)).collect();
                    dot(&dij, &normal)
                })
                .collect()
        })
        .collect();
    let shape_operator = linalg::mat_mul(&fd.inverse, &second_form);
    let trace = (1..m).fold(shape_operator[0][0].clone(), |acc, i| acc + &shape_operator[i][i]);
    let mean_curvature = trace.scale(1.0 / m as f64);
    let mut norm_sq: Option<JetValue> = None;
    for i in 0..m {
        for j in 0..m {
            let t = &shape_operator[i][j] * &shape_operator[j][i];
            norm_sq = Some(match norm_sq {
                None => t,
                Some(a) => a + t,
            });
        }
    }
    Ok(ShapeData {
        fundamental: fd,
        ambient,
        orientation,
        normal,
        second_form,
        shape_operator,
        mean_curvature,
        norm_sq: norm_sq.expect("dimension is positive"),
    })
}

/// Shape data of a hypersurface of Euclidean space.
pub fn shape_data_euclidean(
    chart: &ImmersionChart,
    p: &[f64],
    orientation: Orientation,
) -> Result<ShapeData, GeometryError> {
    if chart.ambient() != Ambient::Euclidean {
        return Err(GeometryError::Precondition("chart ambient is not Euclidean".into()));
    }
    let fd = fundamental_data(chart, p)?;
    shape_from_fundamental(fd, Ambient::Euclidean, orientation)
}

/// Shape data of a hypersurface of the unit sphere, with the normal tangent to the sphere.
pub fn shape_data_spherical(
    chart: &ImmersionChart,
    p: &[f64],
    orientation: Orientation,
) -> Result<ShapeData, GeometryError> {
    if chart.ambient() != Ambient::Sphere {
        return Err(GeometryError::Precondition("chart ambient is not the unit sphere".into()));
    }
    check_point(chart, p)?;
    let jets = chart.jets(p, MAX_ORDER)?;
    let radius = jets.iter().map(|x| x.value() * x.value()).sum::<f64>().sqrt();
    let deviation = (radius - 1.0).abs();
    if !(deviation <= SPHERE_TOL) {
        return Err(GeometryError::SphereConstraint { point: p.to_vec(), deviation });
    }
    let fd = fundamental_from_jets(p, jets)?;
    shape_from_fundamental(fd, Ambient::Sphere, orientation)
}

/// Shape data for either ambient.
pub fn shape_data(chart: &ImmersionChart, p: &[f64], orientation: Orientation) -> Result<ShapeData, GeometryError> {
    match chart.ambient() {
        Ambient::Euclidean => shape_data_euclidean(chart, p, orientation),
        Ambient::Sphere => shape_data_spherical(chart, p, orientation),
    }
}

/// `grad u` with components `g^ij d_j u`.
pub fn gradient(fd: &FundamentalData, u: &JetValue) -> TangentField {
    let m = fd.dim();
    let du: Vec<JetValue> = (0..m).map(|j| u.derivative(j)).collect();
    TangentField { components: (0..m).map(|i| dot(&fd.inverse[i], &du)).collect() }
}

/// Gradient of the mean curvature function.
pub fn gradient_of_mean_curvature(fd: &FundamentalData, sd: &ShapeData) -> TangentField {
    gradient(fd, &sd.mean_curvature)
}

/// Rough Laplacian `-trace nabla^2 V` at the base point, in the coordinate frame.
pub fn rough_laplacian(fd: &FundamentalData, v: &TangentField) -> Vec<f64> {
    let m = fd.dim();
    let gamma = &fd.christoffel;
    // w[j][k] = (nabla_j V)^k
    let w: Vec<Vec<JetValue>> = (0..m)
        .map(|j| {
            (0..m)
                .map(|k| {
                    let mut acc = v.components[k].derivative(j);
                    for l in 0..m {
                        acc = acc + &gamma[k][j][l] * &v.components[l];
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let ginv = fd.inverse_at_base();
    let mut out = vec![0.0; m];
    for (k, o) in out.iter_mut().enumerate() {
        let mut acc = 0.0;
        for i in 0..m {
            for j in 0..m {
                // (nabla^2 V)(d_i, d_j)^k
                let mut h = w[j][k].d(i);
                for l in 0..m {
                    h += gamma[k][i][l].value() * w[j][l].value();
                    h -= gamma[l][i][j].value() * w[l][k].value();
                }
                acc += ginv[(i, j)] * h;
            }
        }
        *o = -acc;
    }
    out
}

/// Laplace–Beltrami operator `-trace Hess u` at the base point.
pub fn scalar_laplacian(fd: &FundamentalData, u: &JetValue) -> f64 {
    let m = fd.dim();
    let ginv = fd.inverse_at_base();
    let mut acc = 0.0;
    for i in 0..m {
        let di = u.derivative(i);
        for j in 0..m {
            let mut h = di.d(j);
            for k in 0..m {
                h -= fd.christoffel[k][i][j].value() * u.d(k);
            }
            acc += ginv[(i, j)] * h;
        }
    }
    -acc
}

/// `(m - 1) X + m f A(X) - A^2(X)`: Ricci operator of a hypersurface of the unit sphere.
pub fn ricci_via_gauss_equation(sd: &PointShape, m: usize, x: &[f64]) -> Vec<f64> {
    let ax = sd.apply(x);
    let aax = sd.apply(&ax);
    let mf = m as f64 * sd.mean_curvature;
    (0..x.len()).map(|i| (m as f64 - 1.0) * x[i] + mf * ax[i] - aax[i]).collect()
}

