//! Biharmonicity of the Gauss map: the hypersurface residual, the hypercone
//! link system and its consequences, plus the Grassmannian curvature and
//! tension-field cross-checks.

mod grassmann;
mod obstruction;

use thiserror::Error;

use crate::geometry::{
    gradient_of_mean_curvature, rough_laplacian, scalar_laplacian, shape_data_euclidean, shape_data_spherical,
    Ambient, GeometryError, ImmersionChart, Orientation, PointShape,
};

pub use grassmann::{grassmann_curvature, grassmann_curvature_rank_one, GrassmannTangent};
pub use obstruction::{r3_certificate, r3_ode_check, r4_obstruction, R3Check, R3Verdict, R4Integrals};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BiharmonicError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Precondition(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Thresholds used to classify a residual report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Absolute part of the residual threshold.
    pub abs: f64,
    /// Relative part, multiplied by the term scale `S`.
    pub rel: f64,
    /// `grad f` counts as nonzero when `max |grad f| >= grad_rel * (1 + max |f|)`.
    pub grad_rel: f64,
    /// Points with `|f|` below this are reported but not classified.
    pub mean_curvature_floor: f64,
    /// Fraction of failed sample points above which the verdict is inconclusive.
    pub max_failure_fraction: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { abs: 1e-8, rel: 1e-6, grad_rel: 1e-7, mean_curvature_floor: 1e-10, max_failure_fraction: 0.1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    HarmonicGauss,
    ProperBiharmonicGauss,
    NotBiharmonic,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::HarmonicGauss => "HarmonicGauss",
            Verdict::ProperBiharmonicGauss => "ProperBiharmonicGauss",
            Verdict::NotBiharmonic => "NotBiharmonic",
            Verdict::Inconclusive => "Inconclusive",
        }
    }

    /// Harmonic or proper biharmonic.
    pub fn is_biharmonic(self) -> bool {
        matches!(self, Verdict::HarmonicGauss | Verdict::ProperBiharmonicGauss)
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Residual data at one sample point, vectors in the coordinate frame.
#[derive(Debug, Clone, PartialEq)]
pub struct PointResidual {
    pub point: Vec<f64>,
    pub residual: Vec<f64>,
    pub residual_norm: f64,
    pub grad: Vec<f64>,
    pub grad_norm: f64,
    pub mean_curvature: f64,
    pub norm_sq: f64,
    /// Magnitude of the terms entering the residual at this point.
    pub scale: f64,
    /// Scalar equation of the link system (links only).
    pub scalar_residual: Option<f64>,
    /// `|f|` below the floor: reported, not classified.
    pub excluded: bool,
}

impl PointResidual {
    /// Largest of the vector and scalar residual magnitudes.
    pub fn magnitude(&self) -> f64 {
        self.scalar_residual.map_or(self.residual_norm, |s| self.residual_norm.max(s.abs()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointFailure {
    pub point: Vec<f64>,
    pub error: GeometryError,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    pub points: Vec<PointResidual>,
    pub failures: Vec<PointFailure>,
    pub max_residual: f64,
    pub max_grad: f64,
    pub max_abs_mean_curvature: f64,
    /// `S`: maximum of the per-point term scales.
    pub scale: f64,
    /// `max_residual / S` (zero when `S` vanishes).
    pub relative_residual: f64,
    pub threshold: f64,
    pub grad_threshold: f64,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
}

fn map_points<T: Send>(points: &[Vec<f64>], f: impl Fn(&[f64]) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.par_iter().map(|p| f(p)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.iter().map(|p| f(p)).collect()
    }
}

fn norm_in(ps: &PointShape, v: &[f64]) -> f64 {
    ps.norm(v)
}

/// Residual `Δ grad f + A² grad f − |A|² grad f` at one point.
pub fn hypersurface_point(
    chart: &ImmersionChart,
    p: &[f64],
    orientation: Orientation,
) -> Result<PointResidual, GeometryError> {
    let sd = shape_data_euclidean(chart, p, orientation)?;
    let fd = sd.fundamental();
    let grad = gradient_of_mean_curvature(fd, &sd);
    let lap = rough_laplacian(fd, &grad);
    let ps = sd.at_base();
    let g = grad.at_base();
    let a2g = ps.apply_sq(&g);
    let residual: Vec<f64> = (0..g.len()).map(|i| lap[i] + a2g[i] - ps.norm_sq * g[i]).collect();
    let grad_norm = norm_in(&ps, &g);
    Ok(PointResidual {
        point: p.to_vec(),
        residual_norm: norm_in(&ps, &residual),
        scale: ps.norm_sq * grad_norm + norm_in(&ps, &lap),
        grad: g,
        grad_norm,
        mean_curvature: ps.mean_curvature,
        norm_sq: ps.norm_sq,
        residual,
        scalar_residual: None,
        excluded: false,
    })
}

/// Link-system residuals at one point of a hypersurface of the unit sphere.
///
/// The vector part is `Δ̄ grad f̄ + Ā² grad f̄ + (2m − 3 − |Ā|²) grad f̄`, the
/// scalar part `3 Δ̄ f̄ + (3m − 6 − |Ā|²) f̄`.
pub fn link_point(chart: &ImmersionChart, p: &[f64], orientation: Orientation) -> Result<PointResidual, GeometryError> {
    let sd = shape_data_spherical(chart, p, orientation)?;
    let fd = sd.fundamental();
    let m = chart.dim() as f64;
    let grad = gradient_of_mean_curvature(fd, &sd);
    let lap = rough_laplacian(fd, &grad);
    let lap_f = scalar_laplacian(fd, sd.mean_curvature());
    let ps = sd.at_base();
    let g = grad.at_base();
    let a2g = ps.apply_sq(&g);
    let c1 = 2.0 * m - 3.0 - ps.norm_sq;
    let c2 = 3.0 * m - 6.0 - ps.norm_sq;
    let residual: Vec<f64> = (0..g.len()).map(|i| lap[i] + a2g[i] + c1 * g[i]).collect();
    let f = ps.mean_curvature;
    let grad_norm = norm_in(&ps, &g);
    let vector_scale = norm_in(&ps, &lap) + norm_in(&ps, &a2g) + c1.abs() * grad_norm;
    let scalar_scale = 3.0 * lap_f.abs() + (3.0 * m - 6.0).abs() * f.abs() + ps.norm_sq * f.abs();
    Ok(PointResidual {
        point: p.to_vec(),
        residual_norm: norm_in(&ps, &residual),
        residual,
        grad: g,
        grad_norm,
        mean_curvature: f,
        norm_sq: ps.norm_sq,
        scale: vector_scale.max(scalar_scale),
        scalar_residual: Some(3.0 * lap_f + c2 * f),
        excluded: false,
    })
}

fn collect(
    points: &[Vec<f64>],
    outcomes: Vec<Result<PointResidual, GeometryError>>,
) -> (Vec<PointResidual>, Vec<PointFailure>) {
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (p, r) in points.iter().zip(outcomes) {
        match r {
            Ok(r) => ok.push(r),
            Err(error) => failed.push(PointFailure { point: p.clone(), error }),
        }
    }
    (ok, failed)
}

enum Mode {
    Hypersurface,
    Link,
}

fn classify(
    mut points: Vec<PointResidual>,
    failures: Vec<PointFailure>,
    tol: Tolerances,
    mode: Mode,
) -> ResidualReport {
    if let Mode::Hypersurface = mode {
        for p in &mut points {
            p.excluded = p.mean_curvature.abs() < tol.mean_curvature_floor;
        }
    }
    let total = points.len() + failures.len();
    let used: Vec<&PointResidual> = points.iter().filter(|p| !p.excluded).collect();
    let max = |f: &dyn Fn(&PointResidual) -> f64| used.iter().map(|p| f(p)).fold(0.0, f64::max);
    let max_residual = max(&|p| p.magnitude());
    let max_grad = max(&|p| p.grad_norm);
    let max_abs_f = points.iter().map(|p| p.mean_curvature.abs()).fold(0.0, f64::max);
    let scale = max(&|p| p.scale);
    let threshold = tol.abs + tol.rel * scale;
    let grad_threshold = tol.grad_rel * (1.0 + max_abs_f);
    let relative_residual = if scale > 0.0 { max_residual / scale } else { 0.0 };

    let too_many_failures = total == 0 || failures.len() as f64 > tol.max_failure_fraction * total as f64;
    let nan = used.iter().any(|p| !p.magnitude().is_finite());
    let verdict = if too_many_failures || nan {
        Verdict::Inconclusive
    } else {
        match mode {
            Mode::Hypersurface if used.is_empty() => {
                // every point has vanishing mean curvature: a minimal hypersurface
                if points.iter().all(|p| p.grad_norm < grad_threshold) {
                    Verdict::HarmonicGauss
                } else {
                    Verdict::Inconclusive
                }
            }
            Mode::Hypersurface if max_grad < grad_threshold => Verdict::HarmonicGauss,
            Mode::Link if max_abs_f < tol.mean_curvature_floor => Verdict::HarmonicGauss,
            _ if max_residual < threshold => Verdict::ProperBiharmonicGauss,
            _ => Verdict::NotBiharmonic,
        }
    };
    ResidualReport {
        points,
        failures,
        max_residual,
        max_grad,
        max_abs_mean_curvature: max_abs_f,
        scale,
        relative_residual,
        threshold,
        grad_threshold,
        tolerances: tol,
        verdict,
    }
}

/// Evaluate the hypersurface residual at `points` and classify the Gauss map.
pub fn hypersurface_residual(
    chart: &ImmersionChart,
    points: &[Vec<f64>],
    orientation: Orientation,
    tol: Tolerances,
) -> Result<ResidualReport, BiharmonicError> {
    if chart.ambient() != Ambient::Euclidean {
        return Err(BiharmonicError::Precondition("hypersurface residual needs a Euclidean chart".into()));
    }
    let outcomes = map_points(points, |p| hypersurface_point(chart, p, orientation));
    let (ok, failed) = collect(points, outcomes);
    Ok(classify(ok, failed, tol, Mode::Hypersurface))
}

/// Evaluate both equations of the link system; the verdict refers to the cone over the link.
pub fn link_residual_system(
    chart: &ImmersionChart,
    points: &[Vec<f64>],
    orientation: Orientation,
    tol: Tolerances,
) -> Result<ResidualReport, BiharmonicError> {
    if chart.ambient() != Ambient::Sphere {
        return Err(BiharmonicError::Precondition("link system needs a sphere chart".into()));
    }
    let outcomes = map_points(points, |p| link_point(chart, p, orientation));
    let (ok, failed) = collect(points, outcomes);
    Ok(classify(ok, failed, tol, Mode::Link))
}

/// `m |grad f|`, the norm of the tension field of the Gauss map.
pub fn gauss_tension_norm(chart: &ImmersionChart, p: &[f64]) -> Result<f64, BiharmonicError> {
    let sd = shape_data_euclidean(chart, p, Orientation::Positive)?;
    let grad = gradient_of_mean_curvature(sd.fundamental(), &sd).at_base();
    Ok(chart.dim() as f64 * sd.at_base().norm(&grad))
}

/// `2Ā²(X) − m f̄ Ā(X) − (2/3)|Ā|² X`, assembled through the Ricci operator.
pub fn corollary_lhs(shape: &PointShape, m: usize, x: &[f64]) -> Vec<f64> {
    let ric = crate::geometry::ricci_via_gauss_equation(shape, m, x);
    let a2 = shape.apply_sq(x);
    let c = m as f64 - 1.0 - 2.0 / 3.0 * shape.norm_sq;
    (0..x.len()).map(|i| a2[i] - ric[i] + c * x[i]).collect()
}

/// Tolerance on the spread of `|Ā|²` for the corollary precondition.
pub const CONSTANT_NORM_TOL: f64 = 1e-8;

/// Necessary condition for links with constant `|Ā|²`, evaluated at `grad f̄` for every point.
pub fn corollary_necessary_condition(
    chart: &ImmersionChart,
    points: &[Vec<f64>],
    orientation: Orientation,
) -> Result<Vec<Vec<f64>>, BiharmonicError> {
    if points.is_empty() {
        return Err(BiharmonicError::Precondition("no sample points".into()));
    }
    let m = chart.dim();
    let mut shapes = Vec::with_capacity(points.len());
    for p in points {
        let sd = shape_data_spherical(chart, p, orientation)?;
        let grad = gradient_of_mean_curvature(sd.fundamental(), &sd).at_base();
        shapes.push((sd.at_base(), grad));
    }
    let (lo, hi) = shapes.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (s, _)| {
        (lo.min(s.norm_sq), hi.max(s.norm_sq))
    });
    if hi - lo > CONSTANT_NORM_TOL {
        return Err(BiharmonicError::Precondition(format!(
            "|A|^2 is not constant on the samples (spread {:e})",
            hi - lo
        )));
    }
    Ok(shapes.iter().map(|(s, g)| corollary_lhs(s, m, g)).collect())
}

