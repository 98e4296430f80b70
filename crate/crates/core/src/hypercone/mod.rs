//! Hypercones `t·X̄` over hypersurfaces `X̄` of the unit sphere: warped-product
//! shape data, the CMC-link condition, sphere and Clifford-torus link solvers,
//! cylinder charts and the energy-composition cross-check.

mod charts;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::exprjet::{eval_jet, parse_expression, EvalContext, Expr};
use crate::geometry::{fundamental_data, scalar_laplacian, shape_data_spherical, GeometryError, ImmersionChart, Orientation, PointShape};
use crate::roots::{isolate_and_refine, Bound, Polynomial, DEFAULT_WIDTH};

pub use charts::{
    build_cone_chart, clothoid_cylinder, curvature_polynomial_cylinder, product_link, small_sphere_link, ConeChart,
    DEFAULT_T_INTERVAL, DEFAULT_T_SAMPLES,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HyperconeError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0}")]
    Precondition(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("no real solutions with r1^2 in (0, 1) for m = {m}, m1 = {m1}")]
    NoSolution { m: usize, m1: usize },
}

/// Spread below which sampled `f̄` and `|Ā|²` count as constant.
pub const CMC_TOL: f64 = 1e-8;
/// Tolerance of the CMC-cone condition `|Ā|² = 3(m − 2)`.
pub const CMC_CONDITION_TOL: f64 = 1e-9;
/// `|f̄|` below this counts as a minimal link.
pub const MINIMAL_TOL: f64 = 1e-10;

/// Mean curvature and `|Ā|²` of a link, or `None` when not constant on the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LinkSummary {
    pub m: usize,
    pub mean_curvature: Option<f64>,
    pub norm_sq: Option<f64>,
}

impl LinkSummary {
    pub fn new(m: usize, mean_curvature: Option<f64>, norm_sq: Option<f64>) -> Result<Self, HyperconeError> {
        if m == 0 {
            return Err(HyperconeError::InvalidArgument("link dimension must be positive".into()));
        }
        if let (Some(f), Some(n)) = (mean_curvature, norm_sq) {
            if n < m as f64 * f * f - 1e-9 * (1.0 + n) {
                return Err(HyperconeError::InvalidArgument(format!("|A|^2 = {n} < m f^2 = {}", m as f64 * f * f)));
            }
        }
        Ok(LinkSummary { m, mean_curvature, norm_sq })
    }
}

/// Sample `f̄` and `|Ā|²` on a link chart.
pub fn summarize_link(
    chart: &ImmersionChart,
    points: &[Vec<f64>],
    orientation: Orientation,
) -> Result<LinkSummary, HyperconeError> {
    if points.is_empty() {
        return Err(HyperconeError::Precondition("no sample points".into()));
    }
    let mut fs = Vec::with_capacity(points.len());
    let mut ns = Vec::with_capacity(points.len());
    for p in points {
        let ps = shape_data_spherical(chart, p, orientation)?.at_base();
        fs.push(ps.mean_curvature);
        ns.push(ps.norm_sq);
    }
    let constant = |v: &[f64]| {
        let (lo, hi) = v.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
        (hi - lo <= CMC_TOL).then(|| v.iter().sum::<f64>() / v.len() as f64)
    };
    LinkSummary::new(chart.dim(), constant(&fs), constant(&ns))
}

/// Shape data of the cone at radius `t` over a link point.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeShape {
    pub t: f64,
    /// Ascending; contains `0` for the radial direction and `k̄_i / t`.
    pub principal_curvatures: Vec<f64>,
    pub mean_curvature: f64,
    pub norm_sq: f64,
}

/// `A(∂t) = 0`, `A = Ā/t` on link directions, `f = m f̄/((m+1)t)`, `|A|² = |Ā|²/t²`.
pub fn cone_shape_from_link(link: &PointShape, t: f64) -> Result<ConeShape, HyperconeError> {
    if !(t > 0.0) {
        return Err(HyperconeError::InvalidArgument(format!("radius t = {t} must be positive")));
    }
    let m = link.dim() as f64;
    let mut principal: Vec<f64> = link.principal_curvatures().into_iter().map(|k| k / t).collect();
    principal.push(0.0);
    principal.sort_by(f64::total_cmp);
    Ok(ConeShape {
        t,
        principal_curvatures: principal,
        mean_curvature: m * link.mean_curvature / ((m + 1.0) * t),
        norm_sq: link.norm_sq / (t * t),
    })
}

/// Cone over a CMC, non-minimal link has biharmonic Gauss map iff `m > 2` and `|Ā|² = 3(m − 2)`.
pub fn cmc_cone_condition(link: &LinkSummary) -> Result<bool, HyperconeError> {
    let (f, n) = match (link.mean_curvature, link.norm_sq) {
        (Some(f), Some(n)) => (f, n),
        _ => {
            return Err(HyperconeError::Precondition(
                "link is not CMC with constant |A|^2; use the link residual system".into(),
            ))
        }
    };
    if f.abs() < MINIMAL_TOL {
        return Err(HyperconeError::Precondition("link is minimal; its cone has harmonic Gauss map".into()));
    }
    Ok(link.m > 2 && (n - 3.0 * (link.m as f64 - 2.0)).abs() < CMC_CONDITION_TOL)
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Small-sphere link `S^m(a)` whose cone has proper biharmonic Gauss map.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereLinkSolution {
    pub m: usize,
    /// `a² = m/(4m − 6)`, exact.
    pub a_sq: BigRational,
    pub a: f64,
    /// `m(1 − a²)/a²`, exact.
    pub shape_norm_sq: BigRational,
    /// `shape_norm_sq == 3(m − 2)` in exact arithmetic.
    pub certified: bool,
}

pub fn sphere_link_solver(m: usize) -> Option<SphereLinkSolution> {
    if m <= 2 {
        return None;
    }
    let mi = m as i64;
    let a_sq = ratio(mi, 4 * mi - 6);
    let one = ratio(1, 1);
    let shape_norm_sq = ratio(mi, 1) * (&one - &a_sq) / &a_sq;
    let certified = shape_norm_sq == ratio(3 * (mi - 2), 1);
    Some(SphereLinkSolution { m, a: to_f64(&a_sq).sqrt(), a_sq, shape_norm_sq, certified })
}

/// One solution `r1²` of the Clifford-link condition.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordRoot {
    pub r1_sq: f64,
    pub r2_sq: f64,
    /// Exact value when the discriminant is a perfect square.
    pub exact: Option<BigRational>,
    /// Sturm isolating interval containing `r1_sq`.
    pub interval: (f64, f64),
    /// `m1/r1² + m2/r2²`.
    pub condition_lhs: f64,
    /// `(r2/r1)² m1 + (r1/r2)² m2`.
    pub shape_norm_sq: f64,
    /// `r1² ∈ (0, 1)` and the condition holds to `1e-10` relative.
    pub valid: bool,
    /// `m1/r1² = m2/r2²`: the link is minimal and excluded as harmonic.
    pub minimal: bool,
    /// Non-minimal with `m > 2` and `|Ā|² = 3(m − 2)`.
    pub theorem_level: bool,
    /// Non-minimal, valid and `m > 3`.
    pub proposition_level: bool,
    /// Theorem-level solution outside the `m > 3` range of the classification.
    pub range_conflict: bool,
}

impl CliffordRoot {
    pub fn excluded(&self) -> bool {
        self.minimal
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliffordSolution {
    pub m: usize,
    pub m1: usize,
    pub m2: usize,
    /// `(4m − 6) y² + (m2 − m1 − (4m − 6)) y + m1` in `y = r1²`.
    pub polynomial: Polynomial,
    pub roots: Vec<CliffordRoot>,
}

/// Solve `m1/r1² + m2/r2² = 4m − 6` with `r1² + r2² = 1`.
pub fn clifford_link_solver(m: usize, m1: usize) -> Result<CliffordSolution, HyperconeError> {
    if m1 == 0 || m1 >= m {
        return Err(HyperconeError::InvalidArgument(format!("need 1 <= m1 < m, got m = {m}, m1 = {m1}")));
    }
    let m2 = m - m1;
    let (mi, m1i, m2i) = (m as i64, m1 as i64, m2 as i64);
    let c = 4 * mi - 6;
    let b = m2i - m1i - c;
    let polynomial = Polynomial::from_i64(&[m1i, b, c]);
    let intervals = isolate_and_refine(&polynomial, &Bound::int(0), &Bound::int(1), DEFAULT_WIDTH)
        .map_err(|e| HyperconeError::InvalidArgument(e.to_string()))?;
    if intervals.is_empty() {
        return Err(HyperconeError::NoSolution { m, m1 });
    }
    let disc = b as i128 * b as i128 - 4 * c as i128 * m1i as i128;
    let sqrt_disc = (disc >= 0).then(|| disc.sqrt()).filter(|s| s * s == disc);
    let target = (4 * mi - 6) as f64;
    let roots = intervals
        .into_iter()
        .map(|iv| {
            let (lo, hi) = (to_f64(&iv.lo), to_f64(&iv.hi));
            let exact = sqrt_disc.and_then(|s| {
                [-(b as i128) - s, -(b as i128) + s]
                    .into_iter()
                    .map(|num| BigRational::new(BigInt::from(num), BigInt::from(2 * c as i128)))
                    .find(|y| *y >= iv.lo && *y <= iv.hi)
            });
            let y = match &exact {
                Some(y) => to_f64(y),
                None => stable_quadratic_root(c as f64, b as f64, m1 as f64, lo, hi).unwrap_or(iv.root),
            };
            let r2 = 1.0 - y;
            let lhs = m1 as f64 / y + m2 as f64 / r2;
            let norm = r2 / y * m1 as f64 + y / r2 * m2 as f64;
            let minimal = match &exact {
                Some(y) => *y == ratio(m1i, mi),
                None => false,
            };
            let valid = y > 0.0 && y < 1.0 && (lhs - target).abs() <= 1e-10 * target;
            let theorem_level =
                valid && !minimal && m > 2 && (norm - 3.0 * (m as f64 - 2.0)).abs() < CMC_CONDITION_TOL;
            let proposition_level = valid && !minimal && m > 3;
            CliffordRoot {
                r1_sq: y,
                r2_sq: r2,
                exact,
                interval: (lo, hi),
                condition_lhs: lhs,
                shape_norm_sq: norm,
                valid,
                minimal,
                theorem_level,
                proposition_level,
                range_conflict: theorem_level && !proposition_level,
            }
        })
        .collect();
    Ok(CliffordSolution { m, m1, m2, polynomial, roots })
}

/// Root of `c y² + b y + a` in `[lo, hi]` by the cancellation-free quadratic formula.
fn stable_quadratic_root(c: f64, b: f64, a: f64, lo: f64, hi: f64) -> Option<f64> {
    let d = b * b - 4.0 * c * a;
    if d < 0.0 {
        return None;
    }
    let q = -0.5 * (b + b.signum() * d.sqrt());
    [q / c, a / q].into_iter().find(|y| *y >= lo - 1e-15 && *y <= hi + 1e-15)
}

/// `−u'' − (m/t) u'`: the cone Laplacian of a radial function.
pub fn cone_radial_laplacian(m: usize, t: f64, d1: f64, d2: f64) -> f64 {
    -d2 - m as f64 / t * d1
}

/// Energy density `e = m/(2t²)` of the Gauss map of a cone over a sphere link, and its Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct CompositionCheck {
    pub m: usize,
    pub t: f64,
    pub energy: f64,
    /// `m(m − 3)/t⁴`.
    pub laplacian: f64,
    /// Radial cone Laplacian applied to a jet of `e`.
    pub laplacian_radial: f64,
    /// Laplace–Beltrami on the cone chart over the great sphere (charts up to dimension 6).
    pub laplacian_chart: Option<f64>,
    /// `Δe ≡ 0` for all `t`, which happens iff `m = 3`.
    pub biharmonic: bool,
}

pub fn composition_energy_check(m: usize, t: f64) -> Result<CompositionCheck, HyperconeError> {
    if m == 0 || !(t > 0.0 && t.is_finite()) {
        return Err(HyperconeError::InvalidArgument(format!("need m >= 1 and t > 0, got m = {m}, t = {t}")));
    }
    let mf = m as f64;
    let energy = mf / (2.0 * t * t);
    let laplacian = mf * (mf - 3.0) / t.powi(4);
    let source = format!("{mf}/(2*t^2)");
    let radial = parse_expression(&source, 1, &["t".to_string()]).map_err(GeometryError::from)?;
    let jet = eval_jet(&radial, &EvalContext::new(&[t], 2).map_err(GeometryError::from)?).map_err(GeometryError::from)?;
    let d1 = jet.partial(&[1]).map_err(GeometryError::from)?;
    let d2 = jet.partial(&[2]).map_err(GeometryError::from)?;
    let laplacian_radial = cone_radial_laplacian(m, t, d1, d2);
    let laplacian_chart = if m < crate::exprjet::MAX_ORDER + 1 { Some(chart_laplacian(m, t, &radial)?) } else { None };
    Ok(CompositionCheck { m, t, energy, laplacian, laplacian_radial, laplacian_chart, biharmonic: m == 3 })
}

fn chart_laplacian(m: usize, t: f64, radial: &Expr) -> Result<f64, HyperconeError> {
    let cone = build_cone_chart(&small_sphere_link(m, 1.0)?, Some((t / 2.0, 2.0 * t)))?;
    let chart = cone.chart();
    let mut p = vec![t];
    p.extend(chart.domain()[1..].iter().map(|(lo, hi)| 0.5 * (lo + hi) + 0.1));
    let fd = fundamental_data(chart, &p)?;
    let ctx = EvalContext::new(&p, 2).map_err(GeometryError::from)?;
    let u = eval_jet(radial, &ctx).map_err(GeometryError::from)?;
    Ok(scalar_laplacian(&fd, &u))
}

