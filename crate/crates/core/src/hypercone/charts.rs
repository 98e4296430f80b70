//! Chart builders for links, cones over links and right cylinders.

use crate::exprjet::{BinaryOp, Expr, Func};
use crate::geometry::{unique_name, Ambient, Component, ImmersionChart, Orientation, Sampling};

use super::HyperconeError;

pub(crate) fn num(x: f64) -> Expr {
    Expr::Number(x)
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Number(x), _) if *x == 1.0 => b,
        (_, Expr::Number(y)) if *y == 1.0 => a,
        _ => Expr::binary(BinaryOp::Mul, a, b),
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    Expr::binary(BinaryOp::Add, a, b)
}

fn pow(a: Expr, k: usize) -> Expr {
    if k == 1 {
        a
    } else {
        Expr::binary(BinaryOp::Pow, a, num(k as f64))
    }
}

/// Unit-sphere coordinates of `S^k` in variables `first .. first + k`.
///
/// `x_1 = cos u_1`, `x_j = sin u_1 ... sin u_{j-1} cos u_j`, `x_{k+1} = sin u_1 ... sin u_k`.
fn hyperspherical(first: usize, k: usize, radius: f64) -> Vec<Expr> {
    let mut out = Vec::with_capacity(k + 1);
    let mut prefix = num(radius);
    for j in 0..k {
        let u = Expr::Var(first + j);
        out.push(mul(prefix.clone(), Expr::call(Func::Cos, u.clone())));
        prefix = mul(prefix, Expr::call(Func::Sin, u));
    }
    out.push(prefix);
    out
}

fn angle_domain(k: usize) -> Vec<(f64, f64)> {
    let pi = std::f64::consts::PI;
    let mut d = vec![(0.3, pi - 0.3); k.saturating_sub(1)];
    d.push((0.0, 2.0 * pi));
    d
}

fn link_counts(m: usize) -> usize {
    match m {
        1 => 12,
        2 => 8,
        3 => 4,
        _ => 3,
    }
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

/// `S^m(a) ⊂ S^{m+1}`: `(a ω, √(1 − a²))` with `ω` on the unit `S^m`.
pub fn small_sphere_link(m: usize, a: f64) -> Result<ImmersionChart, HyperconeError> {
    if m == 0 || !(a > 0.0 && a <= 1.0) {
        return Err(HyperconeError::InvalidArgument(format!("small sphere needs m >= 1 and a in (0, 1], got m={m}, a={a}")));
    }
    let mut comps: Vec<Component> = hyperspherical(0, m, a).into_iter().map(Component::Expr).collect();
    comps.push(Component::Expr(num((1.0 - a * a).sqrt())));
    let chart = ImmersionChart::new(format!("S^{m}({a})"), Ambient::Sphere, names("u", m), comps, angle_domain(m))?;
    Ok(chart.with_sampling(Sampling::Grid(vec![link_counts(m); m]))?)
}

/// `S^{m1}(r1) × S^{m2}(r2) ⊂ S^{m+1}` with `r2 = √(1 − r1²)`.
pub fn product_link(m1: usize, m2: usize, r1: f64) -> Result<ImmersionChart, HyperconeError> {
    if m1 == 0 || m2 == 0 || !(r1 > 0.0 && r1 < 1.0) {
        return Err(HyperconeError::InvalidArgument(format!(
            "product link needs m1, m2 >= 1 and r1 in (0, 1), got ({m1}, {m2}, {r1})"
        )));
    }
    let r2 = (1.0 - r1 * r1).sqrt();
    let mut comps: Vec<Component> = hyperspherical(0, m1, r1).into_iter().map(Component::Expr).collect();
    comps.extend(hyperspherical(m1, m2, r2).into_iter().map(Component::Expr));
    let mut vars = names("u", m1);
    vars.extend(names("v", m2));
    let mut domain = angle_domain(m1);
    domain.extend(angle_domain(m2));
    let m = m1 + m2;
    let chart = ImmersionChart::new(format!("S^{m1}({r1}) x S^{m2}({r2})"), Ambient::Sphere, vars, comps, domain)?;
    Ok(chart.with_sampling(Sampling::Grid(vec![link_counts(m); m]))?)
}

/// Default radial interval of cone charts.
pub const DEFAULT_T_INTERVAL: (f64, f64) = (0.5, 2.0);
/// Default number of radial samples.
pub const DEFAULT_T_SAMPLES: usize = 5;

/// Cone `(t, p) ↦ t·X̄(p)` over a link, as a Euclidean chart.
#[derive(Debug, Clone)]
pub struct ConeChart {
    chart: ImmersionChart,
    link: ImmersionChart,
}

impl ConeChart {
    pub fn chart(&self) -> &ImmersionChart {
        &self.chart
    }

    pub fn link(&self) -> &ImmersionChart {
        &self.link
    }

    pub fn into_chart(self) -> ImmersionChart {
        self.chart
    }

    /// Cone orientation whose normal at `(t, p)` equals the link normal at `p`.
    ///
    /// The cone frame lists `X̄` first while the link frame lists it last, which
    /// costs `m` transpositions in the cross product.
    pub fn matching_orientation(&self, link: Orientation) -> Orientation {
        if self.link.dim() % 2 == 1 {
            link.flipped()
        } else {
            link
        }
    }
}

pub fn build_cone_chart(link: &ImmersionChart, t_interval: Option<(f64, f64)>) -> Result<ConeChart, HyperconeError> {
    if link.ambient() != Ambient::Sphere {
        return Err(HyperconeError::Precondition("cone links must be sphere charts".into()));
    }
    let (lo, hi) = t_interval.unwrap_or(DEFAULT_T_INTERVAL);
    if !(lo > 0.0 && lo < hi && hi.is_finite()) {
        return Err(HyperconeError::InvalidArgument(format!("t-interval [{lo}, {hi}] must lie in (0, inf)")));
    }
    let mut vars = vec![unique_name("t", link.variables())];
    vars.extend(link.variables().iter().cloned());
    let comps = link
        .components()
        .iter()
        .map(|c| Component::Scaled { factor: 0, inner: Box::new(c.map_vars(&|i| i + 1)) })
        .collect();
    let mut domain = vec![(lo, hi)];
    domain.extend(link.domain().iter().copied());
    let chart = ImmersionChart::new(format!("cone over {}", link.name()), Ambient::Euclidean, vars, comps, domain)?;
    let sampling = match link.sampling() {
        Sampling::Grid(c) => {
            let mut counts = vec![DEFAULT_T_SAMPLES];
            counts.extend(c);
            Sampling::Grid(counts)
        }
        Sampling::Points(points) => {
            let ts: Vec<f64> =
                (0..DEFAULT_T_SAMPLES).map(|k| lo + (hi - lo) * k as f64 / (DEFAULT_T_SAMPLES - 1) as f64).collect();
            Sampling::Points(
                ts.iter()
                    .flat_map(|&t| {
                        points.iter().map(move |p| {
                            let mut q = vec![t];
                            q.extend(p);
                            q
                        })
                    })
                    .collect(),
            )
        }
    };
    Ok(ConeChart { chart: chart.with_sampling(sampling)?, link: link.clone() })
}

/// Right cylinder over the unit-speed plane curve with curvature `k(s) = Σ c_i s^i`.
///
/// The turning angle `θ(s) = Σ c_i s^{i+1}/(i+1)` is exact; the position is
/// `(∫ cos θ, ∫ sin θ)` from the left end of `s_interval`, by adaptive quadrature.
pub fn curvature_polynomial_cylinder(
    coeffs: &[f64],
    s_interval: (f64, f64),
    w_interval: (f64, f64),
) -> Result<ImmersionChart, HyperconeError> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(HyperconeError::InvalidArgument("curvature coefficients must be finite".into()));
    }
    let s = Expr::Var(0);
    let theta = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| mul(num(c / (i + 1) as f64), pow(s.clone(), i + 1)))
        .reduce(add)
        .unwrap_or(num(0.0));
    let origin = s_interval.0;
    let comps = vec![
        Component::Integral { integrand: Expr::call(Func::Cos, theta.clone()), var: 0, origin },
        Component::Integral { integrand: Expr::call(Func::Sin, theta), var: 0, origin },
        Component::Expr(Expr::Var(1)),
    ];
    let poly = coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("{c}*s^{i}"))
        .collect::<Vec<_>>()
        .join(" + ");
    let chart = ImmersionChart::new(
        format!("cylinder with k(s) = {poly}"),
        Ambient::Euclidean,
        vec!["s".into(), "w".into()],
        comps,
        vec![s_interval, w_interval],
    )?;
    Ok(chart.with_sampling(Sampling::Grid(vec![20, 3]))?)
}

/// Cylinder over a curve with curvature `a s² + b s + c`.
pub fn clothoid_cylinder(a: f64, b: f64, c: f64, s_interval: (f64, f64)) -> Result<ImmersionChart, HyperconeError> {
    curvature_polynomial_cylinder(&[c, b, a], s_interval, (-1.0, 1.0))
}
