use crate::exprjet::{eval_jet, parse_expression, EvalContext, Expr, JetValue, MAX_ORDER};

use super::quadrature;
use super::GeometryError;

/// Absolute tolerance for integral components.
pub const QUADRATURE_TOL: f64 = 1e-12;

/// Tolerance for the unit-sphere constraint on sphere-ambient charts.
pub const SPHERE_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ambient {
    /// Hypersurface of R^(m+1).
    Euclidean,
    /// Hypersurface of the unit sphere S^(m+1) in R^(m+2).
    Sphere,
}

impl Ambient {
    pub fn codim_components(self, dim: usize) -> usize {
        match self {
            Ambient::Euclidean => dim + 1,
            Ambient::Sphere => dim + 2,
        }
    }
}

/// One coordinate function of the immersion.
#[derive(Debug, Clone, PartialEq)]
pub enum Component {
    Expr(Expr),
    /// `integral_{origin}^{x_var} integrand(s) ds`; the integrand depends on `x_var` only.
    Integral { integrand: Expr, var: usize, origin: f64 },
    /// `x_factor * inner`.
    Scaled { factor: usize, inner: Box<Component> },
}

impl Component {
    fn max_var(&self) -> Option<usize> {
        match self {
            Component::Expr(e) => e.max_var(),
            Component::Integral { var, .. } => Some(*var),
            Component::Scaled { factor, inner } => Some(inner.max_var().map_or(*factor, |v| v.max(*factor))),
        }
    }

    /// Renumber variables through `map`.
    pub fn map_vars(&self, map: &impl Fn(usize) -> usize) -> Component {
        match self {
            Component::Expr(e) => Component::Expr(e.map_vars(map)),
            Component::Integral { integrand, var, origin } => Component::Integral {
                integrand: integrand.map_vars(map),
                var: map(*var),
                origin: *origin,
            },
            Component::Scaled { factor, inner } => {
                Component::Scaled { factor: map(*factor), inner: Box::new(inner.map_vars(map)) }
            }
        }
    }

    fn jet(&self, ctx: &EvalContext) -> Result<JetValue, GeometryError> {
        match self {
            Component::Expr(e) => Ok(eval_jet(e, ctx)?),
            Component::Integral { integrand, var, origin } => {
                let point = ctx.point().to_vec();
                let lower = EvalContext::new(point.as_slice(), ctx.order().saturating_sub(1))?;
                let inner = eval_jet(integrand, &lower)?;
                let value = quadrature::integrate(
                    |s| {
                        let mut p = point.clone();
                        p[*var] = s;
                        integrand.eval(&p)
                    },
                    *origin,
                    point[*var],
                    QUADRATURE_TOL,
                );
                if ctx.order() == 0 {
                    return Ok(ctx.constant(value));
                }
                Ok(inner.antiderivative(*var, value))
            }
            Component::Scaled { factor, inner } => Ok(ctx.variable(*factor) * inner.jet(ctx)?),
        }
    }

    fn describe(&self, names: &[String]) -> String {
        match self {
            Component::Expr(e) => e.display(names).to_string(),
            Component::Integral { integrand, var, origin } => {
                format!("int[{}, {:?}..{}]({})", names[*var], origin, names[*var], integrand.display(names))
            }
            Component::Scaled { factor, inner } => format!("({}*{})", names[*factor], inner.describe(names)),
        }
    }
}

/// How sample points are drawn from the domain box.
#[derive(Debug, Clone, PartialEq)]
pub enum Sampling {
    /// Uniform grid with the given number of nodes per variable, endpoints included.
    Grid(Vec<usize>),
    Points(Vec<Vec<f64>>),
}

/// Coordinate chart of an immersed hypersurface.
#[derive(Debug, Clone)]
pub struct ImmersionChart {
    name: String,
    ambient: Ambient,
    variables: Vec<String>,
    components: Vec<Component>,
    domain: Vec<(f64, f64)>,
    sampling: Sampling,
}

impl ImmersionChart {
    pub fn new(
        name: impl Into<String>,
        ambient: Ambient,
        variables: Vec<String>,
        components: Vec<Component>,
        domain: Vec<(f64, f64)>,
    ) -> Result<Self, GeometryError> {
        let dim = variables.len();
        if dim == 0 {
            return Err(GeometryError::InvalidChart("chart needs at least one variable".into()));
        }
        if dim > MAX_ORDER + 1 {
            return Err(GeometryError::InvalidChart(format!("dimension {dim} is too large")));
        }
        if domain.len() != dim {
            return Err(GeometryError::InvalidChart(format!(
                "domain has {} intervals for {dim} variables",
                domain.len()
            )));
        }
        let want = ambient.codim_components(dim);
        if components.len() != want {
            return Err(GeometryError::InvalidChart(format!(
                "{ambient:?} ambient with {dim} variables needs {want} components, got {}",
                components.len()
            )));
        }
        for (i, (lo, hi)) in domain.iter().enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(GeometryError::InvalidChart(format!(
                    "domain interval {i} [{lo}, {hi}] is empty or not finite"
                )));
            }
        }
        for c in &components {
            if c.max_var().is_some_and(|v| v >= dim) {
                return Err(GeometryError::InvalidChart("component references an unknown variable".into()));
            }
            check_integrals(c)?;
        }
        Ok(ImmersionChart {
            name: name.into(),
            ambient,
            variables,
            components,
            domain,
            sampling: Sampling::Grid(vec![default_count(dim); dim]),
        })
    }

    /// Parse component sources against `variables`.
    pub fn from_sources(
        name: impl Into<String>,
        ambient: Ambient,
        variables: &[&str],
        sources: &[&str],
        domain: Vec<(f64, f64)>,
    ) -> Result<Self, GeometryError> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let components = sources
            .iter()
            .map(|s| parse_expression(s, vars.len(), &vars).map(Component::Expr))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(name, ambient, vars, components, domain)
    }

    pub fn with_sampling(mut self, sampling: Sampling) -> Result<Self, GeometryError> {
        match &sampling {
            Sampling::Grid(counts) => {
                if counts.len() != self.dim() || counts.contains(&0) {
                    return Err(GeometryError::InvalidChart("grid counts must be positive, one per variable".into()));
                }
            }
            Sampling::Points(points) => {
                if points.iter().any(|p| p.len() != self.dim()) {
                    return Err(GeometryError::InvalidChart("sample point has the wrong dimension".into()));
                }
            }
        }
        self.sampling = sampling;
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.variables.len()
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn domain(&self) -> &[(f64, f64)] {
        &self.domain
    }

    pub fn sampling(&self) -> &Sampling {
        &self.sampling
    }

    /// Human-readable component formulas.
    pub fn describe_components(&self) -> Vec<String> {
        self.components.iter().map(|c| c.describe(&self.variables)).collect()
    }

    pub fn contains(&self, p: &[f64]) -> bool {
        p.len() == self.dim() && p.iter().zip(&self.domain).all(|(x, (lo, hi))| x >= lo && x <= hi)
    }

    /// Points prescribed by the sampling spec.
    pub fn sample_points(&self) -> Vec<Vec<f64>> {
        match &self.sampling {
            Sampling::Grid(counts) => grid(&self.domain, counts, true),
            Sampling::Points(points) => points.clone(),
        }
    }

    /// Uniform grid that omits the upper endpoint of every interval.
    pub fn periodic_points(&self, counts: &[usize]) -> Vec<Vec<f64>> {
        grid(&self.domain, counts, false)
    }

    /// Jets of all components at `p`.
    pub fn jets(&self, p: &[f64], order: usize) -> Result<Vec<JetValue>, GeometryError> {
        if p.len() != self.dim() {
            return Err(GeometryError::InvalidChart(format!("point has {} coordinates, chart has {}", p.len(), self.dim())));
        }
        let ctx = EvalContext::new(p, order)?;
        self.components.iter().map(|c| c.jet(&ctx)).collect()
    }

    /// Image of `p` in the ambient space.
    pub fn position(&self, p: &[f64]) -> Result<Vec<f64>, GeometryError> {
        Ok(self.jets(p, 0)?.iter().map(JetValue::value).collect())
    }

    /// Deviation `| |X(p)| - 1 |` for sphere charts.
    pub fn sphere_deviation(&self, p: &[f64]) -> Result<f64, GeometryError> {
        let x = self.position(p)?;
        Ok((x.iter().map(|v| v * v).sum::<f64>().sqrt() - 1.0).abs())
    }

    /// The generalized cylinder `(w, u...) -> (w, X(u...))` one dimension up.
    pub fn generalized_cylinder(&self, var_name: &str, interval: (f64, f64)) -> Result<Self, GeometryError> {
        if self.ambient != Ambient::Euclidean {
            return Err(GeometryError::InvalidChart("generalized cylinder needs a Euclidean chart".into()));
        }
        let mut variables = vec![unique_name(var_name, &self.variables)];
        variables.extend(self.variables.iter().cloned());
        let mut components = vec![Component::Expr(Expr::Var(0))];
        components.extend(self.components.iter().map(|c| c.map_vars(&|i| i + 1)));
        let mut domain = vec![interval];
        domain.extend(self.domain.iter().copied());
        let chart = Self::new(format!("cylinder over {}", self.name), Ambient::Euclidean, variables, components, domain)?;
        let sampling = match &self.sampling {
            Sampling::Grid(c) => {
                let mut counts = vec![3];
                counts.extend(c);
                Sampling::Grid(counts)
            }
            Sampling::Points(points) => Sampling::Points(
                points
                    .iter()
                    .map(|p| {
                        let mut q = vec![0.5 * (interval.0 + interval.1)];
                        q.extend(p);
                        q
                    })
                    .collect(),
            ),
        };
        chart.with_sampling(sampling)
    }
}

fn check_integrals(c: &Component) -> Result<(), GeometryError> {
    match c {
        Component::Expr(_) => Ok(()),
        Component::Integral { integrand, var, origin } => {
            let others = (0..=integrand.max_var().unwrap_or(0)).any(|v| v != *var && integrand.uses_var(v));
            if others {
                return Err(GeometryError::InvalidChart(
                    "integral component may depend on its integration variable only".into(),
                ));
            }
            if !origin.is_finite() {
                return Err(GeometryError::InvalidChart("integral origin is not finite".into()));
            }
            Ok(())
        }
        Component::Scaled { inner, .. } => check_integrals(inner),
    }
}

/// Default per-variable grid size: 20, reduced so the total stays within 10^4.
pub fn default_count(dim: usize) -> usize {
    let mut n = 20usize;
    while n > 2 && n.pow(dim as u32) > 10_000 {
        n -= 1;
    }
    n
}

pub(crate) fn unique_name(base: &str, taken: &[String]) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}

fn grid(domain: &[(f64, f64)], counts: &[usize], inclusive: bool) -> Vec<Vec<f64>> {
    let axes: Vec<Vec<f64>> = domain
        .iter()
        .zip(counts)
        .map(|(&(lo, hi), &n)| {
            if n == 1 {
                return vec![0.5 * (lo + hi)];
            }
            let steps = if inclusive { n - 1 } else { n } as f64;
            (0..n).map(|k| lo + (hi - lo) * k as f64 / steps).collect()
        })
        .collect();
    let mut out = vec![vec![]];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |&x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}
