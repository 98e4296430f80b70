use std::path::Path;

use gausslab::biharmonic::Tolerances;
use gausslab::exprjet::parse_expression;
use gausslab::geometry::{default_count, Ambient, Component, ImmersionChart, Orientation, Sampling};
use serde::Deserialize;

use crate::error::CliError;

/// Largest number of sample points in one run.
pub const MAX_POINTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbientName {
    Euclidean,
    Sphere,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ComponentConfig {
    Expr(String),
    Integral(IntegralConfig),
}

/// `integral_{origin}^{var} integrand`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegralConfig {
    pub integral: String,
    pub var: String,
    pub origin: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum SamplesConfig {
    Counts(Vec<usize>),
    Points(Vec<Vec<f64>>),
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToleranceConfig {
    pub abs: Option<f64>,
    pub rel: Option<f64>,
    pub grad_rel: Option<f64>,
    pub mean_curvature_floor: Option<f64>,
    pub max_failure_fraction: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    pub name: String,
    pub dim: usize,
    pub ambient: AmbientName,
    pub variables: Vec<String>,
    pub components: Vec<ComponentConfig>,
    pub domain: Vec<[f64; 2]>,
    #[serde(default)]
    pub samples: Option<SamplesConfig>,
    #[serde(default = "default_orientation")]
    pub orientation: i32,
    #[serde(default)]
    pub tolerances: Option<ToleranceConfig>,
}

fn default_orientation() -> i32 {
    1
}

/// A validated config turned into library objects.
#[derive(Debug, Clone)]
pub struct Surface {
    pub chart: ImmersionChart,
    pub points: Vec<Vec<f64>>,
    pub orientation: Orientation,
    pub tolerances: Tolerances,
}

impl SurfaceConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<(Self, Vec<u8>), CliError> {
        let bytes = std::fs::read(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Ok((Self::from_json(text)?, bytes))
    }

    fn validate(&self) -> Result<(), CliError> {
        let m = self.dim;
        if m == 0 || self.variables.len() != m {
            return Err(CliError::Config(format!("dim is {m} but {} variables are listed", self.variables.len())));
        }
        if self.domain.len() != m {
            return Err(CliError::Config(format!("domain has {} intervals for dim {m}", self.domain.len())));
        }
        if !matches!(self.orientation, 1 | -1) {
            return Err(CliError::Config(format!("orientation must be 1 or -1, got {}", self.orientation)));
        }
        match &self.samples {
            Some(SamplesConfig::Counts(c)) => {
                if c.len() != m || c.iter().any(|&n| n < 2) {
                    return Err(CliError::Config("samples needs one count >= 2 per variable".into()));
                }
                let total = c.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n));
                if total.is_none_or(|t| t > MAX_POINTS) {
                    return Err(CliError::Config(format!("sample grid exceeds {MAX_POINTS} points")));
                }
            }
            Some(SamplesConfig::Points(p)) => {
                if p.is_empty() || p.len() > MAX_POINTS {
                    return Err(CliError::Config(format!("explicit samples must number 1..={MAX_POINTS}")));
                }
                if p.iter().any(|q| q.len() != m) {
                    return Err(CliError::Config("sample point has the wrong dimension".into()));
                }
            }
            None => {}
        }
        if let Some(t) = &self.tolerances {
            let all = [t.abs, t.rel, t.grad_rel, t.mean_curvature_floor, t.max_failure_fraction];
            if all.iter().flatten().any(|x| !(x.is_finite() && *x >= 0.0)) {
                return Err(CliError::Config("tolerances must be finite and non-negative".into()));
            }
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        let mut tol = Tolerances::default();
        if let Some(t) = &self.tolerances {
            tol.abs = t.abs.unwrap_or(tol.abs);
            tol.rel = t.rel.unwrap_or(tol.rel);
            tol.grad_rel = t.grad_rel.unwrap_or(tol.grad_rel);
            tol.mean_curvature_floor = t.mean_curvature_floor.unwrap_or(tol.mean_curvature_floor);
            tol.max_failure_fraction = t.max_failure_fraction.unwrap_or(tol.max_failure_fraction);
        }
        tol
    }

    pub fn build(&self) -> Result<Surface, CliError> {
        self.validate()?;
        let vars = &self.variables;
        let m = self.dim;
        let components = self
            .components
            .iter()
            .map(|c| match c {
                ComponentConfig::Expr(src) => {
                    parse_expression(src, m, vars).map(Component::Expr).map_err(|e| CliError::Parse(format!("{src:?}: {e}")))
                }
                ComponentConfig::Integral(ic) => {
                    let var = vars
                        .iter()
                        .position(|v| *v == ic.var)
                        .ok_or_else(|| CliError::Config(format!("unknown integration variable {:?}", ic.var)))?;
                    let integrand = parse_expression(&ic.integral, m, vars)
                        .map_err(|e| CliError::Parse(format!("{:?}: {e}", ic.integral)))?;
                    Ok(Component::Integral { integrand, var, origin: ic.origin })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ambient = match self.ambient {
            AmbientName::Euclidean => Ambient::Euclidean,
            AmbientName::Sphere => Ambient::Sphere,
        };
        let domain = self.domain.iter().map(|[a, b]| (*a, *b)).collect();
        let sampling = match &self.samples {
            Some(SamplesConfig::Counts(c)) => Sampling::Grid(c.clone()),
            Some(SamplesConfig::Points(p)) => Sampling::Points(p.clone()),
            None => Sampling::Grid(vec![default_count(m); m]),
        };
        let chart = ImmersionChart::new(self.name.clone(), ambient, vars.clone(), components, domain)?
            .with_sampling(sampling)?;
        let points = chart.sample_points();
        let orientation = Orientation::from_sign(self.orientation).unwrap_or_default();
        Ok(Surface { chart, points, orientation, tolerances: self.tolerances() })
    }
}
