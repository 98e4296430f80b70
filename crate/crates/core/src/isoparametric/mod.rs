//! Isoparametric hypersurfaces of spheres: principal curvatures
//! `k_α = cot(θ + (α − 1)π/ℓ)`, `|Ā|²` by type, the condition polynomials for a
//! cone with proper biharmonic Gauss map, multiplicity rules and the Takagi family.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::hypercone::{clifford_link_solver, sphere_link_solver, CliffordSolution, HyperconeError, SphereLinkSolution};
use crate::roots::{count_real_roots_in, isolate_and_refine, Bound, Polynomial, RootError, DEFAULT_WIDTH};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsoError {
    #[error("invalid isoparametric data: {0}")]
    InvalidSpec(String),
    #[error("theta = {theta} is outside (0, pi/{l})")]
    ThetaOutOfRange { l: usize, theta: f64 },
    #[error("theta = {theta} is too close to a pole of the closed form")]
    PoleProximity { theta: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Hypercone(#[from] HyperconeError),
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Distance from the ends of `(0, π/ℓ)` below which `θ` is rejected.
pub const POLE_MARGIN: f64 = 1e-9;
/// Tolerance of the rational identities between the `k_α`.
pub const IDENTITY_TOL: f64 = 1e-12;
/// `Σ m_α k_α` below this marks a minimal hypersurface.
pub const MINIMAL_TOL: f64 = 1e-9;

/// Number `ℓ` of distinct principal curvatures and their multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct IsoparametricSpec {
    l: usize,
    multiplicities: Vec<usize>,
}

impl IsoparametricSpec {
    pub fn new(l: usize, multiplicities: Vec<usize>) -> Result<Self, IsoError> {
        if ![1, 2, 3, 4, 6].contains(&l) {
            return Err(IsoError::InvalidSpec(format!("l = {l} is not one of 1, 2, 3, 4, 6")));
        }
        if multiplicities.len() != l || multiplicities.contains(&0) {
            return Err(IsoError::InvalidSpec(format!("need {l} positive multiplicities, got {multiplicities:?}")));
        }
        let m = &multiplicities;
        let ok = match l {
            3 => m.iter().all(|&x| x == m[0]) && [1, 2, 4, 8].contains(&m[0]),
            4 => m[0] == m[2] && m[1] == m[3],
            6 => m.iter().all(|&x| x == m[0]) && (m[0] == 1 || m[0] == 2),
            _ => true,
        };
        if !ok {
            return Err(IsoError::InvalidSpec(format!("multiplicities {m:?} are not admissible for l = {l}")));
        }
        Ok(IsoparametricSpec { l, multiplicities })
    }

    /// Great or small sphere `S^m`.
    pub fn sphere(m: usize) -> Result<Self, IsoError> {
        Self::new(1, vec![m])
    }

    /// `S^{m1} × S^{m2}`.
    pub fn product(m1: usize, m2: usize) -> Result<Self, IsoError> {
        Self::new(2, vec![m1, m2])
    }

    /// Cartan hypersurface with multiplicities `2^q`.
    pub fn type3(q: u32) -> Result<Self, IsoError> {
        if q > 3 {
            return Err(IsoError::InvalidSpec(format!("q = {q} is not in 0..=3")));
        }
        Self::new(3, vec![1 << q; 3])
    }

    pub fn type4(m1: usize, m2: usize) -> Result<Self, IsoError> {
        Self::new(4, vec![m1, m2, m1, m2])
    }

    pub fn type6(multiplicity: usize) -> Result<Self, IsoError> {
        Self::new(6, vec![multiplicity; 6])
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn m(&self) -> usize {
        self.multiplicities.iter().sum()
    }
}

/// The `ℓ` principal curvatures at angle `θ`, in decreasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureSet {
    pub theta: f64,
    pub k: Vec<f64>,
    /// Largest relative defect of the rational identities relating the `k_α` to `k_1`.
    pub identity_defect: f64,
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

pub fn principal_curvatures(l: usize, theta: f64) -> Result<CurvatureSet, IsoError> {
    if ![1, 2, 3, 4, 6].contains(&l) {
        return Err(IsoError::InvalidSpec(format!("l = {l} is not one of 1, 2, 3, 4, 6")));
    }
    let upper = PI / l as f64;
    if !(theta > POLE_MARGIN && theta < upper - POLE_MARGIN) {
        return Err(IsoError::ThetaOutOfRange { l, theta });
    }
    let k: Vec<f64> = (0..l).map(|a| cot(theta + a as f64 * PI / l as f64)).collect();
    let k1 = k[0];
    let s3 = 3f64.sqrt();
    let predicted: Vec<(usize, f64)> = match l {
        2 => vec![(1, -1.0 / k1)],
        3 => vec![(1, (k1 - s3) / (1.0 + s3 * k1)), (2, (k1 + s3) / (1.0 - s3 * k1))],
        4 => {
            let k2 = (k1 - 1.0) / (k1 + 1.0);
            vec![(1, k2), (2, -1.0 / k1), (3, -1.0 / k2)]
        }
        6 => {
            let k2 = (s3 * k1 - 1.0) / (k1 + s3);
            let k3 = (k1 - s3) / (s3 * k1 + 1.0);
            vec![(1, k2), (2, k3), (3, -1.0 / k1), (4, -1.0 / k2), (5, -1.0 / k3)]
        }
        _ => vec![],
    };
    let identity_defect =
        predicted.iter().map(|&(i, v)| (k[i] - v).abs() / (1.0 + k[i].abs())).fold(0.0, f64::max);
    Ok(CurvatureSet { theta, k, identity_defect })
}

/// `|Ā|²` by the type-specific closed form and by `Σ m_α k_α²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormPair {
    pub closed_form: f64,
    pub direct: f64,
}

/// Relative size below which a closed-form denominator counts as a pole.
const POLE_TOL: f64 = 1e-9;

pub fn shape_norm_squared(spec: &IsoparametricSpec, theta: f64) -> Result<NormPair, IsoError> {
    let set = principal_curvatures(spec.l, theta)?;
    let direct = set.k.iter().zip(&spec.multiplicities).map(|(k, &m)| m as f64 * k * k).sum();
    let x = set.k[0];
    let mult = |i: usize| spec.multiplicities[i] as f64;
    let pole = |den: f64, scale: f64| {
        if den.abs() <= POLE_TOL * scale {
            Err(IsoError::PoleProximity { theta })
        } else {
            Ok(den)
        }
    };
    let closed_form = match spec.l {
        1 => mult(0) * x * x,
        2 => {
            let (r1, r2) = (theta.sin(), theta.cos());
            (r2 / r1).powi(2) * mult(0) + (r1 / r2).powi(2) * mult(1)
        }
        3 => {
            let den = pole((1.0 - 3.0 * x * x).powi(2), 1.0 + x.powi(4))?;
            mult(0) * (9.0 * x.powi(6) + 45.0 * x * x + 6.0) / den
        }
        4 => {
            let lambda = pole((x - 1.0 / x).powi(2), 1.0 + x * x)?;
            mult(0) * lambda + 16.0 * mult(1) / lambda + 2.0 * (mult(0) + mult(1))
        }
        _ => {
            let x2 = x * x;
            let q = 3.0 * x2 * x2 - 10.0 * x2 + 3.0;
            let den = pole(x2 * q * q, 1.0 + x2.powi(5))?;
            let num = 9.0 * x2.powi(6) + 495.0 * x2.powi(4) - 528.0 * x2.powi(3) + 495.0 * x2 * x2 + 9.0;
            mult(0) * num / den
        }
    };
    Ok(NormPair { closed_form, direct })
}

fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

/// Variable of a condition polynomial.
pub fn condition_variable(l: usize) -> &'static str {
    match l {
        2 => "y",
        4 => "lambda",
        _ => "x",
    }
}

/// Integer, content-normalized polynomial whose roots give `|Ā|² = 3(m − 2)`.
///
/// The variable is `x = k_1` for `ℓ = 1, 3, 6`, `y = r_1²` for `ℓ = 2` and
/// `λ = (k_1 − 1/k_1)²` for `ℓ = 4`.
pub fn condition_polynomial(spec: &IsoparametricSpec) -> Polynomial {
    let m = spec.m() as i64;
    let mu = spec.multiplicities[0] as i64;
    let target = 3 * (m - 2);
    let p = match spec.l {
        1 => Polynomial::from_i64(&[-target, 0, m]),
        2 => {
            let (m1, m2) = (mu, spec.multiplicities[1] as i64);
            let c = 4 * m - 6;
            Polynomial::from_i64(&[m1, m2 - m1 - c, c])
        }
        3 => {
            let num = Polynomial::from_i64(&[6, 0, 45, 0, 0, 0, 9]);
            let den = Polynomial::from_i64(&[1, 0, -3]);
            &num.scale(&int(mu)) - &(&den * &den).scale(&int(target))
        }
        4 => {
            let m2 = spec.multiplicities[1] as i64;
            Polynomial::from_i64(&[16 * m2, -(4 * (mu + m2) - 6), mu])
        }
        _ => {
            let num = Polynomial::from_i64(&[9, 0, 0, 0, 495, 0, -528, 0, 495, 0, 0, 0, 9]);
            let q = Polynomial::from_i64(&[3, 0, -10, 0, 3]);
            let den = &Polynomial::monomial(2) * &(&q * &q);
            &num.scale(&int(mu)) - &den.scale(&int(target))
        }
    };
    p.primitive()
}

/// One parameter value at which the cone over the hypersurface has biharmonic Gauss map.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeSolution {
    /// Root of the condition polynomial in its own variable.
    pub parameter: f64,
    /// Isolating interval of the root.
    pub interval: (f64, f64),
    pub k1: f64,
    pub theta: f64,
    /// `Σ m_α k_α`, a multiple of the mean curvature.
    pub trace: f64,
    /// `|Ā|²` at `θ`.
    pub shape_norm_sq: f64,
    /// `f̄ = 0`: excluded as harmonic.
    pub minimal: bool,
    /// `θ` lies in `(0, π/ℓ)`.
    pub admissible: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub spec: IsoparametricSpec,
    pub polynomial: Polynomial,
    pub variable: &'static str,
    pub solutions: Vec<TypeSolution>,
    pub sphere: Option<SphereLinkSolution>,
    pub clifford: Option<CliffordSolution>,
    /// Multiplicity rule for `ℓ = 4`.
    pub multiplicity_admissible: Option<bool>,
}

impl Classification {
    /// Solutions giving a proper biharmonic Gauss map.
    pub fn proper(&self) -> impl Iterator<Item = &TypeSolution> {
        self.solutions.iter().filter(|s| s.admissible && !s.minimal)
    }
}

fn solution(spec: &IsoparametricSpec, parameter: f64, interval: (f64, f64), theta: f64) -> TypeSolution {
    let upper = PI / spec.l as f64;
    let admissible = theta > 0.0 && theta < upper;
    let (trace, shape_norm_sq) = if admissible {
        let k: Vec<f64> = (0..spec.l).map(|a| cot(theta + a as f64 * upper)).collect();
        let trace = k.iter().zip(&spec.multiplicities).map(|(k, &m)| m as f64 * k).sum();
        let norm = k.iter().zip(&spec.multiplicities).map(|(k, &m)| m as f64 * k * k).sum();
        (trace, norm)
    } else {
        (f64::NAN, f64::NAN)
    };
    TypeSolution {
        parameter,
        interval,
        k1: cot(theta),
        theta,
        trace,
        shape_norm_sq,
        minimal: trace.abs() < MINIMAL_TOL,
        admissible,
    }
}

fn bounds(iv: &crate::roots::RootInterval) -> (f64, f64) {
    (iv.lo.to_f64().unwrap_or(f64::NAN), iv.hi.to_f64().unwrap_or(f64::NAN))
}

/// Parameter values solving the condition polynomial in the type's admissible range.
pub fn classify_type(spec: &IsoparametricSpec) -> Result<Classification, IsoError> {
    let polynomial = condition_polynomial(spec);
    let mut out = Classification {
        spec: spec.clone(),
        variable: condition_variable(spec.l),
        polynomial: polynomial.clone(),
        solutions: Vec::new(),
        sphere: None,
        clifford: None,
        multiplicity_admissible: None,
    };
    match spec.l {
        1 => {
            if let Some(s) = sphere_link_solver(spec.m()) {
                // S^m(a) has k_1 = cot θ with a = sin θ
                let theta = s.a.asin();
                out.solutions.push(solution(spec, cot(theta), (cot(theta), cot(theta)), theta));
                out.sphere = Some(s);
            }
        }
        2 => match clifford_link_solver(spec.m(), spec.multiplicities[0]) {
            Ok(c) => {
                for r in &c.roots {
                    out.solutions.push(solution(spec, r.r1_sq, r.interval, r.r1_sq.sqrt().asin()));
                }
                out.clifford = Some(c);
            }
            Err(HyperconeError::NoSolution { .. }) => {}
            Err(e) => return Err(e.into()),
        },
        3 => {
            let in_y = polynomial.even_part_in_square().expect("condition is even in x");
            for iv in isolate_and_refine(&in_y, &Bound::ratio(1, 3), &Bound::PosInf, DEFAULT_WIDTH)? {
                let x = iv.root.sqrt();
                let (lo, hi) = bounds(&iv);
                out.solutions.push(solution(spec, x, (lo.sqrt(), hi.sqrt()), (1.0 / x).atan()));
            }
        }
        4 => {
            out.multiplicity_admissible = Some(type4_multiplicity_check(spec.multiplicities[0], spec.multiplicities[1])?);
            for iv in isolate_and_refine(&polynomial, &Bound::int(0), &Bound::PosInf, DEFAULT_WIDTH)? {
                let lambda = iv.root;
                let k1 = 0.5 * (lambda.sqrt() + (lambda + 4.0).sqrt());
                out.solutions.push(solution(spec, lambda, bounds(&iv), (1.0 / k1).atan()));
            }
        }
        _ => {
            for iv in isolate_and_refine(&polynomial, &Bound::NegInf, &Bound::PosInf, DEFAULT_WIDTH)? {
                let x = iv.root;
                out.solutions.push(solution(spec, x, bounds(&iv), 1f64.atan2(x)));
            }
        }
    }
    Ok(out)
}

/// Number of `r` with `1 <= r <= s` and `r ≡ 0, 1, 2, 4 (mod 8)`.
pub fn rho(s: u64) -> u64 {
    let full = s / 8 * 4;
    let rest = (s / 8 * 8 + 1..=s).filter(|r| matches!(r % 8, 0 | 1 | 2 | 4)).count() as u64;
    full + rest
}

/// `(m1, m2) ∈ {(2, 2), (4, 5)}` or `m1 + m2 + 1` divisible by `2^{ρ(m* − 1)}`, `m* = min(m1, m2)`.
pub fn type4_multiplicity_check(m1: usize, m2: usize) -> Result<bool, IsoError> {
    if m1 == 0 || m2 == 0 {
        return Err(IsoError::InvalidArgument(format!("multiplicities must be positive, got ({m1}, {m2})")));
    }
    if (m1, m2) == (2, 2) || (m1, m2) == (4, 5) {
        return Ok(true);
    }
    let r = rho((m1.min(m2) - 1) as u64);
    if r >= 64 {
        return Ok(false);
    }
    Ok((m1 as u64 + m2 as u64 + 1).is_multiple_of(1u64 << r))
}

/// Root `x = sin² 2θ` of the Takagi condition.
#[derive(Debug, Clone, PartialEq)]
pub struct TakagiRoot {
    pub x: f64,
    /// Exact value when the discriminant is a perfect square.
    pub exact: Option<BigRational>,
    pub interval: (f64, f64),
    /// `θ = ½ arcsin √x ∈ (0, π/4)`.
    pub theta: f64,
    /// `λ = 4(1 − x)/x`.
    pub lambda: f64,
    /// `(k_1 − 1/k_1)²` with `k_1 = cot θ`; equals `lambda`.
    pub lambda_from_k1: f64,
    /// Residual of `(n − 2)λ² − (4n − 6)λ + 32`.
    pub lambda_residual: f64,
    pub cot_sq: f64,
    /// `(√n ± √2)/(√n ∓ √2)`, the minimal values of `cot² θ`.
    pub minimal_cot_sq: [f64; 2],
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TakagiSolution {
    pub n: usize,
    pub m1: usize,
    pub m2: usize,
    /// `4n² − 44n + 73`.
    pub discriminant: i64,
    /// `(4n − 3)x² − (6n − 11)x + 2(n − 2)`.
    pub polynomial: Polynomial,
    /// Both real roots lie in `(0, 1)`, by Sturm counts.
    pub certified: bool,
    pub roots: Vec<TakagiRoot>,
}

/// Type-4 family with multiplicities `(n − 2, 2)`, `n = 2k + 1 >= 5`.
pub fn takagi_solver(n: usize) -> Result<TakagiSolution, IsoError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(IsoError::InvalidArgument(format!("n must be odd and at least 5, got {n}")));
    }
    let ni = n as i64;
    let (a, b, c) = (4 * ni - 3, -(6 * ni - 11), 2 * (ni - 2));
    let polynomial = Polynomial::from_i64(&[c, b, a]);
    let discriminant = b * b - 4 * a * c;
    let all = count_real_roots_in(&polynomial, &Bound::NegInf, &Bound::PosInf)?;
    let inside = count_real_roots_in(&polynomial, &Bound::int(0), &Bound::int(1))?;
    let one_is_root = polynomial.sign_at(&int(1)) == 0;
    let certified = all == inside && !one_is_root;
    let sqrt_disc = (discriminant >= 0).then(|| discriminant.sqrt()).filter(|s| s * s == discriminant);
    let (sn, s2) = ((n as f64).sqrt(), 2f64.sqrt());
    let minimal_cot_sq = [(sn + s2) / (sn - s2), (sn - s2) / (sn + s2)];
    let mut roots = Vec::new();
    for iv in isolate_and_refine(&polynomial, &Bound::int(0), &Bound::int(1), DEFAULT_WIDTH)? {
        let exact = sqrt_disc.and_then(|s| {
            [-b - s, -b + s]
                .into_iter()
                .map(|num| BigRational::new(BigInt::from(num), BigInt::from(2 * a)))
                .find(|y| *y >= iv.lo && *y <= iv.hi)
        });
        let x = exact.as_ref().and_then(ToPrimitive::to_f64).unwrap_or(iv.root);
        let theta = 0.5 * x.sqrt().asin();
        let lambda = 4.0 * (1.0 - x) / x;
        let k1 = cot(theta);
        let lambda_from_k1 = (k1 - 1.0 / k1).powi(2);
        let nf = n as f64;
        let lambda_residual = (nf - 2.0) * lambda * lambda - (4.0 * nf - 6.0) * lambda + 32.0;
        let cot_sq = k1 * k1;
        let minimal = minimal_cot_sq.iter().any(|v| (cot_sq - v).abs() < MINIMAL_TOL * v);
        roots.push(TakagiRoot {
            x,
            exact,
            interval: bounds(&iv),
            theta,
            lambda,
            lambda_from_k1,
            lambda_residual,
            cot_sq,
            minimal_cot_sq,
            minimal,
        });
    }
    // order of the ± branches: larger root first
    roots.reverse();
    Ok(TakagiSolution { n, m1: n - 2, m2: 2, discriminant, polynomial, certified, roots })
}

