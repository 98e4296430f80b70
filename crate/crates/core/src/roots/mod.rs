//! Certified real-root counting and isolation for exact rational polynomials.
//!
//! Root counts come from Sturm chains evaluated in exact rational arithmetic;
//! floating point appears only in the final Newton polish of a refined root.

mod poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use poly::{parse_rational, Polynomial, PolynomialDisplay};

/// Default isolating-interval width for refinement.
pub const DEFAULT_WIDTH: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("the zero polynomial has no isolated roots")]
    ZeroPolynomial,
    #[error("empty interval: lower bound is not below the upper bound")]
    EmptyInterval,
    #[error("invalid width {0}")]
    InvalidWidth(String),
}

/// Interval endpoint; finite endpoints are exact rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn int(n: i64) -> Self {
        Bound::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Bound::Finite(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    fn rank(&self) -> u8 {
        match self {
            Bound::NegInf => 0,
            Bound::Finite(_) => 1,
            Bound::PosInf => 2,
        }
    }

    fn less_than(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
            _ => self.rank() < other.rank(),
        }
    }
}

/// Rescaling applied to each remainder of a Sturm chain.
///
/// Positive rescaling leaves every sign, hence every count, unchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SturmScaling {
    /// Plain negated remainders over the rationals.
    #[default]
    Exact,
    /// Negated remainders reduced to primitive integer polynomials.
    Primitive,
}

/// Sturm chain `p, p', -rem(p, p'), ...`.
pub fn sturm_sequence(p: &Polynomial) -> Vec<Polynomial> {
    sturm_sequence_with(p, SturmScaling::Exact)
}

pub fn sturm_sequence_with(p: &Polynomial, scaling: SturmScaling) -> Vec<Polynomial> {
    let normalize = |q: Polynomial| match scaling {
        SturmScaling::Exact => q,
        SturmScaling::Primitive => {
            // primitive() makes the leading coefficient positive; keep the original sign.
            let s = q.sign_at_pos_inf();
            let prim = q.primitive();
            if s < 0 {
                -&prim
            } else {
                prim
            }
        }
    };
    let mut chain = vec![normalize(p.clone())];
    if p.degree().unwrap_or(0) == 0 {
        return chain;
    }
    chain.push(normalize(p.derivative()));
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(normalize(-&r));
    }
    chain
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Sign variations of a chain at `x`, zeros dropped.
pub fn sign_variations(chain: &[Polynomial], x: &Bound) -> usize {
    match x {
        Bound::NegInf => variations(chain.iter().map(Polynomial::sign_at_neg_inf)),
        Bound::PosInf => variations(chain.iter().map(Polynomial::sign_at_pos_inf)),
        Bound::Finite(v) => variations(chain.iter().map(|q| q.sign_at(v))),
    }
}

fn count_with_chain(chain: &[Polynomial], a: &Bound, b: &Bound) -> usize {
    // For a square-free chain the variation count at a root equals its
    // right limit, so the difference counts roots in the half-open (a, b].
    sign_variations(chain, a).saturating_sub(sign_variations(chain, b))
}

/// Number of distinct real roots of `p` in `(a, b]`.
pub fn count_real_roots_in(p: &Polynomial, a: &Bound, b: &Bound) -> Result<usize, RootError> {
    count_real_roots_with(p, a, b, SturmScaling::Exact)
}

pub fn count_real_roots_with(p: &Polynomial, a: &Bound, b: &Bound, scaling: SturmScaling) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !a.less_than(b) {
        return Err(RootError::EmptyInterval);
    }
    let chain = sturm_sequence_with(&p.square_free(), scaling);
    Ok(count_with_chain(&chain, a, b))
}

/// Isolating interval `(lo, hi]` holding exactly one root, with a refined estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
    pub root: f64,
    /// The interval was certified by a Sturm count of exactly one.
    pub certified: bool,
    /// The root is exactly `hi` (met during bisection).
    pub exact: bool,
}

impl RootInterval {
    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Strict bound `1 + max |c_i / c_n|` on the absolute value of every root.
pub fn cauchy_bound(p: &Polynomial) -> BigRational {
    let lead = p.leading().cloned().unwrap_or_else(BigRational::one).abs();
    let m = p
        .coeffs()
        .iter()
        .take(p.coeffs().len().saturating_sub(1))
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m + BigRational::one()
}

/// Disjoint isolating intervals for the roots of `p` in `(a, b]`, refined to `width`.
pub fn isolate_and_refine(p: &Polynomial, a: &Bound, b: &Bound, width: f64) -> Result<Vec<RootInterval>, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    if !a.less_than(b) {
        return Err(RootError::EmptyInterval);
    }
    let w = match BigRational::from_float(width) {
        Some(w) if w.is_positive() => w,
        _ => return Err(RootError::InvalidWidth(width.to_string())),
    };
    let sqf = p.square_free();
    let chain = sturm_sequence(&sqf);
    if count_with_chain(&chain, a, b) == 0 {
        return Ok(Vec::new());
    }
    let bound = cauchy_bound(&sqf);
    let lo = match a {
        Bound::Finite(x) if *x > -&bound => x.clone(),
        _ => -&bound,
    };
    let hi = match b {
        Bound::Finite(x) if *x < bound => x.clone(),
        _ => bound,
    };

    let count = |l: &BigRational, h: &BigRational| {
        count_with_chain(&chain, &Bound::Finite(l.clone()), &Bound::Finite(h.clone()))
    };
    let two = BigRational::from_integer(BigInt::from(2));
    let mut isolated = Vec::new();
    let mut stack = vec![(lo, hi)];
    while let Some((l, h)) = stack.pop() {
        match count(&l, &h) {
            0 => {}
            1 => isolated.push((l, h)),
            _ => {
                let mid = (&l + &h) / &two;
                stack.push((mid.clone(), h));
                stack.push((l, mid));
            }
        }
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));

    let dp = sqf.derivative();
    Ok(isolated
        .into_iter()
        .map(|(mut l, mut h)| {
            let mut exact = sqf.sign_at(&h) == 0;
            if exact {
                l = h.clone();
            }
            // move a root-valued lower end inward so the endpoint signs differ
            while !exact && sqf.sign_at(&l) == 0 && &h - &l > w {
                let mid = (&l + &h) / &two;
                if count(&l, &mid) == 1 {
                    h = mid;
                    if sqf.sign_at(&h) == 0 {
                        exact = true;
                        l = h.clone();
                    }
                } else {
                    l = mid;
                }
            }
            let sign_hi = sqf.sign_at(&h);
            while !exact && &h - &l > w {
                let mid = (&l + &h) / &two;
                match sqf.sign_at(&mid) {
                    0 => {
                        exact = true;
                        l = mid.clone();
                        h = mid;
                    }
                    s if s == sign_hi => h = mid,
                    _ => l = mid,
                }
            }
            let root = if exact { h.to_f64().unwrap_or(f64::NAN) } else { polish(&sqf, &dp, &l, &h) };
            RootInterval { lo: l, hi: h, root, certified: true, exact }
        })
        .collect())
}

fn polish(p: &Polynomial, dp: &Polynomial, lo: &BigRational, hi: &BigRational) -> f64 {
    let two = BigRational::from_integer(BigInt::from(2));
    let x0 = ((lo + hi) / two).to_f64().unwrap_or(f64::NAN);
    let (l, h) = (lo.to_f64().unwrap_or(f64::NAN), hi.to_f64().unwrap_or(f64::NAN));
    let d = dp.eval_f64(x0);
    if d == 0.0 || !d.is_finite() {
        return x0;
    }
    let x1 = x0 - p.eval_f64(x0) / d;
    if x1.is_finite() && x1 >= l && x1 <= h && p.eval_f64(x1).abs() <= p.eval_f64(x0).abs() {
        x1
    } else {
        x0
    }
}

