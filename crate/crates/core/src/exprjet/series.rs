//! Univariate Taylor coefficients of the elementary functions around a base value.
//!
//! Every routine returns `c[0..=order]` with `f(a0 + t) = sum c[n] t^n`. The
//! multivariate jet composes these with the nilpotent part of its argument.

use super::JetError;

pub(crate) type Coeffs = Vec<f64>;

fn factorials(order: usize) -> Vec<f64> {
    let mut out = vec![1.0; order + 1];
    for n in 1..=order {
        out[n] = out[n - 1] * n as f64;
    }
    out
}

pub(crate) fn mul(a: &[f64], b: &[f64]) -> Coeffs {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// Power series quotient; `b[0]` must be nonzero.
pub(crate) fn div(a: &[f64], b: &[f64]) -> Coeffs {
    let n = a.len().min(b.len());
    let mut out = vec![0.0; n];
    for k in 0..n {
        let mut acc = a[k];
        for j in 1..=k {
            acc -= b[j] * out[k - j];
        }
        out[k] = acc / b[0];
    }
    out
}

/// Antiderivative with the given constant term; the result is one order longer
/// than the input minus one, i.e. keeps `len` coefficients.
fn integrate(a: &[f64], constant: f64) -> Coeffs {
    let mut out = vec![0.0; a.len()];
    out[0] = constant;
    for n in 1..a.len() {
        out[n] = a[n - 1] / n as f64;
    }
    out
}

/// `(a0 + t)^p` for real `p`, `a0 > 0` unless `p` is a non-negative integer.
pub(crate) fn powf(a0: f64, p: f64, order: usize) -> Coeffs {
    let mut out = vec![0.0; order + 1];
    let mut binom = 1.0;
    for (n, c) in out.iter_mut().enumerate() {
        *c = binom * a0.powf(p - n as f64);
        binom *= (p - n as f64) / (n as f64 + 1.0);
    }
    out
}

/// Generic `q(t)^p` with `q[0] > 0`, by composing the binomial series.
fn series_powf(q: &[f64], p: f64) -> Coeffs {
    let order = q.len() - 1;
    let outer = powf(1.0, p, order);
    let u: Vec<f64> = q.iter().enumerate().map(|(i, c)| if i == 0 { 0.0 } else { c / q[0] }).collect();
    let mut acc = vec![0.0; order + 1];
    acc[0] = outer[order];
    for n in (0..order).rev() {
        acc = mul(&acc, &u);
        acc[0] += outer[n];
    }
    let scale = q[0].powf(p);
    acc.iter().map(|c| c * scale).collect()
}

pub(crate) fn exp(a0: f64, order: usize) -> Coeffs {
    let e = a0.exp();
    factorials(order).iter().map(|f| e / f).collect()
}

pub(crate) fn ln(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    if !(a0 > 0.0) {
        return Err(JetError::Domain { func: "log", value: a0 });
    }
    let mut out = vec![a0.ln(); order + 1];
    for n in 1..=order {
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        out[n] = sign / (n as f64 * a0.powi(n as i32));
    }
    Ok(out)
}

pub(crate) fn sqrt(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    if !(a0 > 0.0) {
        return Err(JetError::Domain { func: "sqrt", value: a0 });
    }
    Ok(powf(a0, 0.5, order))
}

pub(crate) fn recip(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    if a0 == 0.0 || !a0.is_finite() {
        return Err(JetError::DivisionByZero);
    }
    let mut out = vec![0.0; order + 1];
    let mut p = 1.0 / a0;
    for c in out.iter_mut() {
        *c = p;
        p *= -1.0 / a0;
    }
    Ok(out)
}

/// Sine and cosine together; derivatives cycle through s, c, -s, -c.
pub(crate) fn sin_cos(a0: f64, order: usize) -> (Coeffs, Coeffs) {
    let (s, c) = a0.sin_cos();
    let fact = factorials(order);
    let cycle_sin = [s, c, -s, -c];
    let cycle_cos = [c, -s, -c, s];
    let sin = (0..=order).map(|n| cycle_sin[n % 4] / fact[n]).collect();
    let cos = (0..=order).map(|n| cycle_cos[n % 4] / fact[n]).collect();
    (sin, cos)
}

pub(crate) fn sinh_cosh(a0: f64, order: usize) -> (Coeffs, Coeffs) {
    let (sh, ch) = (a0.sinh(), a0.cosh());
    let fact = factorials(order);
    let sinh = (0..=order).map(|n| if n % 2 == 0 { sh } else { ch } / fact[n]).collect();
    let cosh = (0..=order).map(|n| if n % 2 == 0 { ch } else { sh } / fact[n]).collect();
    (sinh, cosh)
}

const POLE_EPS: f64 = 1e-14;

pub(crate) fn tan(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    let (s, c) = sin_cos(a0, order);
    if c[0].abs() < POLE_EPS {
        return Err(JetError::Pole { func: "tan", value: a0 });
    }
    Ok(div(&s, &c))
}

pub(crate) fn cot(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    let (s, c) = sin_cos(a0, order);
    if s[0].abs() < POLE_EPS {
        return Err(JetError::Pole { func: "cot", value: a0 });
    }
    Ok(div(&c, &s))
}

pub(crate) fn tanh(a0: f64, order: usize) -> Coeffs {
    let (s, c) = sinh_cosh(a0, order);
    div(&s, &c)
}

pub(crate) fn atan(a0: f64, order: usize) -> Coeffs {
    // d/dt atan(a0 + t) = 1 / (1 + (a0 + t)^2)
    let mut q = vec![0.0; order + 1];
    q[0] = 1.0 + a0 * a0;
    if order >= 1 {
        q[1] = 2.0 * a0;
    }
    if order >= 2 {
        q[2] = 1.0;
    }
    let mut one = vec![0.0; order + 1];
    one[0] = 1.0;
    integrate(&div(&one, &q), a0.atan())
}

fn asin_derivative(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    if !(a0.abs() < 1.0) {
        return Err(JetError::Domain { func: "asin", value: a0 });
    }
    let mut q = vec![0.0; order + 1];
    q[0] = 1.0 - a0 * a0;
    if order >= 1 {
        q[1] = -2.0 * a0;
    }
    if order >= 2 {
        q[2] = -1.0;
    }
    Ok(series_powf(&q, -0.5))
}

pub(crate) fn asin(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    Ok(integrate(&asin_derivative(a0, order)?, a0.asin()))
}

pub(crate) fn acos(a0: f64, order: usize) -> Result<Coeffs, JetError> {
    let d: Vec<f64> = asin_derivative(a0, order).map_err(|_| JetError::Domain { func: "acos", value: a0 })?;
    let neg: Vec<f64> = d.iter().map(|c| -c).collect();
    Ok(integrate(&neg, a0.acos()))
}
