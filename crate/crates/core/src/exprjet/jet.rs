use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use super::{series, JetError};

/// Highest supported truncation order.
pub const MAX_ORDER: usize = 5;

/// Multi-index bookkeeping for jets in `vars` variables up to `max_order`.
///
/// Monomials are stored in graded order (total degree first), so the layout of
/// a lower order is a prefix of the layout of a higher one. A jet of order `k`
/// simply uses the first `len_at(k)` slots.
pub struct JetLayout {
    vars: usize,
    max_order: usize,
    indices: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, usize>,
    len_at: Vec<usize>,
    /// `(lhs, rhs, target)` triples sorted by target.
    products: Vec<(u32, u32, u32)>,
    /// Number of product entries whose target lies within order `k`.
    products_at: Vec<usize>,
    /// `raise[var][idx]` is the index of `alpha + e_var`, if within `max_order`.
    raise: Vec<Vec<Option<usize>>>,
}

impl fmt::Debug for JetLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetLayout")
            .field("vars", &self.vars)
            .field("max_order", &self.max_order)
            .finish()
    }
}

fn monomials(vars: usize, degree: usize) -> Vec<Vec<u8>> {
    if vars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=degree).rev() {
        for mut rest in monomials(vars - 1, degree - first) {
            rest.insert(0, first as u8);
            out.push(rest);
        }
    }
    out
}

impl JetLayout {
    fn build(vars: usize, max_order: usize) -> Self {
        let mut indices = Vec::new();
        let mut len_at = Vec::with_capacity(max_order + 1);
        for d in 0..=max_order {
            indices.extend(monomials(vars, d));
            len_at.push(indices.len());
        }
        let lookup: HashMap<Vec<u8>, usize> =
            indices.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();

        let degree = |a: &[u8]| a.iter().map(|&x| x as usize).sum::<usize>();
        let mut products = Vec::new();
        for (i, a) in indices.iter().enumerate() {
            let da = degree(a);
            for (j, b) in indices.iter().enumerate() {
                if da + degree(b) > max_order {
                    continue;
                }
                let sum: Vec<u8> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                products.push((i as u32, j as u32, lookup[&sum] as u32));
            }
        }
        products.sort_by_key(|&(i, j, t)| (t, i, j));
        let products_at = len_at
            .iter()
            .map(|&n| products.partition_point(|&(_, _, t)| (t as usize) < n))
            .collect();

        let raise = (0..vars)
            .map(|v| {
                indices
                    .iter()
                    .map(|a| {
                        let mut b = a.clone();
                        b[v] += 1;
                        lookup.get(&b).copied()
                    })
                    .collect()
            })
            .collect();

        JetLayout { vars, max_order, indices, lookup, len_at, products, products_at, raise }
    }

    /// Shared layout for `vars` variables at [`MAX_ORDER`].
    pub fn shared(vars: usize) -> Arc<JetLayout> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<JetLayout>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = cache.lock().expect("jet layout cache poisoned");
        guard
            .entry(vars)
            .or_insert_with(|| Arc::new(JetLayout::build(vars, MAX_ORDER)))
            .clone()
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Number of coefficients of a jet of order `k`, i.e. `C(vars + k, k)`.
    pub fn len_at(&self, k: usize) -> usize {
        self.len_at[k]
    }

    pub fn multi_index(&self, idx: usize) -> &[u8] {
        &self.indices[idx]
    }

    pub fn index_of(&self, alpha: &[u8]) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }
}

/// Truncated multivariate Taylor expansion.
///
/// Coefficient `alpha` stores `d^alpha F / alpha!` at the base point.
#[derive(Clone)]
pub struct JetValue {
    layout: Arc<JetLayout>,
    order: usize,
    coeffs: Vec<f64>,
}

impl fmt::Debug for JetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("JetValue")
            .field("vars", &self.layout.vars)
            .field("order", &self.order)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl JetValue {
    pub fn constant(layout: &Arc<JetLayout>, order: usize, value: f64) -> Self {
        let mut coeffs = vec![0.0; layout.len_at(order)];
        coeffs[0] = value;
        JetValue { layout: layout.clone(), order, coeffs }
    }

    /// The coordinate function `x_var` expanded around `base`.
    pub fn variable(layout: &Arc<JetLayout>, order: usize, var: usize, base: f64) -> Self {
        let mut jet = Self::constant(layout, order, base);
        if order >= 1 {
            jet.coeffs[var + 1] = 1.0;
        }
        jet
    }

    pub fn from_coeffs(layout: &Arc<JetLayout>, order: usize, coeffs: Vec<f64>) -> Self {
        assert_eq!(coeffs.len(), layout.len_at(order));
        JetValue { layout: layout.clone(), order, coeffs }
    }

    pub fn layout(&self) -> &Arc<JetLayout> {
        &self.layout
    }

    pub fn vars(&self) -> usize {
        self.layout.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// Taylor-normalized coefficient of `alpha`.
    pub fn coeff(&self, alpha: &[u8]) -> Option<f64> {
        self.layout.index_of(alpha).and_then(|i| self.coeffs.get(i).copied())
    }

    /// Raw partial derivative `d^alpha F` at the base point.
    pub fn partial(&self, alpha: &[u8]) -> Result<f64, JetError> {
        let total: usize = alpha.iter().map(|&a| a as usize).sum();
        if alpha.len() != self.vars() {
            return Err(JetError::DimensionMismatch { expected: self.vars(), found: alpha.len() });
        }
        if total > self.order {
            return Err(JetError::OrderExceeded { requested: total, order: self.order });
        }
        let c = self.coeff(alpha).expect("multi-index within order");
        let fact: f64 = alpha
            .iter()
            .map(|&a| (1..=a as u64).product::<u64>() as f64)
            .product();
        Ok(c * fact)
    }

    /// First derivative `dF/dx_var` at the base point.
    pub fn d(&self, var: usize) -> f64 {
        self.coeffs[var + 1]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        JetValue {
            layout: self.layout.clone(),
            order,
            coeffs: self.coeffs[..self.layout.len_at(order)].to_vec(),
        }
    }

    /// `dF/dx_var` as a jet one order lower.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let order = self.order - 1;
        let n = self.layout.len_at(order);
        let coeffs = (0..n)
            .map(|idx| {
                let up = self.layout.raise[var][idx].expect("raised index within layout");
                let k = self.layout.indices[idx][var] as f64 + 1.0;
                k * self.coeffs[up]
            })
            .collect();
        JetValue { layout: self.layout.clone(), order, coeffs }
    }

    /// Antiderivative in `var` with value `constant` at the base point, one order higher.
    ///
    /// Only meaningful for jets that depend on `var` alone.
    pub fn antiderivative(&self, var: usize, constant: f64) -> Self {
        let order = (self.order + 1).min(self.layout.max_order);
        let mut out = Self::constant(&self.layout, order, constant);
        for idx in 0..self.layout.len_at(order - 1) {
            if let Some(up) = self.layout.raise[var][idx] {
                if up < out.coeffs.len() {
                    let k = self.layout.indices[idx][var] as f64 + 1.0;
                    out.coeffs[up] += self.coeffs[idx] / k;
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Self {
        JetValue {
            layout: self.layout.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add_scalar(&self, s: f64) -> Self {
        let mut out = self.clone();
        out.coeffs[0] += s;
        out
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let order = self.order.min(rhs.order);
        let n = self.layout.len_at(order);
        let coeffs = (0..n).map(|i| f(self.coeffs[i], rhs.coeffs[i])).collect();
        JetValue { layout: self.layout.clone(), order, coeffs }
    }

    fn product(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.layout.vars, rhs.layout.vars);
        let order = self.order.min(rhs.order);
        let mut coeffs = vec![0.0; self.layout.len_at(order)];
        for &(i, j, t) in &self.layout.products[..self.layout.products_at[order]] {
            coeffs[t as usize] += self.coeffs[i as usize] * rhs.coeffs[j as usize];
        }
        JetValue { layout: self.layout.clone(), order, coeffs }
    }

    /// `sum c[n] h^n` where `h` is this jet minus its value (Horner form).
    pub(crate) fn compose(&self, outer: &[f64]) -> Self {
        let mut h = self.clone();
        h.coeffs[0] = 0.0;
        let top = outer.len() - 1;
        let mut acc = Self::constant(&self.layout, self.order, outer[top]);
        for n in (0..top).rev() {
            acc = acc.product(&h);
            acc.coeffs[0] += outer[n];
        }
        acc
    }

    pub fn recip(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::recip(self.value(), self.order)?))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, JetError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn sqrt(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::sqrt(self.value(), self.order)?))
    }

    pub fn exp(&self) -> Self {
        self.compose(&series::exp(self.value(), self.order))
    }

    pub fn ln(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::ln(self.value(), self.order)?))
    }

    pub fn sin(&self) -> Self {
        self.compose(&series::sin_cos(self.value(), self.order).0)
    }

    pub fn cos(&self) -> Self {
        self.compose(&series::sin_cos(self.value(), self.order).1)
    }

    pub fn tan(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::tan(self.value(), self.order)?))
    }

    pub fn cot(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::cot(self.value(), self.order)?))
    }

    pub fn asin(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::asin(self.value(), self.order)?))
    }

    pub fn acos(&self) -> Result<Self, JetError> {
        Ok(self.compose(&series::acos(self.value(), self.order)?))
    }

    pub fn atan(&self) -> Self {
        self.compose(&series::atan(self.value(), self.order))
    }

    pub fn sinh(&self) -> Self {
        self.compose(&series::sinh_cosh(self.value(), self.order).0)
    }

    pub fn cosh(&self) -> Self {
        self.compose(&series::sinh_cosh(self.value(), self.order).1)
    }

    pub fn tanh(&self) -> Self {
        self.compose(&series::tanh(self.value(), self.order))
    }

    /// Integer power by repeated squaring; negative exponents go through `recip`.
    pub fn powi(&self, n: i32) -> Result<Self, JetError> {
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = Self::constant(&self.layout, self.order, 1.0);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.product(&sq);
            }
        }
        Ok(acc)
    }

    /// Real power as `exp(p log x)`.
    pub fn powf(&self, p: f64) -> Result<Self, JetError> {
        Ok(self.ln()?.scale(p).exp())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&JetValue> for &JetValue {
            type Output = JetValue;
            fn $method(self, rhs: &JetValue) -> JetValue {
                let f: fn(&JetValue, &JetValue) -> JetValue = $body;
                f(self, rhs)
            }
        }
        impl $trait<JetValue> for JetValue {
            type Output = JetValue;
            fn $method(self, rhs: JetValue) -> JetValue {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&JetValue> for JetValue {
            type Output = JetValue;
            fn $method(self, rhs: &JetValue) -> JetValue {
                (&self).$method(rhs)
            }
        }
        impl $trait<JetValue> for &JetValue {
            type Output = JetValue;
            fn $method(self, rhs: JetValue) -> JetValue {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.zip_with(b, |x, y| x + y));
forward_binop!(Sub, sub, |a, b| a.zip_with(b, |x, y| x - y));
forward_binop!(Mul, mul, |a, b| a.product(b));

impl Neg for &JetValue {
    type Output = JetValue;
    fn neg(self) -> JetValue {
        self.scale(-1.0)
    }
}

impl Neg for JetValue {
    type Output = JetValue;
    fn neg(self) -> JetValue {
        self.scale(-1.0)
    }
}

/// Sum of products `sum a[i] * b[i]`.
pub fn dot(a: &[JetValue], b: &[JetValue]) -> JetValue {
    let mut iter = a.iter().zip(b);
    let (x, y) = iter.next().expect("dot of empty slices");
    iter.fold(x * y, |acc, (x, y)| acc + x * y)
}
