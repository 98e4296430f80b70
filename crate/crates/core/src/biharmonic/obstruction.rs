use crate::geometry::{
    scalar_laplacian, shape_data_spherical, Ambient, ImmersionChart, Orientation,
};

use super::BiharmonicError;

/// Number of Taylor coefficients of the constraint checked by [`r3_ode_check`].
const R3_ORDER: usize = 8;
const R3_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum R3Verdict {
    /// Data consistent with the system; the solution is `k ≡ 0` (harmonic cone).
    ZeroSolution,
    /// No solution of the system has this initial data.
    Inconsistent,
    /// Consistent nonzero data; would contradict the non-existence result.
    ConsistentNonzero,
}

/// Outcome of the prolongation check for one set of initial data `(k, k', k'')`.
#[derive(Debug, Clone, PartialEq)]
pub struct R3Check {
    pub initial: [f64; 3],
    /// `k(3 + k²) + 3k''` at the base point.
    pub constraint: f64,
    /// `k' k²`, the eliminated relation.
    pub first_prolongation: f64,
    /// Its derivative `k'' k² + 2 k'² k`, using `k''' = −k'`.
    pub second_prolongation: f64,
    /// Largest Taylor coefficient of the constraint along the solution of `k''' = −k'`.
    pub taylor_defect: f64,
    pub verdict: R3Verdict,
}

/// Check initial data against the cone system in R³: `k''' + k' = 0` and `k(3 + k²) + 3k'' = 0`.
///
/// The first equation fixes the Taylor series of `k`; the data is consistent
/// iff the second equation then vanishes identically. Eliminating `k'''`
/// between the first equation and the derivative of the second gives
/// `k' k² = 0`, and every consistent data set turns out to be zero.
pub fn r3_ode_check(k0: f64, k1: f64, k2: Option<f64>) -> R3Check {
    let k2 = k2.unwrap_or(-k0 * (3.0 + k0 * k0) / 3.0);
    let n = R3_ORDER + 3;
    // derivatives d_j = k^(j)(0)
    let mut d = vec![0.0; n + 1];
    d[0] = k0;
    d[1] = k1;
    d[2] = k2;
    for j in 3..=n {
        d[j] = -d[j - 2];
    }
    let mut fact = 1.0;
    let a: Vec<f64> = (0..=n)
        .map(|j| {
            if j > 0 {
                fact *= j as f64;
            }
            d[j] / fact
        })
        .collect();
    let conv = |x: &[f64], y: &[f64], k: usize| (0..=k).map(|i| x[i] * y[k - i]).sum::<f64>();
    let sq: Vec<f64> = (0..=R3_ORDER).map(|k| conv(&a, &a, k)).collect();
    let cube: Vec<f64> = (0..=R3_ORDER).map(|k| conv(&sq, &a, k)).collect();
    let scale = 1.0 + k0.abs().max(k1.abs()).max(k2.abs()).powi(3);
    let defect = (0..=R3_ORDER)
        .map(|k| (cube[k] + 3.0 * a[k] + 3.0 * ((k + 2) * (k + 1)) as f64 * a[k + 2]).abs())
        .fold(0.0, f64::max);
    let constraint = k0 * (3.0 + k0 * k0) + 3.0 * k2;
    let first = k1 * k0 * k0;
    let second = k2 * k0 * k0 + 2.0 * k1 * k1 * k0;
    let consistent = defect <= R3_TOL * scale;
    let zero = d.iter().all(|x| *x == 0.0);
    let verdict = match (consistent, zero) {
        (false, _) => R3Verdict::Inconsistent,
        (true, true) => R3Verdict::ZeroSolution,
        (true, false) => R3Verdict::ConsistentNonzero,
    };
    R3Check {
        initial: [k0, k1, k2],
        constraint,
        first_prolongation: first,
        second_prolongation: second,
        taylor_defect: defect,
        verdict,
    }
}

/// Elimination steps and a scan of initial data: only `k ≡ 0` survives.
pub fn r3_certificate(samples: &[[f64; 2]]) -> (Vec<&'static str>, Vec<R3Check>) {
    let steps = vec![
        "k''' + k' = 0",
        "k(3 + k^2) + 3k'' = 0",
        "d/ds of the second equation: 3k'(1 + k^2) + 3k''' = 0",
        "subtract 3 times the first equation: 3k' k^2 = 0",
        "k' k^2 = 0 forces k constant; the second equation gives k(3 + k^2) = 0, so k = 0",
    ];
    let checks = samples.iter().map(|&[k0, k1]| r3_ode_check(k0, k1, None)).collect();
    (steps, checks)
}

/// Integrals of the two terms of `3Δ̄f̄ − |Ā|² f̄` over a closed surface link.
#[derive(Debug, Clone, PartialEq)]
pub struct R4Integrals {
    /// `∫ 3 Δ̄ f̄`, zero by the divergence theorem.
    pub laplacian_integral: f64,
    /// `∫ |Ā|² f̄`, positive for non-minimal links with `f̄ ≥ 0`.
    pub weighted_integral: f64,
    pub area: f64,
    /// Orientation making `∫ f̄ ≥ 0`.
    pub orientation: Orientation,
    pub points: usize,
}

/// Periodicity tolerance on the chart when checking the fundamental domain.
const PERIOD_TOL: f64 = 1e-9;

/// Trapezoid integrals on a periodic grid with `counts` points per variable.
pub fn r4_obstruction(chart: &ImmersionChart, counts: &[usize]) -> Result<R4Integrals, BiharmonicError> {
    if chart.ambient() != Ambient::Sphere || chart.dim() != 2 {
        return Err(BiharmonicError::Precondition("r4 check needs a surface in the unit 3-sphere".into()));
    }
    if counts.len() != 2 || counts.iter().any(|&c| c < 2) {
        return Err(BiharmonicError::Precondition("need at least 2 grid points per variable".into()));
    }
    check_periodic(chart)?;
    let points = chart.periodic_points(counts);
    let cell: f64 = chart.domain().iter().zip(counts).map(|((lo, hi), &n)| (hi - lo) / n as f64).product();
    let (mut lap, mut weighted, mut area, mut mean) = (0.0, 0.0, 0.0, 0.0);
    for p in &points {
        let sd = shape_data_spherical(chart, p, Orientation::Positive)?;
        let fd = sd.fundamental();
        let det = fd.metric_at_base().determinant();
        let w = det.max(0.0).sqrt() * cell;
        let f = sd.mean_curvature();
        lap += 3.0 * scalar_laplacian(fd, f) * w;
        weighted += sd.norm_sq().value() * f.value() * w;
        mean += f.value() * w;
        area += w;
    }
    let orientation = if mean < 0.0 { Orientation::Negative } else { Orientation::Positive };
    let s = orientation.sign();
    Ok(R4Integrals {
        laplacian_integral: s * lap,
        weighted_integral: s * weighted,
        area,
        orientation,
        points: points.len(),
    })
}

fn check_periodic(chart: &ImmersionChart) -> Result<(), BiharmonicError> {
    let domain = chart.domain();
    let probes = [0.17, 0.52, 0.81];
    for i in 0..domain.len() {
        for &t in &probes {
            let mut a: Vec<f64> = domain.iter().map(|(lo, hi)| lo + t * (hi - lo)).collect();
            let mut b = a.clone();
            a[i] = domain[i].0;
            b[i] = domain[i].1;
            let xa = chart.position(&a)?;
            let xb = chart.position(&b)?;
            let gap = xa.iter().zip(&xb).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            if gap > PERIOD_TOL {
                return Err(BiharmonicError::Precondition(format!(
                    "chart is not periodic in variable '{}' (gap {gap:e})",
                    chart.variables()[i]
                )));
            }
        }
    }
    Ok(())
}
