use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gausslab::isoparametric::*;
use gausslab::roots::{count_real_roots_in, Bound, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn principal_curvature_examples() {
    let s2 = 2f64.sqrt();
    let k = principal_curvatures(4, PI / 8.0).unwrap().k;
    for (a, b) in k.iter().zip([1.0 + s2, s2 - 1.0, 1.0 - s2, -1.0 - s2]) {
        assert!((a - b).abs() < 1e-14);
    }
    let s3 = 3f64.sqrt();
    let k = principal_curvatures(3, PI / 6.0).unwrap().k;
    for (a, b) in k.iter().zip([s3, 0.0, -s3]) {
        assert!((a - b).abs() < 1e-14);
    }
    let k = principal_curvatures(2, PI / 4.0).unwrap().k;
    assert!((k[0] - 1.0).abs() < 1e-15 && (k[1] + 1.0).abs() < 1e-15);
}

#[test]
fn theta_range_is_open() {
    assert!(matches!(principal_curvatures(3, 0.0), Err(IsoError::ThetaOutOfRange { .. })));
    assert!(principal_curvatures(4, PI / 4.0).is_err());
    assert!(principal_curvatures(4, PI / 4.0 - 1e-10).is_err());
    assert!(principal_curvatures(5, 0.1).is_err());
}

#[test]
fn curvatures_decrease_and_satisfy_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for l in [1, 2, 3, 4, 6] {
        for _ in 0..200 {
            let theta = rng.random_range(1e-3..PI / l as f64 - 1e-3);
            let set = principal_curvatures(l, theta).unwrap();
            assert!(set.k.windows(2).all(|w| w[0] > w[1]));
            assert!(set.identity_defect < IDENTITY_TOL, "l={l} theta={theta} {}", set.identity_defect);
        }
    }
}

fn specs() -> Vec<IsoparametricSpec> {
    let mut v = vec![
        IsoparametricSpec::sphere(3).unwrap(),
        IsoparametricSpec::product(1, 3).unwrap(),
        IsoparametricSpec::type6(1).unwrap(),
        IsoparametricSpec::type6(2).unwrap(),
    ];
    v.extend((0..4).map(|q| IsoparametricSpec::type3(q).unwrap()));
    v.extend([(1, 1), (2, 2), (4, 5), (3, 4), (7, 2)].map(|(a, b)| IsoparametricSpec::type4(a, b).unwrap()));
    v
}

#[test]
fn closed_forms_match_direct_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for spec in specs() {
        let upper = PI / spec.l() as f64;
        let mut checked = 0;
        while checked < 200 {
            let theta = rng.random_range(1e-3..upper - 1e-3);
            match shape_norm_squared(&spec, theta) {
                Ok(n) => {
                    assert!((n.closed_form - n.direct).abs() <= 1e-9 * n.direct.abs().max(1.0), "{spec:?} {theta}");
                    checked += 1;
                }
                Err(IsoError::PoleProximity { .. }) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}

#[test]
fn shape_norm_examples() {
    let n = shape_norm_squared(&IsoparametricSpec::type3(1).unwrap(), PI / 6.0).unwrap();
    assert!((n.direct - 12.0).abs() < 1e-12 && (n.closed_form - 12.0).abs() < 1e-12);
    let n = shape_norm_squared(&IsoparametricSpec::type4(2, 2).unwrap(), PI / 8.0).unwrap();
    assert!((n.direct - 24.0).abs() < 1e-12 && (n.closed_form - 24.0).abs() < 1e-12);
    let spec = IsoparametricSpec::product(2, 3).unwrap();
    let theta: f64 = 0.4;
    let (r1, r2) = (theta.sin(), theta.cos());
    let n = shape_norm_squared(&spec, theta).unwrap();
    assert!((n.closed_form - ((r2 / r1).powi(2) * 2.0 + (r1 / r2).powi(2) * 3.0)).abs() < 1e-12);
}

#[test]
fn condition_polynomials_match_printed_forms() {
    let p = |l: usize, m: &[usize]| condition_polynomial(&IsoparametricSpec::new(l, m.to_vec()).unwrap());
    assert_eq!(p(3, &[4, 4, 4]), Polynomial::from_i64(&[-1, 0, 60, 0, -45, 0, 6]).primitive());
    assert_eq!(p(3, &[2, 2, 2]), Polynomial::from_i64(&[0, 0, 9, 0, -6, 0, 1]));
    assert_eq!(p(3, &[8, 8, 8]), Polynomial::from_i64(&[-6, 0, 252, 0, -198, 0, 24]).primitive());
    assert_eq!(p(4, &[2, 2, 2, 2]), Polynomial::from_i64(&[16, -5, 1]));
    assert_eq!(p(6, &[1; 6]), Polynomial::from_i64(&[1, 0, -12, 0, 135, 0, -216, 0, 135, 0, -12, 0, 1]));
    assert_eq!(p(6, &[2; 6]), Polynomial::from_i64(&[3, 0, -45, 0, 465, 0, -766, 0, 465, 0, -45, 0, 3]));
    // q = 0 has 21x^2 where the printed text reads 11x^2; neither has real roots
    assert_eq!(p(3, &[1, 1, 1]), Polynomial::from_i64(&[1, 0, 21, 0, -9, 0, 3]));
    let printed = Polynomial::from_i64(&[1, 0, 11, 0, -9, 0, 3]);
    assert_eq!(count_real_roots_in(&printed, &Bound::NegInf, &Bound::PosInf).unwrap(), 0);
}

#[test]
fn type4_discriminant_examples() {
    let p = condition_polynomial(&IsoparametricSpec::type4(2, 2).unwrap());
    let c: Vec<i64> = p.integer_coeffs().iter().map(|x| x.to_i64().unwrap()).collect();
    // 2λ² − 10λ + 32 up to content
    assert_eq!(c, vec![16, -5, 1]);
    assert_eq!(4 * (c[1] * c[1] - 4 * c[0] * c[2]), -156);
}

#[test]
fn root_counts_match_classification() {
    let count = |spec: IsoparametricSpec| classify_type(&spec).unwrap();
    assert_eq!(count(IsoparametricSpec::type3(0).unwrap()).solutions.len(), 0);
    let q1 = count(IsoparametricSpec::type3(1).unwrap());
    assert_eq!(q1.solutions.len(), 1);
    assert!(q1.solutions[0].minimal);
    assert!((q1.solutions[0].parameter - 3f64.sqrt()).abs() < 1e-12);
    assert_eq!(q1.proper().count(), 0);
    for q in [2, 3] {
        let c = count(IsoparametricSpec::type3(q).unwrap());
        assert_eq!(c.solutions.len(), 2);
        assert_eq!(c.proper().count(), 2);
        for s in &c.solutions {
            assert!(s.parameter > 1.0 / 3f64.sqrt());
            assert!((s.parameter - 3f64.sqrt()).abs() > 1e-3);
        }
    }
    let q2 = count(IsoparametricSpec::type3(2).unwrap());
    assert!((q2.solutions[0].parameter - 1.308).abs() < 5e-4);
    assert!((q2.solutions[1].parameter - 2.40).abs() < 5e-3);
    for (a, b) in [(2, 2), (4, 5)] {
        let c = count(IsoparametricSpec::type4(a, b).unwrap());
        assert_eq!(c.solutions.len(), 0);
        assert_eq!(c.multiplicity_admissible, Some(true));
    }
    for mult in [1, 2] {
        assert_eq!(count(IsoparametricSpec::type6(mult).unwrap()).solutions.len(), 0);
    }
}

#[test]
fn classified_roots_round_trip() {
    let mut all = specs();
    all.extend([(1, 8), (3, 3), (9, 2)].map(|(a, b)| IsoparametricSpec::type4(a, b).unwrap()));
    all.extend((3..8).map(|m| IsoparametricSpec::sphere(m).unwrap()));
    for spec in all {
        let c = classify_type(&spec).unwrap();
        let target = 3.0 * (spec.m() as f64 - 2.0);
        for s in c.solutions.iter().filter(|s| s.admissible) {
            assert!((s.shape_norm_sq - target).abs() < 1e-9, "{spec:?}: {}", s.shape_norm_sq);
            let n = shape_norm_squared(&spec, s.theta).unwrap();
            assert!((n.direct - target).abs() < 1e-9);
        }
    }
}

#[test]
fn type4_with_solutions() {
    // m1 = 1, m2 = 8: λ² − 30λ + 128 has roots 15 ± √97
    let c = classify_type(&IsoparametricSpec::type4(1, 8).unwrap()).unwrap();
    assert_eq!(c.solutions.len(), 2);
    assert!((c.solutions[0].parameter - (15.0 - 97f64.sqrt())).abs() < 1e-12);
    for s in &c.solutions {
        assert!(s.theta > 0.0 && s.theta < PI / 4.0);
        assert!(((s.k1 - 1.0 / s.k1).powi(2) - s.parameter).abs() < 1e-9);
    }
    // m* = 1: 2^ρ(0) = 1 divides everything
    assert_eq!(c.multiplicity_admissible, Some(true));
}

#[test]
fn delegated_types() {
    let c = classify_type(&IsoparametricSpec::sphere(3).unwrap()).unwrap();
    assert!((c.sphere.as_ref().unwrap().a - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-16);
    assert_eq!(c.proper().count(), 1);
    assert!(classify_type(&IsoparametricSpec::sphere(2).unwrap()).unwrap().solutions.is_empty());
    let c = classify_type(&IsoparametricSpec::product(1, 2).unwrap()).unwrap();
    assert_eq!(c.solutions.len(), 2);
    assert_eq!(c.proper().count(), 1);
    assert!(c.clifford.unwrap().roots.iter().any(|r| r.range_conflict));
}

#[test]
fn spec_validation() {
    assert!(IsoparametricSpec::new(5, vec![1; 5]).is_err());
    assert!(IsoparametricSpec::new(3, vec![2, 2, 4]).is_err());
    assert!(IsoparametricSpec::new(3, vec![3, 3, 3]).is_err());
    assert!(IsoparametricSpec::new(4, vec![1, 2, 2, 1]).is_err());
    assert!(IsoparametricSpec::new(6, vec![3; 6]).is_err());
    assert!(IsoparametricSpec::type3(4).is_err());
    assert!(IsoparametricSpec::new(2, vec![0, 2]).is_err());
}

#[test]
fn rho_examples() {
    assert_eq!(rho(0), 0);
    assert_eq!(rho(1), 1);
    assert_eq!(rho(8), 4);
    for s in 0..100u64 {
        let brute = (1..=s).filter(|r| matches!(r % 8, 0 | 1 | 2 | 4)).count() as u64;
        assert_eq!(rho(s), brute);
    }
}

#[test]
fn multiplicity_check_examples() {
    assert!(type4_multiplicity_check(2, 2).unwrap());
    assert!(type4_multiplicity_check(4, 5).unwrap());
    assert!(type4_multiplicity_check(1, 1).unwrap());
    // m* = 3: ρ(2) = 2, so 4 must divide m1 + m2 + 1
    assert!(type4_multiplicity_check(3, 4).unwrap());
    assert!(!type4_multiplicity_check(3, 3).unwrap());
    assert!(type4_multiplicity_check(0, 1).is_err());
}

#[test]
fn takagi_n9() {
    let t = takagi_solver(9).unwrap();
    assert_eq!(t.discriminant, 1);
    assert!(t.certified);
    let exact: Vec<BigRational> = t.roots.iter().map(|r| r.exact.clone().unwrap()).collect();
    assert_eq!(exact, vec![ratio(2, 3), ratio(7, 11)]);
    let two_thirds = &t.roots[0];
    assert!((two_thirds.lambda - 2.0).abs() < 1e-14);
    assert!(two_thirds.lambda_residual.abs() < 1e-12);
    for r in &t.roots {
        assert!(!r.minimal);
        assert!(r.theta > 0.0 && r.theta < PI / 4.0);
        assert!((r.lambda - r.lambda_from_k1).abs() < 1e-12);
    }
}

#[test]
fn takagi_realness_threshold() {
    assert!(takagi_solver(5).unwrap().roots.is_empty());
    let t7 = takagi_solver(7).unwrap();
    assert_eq!(t7.discriminant, -39);
    assert!(t7.roots.is_empty());
    for n in (9..60).step_by(2) {
        let t = takagi_solver(n).unwrap();
        assert_eq!(t.roots.len(), 2, "n = {n}");
        assert!(t.certified);
        for r in &t.roots {
            assert!(r.lambda_residual.abs() < 1e-9 * (1.0 + r.lambda * r.lambda * n as f64));
            assert!(!r.minimal);
        }
    }
    assert!(takagi_solver(8).is_err());
    assert!(takagi_solver(3).is_err());
}

#[test]
fn takagi_matches_type4_classification() {
    for n in [9, 11, 13] {
        let t = takagi_solver(n).unwrap();
        let c = classify_type(&IsoparametricSpec::type4(n - 2, 2).unwrap()).unwrap();
        let mut a: Vec<f64> = t.roots.iter().map(|r| r.lambda).collect();
        let mut b: Vec<f64> = c.solutions.iter().map(|s| s.parameter).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-9 * x.max(1.0));
        }
    }
}

#[test]
fn lambda_substitution_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let theta: f64 = rng.random_range(1e-3..PI / 4.0 - 1e-3);
        let k1 = cot(theta);
        let x = (2.0 * theta).sin().powi(2);
        let lhs = (k1 - 1.0 / k1).powi(2);
        let rhs = 4.0 * (1.0 - x) / x;
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.max(1.0));
    }
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}
