#![allow(clippy::needless_range_loop)]

use gausslab::geometry::*;
use gausslab::exprjet::{eval_jet, parse_expression, EvalContext, JetValue, MAX_ORDER};

fn sphere2() -> ImmersionChart {
    ImmersionChart::from_sources(
        "unit sphere",
        Ambient::Euclidean,
        &["u", "v"],
        &["cos(u)*cos(v)", "cos(u)*sin(v)", "sin(u)"],
        vec![(-1.2, 1.2), (0.0, 6.0)],
    )
    .unwrap()
}

fn small_sphere(a: f64) -> ImmersionChart {
    let b = (1.0 - a * a).sqrt();
    let sources = [
        format!("{a:?}*cos(u)*cos(v)"),
        format!("{a:?}*cos(u)*sin(v)"),
        format!("{a:?}*sin(u)"),
        format!("{b:?}"),
    ];
    let refs: Vec<&str> = sources.iter().map(String::as_str).collect();
    ImmersionChart::from_sources("small sphere", Ambient::Sphere, &["u", "v"], &refs, vec![(-1.2, 1.2), (0.0, 6.0)])
        .unwrap()
}

fn jet_of(src: &str, vars: &[&str], p: &[f64]) -> JetValue {
    let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
    let e = parse_expression(src, names.len(), &names).unwrap();
    eval_jet(&e, &EvalContext::new(p, MAX_ORDER).unwrap()).unwrap()
}

#[test]
fn unit_sphere_shape_operator_is_identity() {
    let chart = sphere2();
    for p in [[0.3, 1.0], [-0.7, 4.0], [1.1, 0.2]] {
        let sd = shape_data_euclidean(&chart, &p, Orientation::Positive).unwrap();
        let ps = sd.at_base();
        for i in 0..2 {
            for j in 0..2 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((ps.shape[(i, j)] - want).abs() < 1e-12, "{p:?}: {}", ps.shape);
            }
        }
        assert!((ps.mean_curvature - 1.0).abs() < 1e-12);
        assert!((ps.norm_sq - 2.0).abs() < 1e-12);
        // mean curvature is constant, so its jet has no higher coefficients
        assert!(sd.mean_curvature().coeffs()[1..].iter().all(|c| c.abs() < 1e-10));
    }
}

#[test]
fn normal_flip_parity() {
    let chart = ImmersionChart::from_sources(
        "graph",
        Ambient::Euclidean,
        &["u", "v"],
        &["u", "v", "u^2*v + sin(v)"],
        vec![(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap();
    let p = [0.4, -0.3];
    let a = shape_data_euclidean(&chart, &p, Orientation::Positive).unwrap().at_base();
    let b = shape_data_euclidean(&chart, &p, Orientation::Negative).unwrap().at_base();
    assert!((a.mean_curvature + b.mean_curvature).abs() < 1e-14);
    assert!((a.norm_sq - b.norm_sq).abs() < 1e-14);
    // Cauchy-Schwarz
    assert!(a.norm_sq >= 2.0 * a.mean_curvature.powi(2) - 1e-14);
}

#[test]
fn cylinder_curvatures() {
    let chart = ImmersionChart::from_sources(
        "cylinder",
        Ambient::Euclidean,
        &["u", "v"],
        &["3*cos(u)", "3*sin(u)", "v"],
        vec![(0.0, 6.0), (-1.0, 1.0)],
    )
    .unwrap();
    let ps = shape_data(&chart, &[0.5, 0.2], Orientation::Positive).unwrap().at_base();
    let mut k = ps.principal_curvatures();
    k.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    assert!(k[0].abs() < 1e-13 && (k[1].abs() - 1.0 / 3.0).abs() < 1e-13, "{k:?}");
    assert!((ps.norm_sq - 1.0 / 9.0).abs() < 1e-13);
}

#[test]
fn metric_compatibility() {
    let chart = ImmersionChart::from_sources(
        "torus",
        Ambient::Euclidean,
        &["u", "v"],
        &["(2 + cos(u))*cos(v)", "(2 + cos(u))*sin(v)", "sin(u) + 0.1*v^2"],
        vec![(0.0, 6.0), (0.0, 6.0)],
    )
    .unwrap();
    let fd = fundamental_data(&chart, &[0.7, 1.3]).unwrap();
    let g = fd.metric();
    let gam = fd.christoffel();
    for k in 0..2 {
        for i in 0..2 {
            for j in 0..2 {
                let lhs = g[i][j].d(k);
                let rhs: f64 = (0..2)
                    .map(|l| gam[l][k][i].value() * g[l][j].value() + gam[l][k][j].value() * g[i][l].value())
                    .sum();
                assert!((lhs - rhs).abs() < 1e-13);
                // torsion free
                assert!((gam[k][i][j].value() - gam[k][j][i].value()).abs() < 1e-15);
            }
        }
    }
}

#[test]
fn sphere_laplacians() {
    let chart = sphere2();
    let p = [0.4, 2.1];
    let fd = fundamental_data(&chart, &p).unwrap();
    // restriction of z is a first eigenfunction: Delta z = 2 z
    let z = jet_of("sin(u)", &["u", "v"], &p);
    assert!((scalar_laplacian(&fd, &z) - 2.0 * z.value()).abs() < 1e-12);
    let x = jet_of("cos(u)*cos(v)", &["u", "v"], &p);
    assert!((scalar_laplacian(&fd, &x) - 2.0 * x.value()).abs() < 1e-12);
    // Bochner: rough Laplacian of grad z = grad(Delta z) - Ric(grad z) = grad z
    let gz = gradient(&fd, &z);
    let lap = rough_laplacian(&fd, &gz);
    let want = gz.at_base();
    for (a, b) in lap.iter().zip(&want) {
        assert!((a - b).abs() < 1e-11, "{lap:?} vs {want:?}");
    }
}

#[test]
fn small_sphere_links() {
    for a in [0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.9] {
        let chart = small_sphere(a);
        let sd = shape_data_spherical(&chart, &[0.2, 1.0], Orientation::Positive).unwrap();
        let ps = sd.at_base();
        let want = 2.0 * (1.0 - a * a) / (a * a);
        assert!((ps.norm_sq - want).abs() < 1e-11 * (1.0 + want), "a = {a}");
        let k = ps.principal_curvatures();
        assert!((k[0] - k[1]).abs() < 1e-11);
        // normal is tangent to the sphere and unit length
        let x = chart.position(&[0.2, 1.0]).unwrap();
        let n: Vec<f64> = sd.normal().iter().map(JetValue::value).collect();
        assert!(x.iter().zip(&n).map(|(a, b)| a * b).sum::<f64>().abs() < 1e-14);
        assert!((n.iter().map(|c| c * c).sum::<f64>() - 1.0).abs() < 1e-14);
        // Ricci through the Gauss equation: (m-1)(1 + k^2)
        let r = ricci_via_gauss_equation(&ps, 2, &[1.0, 0.0]);
        assert!((r[0] - (1.0 + k[0] * k[0])).abs() < 1e-11 && r[1].abs() < 1e-11);
    }
}

#[test]
fn rejects_singular_and_off_sphere_points() {
    let chart = ImmersionChart::from_sources(
        "cusp",
        Ambient::Euclidean,
        &["u", "v"],
        &["u^3", "v", "u^2"],
        vec![(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap();
    assert!(matches!(
        shape_data_euclidean(&chart, &[0.0, 0.0], Orientation::Positive),
        Err(GeometryError::SingularImmersion { .. })
    ));
    let off = ImmersionChart::from_sources(
        "off",
        Ambient::Sphere,
        &["u", "v"],
        &["cos(u)", "sin(u)", "v", "0"],
        vec![(-1.0, 1.0), (-1.0, 1.0)],
    )
    .unwrap();
    assert!(matches!(
        shape_data_spherical(&off, &[0.1, 0.5], Orientation::Positive),
        Err(GeometryError::SphereConstraint { .. })
    ));
    assert!(matches!(
        fundamental_data(&off, &[3.0, 0.0]),
        Err(GeometryError::OutOfDomain { .. })
    ));
}
