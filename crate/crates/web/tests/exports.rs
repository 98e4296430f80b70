use gausslab_web::{classification_table, sphere_cone, verify_cylinder};
use serde_json::Value;

fn parse(s: String) -> Value {
    serde_json::from_str(&s).unwrap()
}

#[test]
fn sphere_cone_export() {
    let v = parse(sphere_cone(3));
    assert_eq!(v["a"].as_f64().unwrap(), std::f64::consts::FRAC_1_SQRT_2);
    assert_eq!(v["shape_norm_sq"], "3");
    assert!(parse(sphere_cone(2))["a"].is_null());
    assert!(parse(sphere_cone(0))["error"].is_string());
}

#[test]
fn cylinder_export() {
    assert_eq!(parse(verify_cylinder(1.0, 1.0, 1.0))["verdict"], "ProperBiharmonicGauss");
    assert_eq!(parse(verify_cylinder(1.0, 0.0, 0.0))["verdict"], "HarmonicGauss");
    let v = parse(verify_cylinder(1.0, 0.0, 0.0));
    assert_eq!(v["samples"].as_array().unwrap().len(), 20);
    assert!(parse(verify_cylinder(f64::NAN, 0.0, 0.0))["error"].is_string());
}

#[test]
fn table_export() {
    let v = parse(classification_table(11));
    assert_eq!(v["sphere"].as_array().unwrap().len(), 10);
    assert_eq!(v["type3"].as_array().unwrap().len(), 4);
    assert_eq!(v["takagi"].as_array().unwrap().len(), 4);
    assert_eq!(v["takagi"][0]["exact"], "2/3");
    assert!(parse(classification_table(100_000))["error"].is_string());
}
