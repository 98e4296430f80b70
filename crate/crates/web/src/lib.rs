//! WebAssembly bindings for the browser demo. Every export returns a JSON string.

use gausslab::biharmonic::{hypersurface_residual, Tolerances};
use gausslab::geometry::Orientation;
use gausslab::hypercone::{curvature_polynomial_cylinder, sphere_link_solver};
use gausslab::isoparametric::{classify_type, takagi_solver, IsoparametricSpec};
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

/// Largest `m` accepted by [`sphere_cone`].
pub const MAX_M: u32 = 1000;
/// Largest `n` accepted by [`classification_table`].
pub const MAX_TAKAGI_N: u32 = 201;

fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

/// Radius of the small-sphere link whose cone over `S^m(a)` has proper biharmonic Gauss map.
#[wasm_bindgen]
pub fn sphere_cone(m: u32) -> String {
    if m == 0 || m > MAX_M {
        return error(format!("m must lie in 1..={MAX_M}"));
    }
    match sphere_link_solver(m as usize) {
        Some(s) => json!({
            "m": m,
            "a": num(s.a),
            "a_sq": s.a_sq.to_string(),
            "shape_norm_sq": s.shape_norm_sq.to_string(),
            "target_norm_sq": 3 * (m as i64 - 2),
            "certified": s.certified,
        })
        .to_string(),
        None => json!({ "m": m, "a": Value::Null, "note": "no solution: a small-sphere link needs m >= 3" }).to_string(),
    }
}

/// Gauss-map verdict for the cylinder over the plane curve with curvature `a + b s + c s²`, `s ∈ [-1, 1]`.
#[wasm_bindgen]
pub fn verify_cylinder(a: f64, b: f64, c: f64) -> String {
    let chart = match curvature_polynomial_cylinder(&[a, b, c], (-1.0, 1.0), (-1.0, 1.0)) {
        Ok(chart) => chart,
        Err(e) => return error(e),
    };
    let points = chart.sample_points();
    let rep = match hypersurface_residual(&chart, &points, Orientation::Positive, Tolerances::default()) {
        Ok(rep) => rep,
        Err(e) => return error(e),
    };
    // the grid repeats each s for every w; keep the middle w row
    let samples: Vec<Value> = rep
        .points
        .iter()
        .filter(|p| p.point[1] == 0.0)
        .map(|p| {
            json!({
                "s": num(p.point[0]),
                "curvature": num(a + b * p.point[0] + c * p.point[0] * p.point[0]),
                "residual_norm": num(p.residual_norm),
                "mean_curvature": num(p.mean_curvature),
            })
        })
        .collect();
    json!({
        "curvature": [num(a), num(b), num(c)],
        "verdict": rep.verdict.as_str(),
        "max_residual": num(rep.max_residual),
        "relative_residual": num(rep.relative_residual),
        "max_grad": num(rep.max_grad),
        "points": rep.points.len(),
        "failures": rep.failures.len(),
        "samples": samples,
    })
    .to_string()
}

/// Sphere, type-3 and Takagi rows of the classification, Takagi up to `takagi_max`.
#[wasm_bindgen]
pub fn classification_table(takagi_max: u32) -> String {
    if takagi_max > MAX_TAKAGI_N {
        return error(format!("takagi_max must be at most {MAX_TAKAGI_N}"));
    }
    let sphere: Vec<Value> = (3..=12)
        .filter_map(sphere_link_solver)
        .map(|s| json!({ "m": s.m, "a": num(s.a), "a_sq": s.a_sq.to_string() }))
        .collect();
    let mut type3 = Vec::new();
    for q in 0..=3 {
        let c = match IsoparametricSpec::type3(q).map_err(|e| e.to_string()).and_then(|s| classify_type(&s).map_err(|e| e.to_string())) {
            Ok(c) => c,
            Err(e) => return error(e),
        };
        for s in c.proper() {
            type3.push(json!({ "q": q, "m": c.spec.m(), "k1": num(s.k1), "theta": num(s.theta), "shape_norm_sq": num(s.shape_norm_sq) }));
        }
    }
    let mut takagi = Vec::new();
    for n in (5..=takagi_max as usize).step_by(2) {
        let sol = match takagi_solver(n) {
            Ok(sol) => sol,
            Err(e) => return error(e),
        };
        for r in &sol.roots {
            takagi.push(json!({
                "n": n,
                "sin_sq_2theta": num(r.x),
                "exact": r.exact.as_ref().map(|x| x.to_string()),
                "theta": num(r.theta),
                "minimal": r.minimal,
            }));
        }
    }
    json!({ "sphere": sphere, "type3": type3, "takagi": takagi }).to_string()
}
