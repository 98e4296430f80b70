use std::path::Path;

use gausslab::biharmonic::{
    corollary_necessary_condition, hypersurface_residual, link_residual_system, r3_certificate, r4_obstruction,
    BiharmonicError, R3Check, R3Verdict, ResidualReport, Tolerances,
};
use gausslab::geometry::{Ambient, Orientation, Sampling};
use gausslab::hypercone::{
    clifford_link_solver, cmc_cone_condition, composition_energy_check, sphere_link_solver, summarize_link,
    CliffordRoot, HyperconeError,
};
use gausslab::isoparametric::{
    classify_type, shape_norm_squared, takagi_solver, Classification, IsoparametricSpec, TakagiSolution,
};
use gausslab::roots::{isolate_and_refine, parse_rational, Bound, Polynomial};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::config::{SurfaceConfig, MAX_POINTS};
use crate::error::CliError;
use crate::report::{fmt_f64, num, nums, Output, Table};

/// Root isolation width used by the `roots` command.
pub const ROOT_WIDTH: f64 = 1e-14;

/// Default periodic grid for `check cone-r4`.
pub const R4_DEFAULT_COUNTS: [usize; 2] = [48, 48];

fn orientation_sign(o: Orientation) -> i32 {
    match o {
        Orientation::Positive => 1,
        Orientation::Negative => -1,
    }
}

fn tolerances_json(t: &Tolerances) -> Value {
    json!({
        "abs": num(t.abs),
        "rel": num(t.rel),
        "grad_rel": num(t.grad_rel),
        "mean_curvature_floor": num(t.mean_curvature_floor),
        "max_failure_fraction": num(t.max_failure_fraction),
    })
}

fn residual_json(name: &str, orientation: Orientation, rep: &ResidualReport) -> Value {
    let points: Vec<Value> = rep
        .points
        .iter()
        .map(|p| {
            let mut o = Map::new();
            o.insert("point".into(), nums(&p.point));
            o.insert("residual".into(), nums(&p.residual));
            o.insert("residual_norm".into(), num(p.residual_norm));
            o.insert("grad".into(), nums(&p.grad));
            o.insert("grad_norm".into(), num(p.grad_norm));
            o.insert("mean_curvature".into(), num(p.mean_curvature));
            o.insert("norm_sq".into(), num(p.norm_sq));
            o.insert("scale".into(), num(p.scale));
            o.insert("excluded".into(), Value::Bool(p.excluded));
            if let Some(s) = p.scalar_residual {
                o.insert("scalar_residual".into(), num(s));
            }
            Value::Object(o)
        })
        .collect();
    let failures: Vec<Value> =
        rep.failures.iter().map(|f| json!({"point": nums(&f.point), "error": f.error.to_string()})).collect();
    json!({
        "name": name,
        "orientation": orientation_sign(orientation),
        "verdict": rep.verdict.as_str(),
        "max_residual": num(rep.max_residual),
        "relative_residual": num(rep.relative_residual),
        "max_grad": num(rep.max_grad),
        "max_abs_mean_curvature": num(rep.max_abs_mean_curvature),
        "scale": num(rep.scale),
        "threshold": num(rep.threshold),
        "grad_threshold": num(rep.grad_threshold),
        "tolerances": tolerances_json(&rep.tolerances),
        "points_total": rep.points.len() + rep.failures.len(),
        "points_excluded": rep.points.iter().filter(|p| p.excluded).count(),
        "points_failed": rep.failures.len(),
        "points": points,
        "failures": failures,
    })
}

/// A run in which no sample point could be evaluated is a numerical failure, not a verdict.
fn require_evaluated(rep: &ResidualReport) -> Result<(), CliError> {
    match rep.failures.first() {
        Some(f) if rep.points.is_empty() => {
            Err(CliError::Numerical(format!("no sample point could be evaluated; first error: {}", f.error)))
        }
        _ => Ok(()),
    }
}

fn residual_table(vars: &[String], rep: &ResidualReport) -> Table {
    let mut header: Vec<&str> = vars.iter().map(String::as_str).collect();
    header.extend(["residual_norm", "scalar_residual", "grad_norm", "mean_curvature", "norm_sq", "status"]);
    let mut t = Table::new("points", &header);
    for p in &rep.points {
        let mut row: Vec<String> = p.point.iter().map(|&x| fmt_f64(x)).collect();
        row.push(fmt_f64(p.residual_norm));
        row.push(p.scalar_residual.map(fmt_f64).unwrap_or_default());
        row.push(fmt_f64(p.grad_norm));
        row.push(fmt_f64(p.mean_curvature));
        row.push(fmt_f64(p.norm_sq));
        row.push(if p.excluded { "excluded".into() } else { "ok".into() });
        t.push(row);
    }
    for f in &rep.failures {
        let mut row: Vec<String> = f.point.iter().map(|&x| fmt_f64(x)).collect();
        row.extend(std::iter::repeat_n(String::new(), 5));
        row.push(format!("failed: {}", f.error));
        t.push(row);
    }
    t
}

pub fn verify(path: &Path) -> Result<(Output, Vec<u8>), CliError> {
    let (cfg, bytes) = SurfaceConfig::load(path)?;
    let s = cfg.build()?;
    if s.chart.ambient() != Ambient::Euclidean {
        return Err(CliError::Config("verify needs a euclidean chart; use verify-link for sphere charts".into()));
    }
    let rep = hypersurface_residual(&s.chart, &s.points, s.orientation, s.tolerances)?;
    require_evaluated(&rep)?;
    let results = residual_json(s.chart.name(), s.orientation, &rep);
    Ok((Output { results, tables: vec![residual_table(s.chart.variables(), &rep)] }, bytes))
}

pub fn verify_link(path: &Path) -> Result<(Output, Vec<u8>), CliError> {
    let (cfg, bytes) = SurfaceConfig::load(path)?;
    let s = cfg.build()?;
    if s.chart.ambient() != Ambient::Sphere {
        return Err(CliError::Config("verify-link needs a sphere chart".into()));
    }
    let rep = link_residual_system(&s.chart, &s.points, s.orientation, s.tolerances)?;
    require_evaluated(&rep)?;
    let mut results = residual_json(s.chart.name(), s.orientation, &rep);
    let extra = results.as_object_mut().expect("object");
    extra.insert("verdict_applies_to".into(), json!("cone over the link"));
    match summarize_link(&s.chart, &s.points, s.orientation) {
        Ok(summary) => {
            extra.insert(
                "link_summary".into(),
                json!({
                    "m": summary.m,
                    "mean_curvature": summary.mean_curvature.map_or(Value::Null, num),
                    "norm_sq": summary.norm_sq.map_or(Value::Null, num),
                    "target_norm_sq": 3 * (summary.m as i64 - 2),
                }),
            );
            match cmc_cone_condition(&summary) {
                Ok(b) => extra.insert("cmc_condition".into(), Value::Bool(b)),
                Err(e) => extra.insert("cmc_condition".into(), json!({"not_applicable": e.to_string()})),
            };
        }
        Err(e) => {
            extra.insert("link_summary".into(), json!({"error": e.to_string()}));
        }
    }
    match corollary_necessary_condition(&s.chart, &s.points, s.orientation) {
        Ok(vals) => {
            let max = vals.iter().flatten().fold(0.0f64, |a, x| a.max(x.abs()));
            extra.insert("corollary_max".into(), num(max));
        }
        Err(BiharmonicError::Precondition(msg)) => {
            extra.insert("corollary_max".into(), json!({"not_applicable": msg}));
        }
        Err(e) => {
            extra.insert("corollary_max".into(), json!({"error": e.to_string()}));
        }
    }
    Ok((Output { results, tables: vec![residual_table(s.chart.variables(), &rep)] }, bytes))
}

pub fn solve_sphere_cone(m: usize) -> Result<Output, CliError> {
    if m == 0 {
        return Err(CliError::Config("m must be positive".into()));
    }
    let mut t = Table::new("sphere", &["m", "a", "a_sq", "shape_norm_sq", "certified"]);
    let results = match sphere_link_solver(m) {
        Some(s) => {
            let norm = s.shape_norm_sq.to_f64().unwrap_or(f64::NAN);
            t.push(vec![m.to_string(), fmt_f64(s.a), s.a_sq.to_string(), fmt_f64(norm), s.certified.to_string()]);
            json!({
                "m": m,
                "a": num(s.a),
                "a_sq": s.a_sq.to_string(),
                "shape_norm_sq": num(norm),
                "shape_norm_sq_exact": s.shape_norm_sq.to_string(),
                "target_norm_sq": 3 * (m as i64 - 2),
                "certified": s.certified,
            })
        }
        None => json!({
            "m": m,
            "a": Value::Null,
            "note": "no solution: a small-sphere link needs m >= 3",
        }),
    };
    Ok(Output { results, tables: vec![t] })
}

fn clifford_root_json(r: &CliffordRoot) -> Value {
    json!({
        "r1_sq": num(r.r1_sq),
        "r2_sq": num(r.r2_sq),
        "exact": r.exact.as_ref().map(|x| x.to_string()),
        "interval": nums(&[r.interval.0, r.interval.1]),
        "condition_lhs": num(r.condition_lhs),
        "shape_norm_sq": num(r.shape_norm_sq),
        "valid": r.valid,
        "minimal": r.minimal,
        "theorem_level": r.theorem_level,
        "proposition_level": r.proposition_level,
        "range_conflict": r.range_conflict,
    })
}

const CLIFFORD_HEADER: [&str; 9] =
    ["m", "m1", "m2", "r1_sq", "r2_sq", "exact", "condition_lhs", "shape_norm_sq", "range_conflict"];

fn clifford_row(m: usize, m1: usize, r: &CliffordRoot) -> Vec<String> {
    vec![
        m.to_string(),
        m1.to_string(),
        (m - m1).to_string(),
        fmt_f64(r.r1_sq),
        fmt_f64(r.r2_sq),
        r.exact.as_ref().map(ToString::to_string).unwrap_or_default(),
        fmt_f64(r.condition_lhs),
        fmt_f64(r.shape_norm_sq),
        r.range_conflict.to_string(),
    ]
}

pub fn solve_clifford_cone(m: usize, m1: usize) -> Result<Output, CliError> {
    let mut t = Table::new("clifford", &CLIFFORD_HEADER);
    let results = match clifford_link_solver(m, m1) {
        Ok(sol) => {
            for r in &sol.roots {
                t.push(clifford_row(m, m1, r));
            }
            json!({
                "m": m,
                "m1": m1,
                "m2": sol.m2,
                "polynomial": sol.polynomial.display("y").to_string(),
                "target_norm_sq": 3 * (m as i64 - 2),
                "roots": sol.roots.iter().map(clifford_root_json).collect::<Vec<_>>(),
            })
        }
        Err(HyperconeError::NoSolution { .. }) => json!({
            "m": m,
            "m1": m1,
            "roots": [],
            "note": "no real roots with r1^2 in (0, 1)",
        }),
        Err(e) => return Err(e.into()),
    };
    Ok(Output { results, tables: vec![t] })
}

/// Which multiplicity arguments were given to `solve isoparametric`.
#[derive(Debug, Clone, Default)]
pub struct IsoArgs {
    pub l: usize,
    pub q: Option<u32>,
    pub m1: Option<usize>,
    pub m2: Option<usize>,
    pub mult: Option<usize>,
    pub m: Option<usize>,
}

impl IsoArgs {
    fn spec(&self) -> Result<IsoparametricSpec, CliError> {
        let need = |what: &str| CliError::Usage(format!("--l {} needs {what}", self.l));
        let spec = match self.l {
            1 => IsoparametricSpec::sphere(self.m.ok_or_else(|| need("--m"))?),
            2 => IsoparametricSpec::product(self.m1.ok_or_else(|| need("--m1"))?, self.m2.ok_or_else(|| need("--m2"))?),
            3 => IsoparametricSpec::type3(self.q.ok_or_else(|| need("--q"))?),
            4 => IsoparametricSpec::type4(self.m1.ok_or_else(|| need("--m1"))?, self.m2.ok_or_else(|| need("--m2"))?),
            6 => IsoparametricSpec::type6(self.mult.ok_or_else(|| need("--mult"))?),
            l => return Err(CliError::Usage(format!("--l must be one of 1, 2, 3, 4, 6, got {l}"))),
        };
        Ok(spec?)
    }
}

const TYPE_HEADER: [&str; 10] =
    ["l", "multiplicities", "m", "parameter", "k1", "theta", "shape_norm_sq", "target_norm_sq", "minimal", "proper"];

fn type_rows(c: &Classification, only_proper: bool, t: &mut Table) {
    let m = c.spec.m();
    let mult = c.spec.multiplicities().iter().map(ToString::to_string).collect::<Vec<_>>().join(";");
    for s in &c.solutions {
        let proper = s.admissible && !s.minimal;
        if only_proper && !proper {
            continue;
        }
        t.push(vec![
            c.spec.l().to_string(),
            mult.clone(),
            m.to_string(),
            fmt_f64(s.parameter),
            fmt_f64(s.k1),
            fmt_f64(s.theta),
            fmt_f64(s.shape_norm_sq),
            (3 * (m as i64 - 2)).to_string(),
            s.minimal.to_string(),
            proper.to_string(),
        ]);
    }
}

fn classification_json(c: &Classification) -> Value {
    let m = c.spec.m();
    let roots: Vec<Value> = c
        .solutions
        .iter()
        .map(|s| {
            json!({
                "parameter": num(s.parameter),
                "interval": nums(&[s.interval.0, s.interval.1]),
                "k1": num(s.k1),
                "theta": num(s.theta),
                "trace": num(s.trace),
                "shape_norm_sq": num(s.shape_norm_sq),
                "minimal": s.minimal,
                "admissible": s.admissible,
                "proper": s.admissible && !s.minimal,
            })
        })
        .collect();
    let proper = c.proper().count();
    let mut out = json!({
        "l": c.spec.l(),
        "multiplicities": c.spec.multiplicities(),
        "m": m,
        "variable": c.variable,
        "polynomial": c.polynomial.display(c.variable).to_string(),
        "target_norm_sq": 3 * (m as i64 - 2),
        "root_count": c.solutions.len(),
        "proper_count": proper,
        "roots": roots,
    });
    let o = out.as_object_mut().expect("object");
    if let Some(a) = c.multiplicity_admissible {
        o.insert("multiplicity_admissible".into(), Value::Bool(a));
    }
    if let Some(cl) = &c.clifford {
        o.insert("clifford".into(), cl.roots.iter().map(clifford_root_json).collect());
    }
    if c.solutions.is_empty() {
        o.insert("note".into(), json!("no real roots"));
    } else if proper == 0 {
        o.insert("note".into(), json!("no proper solutions"));
    }
    out
}

pub fn solve_isoparametric(args: &IsoArgs) -> Result<Output, CliError> {
    let c = classify_type(&args.spec()?)?;
    let mut t = Table::new("isoparametric", &TYPE_HEADER);
    type_rows(&c, false, &mut t);
    Ok(Output { results: classification_json(&c), tables: vec![t] })
}

const TAKAGI_HEADER: [&str; 10] =
    ["n", "m1", "m2", "sin_sq_2theta", "exact", "theta", "lambda", "cot_sq", "shape_norm_sq", "minimal"];

fn takagi_rows(sol: &TakagiSolution, t: &mut Table) -> Result<(), CliError> {
    let spec = IsoparametricSpec::type4(sol.m1, sol.m2)?;
    for r in &sol.roots {
        let norm = shape_norm_squared(&spec, r.theta)?.closed_form;
        t.push(vec![
            sol.n.to_string(),
            sol.m1.to_string(),
            sol.m2.to_string(),
            fmt_f64(r.x),
            r.exact.as_ref().map(ToString::to_string).unwrap_or_default(),
            fmt_f64(r.theta),
            fmt_f64(r.lambda),
            fmt_f64(r.cot_sq),
            fmt_f64(norm),
            r.minimal.to_string(),
        ]);
    }
    Ok(())
}

fn takagi_json(sol: &TakagiSolution) -> Result<Value, CliError> {
    let spec = IsoparametricSpec::type4(sol.m1, sol.m2)?;
    let roots = sol
        .roots
        .iter()
        .map(|r| {
            Ok(json!({
                "x": num(r.x),
                "exact": r.exact.as_ref().map(|x| x.to_string()),
                "interval": nums(&[r.interval.0, r.interval.1]),
                "theta": num(r.theta),
                "lambda": num(r.lambda),
                "lambda_from_k1": num(r.lambda_from_k1),
                "lambda_residual": num(r.lambda_residual),
                "cot_sq": num(r.cot_sq),
                "minimal_cot_sq": nums(&r.minimal_cot_sq),
                "minimal": r.minimal,
                "shape_norm_sq": num(shape_norm_squared(&spec, r.theta)?.closed_form),
            }))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut out = json!({
        "n": sol.n,
        "m1": sol.m1,
        "m2": sol.m2,
        "m": spec.m(),
        "target_norm_sq": 3 * (spec.m() as i64 - 2),
        "discriminant": sol.discriminant,
        "polynomial": sol.polynomial.display("x").to_string(),
        "certified": sol.certified,
        "sin_sq_2theta": sol.roots.iter().map(|r| num(r.x)).collect::<Vec<_>>(),
        "roots": roots,
    });
    if sol.roots.is_empty() {
        out.as_object_mut().expect("object").insert("note".into(), json!("no real roots"));
    }
    Ok(out)
}

pub fn solve_takagi(n: usize) -> Result<Output, CliError> {
    let sol = takagi_solver(n)?;
    let mut t = Table::new("takagi", &TAKAGI_HEADER);
    takagi_rows(&sol, &mut t)?;
    Ok(Output { results: takagi_json(&sol)?, tables: vec![t] })
}

/// Initial data `(k, k')` scanned by `check cone-r3`.
pub fn r3_samples() -> Vec<[f64; 2]> {
    let vals = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
    vals.iter().flat_map(|&a| vals.iter().map(move |&b| [a, b])).collect()
}

fn r3_verdict_str(v: R3Verdict) -> &'static str {
    match v {
        R3Verdict::ZeroSolution => "zero_solution",
        R3Verdict::Inconsistent => "inconsistent",
        R3Verdict::ConsistentNonzero => "consistent_nonzero",
    }
}

pub fn check_cone_r3() -> Result<Output, CliError> {
    let (steps, checks) = r3_certificate(&r3_samples());
    let count = |v: R3Verdict| checks.iter().filter(|c| c.verdict == v).count();
    let mut t = Table::new(
        "cone_r3",
        &["k", "dk", "ddk", "constraint", "first_prolongation", "second_prolongation", "taylor_defect", "verdict"],
    );
    let row = |c: &R3Check| {
        let mut r: Vec<String> = c.initial.iter().map(|&x| fmt_f64(x)).collect();
        r.extend([c.constraint, c.first_prolongation, c.second_prolongation, c.taylor_defect].map(fmt_f64));
        r.push(r3_verdict_str(c.verdict).into());
        r
    };
    for c in &checks {
        t.push(row(c));
    }
    let nonzero = count(R3Verdict::ConsistentNonzero);
    let results = json!({
        "system": ["k''' + k' = 0", "k(3 + k^2) + 3k'' = 0"],
        "steps": steps,
        "eliminated": "k' k^2 = 0",
        "conclusion": if nonzero == 0 {
            "k' k^2 = 0 implies k = 0: no cone in R^3 has proper biharmonic Gauss map"
        } else {
            "consistent nonzero initial data found"
        },
        "zero_solutions": count(R3Verdict::ZeroSolution),
        "inconsistent": count(R3Verdict::Inconsistent),
        "consistent_nonzero": nonzero,
        "checks": checks.iter().map(|c| json!({
            "initial": nums(&c.initial),
            "constraint": num(c.constraint),
            "first_prolongation": num(c.first_prolongation),
            "second_prolongation": num(c.second_prolongation),
            "taylor_defect": num(c.taylor_defect),
            "verdict": r3_verdict_str(c.verdict),
        })).collect::<Vec<_>>(),
    });
    Ok(Output { results, tables: vec![t] })
}

pub fn check_cone_r4(path: &Path, counts: Option<Vec<usize>>) -> Result<(Output, Vec<u8>), CliError> {
    let (cfg, bytes) = SurfaceConfig::load(path)?;
    let s = cfg.build()?;
    let counts = match (counts, s.chart.sampling()) {
        (Some(c), _) => c,
        (None, Sampling::Grid(c)) if cfg.samples.is_some() => c.clone(),
        _ => R4_DEFAULT_COUNTS.to_vec(),
    };
    if counts.iter().product::<usize>() > MAX_POINTS {
        return Err(CliError::Config(format!("periodic grid exceeds {MAX_POINTS} points")));
    }
    let r = r4_obstruction(&s.chart, &counts)?;
    let bound = 1e-8 * r.area;
    let lap_ok = r.laplacian_integral.abs() < bound;
    let weighted_positive = r.weighted_integral > 0.0;
    let results = json!({
        "name": s.chart.name(),
        "counts": counts,
        "points": r.points,
        "area": num(r.area),
        "orientation": orientation_sign(r.orientation),
        "laplacian_integral": num(r.laplacian_integral),
        "laplacian_bound": num(bound),
        "laplacian_vanishes": lap_ok,
        "weighted_integral": num(r.weighted_integral),
        "weighted_positive": weighted_positive,
        "obstructed": lap_ok && weighted_positive,
    });
    let mut t = Table::new("cone_r4", &["name", "points", "area", "laplacian_integral", "weighted_integral", "obstructed"]);
    t.push(vec![
        s.chart.name().into(),
        r.points.to_string(),
        fmt_f64(r.area),
        fmt_f64(r.laplacian_integral),
        fmt_f64(r.weighted_integral),
        (lap_ok && weighted_positive).to_string(),
    ]);
    Ok((Output { results, tables: vec![t] }, bytes))
}

pub fn check_composition(ms: &[usize], ts: &[f64]) -> Result<Output, CliError> {
    let mut t = Table::new(
        "composition",
        &["m", "t", "energy", "laplacian", "laplacian_radial", "laplacian_chart", "biharmonic"],
    );
    let mut rows = Vec::new();
    for &m in ms {
        for &tv in ts {
            let c = composition_energy_check(m, tv)?;
            t.push(vec![
                m.to_string(),
                fmt_f64(tv),
                fmt_f64(c.energy),
                fmt_f64(c.laplacian),
                fmt_f64(c.laplacian_radial),
                c.laplacian_chart.map(fmt_f64).unwrap_or_default(),
                c.biharmonic.to_string(),
            ]);
            rows.push(json!({
                "m": m,
                "t": num(tv),
                "energy": num(c.energy),
                "laplacian": num(c.laplacian),
                "laplacian_radial": num(c.laplacian_radial),
                "laplacian_chart": c.laplacian_chart.map_or(Value::Null, num),
                "biharmonic": c.biharmonic,
            }));
        }
    }
    Ok(Output { results: json!({ "checks": rows }), tables: vec![t] })
}

fn parse_bound(s: &str) -> Result<Bound, CliError> {
    match s.trim() {
        "-inf" => Ok(Bound::NegInf),
        "inf" | "+inf" => Ok(Bound::PosInf),
        v => parse_rational(v).map(Bound::Finite).ok_or_else(|| CliError::Usage(format!("bad bound {v:?}"))),
    }
}

fn bound_str(b: &Bound) -> String {
    match b {
        Bound::NegInf => "-inf".into(),
        Bound::PosInf => "inf".into(),
        Bound::Finite(x) => x.to_string(),
    }
}

pub fn roots(coeffs: &str, range: Option<&str>) -> Result<Output, CliError> {
    let cs = coeffs
        .split(',')
        .map(|c| parse_rational(c.trim()).ok_or_else(|| CliError::Usage(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let p = Polynomial::new(cs);
    let (a, b) = match range {
        None => (Bound::NegInf, Bound::PosInf),
        Some(r) => {
            let (a, b) = r.split_once(',').ok_or_else(|| CliError::Usage("--range needs a,b".into()))?;
            (parse_bound(a)?, parse_bound(b)?)
        }
    };
    let found = isolate_and_refine(&p, &a, &b, ROOT_WIDTH)?;
    let mut t = Table::new("roots", &["root", "lo", "hi", "certified", "exact"]);
    let list: Vec<Value> = found
        .iter()
        .map(|r| {
            t.push(vec![fmt_f64(r.root), r.lo.to_string(), r.hi.to_string(), r.certified.to_string(), r.exact.to_string()]);
            json!({
                "root": num(r.root),
                "lo": r.lo.to_string(),
                "hi": r.hi.to_string(),
                "certified": r.certified,
                "exact": r.exact,
            })
        })
        .collect();
    let results = json!({
        "polynomial": p.display("x").to_string(),
        "degree": p.degree(),
        "range": [bound_str(&a), bound_str(&b)],
        "count": list.len(),
        "roots": list,
    });
    Ok(Output { results, tables: vec![t] })
}

/// Every classification table: sphere, Clifford, type 3, type 4 (Takagi) and type 6.
pub fn report_all(takagi_max: usize) -> Result<Output, CliError> {
    let mut sphere = Table::new("sphere", &["m", "a", "a_sq", "shape_norm_sq", "certified"]);
    for m in 3..=12 {
        let s = sphere_link_solver(m).ok_or_else(|| CliError::Numerical(format!("no sphere link for m = {m}")))?;
        sphere.push(vec![
            m.to_string(),
            fmt_f64(s.a),
            s.a_sq.to_string(),
            fmt_f64(s.shape_norm_sq.to_f64().unwrap_or(f64::NAN)),
            s.certified.to_string(),
        ]);
    }

    let mut clifford = Table::new("clifford", &CLIFFORD_HEADER);
    for m in 4..=12 {
        for m1 in 1..m {
            match clifford_link_solver(m, m1) {
                Ok(sol) => {
                    for r in sol.roots.iter().filter(|r| r.valid && !r.minimal) {
                        clifford.push(clifford_row(m, m1, r));
                    }
                }
                Err(HyperconeError::NoSolution { .. }) => {}
                Err(e) => return Err(e.into()),
            }
        }
    }

    let mut type3 = Table::new("type3", &TYPE_HEADER);
    let mut type3_counts = Vec::new();
    for q in 0..=3 {
        let c = classify_type(&IsoparametricSpec::type3(q)?)?;
        type_rows(&c, true, &mut type3);
        type3_counts.push(json!({"q": q, "roots": c.solutions.len(), "proper": c.proper().count()}));
    }

    let mut type4 = Table::new("type4", &TAKAGI_HEADER);
    let mut takagi_counts = Vec::new();
    for n in (5..=takagi_max).step_by(2) {
        let sol = takagi_solver(n)?;
        takagi_rows(&sol, &mut type4)?;
        takagi_counts.push(json!({"n": n, "roots": sol.roots.len(), "discriminant": sol.discriminant}));
    }
    let mut type4_checks = Vec::new();
    for (m1, m2) in [(2, 2), (4, 5)] {
        let c = classify_type(&IsoparametricSpec::type4(m1, m2)?)?;
        type4_checks.push(json!({"m1": m1, "m2": m2, "roots": c.solutions.len(), "proper": c.proper().count()}));
    }

    let mut type6 = Table::new("type6", &TYPE_HEADER);
    let mut type6_counts = Vec::new();
    for mult in [1, 2] {
        let c = classify_type(&IsoparametricSpec::type6(mult)?)?;
        type_rows(&c, true, &mut type6);
        type6_counts.push(json!({"multiplicity": mult, "roots": c.solutions.len(), "proper": c.proper().count()}));
    }

    let tables = vec![sphere, clifford, type3, type4, type6];
    let rows: Map<String, Value> =
        tables.iter().map(|t| (t.name.clone(), json!(t.rows.len()))).collect();
    let table_json: Map<String, Value> = tables
        .iter()
        .map(|t| {
            let rows: Vec<Value> = t
                .rows
                .iter()
                .map(|r| Value::Object(t.header.iter().cloned().zip(r.iter().map(|c| json!(c))).collect()))
                .collect();
            (t.name.clone(), Value::Array(rows))
        })
        .collect();
    let results = json!({
        "row_counts": rows,
        "tables": table_json,
        "type3_roots": type3_counts,
        "type4_takagi": takagi_counts,
        "type4_multiplicities": type4_checks,
        "type6_roots": type6_counts,
        "takagi_max": takagi_max,
    });
    Ok(Output { results, tables })
}
