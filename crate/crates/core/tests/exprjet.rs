use gausslab::exprjet::{eval_jet, parse_expression, EvalContext, JetError, ParseError, MAX_ORDER};

fn vars(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[test]
fn polynomial_jet_is_exact() {
    let v = vars(&["x", "y"]);
    let e = parse_expression("x^3*y - 2*x*y^2 + 5", 2, &v).unwrap();
    let jet = eval_jet(&e, &EvalContext::new(&[2.0, -1.0], MAX_ORDER).unwrap()).unwrap();
    assert_eq!(jet.value(), -8.0 - 4.0 + 5.0);
    assert_eq!(jet.d(0), -(3.0 * 4.0) - 2.0 * 1.0);
    assert_eq!(jet.d(1), 8.0 - -(2.0 * 2.0 * 2.0));
    assert_eq!(jet.partial(&[3, 1]).unwrap(), 6.0);
    assert_eq!(jet.partial(&[2, 2]).unwrap(), 0.0);
}

#[test]
fn unary_minus_binds_tighter_than_power() {
    let v = vars(&["u"]);
    assert_eq!(parse_expression("-u^2", 1, &v).unwrap().eval(&[3.0]), 9.0);
    assert_eq!(parse_expression("-(u^2)", 1, &v).unwrap().eval(&[3.0]), -9.0);
    assert_eq!(parse_expression("0 - u^2", 1, &v).unwrap().eval(&[3.0]), -9.0);
}

#[test]
fn transcendental_derivatives() {
    let v = vars(&["t"]);
    let e = parse_expression("exp(sin(t))", 1, &v).unwrap();
    let t: f64 = 0.4;
    let jet = eval_jet(&e, &EvalContext::new(&[t], 2).unwrap()).unwrap();
    let f = t.sin().exp();
    assert!((jet.d(0) - t.cos() * f).abs() < 1e-14);
    let second = (t.cos().powi(2) - t.sin()) * f;
    assert!((jet.partial(&[2]).unwrap() - second).abs() < 1e-14);
}

#[test]
fn parse_errors_carry_offsets() {
    let v = vars(&["x"]);
    assert_eq!(parse_expression("  ", 1, &v), Err(ParseError::Empty));
    let e = parse_expression("x + z", 1, &v).unwrap_err();
    assert!(matches!(e, ParseError::UnknownIdentifier { ref name, offset: 4 } if name == "z"));
    assert!(matches!(parse_expression("x^x", 1, &v), Err(ParseError::NonConstantExponent { .. })));
    assert!(parse_expression("sin(x", 1, &v).unwrap_err().offset().is_some());
}

#[test]
fn domain_errors_are_reported() {
    let v = vars(&["x"]);
    let e = parse_expression("log(x)", 1, &v).unwrap();
    let err = eval_jet(&e, &EvalContext::new(&[-1.0], 1).unwrap()).unwrap_err();
    assert!(matches!(err, JetError::Domain { func: "log", .. }));
}
