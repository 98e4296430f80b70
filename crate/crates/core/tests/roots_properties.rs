use gausslab::roots::{
    count_real_roots_in, count_real_roots_with, isolate_and_refine, Bound, Polynomial, SturmScaling, DEFAULT_WIDTH,
};
use proptest::prelude::*;

/// Random integer polynomial of degree <= 12 with a few planted integer roots.
fn polynomial() -> impl Strategy<Value = Polynomial> {
    (prop::collection::vec(-6i64..=6, 0..4), prop::collection::vec(-20i64..=20, 1..9)).prop_filter_map(
        "nonzero",
        |(roots, rest)| {
            let mut p = Polynomial::from_i64(&rest);
            for r in roots {
                p = &p * &Polynomial::from_i64(&[-r, 1]);
            }
            (!p.is_zero()).then_some(p)
        },
    )
}

fn interval() -> impl Strategy<Value = (Bound, Bound)> {
    prop_oneof![
        Just((Bound::NegInf, Bound::PosInf)),
        (-8i64..0, 1i64..8).prop_map(|(a, b)| (Bound::int(a), Bound::int(b))),
        (-8i64..8).prop_map(|a| (Bound::ratio(2 * a + 1, 2), Bound::PosInf)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn count_matches_isolation((p, (a, b)) in (polynomial(), interval())) {
        let n = count_real_roots_in(&p, &a, &b).unwrap();
        let roots = isolate_and_refine(&p, &a, &b, DEFAULT_WIDTH).unwrap();
        prop_assert_eq!(n, roots.len());
        let deg = p.degree().unwrap() as i32;
        for r in &roots {
            prop_assert!(r.certified);
            prop_assert!(r.width() <= DEFAULT_WIDTH);
            let bound = 1e-9 * p.l1_norm() * r.root.abs().max(1.0).powi(deg);
            prop_assert!(p.eval_f64(r.root).abs() <= bound, "p({}) = {}", r.root, p.eval_f64(r.root));
        }
        for w in roots.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn scaling_does_not_change_counts((p, (a, b)) in (polynomial(), interval())) {
        let exact = count_real_roots_with(&p, &a, &b, SturmScaling::Exact).unwrap();
        let prim = count_real_roots_with(&p, &a, &b, SturmScaling::Primitive).unwrap();
        prop_assert_eq!(exact, prim);
    }
}
