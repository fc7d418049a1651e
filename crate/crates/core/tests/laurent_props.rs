use proptest::prelude::*;

use khevo::laurent::{
    change_of_variable, BivariateLaurent, RationalScalar, Substituted, UnivariateLaurent, Variable, VariableChange,
};

fn scalar() -> impl Strategy<Value = RationalScalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| RationalScalar::new(n, d))
}

fn nonzero_scalar() -> impl Strategy<Value = RationalScalar> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| RationalScalar::new(n, d))
}

fn bivariate() -> impl Strategy<Value = BivariateLaurent> {
    prop::collection::vec((-4i32..=4, -3i32..=3, scalar()), 0..6).prop_map(BivariateLaurent::from_terms)
}

fn nonzero_bivariate() -> impl Strategy<Value = BivariateLaurent> {
    bivariate().prop_filter("nonzero", |p| !p.is_zero())
}

fn even_q_poly() -> impl Strategy<Value = UnivariateLaurent> {
    prop::collection::vec((-4i32..=4, scalar()), 0..6)
        .prop_map(|ts| UnivariateLaurent::from_terms(Variable::Q, ts.into_iter().map(|(k, c)| (2 * k, c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(p in bivariate(), r in bivariate(), s in bivariate()) {
        prop_assert_eq!(&p + &r, &r + &p);
        prop_assert_eq!(&p * &r, &r * &p);
        prop_assert_eq!(&(&p + &r) + &s, &p + &(&r + &s));
        prop_assert_eq!(&(&p * &r) * &s, &p * &(&r * &s));
        prop_assert_eq!(&p * &(&r + &s), &(&p * &r) + &(&p * &s));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn canonical_form(p in bivariate()) {
        prop_assert!(p.terms().all(|(_, _, c)| !c.is_zero()));
        let keys: Vec<_> = p.terms().map(|(q, t, _)| (q, t)).collect();
        prop_assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn exact_div_inverts_mul(p in bivariate(), d in nonzero_bivariate()) {
        let product = &p * &d;
        prop_assert_eq!(product.exact_div(&d).unwrap(), p);
    }

    #[test]
    fn eval_is_a_ring_homomorphism(p in bivariate(), r in bivariate(), q0 in nonzero_scalar(), t0 in nonzero_scalar()) {
        let lhs = (&p * &r).eval(&q0, &t0).unwrap();
        let rhs = &p.eval(&q0, &t0).unwrap() * &r.eval(&q0, &t0).unwrap();
        prop_assert_eq!(lhs, rhs);
        let sum = (&p + &r).eval(&q0, &t0).unwrap();
        prop_assert_eq!(sum, &p.eval(&q0, &t0).unwrap() + &r.eval(&q0, &t0).unwrap());
    }

    #[test]
    fn display_parse_round_trip(p in bivariate()) {
        let back: BivariateLaurent = p.to_string().parse().unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn json_round_trip(p in bivariate()) {
        let text = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<BivariateLaurent>(&text).unwrap(), p);
    }

    #[test]
    fn neg_q_squared_then_t_minus_one_is_identity(p in even_q_poly()) {
        let Substituted::Univariate(x) = change_of_variable(&p, VariableChange::QToNegQSquared).unwrap() else {
            panic!("expected a polynomial in x");
        };
        prop_assert_eq!(x.variable(), Variable::X);
        prop_assert_eq!(x.expand_as_neg_q_squared(), p.clone());
        let Substituted::Bivariate(b) = change_of_variable(&x, VariableChange::XToTQSquared).unwrap() else {
            panic!("expected a polynomial in q and t");
        };
        // x = t q^2 at t = -1 is x = -q^2 again
        prop_assert_eq!(b.limit_jones(), p);
    }
}

#[test]
fn odd_power_is_rejected() {
    let p = UnivariateLaurent::parse(Variable::Q, "q^3").unwrap();
    assert!(change_of_variable(&p, VariableChange::QToNegQSquared).is_err());
}
