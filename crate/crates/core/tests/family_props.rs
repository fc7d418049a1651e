use num_rational::Rational64;
use proptest::prelude::*;

use khevo::bracket::jones_unreduced;
use khevo::diagram::{double_braid, FamilyPoint};
use khevo::evolution::{classify, khovanov_evolution, Chamber};
use khevo::khovanov::khovanov_poincare;

fn point(max_a: i32, max_k: i32) -> impl Strategy<Value = FamilyPoint> {
    (-max_a..=max_a, -max_k..max_k).prop_map(|(a, k)| FamilyPoint::new(a, 2 * k + 1).unwrap())
}

proptest! {
    #[test]
    fn components_follow_parity_of_a(pt in point(8, 5)) {
        let d = double_braid(pt);
        prop_assert_eq!(d.components(), if pt.a() % 2 == 0 { 1 } else { 2 });
    }

    #[test]
    fn linking_number_is_half_the_writhe(pt in point(8, 5)) {
        let d = double_braid(pt);
        prop_assert_eq!(d.writhe(), pt.b() - pt.a());
        if pt.a() % 2 != 0 {
            prop_assert_eq!(d.linking_number().unwrap(), Rational64::new((pt.b() - pt.a()) as i64, 2));
        } else {
            prop_assert!(d.linking_number().is_err());
        }
    }

    #[test]
    fn arc_bookkeeping(pt in point(8, 5)) {
        let d = double_braid(pt);
        let mut seen = vec![0usize; d.arc_count()];
        for c in d.crossings() {
            for a in c.arcs {
                seen[a] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&n| n == 2));
        prop_assert_eq!(d.n_pos() + d.n_neg(), d.crossing_count());
        prop_assert_eq!(d.crossing_count(), (pt.a().unsigned_abs() + pt.b().unsigned_abs()) as usize);
        prop_assert_eq!(d.euler_characteristic(), 2);
    }

    #[test]
    fn mirror_negates_parameters(pt in point(8, 5)) {
        let neg = FamilyPoint::new(-pt.a(), -pt.b()).unwrap();
        let m = double_braid(pt).mirror();
        prop_assert_eq!(m.n_pos(), double_braid(pt).n_neg());
        prop_assert_eq!(m.canonicalize(), double_braid(neg).canonicalize());
    }

    /// The template diagram alternates exactly when the two twist regions
    /// do not have opposite crossing signs.
    #[test]
    fn alternation_iff_ab_nonpositive(pt in point(8, 5)) {
        prop_assert_eq!(double_braid(pt).is_alternating(), pt.a() * pt.b() <= 0);
    }

    #[test]
    fn classification_is_total(pt in point(30, 30)) {
        let c = classify(pt);
        prop_assert_eq!(c == Chamber::IsolatedPoint, matches!((pt.a(), pt.b()), (1, 1) | (-1, -1)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn evolution_matches_homology(pt in point(5, 3)) {
        prop_assume!(classify(pt) != Chamber::IsolatedPoint);
        let d = double_braid(pt);
        let kh = khovanov_poincare(&d).unwrap();
        prop_assert_eq!(khovanov_evolution(pt).unwrap(), kh.clone());
        prop_assert_eq!(kh.limit_jones(), jones_unreduced(&d).unwrap());
    }
}
