mod common;

use proptest::prelude::*;

use common::{nonzero, oracle_cf, oracle_tree, rational_tree, standard_vector, vec_of, Q};
use tanglekit::cf;
use tanglekit::tangle::{self, CanonicalTangle, StandardFormTangle, TangleExpr};
use tanglekit::Fraction;

fn unit() -> impl Strategy<Value = i64> {
    prop_oneof![Just(1i64), Just(-1i64)]
}

fn frac(x: Q) -> Fraction {
    x.to_fraction()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_trees_match_oracle(t in rational_tree()) {
        prop_assert!(tangle::is_rational(&t));
        let expected = oracle_tree(&t).expect("rational operations stay defined");
        prop_assert_eq!(tangle::fraction_of(&t).unwrap(), frac(expected));
    }

    #[test]
    fn flypes_preserve_fraction(
        t in rational_tree(),
        e in unit(),
        left in any::<bool>(),
        product in any::<bool>(),
    ) {
        let one = TangleExpr::int(e);
        let site = match (product, left) {
            (false, true) => TangleExpr::sum(one, t),
            (false, false) => TangleExpr::sum(t, one),
            (true, true) => TangleExpr::prod(one, t),
            (true, false) => TangleExpr::prod(t, one),
        };
        let flyped = tangle::flype_step(&site).unwrap();
        prop_assert_eq!(tangle::fraction_of(&flyped), tangle::fraction_of(&site));
        prop_assert_eq!(tangle::flype_step(&flyped).unwrap(), site);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn vertical_twist_identities(t in rational_tree(), n in nonzero(9)) {
        let f = oracle_tree(&t).unwrap();
        let n = n as i128;
        let below = TangleExpr::prod(t.clone(), TangleExpr::vertical(n as i64));
        let above = TangleExpr::prod(TangleExpr::vertical(n as i64), t);
        // 1/(n + 1/F) and 1/(1/F + n)
        let expected = Q::int(n).add(f.recip()).unwrap().recip();
        prop_assert_eq!(tangle::fraction_of(&below).unwrap(), frac(expected));
        let expected = f.recip().add(Q::int(n)).unwrap().recip();
        prop_assert_eq!(tangle::fraction_of(&above).unwrap(), frac(expected));
    }

    #[test]
    fn elementary_operation_identities(t in rational_tree(), e in unit()) {
        let f = tangle::fraction_of(&t).unwrap();
        let e_frac = Fraction::integer(e);
        let plus = TangleExpr::sum(t.clone(), TangleExpr::int(e));
        prop_assert_eq!(tangle::fraction_of(&plus).unwrap(), f.add(&e_frac).unwrap());
        prop_assert_eq!(tangle::fraction_of(&t.clone().invert()).unwrap(), f.reciprocal());
        prop_assert_eq!(tangle::fraction_of(&t.clone().mirror()).unwrap(), f.negate());
        prop_assert_eq!(tangle::fraction_of(&t.clone().rotate().rotate()).unwrap(), f.clone());
        let times = TangleExpr::prod(t, TangleExpr::int(e));
        prop_assert_eq!(tangle::fraction_of(&times).unwrap(), f.star(&e_frac).unwrap());
    }

    #[test]
    fn canonical_routes_agree(t in rational_tree()) {
        let by_fraction = tangle::canonical_form(&t).unwrap();
        let by_rewrite = tangle::canonical_form_by_rewrite(&t).unwrap();
        prop_assert_eq!(&by_fraction, &by_rewrite);
        prop_assert_eq!(by_fraction.fraction(), tangle::fraction_of(&t).unwrap());
        if let CanonicalTangle::Vector(v) = &by_fraction {
            prop_assert!(v.is_canonical());
        }
    }

    #[test]
    fn standard_form_keeps_fraction(t in rational_tree()) {
        let f = tangle::fraction_of(&t).unwrap();
        match tangle::to_standard_form(&t) {
            Ok(s) => {
                let v = tangle::standard_to_cf(&s);
                prop_assert_eq!(cf::eval_cf(&v), f.clone());
                prop_assert_eq!(tangle::fraction_of(&s.to_expr()).unwrap(), f);
                prop_assert!(v.len() % 2 == 1);
            }
            Err(e) => {
                prop_assert_eq!(e, tanglekit::Error::InfiniteTangle);
                prop_assert!(f.is_infinite());
            }
        }
    }

    #[test]
    fn absorbing_twists_keeps_fraction(t in rational_tree()) {
        let absorbed = tangle::twist_absorb(&t);
        prop_assert_eq!(tangle::fraction_of(&absorbed), tangle::fraction_of(&t));
        prop_assert!(tangle::is_rational(&absorbed));
    }

    #[test]
    fn truncations_unwind_the_vector(terms in standard_vector(9, 9)) {
        let s = StandardFormTangle::new(vec_of(&terms)).unwrap();
        let cores = tangle::truncations(&s);
        prop_assert_eq!(cores.len(), terms.len());
        let n = terms.len();
        for (k, core) in cores.iter().enumerate() {
            // core k is [a(n-k), .., an]
            prop_assert_eq!(core, &vec_of(&terms[n - 1 - k..]));
            prop_assert_eq!(cf::eval_cf(core), frac(oracle_cf(&terms[n - 1 - k..])));
        }
        prop_assert_eq!(cores.last().unwrap(), s.vector());
    }

    #[test]
    fn standard_expression_evaluates_to_vector(terms in standard_vector(9, 9)) {
        let s = StandardFormTangle::new(vec_of(&terms)).unwrap();
        prop_assert_eq!(tangle::fraction_of(&s.to_expr()).unwrap(), frac(oracle_cf(&terms)));
        let cf_tree = TangleExpr::from_cf(s.vector());
        prop_assert_eq!(tangle::fraction_of(&cf_tree).unwrap(), frac(oracle_cf(&terms)));
    }
}

#[test]
fn sums_of_two_verticals_are_not_rational() {
    for (a, b) in [(2, 3), (-2, 5), (3, 3)] {
        let t = TangleExpr::sum(TangleExpr::vertical(a), TangleExpr::vertical(b));
        assert!(!tangle::is_rational(&t));
        assert_eq!(
            tangle::canonical_form(&t),
            Err(tanglekit::Error::NotRational)
        );
    }
}
