use proptest::prelude::*;
use wusq_core::poly::ParamPoly;
use wusq_core::steenrod::{complete_table, sq_monomial, sq_monomial_naive, Reduction};
use wusq_core::{Analysis, AnalysisOptions};

fn param_poly() -> impl Strategy<Value = ParamPoly> {
    // Masks over 6 parameters; bit i set means parameter i appears.
    prop::collection::vec(0u64..64, 0..6).prop_map(ParamPoly::from_masks)
}

proptest! {
    #[test]
    fn boolean_ring_laws(a in param_poly(), b in param_poly(), c in param_poly(), x in 0u64..64) {
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&a), a.clone());
        prop_assert!(a.add(&a).is_zero());
        prop_assert_eq!(a.mul(&b).eval(x), a.eval(x) && b.eval(x));
        prop_assert_eq!(a.add(&b).eval(x), a.eval(x) ^ b.eval(x));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evi_monomial_squares_match_expansion(exps in prop::collection::vec(0u32..3, 5), n in 0u32..=8) {
        let e = wusq_core::corpus::builtin("EVI").unwrap();
        let a = Analysis::new(&e.presentation, &AnalysisOptions::default()).unwrap();
        let t = complete_table(a.ring(), Reduction::Free).unwrap();
        let m = a.presentation().monomial(exps);
        prop_assert_eq!(sq_monomial(&t, &m, n), sq_monomial_naive(&t, &m, n));
    }
}
