//! Property tests over generated polynomials.

use proptest::prelude::*;

use pencil_lab::arith::field::{q_frac, qzero};
use pencil_lab::arith::resultant::{resultant_y, resultant_y_sylvester};
use pencil_lab::arith::{BPoly, Q};
use pencil_lab::corpus::{oracle_local_dimension, LocalDim};
use pencil_lab::intersect::{fulton, Mult};
use pencil_lab::io::{parse_polynomial, unparse};

fn bpoly(max_deg: usize, min_deg: usize) -> impl Strategy<Value = BPoly<Q>> {
    prop::collection::vec((0..=max_deg, 0..=max_deg, -9i64..=9, 1i64..=4), 1..7).prop_map(move |ts| {
        let terms: Vec<_> = ts
            .into_iter()
            .filter(|&(i, j, _, _)| i + j <= max_deg && i + j >= min_deg)
            .map(|(i, j, n, d)| (i, j, q_frac(n, d)))
            .collect();
        BPoly::from_terms(&terms, &())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn parse_unparse_round_trip(f in bpoly(6, 0)) {
        let text = unparse(&f, ["X", "Y"]);
        prop_assert_eq!(parse_polynomial(&text, ["X", "Y"]).unwrap(), f.clone());
        let renamed = unparse(&f, ["s", "t"]);
        prop_assert_eq!(parse_polynomial(&renamed, ["s", "t"]).unwrap(), f);
    }

    #[test]
    fn resultant_methods_agree(g in bpoly(3, 0), h in bpoly(3, 0)) {
        prop_assume!(g.deg_y() > 0 && h.deg_y() > 0);
        prop_assert_eq!(resultant_y_sylvester(&g, &h), resultant_y(&g, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn fulton_matches_local_quotient(g in bpoly(3, 1), h in bpoly(3, 1)) {
        prop_assume!(!g.is_zero() && !h.is_zero());
        let m = fulton(&g, &h).unwrap();
        let d = oracle_local_dimension(&g, &h, &qzero(), &qzero(), 12).unwrap();
        match (m, d) {
            (Mult::Finite(a), LocalDim::Finite(b)) => prop_assert_eq!(a, b),
            (Mult::Infinite, LocalDim::ExceedsCap) => {}
            other => prop_assert!(false, "{:?}", other),
        }
    }

    #[test]
    fn fulton_is_translation_invariant(g in bpoly(3, 1), h in bpoly(3, 1), u in -3i64..=3, v in -3i64..=3) {
        prop_assume!(!g.is_zero() && !h.is_zero());
        let (u, v) = (q_frac(u, 2), q_frac(v, 1));
        let back = |p: &BPoly<Q>| p.translate(&-u.clone(), &-v.clone());
        // Moving the point back to the origin recovers the original germs.
        prop_assert_eq!(back(&g).translate(&u, &v), g.clone());
        let d = oracle_local_dimension(&back(&g), &back(&h), &u, &v, 12).unwrap();
        let m = fulton(&g, &h).unwrap();
        prop_assert_eq!(m.finite(), match d { LocalDim::Finite(x) => Some(x), LocalDim::ExceedsCap => None });
    }
}
