use civar_core::algebra::{GradedRing, Poly, RingRef};
use civar_core::complex::{koszul_complex, mapping_cone, ChainMap};
use proptest::prelude::*;
use std::sync::Arc;

fn quotient() -> RingRef {
    let q = GradedRing::polynomial(32003, &["x", "y", "z"]).unwrap();
    let f = vec![q.parse("x^2").unwrap(), q.parse("y*z").unwrap()];
    Arc::new(q.with_relations(f).unwrap())
}

fn poly() -> impl Strategy<Value = String> {
    let term = (any::<bool>(), 0u64..10, 0u32..3, 0u32..3, 0u32..3)
        .prop_map(|(neg, c, a, b, d)| format!("{} {c}*x^{a}*y^{b}*z^{d}", if neg { "-" } else { "+" }));
    prop::collection::vec(term, 1..5).prop_map(|t| t.concat())
}

proptest! {
    #[test]
    fn printing_reparses(s in poly()) {
        let r = quotient();
        let f = r.parse(&s).unwrap();
        prop_assert_eq!(r.parse(&r.fmt_poly(&f)).unwrap(), f);
    }

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        let r = quotient();
        let (a, b, c) = (r.parse(&a).unwrap(), r.parse(&b).unwrap(), r.parse(&c).unwrap());
        prop_assert_eq!(r.mul(&a, &b), r.mul(&b, &a));
        prop_assert_eq!(r.mul(&a, &r.add(&b, &c)), r.add(&r.mul(&a, &b), &r.mul(&a, &c)));
        prop_assert_eq!(r.mul(&r.mul(&a, &b), &c), r.mul(&a, &r.mul(&b, &c)));
        prop_assert!(r.sub(&a, &a).is_zero());
    }

    #[test]
    fn reduction_is_idempotent(a in poly()) {
        let r = quotient();
        let f = r.reduce(&r.parse(&a).unwrap());
        prop_assert_eq!(r.reduce(&f), f);
    }

    #[test]
    fn koszul_shifts_and_scaled_identity_cones(mask in 1u8..8, i in -3i32..4, c in 1i64..5) {
        let r = quotient();
        let vars: Vec<Poly> = r.vars().into_iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, v)| v).collect();
        let k = koszul_complex(&r, &vars).unwrap().shift(i);
        prop_assert!(k.check().is_ok());
        let cone = mapping_cone(&ChainMap::identity(&k).scaled(c)).unwrap();
        prop_assert!(cone.check().is_ok());
        prop_assert!(civar_core::complex::complex_support(&cone).is_empty());
    }
}
