//! Property tests for the operator algebra: antisymmetry, the Jacobi
//! identity, Leibniz, grading, and normal-form idempotence over randomly
//! generated expressions.

use ncps_core::weyl::{Generator, OperatorExpr, ScalarCoeff};
use proptest::prelude::*;

fn arb_generator() -> impl Strategy<Value = Generator> {
    (0u8..6, 1u32..=2, 1u8..=3).prop_map(|(kind, particle, axis)| match kind {
        0 => Generator::coord(particle, axis),
        1 => Generator::momentum(particle, axis),
        2 => Generator::aux_a_coord(axis),
        3 => Generator::aux_a_momentum(axis),
        4 => Generator::aux_b_coord(axis),
        5 => Generator::aux_b_momentum(axis),
        _ => unreachable!(),
    })
}

fn arb_scalar() -> impl Strategy<Value = ScalarCoeff> {
    (-3i64..=3, 1i64..=3, any::<bool>()).prop_map(|(p, q, imaginary)| {
        let r = ScalarCoeff::rational(if p == 0 { 1 } else { p }, q);
        if imaginary {
            r.mul(&ScalarCoeff::i())
        } else {
            r
        }
    })
}

prop_compose! {
    fn arb_term()(coeff in arb_scalar(), word in prop::collection::vec(arb_generator(), 0..=2))
        -> OperatorExpr
    {
        OperatorExpr::term(coeff, &word)
    }
}

fn arb_expr() -> impl Strategy<Value = OperatorExpr> {
    prop::collection::vec(arb_term(), 1..=3)
        .prop_map(|terms| terms.iter().fold(OperatorExpr::zero(), |acc, t| acc.add(t)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn commutator_is_antisymmetric(a in arb_expr(), b in arb_expr()) {
        let ab = a.commutator(&b).unwrap();
        let ba = b.commutator(&a).unwrap();
        prop_assert!(ab.equals(&ba.neg()));
    }

    #[test]
    fn jacobi_identity_holds(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        let t1 = a.commutator(&b).unwrap().commutator(&c).unwrap();
        let t2 = b.commutator(&c).unwrap().commutator(&a).unwrap();
        let t3 = c.commutator(&a).unwrap().commutator(&b).unwrap();
        prop_assert!(t1.add(&t2).add(&t3).is_zero());
    }

    #[test]
    fn leibniz_rule_holds(a in arb_expr(), b in arb_expr(), c in arb_expr()) {
        let lhs = a.multiply(&b).unwrap().commutator(&c).unwrap();
        let rhs = a
            .multiply(&b.commutator(&c).unwrap())
            .unwrap()
            .add(&a.commutator(&c).unwrap().multiply(&b).unwrap());
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn commutator_grading(a in arb_expr(), b in arb_expr()) {
        let d = a.degree() + b.degree();
        let cap = d.saturating_sub(2);
        let comm = a.commutator(&b).unwrap();
        for (word, _) in comm.terms() {
            prop_assert!(
                word.len() <= cap || word.is_empty(),
                "term degree {} exceeds {} for inputs of degrees {}, {}",
                word.len(), cap, a.degree(), b.degree()
            );
        }
    }

    #[test]
    fn normal_forms_are_fixed_points(a in arb_expr(), b in arb_expr()) {
        let prod = a.multiply(&b).unwrap();
        prop_assert_eq!(prod.renormalized().to_text(), prod.to_text());
        let sum = a.add(&b);
        prop_assert_eq!(sum.renormalized().to_text(), sum.to_text());
    }

    #[test]
    fn substitution_distributes_over_products(a in arb_expr(), b in arb_expr()) {
        use ncps_core::weyl::Symbol;
        use std::collections::BTreeMap;
        let mut bindings = BTreeMap::new();
        bindings.insert(
            Symbol::CTheta(1),
            ScalarCoeff::gamma_tilde().div(&ScalarCoeff::mass(1)).unwrap(),
        );
        bindings.insert(Symbol::CEta(2), ScalarCoeff::rational(3, 7));
        let prod_then_sub = a
            .multiply(&b)
            .unwrap()
            .substitute_scalars(&bindings)
            .unwrap();
        let sub_then_prod = a
            .substitute_scalars(&bindings)
            .unwrap()
            .multiply(&b.substitute_scalars(&bindings).unwrap())
            .unwrap();
        prop_assert!(prod_then_sub.equals(&sub_then_prod));
    }
}
