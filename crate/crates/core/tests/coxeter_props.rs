use std::sync::Arc;

use ncpfiber_core::{GroupElement, GroupFamily, ReflectionGroup};
use proptest::prelude::*;

fn group(spec: &str) -> Arc<ReflectionGroup> {
    Arc::new(ReflectionGroup::new(spec.parse().unwrap()).unwrap())
}

/// Reflection length in type A is `(n + 1) − #cycles`, counting fixed points.
fn cycle_formula(e: &GroupElement) -> usize {
    let GroupElement::Perm(p) = e else { panic!("not a permutation") };
    let mut seen = vec![false; p.len()];
    let mut cycles = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
        }
    }
    p.len() - cycles
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn group_orders() {
    assert_eq!(group("A3").order(), factorial(4));
    assert_eq!(group("A4").order(), factorial(5));
    assert_eq!(group("B3").order(), 8 * factorial(3));
    assert_eq!(group("D4").order(), 8 * factorial(4));
    assert_eq!(group("I2_7").order(), 14);
}

#[test]
fn type_a_length_matches_cycle_count() {
    for spec in ["A2", "A3", "A4"] {
        let g = group(spec);
        for id in 0..g.order() {
            assert_eq!(g.reflection_length(id), cycle_formula(g.element(id)), "{}", g.repr(id));
        }
    }
}

#[test]
fn reflection_counts() {
    for (spec, count) in [("A3", 6), ("A4", 10), ("B3", 9), ("D4", 12), ("I2_9", 9)] {
        let g = group(spec);
        assert_eq!(g.reflections().len(), count);
        let fam: GroupFamily = spec.parse().unwrap();
        assert_eq!(fam.reflection_count(), count);
    }
}

#[test]
fn coxeter_numbers() {
    for (spec, h) in [("A3", 4), ("A4", 5), ("B3", 6), ("D4", 6), ("I2_8", 8)] {
        let g = group(spec);
        assert_eq!(g.element_order(g.gamma()), h, "{spec}");
        assert!(g.is_coxeter_element(g.gamma()));
        assert_eq!(g.reflection_length(g.gamma()), g.rank());
    }
}

#[test]
fn absolute_order_is_a_partial_order() {
    for spec in ["A3", "B3"] {
        let g = group(spec);
        let ids: Vec<usize> = (0..g.order()).step_by(3).collect();
        for &u in &ids {
            assert!(g.absolute_leq(u, u));
            for &v in &ids {
                if u != v && g.absolute_leq(u, v) {
                    assert!(!g.absolute_leq(v, u));
                }
                for &w in &ids {
                    if g.absolute_leq(u, v) && g.absolute_leq(v, w) {
                        assert!(g.absolute_leq(u, w));
                    }
                }
            }
        }
    }
}

#[test]
fn out_of_range_ranks_are_rejected() {
    for spec in ["A0", "A12", "B1", "D3", "I2_2", "I2_1001", "E6", "A"] {
        assert!(spec.parse::<GroupFamily>().and_then(ReflectionGroup::new).is_err(), "{spec}");
    }
}

#[test]
fn mixed_family_composition_fails() {
    let a = GroupElement::perm_identity(3);
    let b = GroupElement::signed_identity(2);
    assert!(a.compose(&b).is_err());
}

fn arb_pair(order: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..order, 0..order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn determinant_is_multiplicative((u, v) in arb_pair(48)) {
        let g = group("B3");
        let uv = g.mul(u, v);
        prop_assert_eq!(g.determinant_sign(uv), g.determinant_sign(u) * g.determinant_sign(v));
    }

    #[test]
    fn parity_of_length_is_determinant((u, _) in arb_pair(192)) {
        let g = group("D4");
        let expected = if g.reflection_length(u).is_multiple_of(2) { 1 } else { -1 };
        prop_assert_eq!(g.determinant_sign(u), expected);
    }

    #[test]
    fn length_is_conjugation_invariant((u, v) in arb_pair(120)) {
        let g = group("A4");
        let conj = g.mul(g.mul(v, u), g.inv(v));
        prop_assert_eq!(g.reflection_length(conj), g.reflection_length(u));
    }

    #[test]
    fn length_is_subadditive((u, v) in arb_pair(48)) {
        let g = group("B3");
        prop_assert!(g.reflection_length(g.mul(u, v)) <= g.reflection_length(u) + g.reflection_length(v));
        prop_assert_eq!(g.reflection_length(g.inv(u)), g.reflection_length(u));
    }

    #[test]
    fn dihedral_table_matches_affine_action((u, v) in arb_pair(22)) {
        // rot_a = x ↦ x + a, ref_a = x ↦ a − x on Z/m.
        let g = group("I2_11");
        let act = |e: &GroupElement, x: i64| match e {
            GroupElement::Dihedral { m, reflection, index } => {
                let (m, i) = (*m as i64, *index as i64);
                if *reflection { (i - x).rem_euclid(m) } else { (i + x).rem_euclid(m) }
            }
            _ => unreachable!(),
        };
        for x in 0..11 {
            let composed = act(g.element(g.mul(u, v)), x);
            prop_assert_eq!(composed, act(g.element(u), act(g.element(v), x)));
        }
    }
}
