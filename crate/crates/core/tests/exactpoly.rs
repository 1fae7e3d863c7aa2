use proptest::prelude::*;

use coha::exactpoly::{parse_poly, rat, Monomial, Poly, SlotPermutation, VarId};

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
        Poly::from_terms(terms.into_iter().map(|((a, b, c), k)| {
            let m = Monomial::from_exponents([
                (VarId::new(0, 1), a),
                (VarId::new(0, 2), b),
                (VarId::new(1, 1), c),
            ]);
            (m, rat(k))
        }))
    })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(&a * &Poly::one(), a);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(), b in poly_strategy()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn slot_permutations_compose(
        a in poly_strategy(),
        p in prop::sample::select(vec![vec![1usize, 2], vec![2, 1]]),
        q in prop::sample::select(vec![vec![1usize, 2], vec![2, 1]]),
    ) {
        let sp = SlotPermutation::identity().with_vertex(0, p).unwrap();
        let sq = SlotPermutation::identity().with_vertex(0, q).unwrap();
        let twice = a.permute_slots(&sp).unwrap().permute_slots(&sp).unwrap();
        // every permutation of two slots is an involution
        prop_assert_eq!(&twice, &a);
        let composed = a.permute_slots(&sq.compose(&sp)).unwrap();
        prop_assert_eq!(composed, a.permute_slots(&sp).unwrap().permute_slots(&sq).unwrap());
    }

    #[test]
    fn render_parse_roundtrip(a in poly_strategy()) {
        prop_assert_eq!(parse_poly(&a.to_string()).unwrap(), a);
    }
}

#[test]
fn division_rejects_non_multiples() {
    let p = parse_poly("x1^2 + 1").unwrap();
    let q = parse_poly("x1 - 1").unwrap();
    assert!(p.exact_div(&q).is_err());
    assert!(p.exact_div(&Poly::zero()).is_err());
}
