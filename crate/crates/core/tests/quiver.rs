use proptest::prelude::*;

use coha::quiver::{builtin_quiver, parse_quiver, DimVector, Quiver, Stability};

fn quivers() -> Vec<Quiver> {
    vec![Quiver::a1(), Quiver::l1(), Quiver::a20tilde(), Quiver::kronecker()]
}

fn dim2() -> impl Strategy<Value = DimVector> {
    (0u32..5, 0u32..5).prop_map(|(a, b)| DimVector(vec![a, b]))
}

proptest! {
    #[test]
    fn euler_form_is_bilinear(a in dim2(), b in dim2(), c in dim2()) {
        for q in quivers().into_iter().filter(|q| q.vertex_count() == 2) {
            let lhs = q.euler_form(&a.add(&b), &c).unwrap();
            prop_assert_eq!(lhs, q.euler_form(&a, &c).unwrap() + q.euler_form(&b, &c).unwrap());
            let rhs = q.euler_form(&c, &a.add(&b)).unwrap();
            prop_assert_eq!(rhs, q.euler_form(&c, &a).unwrap() + q.euler_form(&c, &b).unwrap());
            if q.is_symmetric() {
                prop_assert_eq!(q.euler_form(&a, &b).unwrap(), q.euler_form(&b, &a).unwrap());
            }
        }
    }

    #[test]
    fn hn_types_have_decreasing_slopes(a in 0u32..4, b in 0u32..4) {
        prop_assume!(a + b > 0);
        let theta = Stability(vec![1, 0]);
        let d = DimVector(vec![a, b]);
        let types = theta.hn_types(&d).unwrap();
        prop_assert_eq!(&types[0], &vec![d.clone()]);
        for t in &types {
            let total = t.iter().fold(DimVector::zero(2), |acc, x| acc.add(x));
            prop_assert_eq!(&total, &d);
            for w in t.windows(2) {
                prop_assert!(theta.slope(&w[0]).unwrap() > theta.slope(&w[1]).unwrap());
            }
        }
    }
}

#[test]
fn symmetric_quivers() {
    assert!(Quiver::a1().is_symmetric());
    assert!(Quiver::l1().is_symmetric());
    assert!(Quiver::a20tilde().is_symmetric());
    assert!(!Quiver::kronecker().is_symmetric());
}

#[test]
fn spec_files_and_aliases() {
    let spec = parse_quiver("# Kronecker\nvertices: [i, j]\narrows: [[i, j], [i, j]]\ntheta: {i: 1, j: 0}\n").unwrap();
    let builtin = builtin_quiver("k2").unwrap();
    assert_eq!(spec.quiver, builtin.quiver);
    assert_eq!(spec.stability_or_zero(), builtin.stability_or_zero());
    let err = parse_quiver("vertices: [i]\narrows: [[i, k]]\n").unwrap_err();
    assert!(err.to_string().contains("line 2"), "{err}");
    assert!(builtin_quiver("nope").is_none());
}
