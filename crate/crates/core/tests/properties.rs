//! Randomised algebraic identities in TL_n and for tangle composition.

use proptest::prelude::*;

use skein::exact::ScalarField;
use skein::tangle::Colour;
use skein::tl::{evaluate_in, tl_basis, TLElement};
use skein::zoo;

const FIELDS: [ScalarField; 4] =
    [ScalarField::GenericDelta, ScalarField::QuadraticRoot2, ScalarField::QuadraticGolden, ScalarField::QuadraticRoot3];

fn element(field: ScalarField, n: u32, terms: &[(usize, i64)]) -> TLElement {
    let basis = tl_basis(Colour::n(n));
    let mut x = TLElement::zero(field, Colour::n(n));
    for &(i, c) in terms {
        x.add_term(basis[i % basis.len()].clone(), field.from_int(c));
    }
    x
}

fn terms() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..64, -3i64..=3), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative(f in 0usize..4, n in 1u32..=4, a in terms(), b in terms(), c in terms()) {
        let f = FIELDS[f];
        let (a, b, c) = (element(f, n, &a), element(f, n, &b), element(f, n, &c));
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn adjoint_reverses_products(f in 0usize..4, n in 1u32..=4, a in terms(), b in terms()) {
        let f = FIELDS[f];
        let (a, b) = (element(f, n, &a), element(f, n, &b));
        prop_assert_eq!(a.multiply(&b).unwrap().adjoint(), b.adjoint().multiply(&a.adjoint()).unwrap());
    }

    #[test]
    fn trace_is_tracial(f in 0usize..4, n in 1u32..=4, a in terms(), b in terms()) {
        let f = FIELDS[f];
        let (a, b) = (element(f, n, &a), element(f, n, &b));
        prop_assert_eq!(a.multiply(&b).unwrap().trace(), b.multiply(&a).unwrap().trace());
        prop_assert_eq!(a.trace(), a.left_trace());
    }

    #[test]
    fn mult_tangle_agrees_with_product(n in 1u32..=4, a in terms(), b in terms()) {
        let f = ScalarField::GenericDelta;
        let (a, b) = (element(f, n, &a), element(f, n, &b));
        let m = zoo::mult(n, n, n).unwrap();
        prop_assert_eq!(evaluate_in(f, &m, &[&a, &b]).unwrap(), a.multiply(&b).unwrap());
    }
}
