mod common;

use bpz2_core::{Error, ExponentVector, F2Poly};
use common::{invertible, matrix, monomials_up_to, poly, poly_triple};
use proptest::prelude::*;

proptest! {
    #[test]
    fn add_is_an_abelian_group_of_exponent_two((p, q, r) in poly_triple(4, 20, 6)) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert!((&p + &p).is_zero());
        prop_assert_eq!(&p + &F2Poly::zero(p.k()).unwrap(), p.clone());
    }

    #[test]
    fn mul_is_a_commutative_ring((p, q, r) in poly_triple(4, 20, 6)) {
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!(&p * &F2Poly::one(p.k()).unwrap(), p.clone());
    }

    #[test]
    fn frobenius((p, _, _) in poly_triple(4, 20, 10)) {
        let doubled = F2Poly::from_terms(
            p.k(),
            p.terms().iter().map(|m| {
                let e: Vec<u32> = m.exps().iter().map(|x| 2 * x).collect();
                ExponentVector::new(&e).unwrap()
            }),
        )
        .unwrap();
        prop_assert_eq!(p.len(), doubled.len());
        prop_assert_eq!(p.checked_mul(&p).unwrap(), doubled);
    }

    #[test]
    fn division_round_trip((q, d, noise) in poly_triple(3, 8, 4)) {
        prop_assume!(!d.is_zero());
        let n = &q * &d;
        prop_assert_eq!(n.exact_divide(&d).unwrap(), q);
        let n2 = &n + &noise;
        if let Ok(q2) = n2.exact_divide(&d) {
            prop_assert_eq!(&q2 * &d, n2);
        }
    }

    #[test]
    fn substitution_is_a_right_action(
        (a, b, p) in (1usize..=4).prop_flat_map(|k| (matrix(k), matrix(k), poly(k, 8, 3)))
    ) {
        // x_t -> sum_s A[t][s] x_s composes as the matrix product B.A
        let lhs = p.substitute_linear(&b).unwrap().substitute_linear(&a).unwrap();
        prop_assert_eq!(lhs, p.substitute_linear(&b.mul(&a).unwrap()).unwrap());
    }

    #[test]
    fn substitution_is_a_ring_map((a, p, q) in (1usize..=3).prop_flat_map(|k| (invertible(k), poly(k, 6, 3), poly(k, 6, 3)))) {
        let s = |x: &F2Poly| x.substitute_linear(&a).unwrap();
        prop_assert_eq!(s(&(&p * &q)), &s(&p) * &s(&q));
        prop_assert_eq!(s(&(&p + &q)), &s(&p) + &s(&q));
    }

    #[test]
    fn evaluation_is_a_ring_map((p, q, _) in poly_triple(4, 10, 4), point in prop::collection::vec(any::<bool>(), 4)) {
        let pt = &point[..p.k()];
        let (a, b) = (p.evaluate(pt).unwrap(), q.evaluate(pt).unwrap());
        prop_assert_eq!((&p * &q).evaluate(pt).unwrap(), a & b);
        prop_assert_eq!((&p + &q).evaluate(pt).unwrap(), a ^ b);
    }

    #[test]
    fn text_and_json_round_trip((p, _, _) in poly_triple(4, 20, 12)) {
        let text = p.to_string();
        prop_assert_eq!(F2Poly::parse(p.k(), &text).unwrap(), p.clone());
        prop_assert_eq!(F2Poly::from_json(&p.to_json()).unwrap(), p.clone());
    }
}

/// When division fails, brute force over every candidate quotient confirms
/// that none exists.
#[test]
fn failed_division_has_no_quotient() {
    let k = 2;
    let small = monomials_up_to(k, 2);
    let mut failures = 0;
    // all (n, d) with n of degree <= 3 drawn from a fixed family, d nonzero of degree <= 2
    let numerators: Vec<F2Poly> = [
        "x1^3 + x2^3",
        "x1^2*x2 + x1*x2^2",
        "x1^3 + x1*x2 + 1",
        "x1^2 + x2^2 + x1*x2",
        "x1^3 + x1^2*x2 + x2^3",
        "x1*x2 + 1",
        "x1^2*x2 + x2",
    ]
    .iter()
    .map(|s| F2Poly::parse(k, s).unwrap())
    .collect();
    for mask in 1u32..(1 << small.len()) {
        let d = F2Poly::from_terms(
            k,
            small
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, m)| *m),
        )
        .unwrap();
        for n in &numerators {
            match n.exact_divide(&d) {
                Ok(q) => assert_eq!(&q * &d, *n),
                Err(Error::NotDivisible(_)) => {
                    failures += 1;
                    let top = n.degree().unwrap().saturating_sub(d.degree().unwrap());
                    let cands = monomials_up_to(k, top);
                    for qm in 0u32..(1 << cands.len()) {
                        let q = F2Poly::from_terms(
                            k,
                            cands
                                .iter()
                                .enumerate()
                                .filter(|(i, _)| qm >> i & 1 == 1)
                                .map(|(_, m)| *m),
                        )
                        .unwrap();
                        assert_ne!(&q * &d, *n, "{n} / {d} has quotient {q}");
                    }
                }
                Err(e) => panic!("unexpected error {e}"),
            }
        }
    }
    assert!(failures > 100);
}

#[test]
fn gl_group_orders() {
    let sizes: Vec<usize> = (1..=3)
        .map(|n| bpz2_core::BitMatrix::general_linear_group(n).len())
        .collect();
    assert_eq!(sizes, [1, 6, 168]);
}
