#![allow(dead_code)]

use bpz2_core::{BitMatrix, ExponentVector, F2Poly};
use proptest::prelude::*;

pub fn poly(k: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = F2Poly> {
    prop::collection::vec(prop::collection::vec(0..=max_exp, k), 0..=max_terms)
        .prop_map(move |rows| F2Poly::from_terms(k, rows.iter().map(|e| ExponentVector::new(e).unwrap())).unwrap())
}

/// `(k, p, q, r)` with a shared variable count.
pub fn poly_triple(max_k: usize, max_terms: usize, max_exp: u32) -> impl Strategy<Value = (F2Poly, F2Poly, F2Poly)> {
    (1..=max_k).prop_flat_map(move |k| {
        (
            poly(k, max_terms, max_exp),
            poly(k, max_terms, max_exp),
            poly(k, max_terms, max_exp),
        )
    })
}

pub fn invertible(n: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(0..(1u32 << n), n)
        .prop_map(move |masks| BitMatrix::from_row_masks(n, &masks))
        .prop_filter("invertible", |m| m.is_invertible())
}

pub fn matrix(n: usize) -> impl Strategy<Value = BitMatrix> {
    prop::collection::vec(0..(1u32 << n), n).prop_map(move |masks| BitMatrix::from_row_masks(n, &masks))
}

/// Every monomial in `k` variables of total degree at most `d`.
pub fn monomials_up_to(k: usize, d: u32) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut e = vec![0u32; k];
    loop {
        if e.iter().sum::<u32>() <= d {
            out.push(ExponentVector::new(&e).unwrap());
        }
        let mut i = 0;
        loop {
            if i == k {
                return out;
            }
            e[i] += 1;
            if e[i] <= d {
                break;
            }
            e[i] = 0;
            i += 1;
        }
    }
}
