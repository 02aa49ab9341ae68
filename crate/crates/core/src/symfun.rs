//! Symmetric-function constructors over F2: monomial symmetric polynomials,
//! complete homogeneous polynomials, 2-power Vandermonde determinants and
//! sums of monomials whose exponents are all powers of two.

use crate::combinat::{heap_permutations, next_permutation};
use crate::error::{Error, Result};
use crate::f2poly::{check_k, ExponentVector, F2Poly};

/// `m_{parts}` in `x1..xk`: the sum of all distinct monomials obtained by
/// placing the parts on distinct variables. Zero parts are dropped.
pub fn monomial_symmetric(k: usize, parts: &[u32]) -> Result<F2Poly> {
    check_k(k)?;
    let nonzero: Vec<u32> = parts.iter().copied().filter(|&p| p > 0).collect();
    if nonzero.len() > k {
        return Err(Error::InvalidArgument(format!(
            "{} parts do not fit in {k} variables",
            nonzero.len()
        )));
    }
    let mut exps = vec![0u32; k];
    exps[..nonzero.len()].copy_from_slice(&nonzero);
    exps.sort_unstable();
    let mut terms = Vec::new();
    loop {
        terms.push(ExponentVector::new(&exps)?);
        if !next_permutation(&mut exps) {
            break;
        }
    }
    F2Poly::from_terms(k, terms)
}

/// `h_d(x1, .., xr)` as a polynomial in `k` variables.
pub fn complete_homogeneous(k: usize, r: usize, d: u32) -> Result<F2Poly> {
    check_k(k)?;
    if r == 0 || r > k {
        return Err(Error::InvalidArgument(format!(
            "h_d needs 1 <= r <= k, got r={r}, k={k}"
        )));
    }
    let mut terms = Vec::new();
    let mut exps = vec![0u32; k];
    fn rec(t: usize, r: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<ExponentVector>) -> Result<()> {
        if t + 1 == r {
            exps[t] = left;
            out.push(ExponentVector::new(exps)?);
            exps[t] = 0;
            return Ok(());
        }
        for e in (0..=left).rev() {
            exps[t] = e;
            rec(t + 1, r, left - e, exps, out)?;
        }
        exps[t] = 0;
        Ok(())
    }
    rec(0, r, d, &mut exps, &mut terms)?;
    F2Poly::from_terms(k, terms)
}

/// `det [x_i^{t_j}]` for distinct 2-power exponents, expanded as a sum over
/// permutations (the sign is invisible mod 2).
pub fn vandermonde_2power(k: usize, exponents: &[u32]) -> Result<F2Poly> {
    check_k(k)?;
    if exponents.len() != k {
        return Err(Error::InvalidArgument(format!(
            "need {k} exponents, got {}",
            exponents.len()
        )));
    }
    if let Some(e) = exponents.iter().find(|e| !e.is_power_of_two()) {
        return Err(Error::InvalidArgument(format!("exponent {e} is not a power of two")));
    }
    let mut sorted = exponents.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument(
            "repeated exponent: the determinant vanishes".into(),
        ));
    }
    let terms = heap_permutations(k)
        .into_iter()
        .map(|perm| {
            let row: Vec<u32> = perm.iter().map(|&c| exponents[c]).collect();
            ExponentVector::new(&row)
        })
        .collect::<Result<Vec<_>>>()?;
    F2Poly::from_terms(k, terms)
}

/// Sum of all monomials of degree `d` in `x1..xk` whose nonzero exponents are
/// all powers of two.
pub fn two_power_monomial_sum(k: usize, d: u32) -> Result<F2Poly> {
    check_k(k)?;
    fn rec(t: usize, left: u32, exps: &mut Vec<u32>, out: &mut Vec<ExponentVector>) -> Result<()> {
        let k = exps.len();
        if t == k {
            if left == 0 {
                out.push(ExponentVector::new(exps)?);
            }
            return Ok(());
        }
        if t + 1 == k {
            if left == 0 || left.is_power_of_two() {
                exps[t] = left;
                out.push(ExponentVector::new(exps)?);
                exps[t] = 0;
            }
            return Ok(());
        }
        let mut pw = 1u32;
        let mut choices = vec![0u32];
        while pw <= left {
            choices.push(pw);
            pw = match pw.checked_mul(2) {
                Some(p) => p,
                None => break,
            };
        }
        for e in choices {
            exps[t] = e;
            rec(t + 1, left - e, exps, out)?;
        }
        exps[t] = 0;
        Ok(())
    }
    let mut terms = Vec::new();
    rec(0, d, &mut vec![0u32; k], &mut terms)?;
    F2Poly::from_terms(k, terms)
}

/// `C(n, r) mod 2`: odd exactly when the bits of `r` are a subset of those of `n`.
pub fn binom_mod2(n: u64, r: u64) -> bool {
    r <= n && (r & !n) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: usize, s: &str) -> F2Poly {
        F2Poly::parse(k, s).unwrap()
    }

    #[test]
    fn monomial_symmetric_examples() {
        let m421 = monomial_symmetric(3, &[4, 2, 1]).unwrap();
        assert_eq!(m421.len(), 6);
        assert!(m421.is_symmetric());
        assert_eq!(monomial_symmetric(2, &[1, 1]).unwrap(), p(2, "x1*x2"));
        assert_eq!(monomial_symmetric(3, &[2, 2, 2]).unwrap(), p(3, "x1^2*x2^2*x3^2"));
        assert_eq!(
            monomial_symmetric(3, &[3, 1, 0]).unwrap(),
            monomial_symmetric(3, &[3, 1]).unwrap()
        );
        assert_eq!(monomial_symmetric(3, &[2, 1, 1]).unwrap().len(), 3);
        assert!(monomial_symmetric(2, &[1, 1, 1]).is_err());
        assert!(monomial_symmetric(2, &[]).unwrap().is_one());
    }

    #[test]
    fn complete_homogeneous_examples() {
        assert!(complete_homogeneous(3, 3, 0).unwrap().is_one());
        assert_eq!(complete_homogeneous(2, 2, 2).unwrap(), p(2, "x1^2 + x1*x2 + x2^2"));
        assert_eq!(complete_homogeneous(3, 3, 1).unwrap(), p(3, "x1 + x2 + x3"));
        assert_eq!(complete_homogeneous(3, 2, 2).unwrap(), p(3, "x1^2 + x1*x2 + x2^2"));
        assert!(complete_homogeneous(2, 3, 1).is_err());
    }

    #[test]
    fn complete_homogeneous_term_counts() {
        // C(d + r - 1, r - 1)
        fn binom(n: u64, r: u64) -> u64 {
            (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for r in 1..=4usize {
            for d in 0..12u32 {
                let h = complete_homogeneous(4, r, d).unwrap();
                assert_eq!(h.len() as u64, binom(d as u64 + r as u64 - 1, r as u64 - 1));
            }
        }
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_2power(2, &[1, 2]).unwrap(), p(2, "x1*x2^2 + x1^2*x2"));
        assert_eq!(
            vandermonde_2power(3, &[1, 2, 4]).unwrap(),
            monomial_symmetric(3, &[4, 2, 1]).unwrap()
        );
        assert_eq!(vandermonde_2power(1, &[8]).unwrap(), p(1, "x1^8"));
        assert!(vandermonde_2power(2, &[2, 2]).is_err());
        assert!(vandermonde_2power(2, &[1, 3]).is_err());
        assert!(vandermonde_2power(3, &[1, 2]).is_err());
    }

    #[test]
    fn vandermonde_is_monomial_symmetric() {
        for k in 1..=4usize {
            for mask in 0u32..(1 << 6) {
                if mask.count_ones() as usize != k {
                    continue;
                }
                let exps: Vec<u32> = (0..6).filter(|b| mask >> b & 1 == 1).map(|b| 1 << b).collect();
                assert_eq!(
                    vandermonde_2power(k, &exps).unwrap(),
                    monomial_symmetric(k, &exps).unwrap()
                );
            }
        }
    }

    #[test]
    fn two_power_sum_examples() {
        assert_eq!(
            two_power_monomial_sum(3, 7).unwrap(),
            monomial_symmetric(3, &[4, 2, 1]).unwrap()
        );
        assert_eq!(two_power_monomial_sum(2, 2).unwrap(), p(2, "x1^2 + x1*x2 + x2^2"));
        assert!(two_power_monomial_sum(1, 3).unwrap().is_zero());
        assert!(two_power_monomial_sum(3, 0).unwrap().is_one());
    }

    #[test]
    fn two_power_sum_matches_filter_of_h() {
        for k in 1..=4usize {
            for d in 0..20u32 {
                let h = complete_homogeneous(k, k, d).unwrap();
                let filtered = F2Poly::from_terms(
                    k,
                    h.terms()
                        .iter()
                        .copied()
                        .filter(|m| m.exps().iter().all(|&e| e == 0 || e.is_power_of_two())),
                )
                .unwrap();
                assert_eq!(two_power_monomial_sum(k, d).unwrap(), filtered, "k={k} d={d}");
            }
        }
    }

    #[test]
    fn binom_examples() {
        assert!(!binom_mod2(4, 2));
        assert!(binom_mod2(5, 1));
        assert!(binom_mod2(9, 0));
        assert!(!binom_mod2(2, 3));
    }

    #[test]
    fn binom_matches_pascal() {
        let mut row = vec![1u128];
        for n in 0..=64u64 {
            for (r, c) in row.iter().enumerate() {
                assert_eq!(binom_mod2(n, r as u64), c % 2 == 1, "C({n},{r})");
            }
            assert!(!binom_mod2(n, n + 1));
            let mut next = vec![1u128; row.len() + 1];
            for r in 1..row.len() {
                next[r] = row[r - 1] + row[r];
            }
            row = next;
        }
    }
}
