//! The action polynomials `p_{l,j}`.
//!
//! `p_{l,j}` is the quotient of the 2-power Vandermonde with exponents
//! `1, 2, .., 2^(k-1)` where `2^j` is swapped out for `2^l`, by the one with
//! exponents `1, 2, .., 2^(k-1)`. It is computed here by direct division, by
//! Cramer's rule on the linear system it solves, and from closed forms
//! (`k = 3`, `l = k`, and `j = 0` via surjections or set partitions). The
//! parity census brute-forces the counting statement behind the `j = 0`
//! formula.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::combinat::{factorial, heap_permutations, stirling2, RestrictedGrowth};
use crate::error::{Error, Result};
use crate::f2poly::{check_k, ExponentVector, F2Poly};
use crate::symfun::{binom_mod2, monomial_symmetric, two_power_monomial_sum};

/// Default cap on the number of matrices the parity census may enumerate.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Largest `l` accepted; `2^l` has to fit an exponent.
pub const MAX_ELL: u32 = 30;

/// A valid `(k, l, j)` triple: `l >= k` and `0 <= j < k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PljQuery {
    k: usize,
    ell: u32,
    j: u32,
}

impl PljQuery {
    pub fn new(k: usize, ell: u32, j: u32) -> Result<Self> {
        check_k(k)?;
        if (ell as usize) < k {
            return Err(Error::InvalidArgument(format!("need l >= k, got l={ell}, k={k}")));
        }
        if ell > MAX_ELL {
            return Err(Error::InvalidArgument(format!(
                "l={ell} exceeds the supported maximum {MAX_ELL}"
            )));
        }
        if j as usize >= k {
            return Err(Error::InvalidArgument(format!("need 0 <= j <= k-1, got j={j}, k={k}")));
        }
        Ok(PljQuery { k, ell, j })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn j(&self) -> u32 {
        self.j
    }

    /// `2^l - 2^j`.
    pub fn degree(&self) -> u32 {
        (1 << self.ell) - (1 << self.j)
    }
}

fn check_ell(k: usize, ell: u32) -> Result<()> {
    PljQuery::new(k, ell, 0).map(|_| ())
}

/// `m_{1, 2, .., 2^(k-1)}`, the common denominator.
pub fn pdef_denominator(k: usize) -> Result<F2Poly> {
    check_k(k)?;
    let parts: Vec<u32> = (0..k).map(|i| 1u32 << i).collect();
    monomial_symmetric(k, &parts)
}

/// `m_{1, .., ^2^j, .., 2^(k-1), top}`: the `2^j` part replaced by `top`.
pub fn pdef_numerator(k: usize, j: u32, top: u32) -> Result<F2Poly> {
    check_k(k)?;
    if j as usize >= k {
        return Err(Error::InvalidArgument(format!("need 0 <= j <= k-1, got j={j}, k={k}")));
    }
    let mut parts: Vec<u32> = (0..k as u32).filter(|&i| i != j).map(|i| 1u32 << i).collect();
    parts.push(top);
    monomial_symmetric(k, &parts)
}

/// The ratio numerator/denominator with an arbitrary top exponent. For a
/// non-2-power `top` and `k >= 3` this is expected to fail with
/// [`Error::NotDivisible`].
pub fn ratio_with_top_exponent(k: usize, j: u32, top: u32) -> Result<F2Poly> {
    pdef_numerator(k, j, top)?.exact_divide(&pdef_denominator(k)?)
}

/// `p_{l,j}` by exact division of monomial symmetric polynomials.
pub fn p_by_division(q: PljQuery) -> Result<F2Poly> {
    ratio_with_top_exponent(q.k, q.j, 1 << q.ell)
}

/// Determinant of a square matrix of polynomials, by Laplace expansion with
/// memoization over column subsets. Signs vanish mod 2.
pub fn determinant(rows: &[Vec<F2Poly>]) -> Result<F2Poly> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument(
            "determinant needs a non-empty square matrix".into(),
        ));
    }
    if n > 16 {
        return Err(Error::InvalidArgument("matrix too large".into()));
    }
    let k = rows[0][0].k();
    // minors[mask] = determinant of the last popcount(mask) rows restricted to
    // the columns in mask
    let mut minors: HashMap<u32, F2Poly> = HashMap::new();
    minors.insert(0, F2Poly::one(k)?);
    for size in 1..=n {
        let row = n - size;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != size {
                continue;
            }
            let mut acc = F2Poly::zero(k)?;
            for c in 0..n {
                if mask >> c & 1 == 1 {
                    let minor = &minors[&(mask & !(1 << c))];
                    acc = acc.checked_add(&rows[row][c].checked_mul(minor)?)?;
                }
            }
            minors.insert(mask, acc);
        }
    }
    Ok(minors.remove(&((1u32 << n) - 1)).expect("full minor"))
}

/// All of `p_{l,0}, .., p_{l,k-1}` as the solution of the system
/// `sum_j p_{l,j} x_i^(2^j) = x_i^(2^l)`, via Cramer's rule.
pub fn p_by_system(k: usize, ell: u32) -> Result<Vec<F2Poly>> {
    check_ell(k, ell)?;
    let power = |i: usize, e: u32| ExponentVector::var_power(k, i, e).map(F2Poly::monomial);
    let matrix: Vec<Vec<F2Poly>> = (0..k)
        .map(|i| (0..k).map(|c| power(i, 1 << c)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let rhs: Vec<F2Poly> = (0..k).map(|i| power(i, 1 << ell)).collect::<Result<_>>()?;
    let det = determinant(&matrix)?;
    (0..k)
        .map(|col| {
            let replaced: Vec<Vec<F2Poly>> = matrix
                .iter()
                .zip(&rhs)
                .map(|(row, b)| {
                    let mut row = row.clone();
                    row[col] = b.clone();
                    row
                })
                .collect();
            determinant(&replaced)?.exact_divide(&det)
        })
        .collect()
}

/// Closed form for `k = 3`, summing `m_{a,b,c}` over partitions `a >= b >= c`
/// with parity coefficients built from binomials.
pub fn p_closed_k3(ell: u32, j: u32) -> Result<F2Poly> {
    check_ell(3, ell)?;
    let n: u32 = match j {
        0 => (1 << ell) - 1,
        1 => (1 << ell) - 2,
        2 => (1 << ell) - 4,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "k=3 closed form needs j in 0..=2, got {j}"
            )))
        }
    };
    let mut acc = F2Poly::zero(3)?;
    for c in 0..=n / 3 {
        for b in c..=(n - c) / 2 {
            let a = n - b - c;
            let (b64, c64) = (b as u64, c as u64);
            let coeff = match j {
                0 => c > 0 && binom_mod2(b64 + c64, c64),
                1 if c == 0 => b > 0 && (1 + b) % 2 == 1,
                1 => {
                    let t = 1 + binom_mod2(b64 + c64, c64 - 1) as u32 + binom_mod2(b64 + c64 + 1, c64 + 1) as u32;
                    t % 2 == 1
                }
                _ => !binom_mod2(b64 + c64 + 2, c64 + 1),
            };
            if coeff {
                acc = acc.checked_add(&monomial_symmetric(3, &[a, b, c])?)?;
            }
        }
    }
    Ok(acc)
}

/// `p_{k,j}`: all monomials of degree `2^k - 2^j` with 2-power exponents.
pub fn p_closed_ell_eq_k(k: usize, j: u32) -> Result<F2Poly> {
    let q = PljQuery::new(k, k as u32, j)?;
    two_power_monomial_sum(k, q.degree())
}

/// `p_{l,0}` as the sum over surjections `f: {0..l-1} -> {1..k}` of
/// `prod_i x_{f(i)}^(2^i)`.
pub fn p0_by_surjections(k: usize, ell: u32) -> Result<F2Poly> {
    check_ell(k, ell)?;
    let ell = ell as usize;
    let mut f = vec![0usize; ell];
    let full = (1u32 << k) - 1;
    let mut terms = Vec::new();
    loop {
        let hit = f.iter().fold(0u32, |m, &v| m | 1 << v);
        if hit == full {
            let mut exps = vec![0u32; k];
            for (i, &v) in f.iter().enumerate() {
                exps[v] += 1 << i;
            }
            terms.push(ExponentVector::new(&exps)?);
        }
        // odometer over all k^l functions
        let mut i = 0;
        loop {
            if i == ell {
                return F2Poly::from_terms(k, terms);
            }
            f[i] += 1;
            if f[i] < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Block sums `||S_b||` of a set partition of `{1, 2, .., 2^(l-1)}` given by
/// its restricted-growth string.
fn block_sums(rgs: &[usize], blocks: usize) -> Vec<u32> {
    let mut sums = vec![0u32; blocks];
    for (i, &b) in rgs.iter().enumerate() {
        sums[b] += 1 << i;
    }
    sums
}

/// `p_{l,0}` as `sum m_{||S_1||, .., ||S_k||}` over partitions of
/// `{1, 2, .., 2^(l-1)}` into `k` nonempty blocks.
pub fn p0_by_partitions(k: usize, ell: u32) -> Result<F2Poly> {
    check_ell(k, ell)?;
    let mut acc = F2Poly::zero(k)?;
    for rgs in RestrictedGrowth::new(ell as usize, k) {
        acc = acc.checked_add(&monomial_symmetric(k, &block_sums(&rgs, k))?)?;
    }
    Ok(acc)
}

/// Parity of the number of ways each tuple `(n_1, .., n_k)` splits as
/// `n_i = ||S_i|| + t_i`, with `(S_i)` an ordered partition of
/// `{1, 2, .., 2^(l-1)}` into `k` nonempty blocks and `(t_i)` a permutation of
/// `(1, 2, .., 2^(k-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityCensus {
    pub k: usize,
    pub ell: u32,
    /// Matrices enumerated up to column order: `S(l,k) * k!`.
    pub matrices: u128,
    /// Every achievable tuple with its parity (`true` = odd).
    pub parities: BTreeMap<Vec<u32>, bool>,
}

#[derive(Serialize)]
struct CensusEntry<'a> {
    tuple: &'a [u32],
    parity: u8,
}

impl ParityCensus {
    pub fn odd_tuples(&self) -> Vec<Vec<u32>> {
        self.parities
            .iter()
            .filter(|(_, &odd)| odd)
            .map(|(t, _)| t.clone())
            .collect()
    }

    /// The permutations of `(2, 4, .., 2^(k-1), 2^l)`, sorted.
    pub fn expected_odd_tuples(&self) -> Vec<Vec<u32>> {
        let mut base: Vec<u32> = (1..self.k as u32).map(|i| 1 << i).collect();
        base.push(1 << self.ell);
        let mut out: Vec<Vec<u32>> = heap_permutations(self.k)
            .into_iter()
            .map(|p| p.iter().map(|&i| base[i]).collect())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn matches_expectation(&self) -> bool {
        self.odd_tuples() == self.expected_odd_tuples()
    }

    /// JSON array of `{"tuple": [..], "parity": 0|1}`; odd tuples only unless
    /// `include_even`.
    pub fn to_json(&self, include_even: bool) -> String {
        let entries: Vec<CensusEntry> = self
            .parities
            .iter()
            .filter(|(_, &odd)| odd || include_even)
            .map(|(t, &odd)| CensusEntry {
                tuple: t,
                parity: odd as u8,
            })
            .collect();
        serde_json::to_string(&entries).expect("census serializes")
    }
}

pub fn parity_census(k: usize, ell: u32, budget: u64) -> Result<ParityCensus> {
    check_ell(k, ell)?;
    let matrices = stirling2(ell as usize, k).saturating_mul(factorial(k));
    if matrices > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: matrices,
            budget,
        });
    }
    let ts: Vec<u32> = (0..k).map(|i| 1u32 << i).collect();
    let perms = heap_permutations(k);
    let partitions: Vec<Vec<usize>> = RestrictedGrowth::new(ell as usize, k).collect();
    // workers toggle private maps; merging by XOR keeps the parity exact
    let counts = partitions
        .par_iter()
        .fold(FxHashMap::<Vec<u32>, bool>::default, |mut acc, rgs| {
            let sums = block_sums(rgs, k);
            for order in &perms {
                for tperm in &perms {
                    let tuple: Vec<u32> = (0..k).map(|i| sums[order[i]] + ts[tperm[i]]).collect();
                    let e = acc.entry(tuple).or_insert(false);
                    *e = !*e;
                }
            }
            acc
        })
        .reduce(FxHashMap::default, |mut a, b| {
            for (t, odd) in b {
                let e = a.entry(t).or_insert(false);
                *e ^= odd;
            }
            a
        });
    Ok(ParityCensus {
        k,
        ell,
        matrices,
        parities: counts.into_iter().collect(),
    })
}

/// Concurrent-read memo of `p_{l,j}` keyed by query.
#[derive(Default)]
pub struct PljTable {
    cache: RwLock<HashMap<PljQuery, Arc<F2Poly>>>,
}

impl PljTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, q: PljQuery) -> Result<Arc<F2Poly>> {
        if let Some(p) = self.cache.read().expect("plj cache poisoned").get(&q) {
            return Ok(Arc::clone(p));
        }
        let p = Arc::new(p_by_division(q)?);
        let mut w = self.cache.write().expect("plj cache poisoned");
        Ok(Arc::clone(w.entry(q).or_insert(p)))
    }

    pub fn len(&self) -> usize {
        self.cache.read().expect("plj cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
