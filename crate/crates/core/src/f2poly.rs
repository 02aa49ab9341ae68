//! Sparse multivariate polynomials over the two-element field.
//!
//! A polynomial is a set of monomials: every coefficient is either 0 (absent)
//! or 1 (present), so addition is symmetric difference of term sets. Terms are
//! kept sorted in descending graded-lexicographic order with `x1 > x2 > ...`,
//! which is also the canonical print order.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported number of variables.
pub const MAX_VARS: usize = 8;

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 || k > MAX_VARS {
        Err(Error::VariableCount(k))
    } else {
        Ok(())
    }
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::VariableMismatch { left: a, right: b })
    }
}

/// Exponents of a monomial `x1^e1 * ... * xk^ek`.
///
/// Ordered by total degree first, then lexicographically from `x1`; this is
/// the graded-lex order used throughout the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    // field order matters: the derived `Ord` is graded lex
    degree: u32,
    exps: [u32; MAX_VARS],
    k: u8,
}

impl ExponentVector {
    pub fn new(exps: &[u32]) -> Result<Self> {
        check_k(exps.len())?;
        let mut buf = [0u32; MAX_VARS];
        let mut degree = 0u32;
        for (slot, &e) in buf.iter_mut().zip(exps) {
            *slot = e;
            degree = degree.checked_add(e).ok_or(Error::ExponentOverflow)?;
        }
        Ok(ExponentVector {
            degree,
            exps: buf,
            k: exps.len() as u8,
        })
    }

    pub fn one(k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(ExponentVector {
            degree: 0,
            exps: [0; MAX_VARS],
            k: k as u8,
        })
    }

    /// The monomial `x_{t+1}^e` (variables are 0-based here).
    pub fn var_power(k: usize, t: usize, e: u32) -> Result<Self> {
        let mut m = Self::one(k)?;
        if t >= k {
            return Err(Error::InvalidArgument(format!(
                "variable index {t} out of range for k={k}"
            )));
        }
        m.exps[t] = e;
        m.degree = e;
        Ok(m)
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn exps(&self) -> &[u32] {
        &self.exps[..self.k as usize]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        debug_assert_eq!(self.k, other.k);
        let mut out = *self;
        for t in 0..self.k() {
            out.exps[t] = out.exps[t].checked_add(other.exps[t]).ok_or(Error::ExponentOverflow)?;
        }
        out.degree = self.degree.checked_add(other.degree).ok_or(Error::ExponentOverflow)?;
        Ok(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.k == other.k && self.exps().iter().zip(other.exps()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut out = *other;
        for t in 0..self.k() {
            out.exps[t] -= self.exps[t];
        }
        out.degree -= self.degree;
        Some(out)
    }

    pub fn with_exps_permuted(&self, perm: &[usize]) -> Self {
        let mut out = *self;
        for (t, &src) in perm.iter().enumerate() {
            out.exps[t] = self.exps[src];
        }
        out
    }

    pub(crate) fn swap(&mut self, a: usize, b: usize) {
        self.exps.swap(a, b);
    }

    pub(crate) fn set_exp(&mut self, t: usize, e: u32) -> Result<()> {
        let old = self.exps[t];
        self.degree = (self.degree - old).checked_add(e).ok_or(Error::ExponentOverflow)?;
        self.exps[t] = e;
        Ok(())
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
            .then_with(|| self.k.cmp(&other.k))
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (t, &e) in self.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", t + 1)?;
            } else {
                write!(f, "x{}^{}", t + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps())
    }
}

/// A polynomial in `F2[x1, ..., xk]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "PolyJson", try_from = "PolyJson")]
pub struct F2Poly {
    k: usize,
    // descending graded lex, no duplicates
    terms: Vec<ExponentVector>,
}

impl F2Poly {
    pub fn zero(k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(F2Poly { k, terms: Vec::new() })
    }

    pub fn one(k: usize) -> Result<Self> {
        Ok(Self::monomial(ExponentVector::one(k)?))
    }

    /// `x_{t+1}`, 0-based.
    pub fn var(k: usize, t: usize) -> Result<Self> {
        Ok(Self::monomial(ExponentVector::var_power(k, t, 1)?))
    }

    pub fn monomial(m: ExponentVector) -> Self {
        F2Poly {
            k: m.k(),
            terms: vec![m],
        }
    }

    /// Builds a polynomial from a list of monomials, cancelling repeats in pairs.
    pub fn from_terms(k: usize, terms: impl IntoIterator<Item = ExponentVector>) -> Result<Self> {
        check_k(k)?;
        let mut terms: Vec<ExponentVector> = terms.into_iter().collect();
        if let Some(bad) = terms.iter().find(|m| m.k() != k) {
            return Err(Error::VariableMismatch {
                left: k,
                right: bad.k(),
            });
        }
        terms.sort_unstable_by(|a, b| b.cmp(a));
        let mut out: Vec<ExponentVector> = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut j = i + 1;
            while j < terms.len() && terms[j] == terms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(terms[i]);
            }
            i = j;
        }
        Ok(F2Poly { k, terms: out })
    }

    /// Convenience constructor from raw exponent rows.
    pub fn from_exponents(k: usize, rows: &[&[u32]]) -> Result<Self> {
        let terms = rows
            .iter()
            .map(|r| ExponentVector::new(r))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(k, terms)
    }

    fn from_toggle_set(k: usize, set: FxHashSet<ExponentVector>) -> Self {
        let mut terms: Vec<ExponentVector> = set.into_iter().collect();
        terms.sort_unstable_by(|a, b| b.cmp(a));
        F2Poly { k, terms }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[ExponentVector] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Same as [`F2Poly::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].is_one()
    }

    pub fn contains(&self, m: &ExponentVector) -> bool {
        self.terms.binary_search_by(|probe| m.cmp(probe)).is_ok()
    }

    pub fn leading_term(&self) -> Option<&ExponentVector> {
        self.terms.first()
    }

    /// Highest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.first(), self.terms.last()) {
            (Some(a), Some(b)) => a.degree() == b.degree(),
            _ => true,
        }
    }

    pub fn homogeneous_component(&self, d: u32) -> F2Poly {
        F2Poly {
            k: self.k,
            terms: self.terms.iter().filter(|m| m.degree() == d).copied().collect(),
        }
    }

    /// Distinct degrees present, descending.
    pub fn degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> = self.terms.iter().map(|m| m.degree()).collect();
        ds.dedup();
        ds
    }

    pub fn checked_add(&self, other: &F2Poly) -> Result<F2Poly> {
        check_same(self.k, other.k)?;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(F2Poly { k: self.k, terms: out })
    }

    pub fn checked_mul(&self, other: &F2Poly) -> Result<F2Poly> {
        check_same(self.k, other.k)?;
        if self.is_zero() || other.is_zero() {
            return Ok(F2Poly {
                k: self.k,
                terms: Vec::new(),
            });
        }
        if self.len() == 1 {
            return other.mul_monomial(&self.terms[0]);
        }
        if other.len() == 1 {
            return self.mul_monomial(&other.terms[0]);
        }
        let mut acc: FxHashSet<ExponentVector> = FxHashSet::default();
        acc.reserve(self.len().max(other.len()) * 2);
        for a in &self.terms {
            for b in &other.terms {
                let m = a.checked_mul(b)?;
                if !acc.remove(&m) {
                    acc.insert(m);
                }
            }
        }
        Ok(Self::from_toggle_set(self.k, acc))
    }

    /// Multiplication by a single monomial preserves the term order.
    pub fn mul_monomial(&self, m: &ExponentVector) -> Result<F2Poly> {
        check_same(self.k, m.k())?;
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_mul(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Poly { k: self.k, terms })
    }

    /// `p^2`: over F2 squaring doubles every exponent and nothing cancels.
    pub fn square(&self) -> Result<F2Poly> {
        let terms = self
            .terms
            .iter()
            .map(|t| t.checked_mul(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(F2Poly { k: self.k, terms })
    }

    pub fn pow(&self, mut e: u32) -> Result<F2Poly> {
        let mut base = self.clone();
        let mut acc = F2Poly::one(self.k)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.square()?;
            }
        }
        Ok(acc)
    }

    /// Exact quotient `self / den` by leading-term elimination in graded-lex
    /// order. Fails with [`Error::NotDivisible`] as soon as the leading term of
    /// the running remainder is not a multiple of the leading term of `den`.
    pub fn exact_divide(&self, den: &F2Poly) -> Result<F2Poly> {
        check_same(self.k, den.k)?;
        let lead = *den.leading_term().ok_or(Error::DivisionByZero)?;
        let mut rem: BTreeSet<ExponentVector> = self.terms.iter().copied().collect();
        let mut quotient = Vec::new();
        while let Some(&top) = rem.last() {
            let q = lead
                .quotient_of(&top)
                .ok_or_else(|| Error::NotDivisible(top.to_string()))?;
            for d in &den.terms {
                let m = d.checked_mul(&q)?;
                if !rem.remove(&m) {
                    rem.insert(m);
                }
            }
            // leading terms of the remainder strictly decrease, so the
            // quotient comes out in canonical order
            quotient.push(q);
        }
        Ok(F2Poly {
            k: self.k,
            terms: quotient,
        })
    }

    /// Linear change of variables `x_t -> sum_s A[t][s] x_s`.
    pub fn substitute_linear(&self, a: &BitMatrix) -> Result<F2Poly> {
        check_same(self.k, a.n())?;
        let k = self.k;
        // images of x_t^(2^b) are sums of x_s^(2^b): Frobenius
        let mut cache: HashMap<(usize, u32), F2Poly> = HashMap::new();
        let mut acc: FxHashSet<ExponentVector> = FxHashSet::default();
        for m in &self.terms {
            let mut prod = F2Poly::one(k)?;
            for (t, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match cache.entry((t, e)) {
                    Entry::Occupied(o) => o.into_mut(),
                    Entry::Vacant(v) => {
                        let mut p = F2Poly::one(k)?;
                        let mut bit = 0;
                        while (e >> bit) != 0 {
                            if (e >> bit) & 1 == 1 {
                                let pw = 1u32 << bit;
                                let lin = F2Poly::from_terms(
                                    k,
                                    (0..k)
                                        .filter(|&s| a.get(t, s))
                                        .map(|s| ExponentVector::var_power(k, s, pw))
                                        .collect::<Result<Vec<_>>>()?,
                                )?;
                                p = p.checked_mul(&lin)?;
                            }
                            bit += 1;
                        }
                        v.insert(p)
                    }
                };
                prod = prod.checked_mul(factor)?;
                if prod.is_zero() {
                    break;
                }
            }
            for term in prod.terms {
                if !acc.remove(&term) {
                    acc.insert(term);
                }
            }
        }
        Ok(Self::from_toggle_set(k, acc))
    }

    /// Value at a point of `F2^k`.
    pub fn evaluate(&self, point: &[bool]) -> Result<bool> {
        check_same(self.k, point.len())?;
        Ok(self
            .terms
            .iter()
            .filter(|m| m.exps().iter().zip(point).all(|(&e, &x)| e == 0 || x))
            .count()
            % 2
            == 1)
    }

    /// Invariance under every permutation of the variables, checked on the
    /// adjacent transpositions that generate the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        (0..self.k.saturating_sub(1)).all(|t| {
            let mut swapped: Vec<ExponentVector> = self
                .terms
                .iter()
                .map(|m| {
                    let mut m = *m;
                    m.swap(t, t + 1);
                    m
                })
                .collect();
            swapped.sort_unstable_by(|a, b| b.cmp(a));
            swapped == self.terms
        })
    }

    /// Parses the canonical text form for a given variable count. Repeated
    /// monomials cancel.
    pub fn parse(k: usize, s: &str) -> Result<F2Poly> {
        check_k(k)?;
        let s = s.trim();
        if s == "0" {
            return F2Poly::zero(k);
        }
        let mut terms = Vec::new();
        for raw in s.split('+') {
            let raw = raw.trim();
            if raw.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let mut m = ExponentVector::one(k)?;
            if raw != "1" {
                for factor in raw.split('*') {
                    let factor = factor.trim();
                    let body = factor
                        .strip_prefix('x')
                        .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
                    let (idx, e) = match body.split_once('^') {
                        Some((i, e)) => (
                            i,
                            e.parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?,
                        ),
                        None => (body, 1),
                    };
                    let idx: usize = idx
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable in {factor:?}")))?;
                    if idx == 0 || idx > k {
                        return Err(Error::Parse(format!("variable x{idx} out of range for k={k}")));
                    }
                    let cur = m.exps()[idx - 1];
                    m.set_exp(idx - 1, cur.checked_add(e).ok_or(Error::ExponentOverflow)?)?;
                }
            }
            terms.push(m);
        }
        F2Poly::from_terms(k, terms)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn from_json(s: &str) -> Result<F2Poly> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Poly[k={}]({})", self.k, self)
    }
}

impl FromStr for F2Poly {
    type Err = Error;

    /// Infers `k` from the largest variable index mentioned (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let k = s
            .split(|c: char| !c.is_ascii_alphanumeric())
            .filter_map(|tok| tok.strip_prefix('x'))
            .filter_map(|n| n.parse::<usize>().ok())
            .max()
            .unwrap_or(1);
        F2Poly::parse(k, s)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    k: usize,
    terms: Vec<Vec<u32>>,
}

impl From<F2Poly> for PolyJson {
    fn from(p: F2Poly) -> Self {
        PolyJson {
            k: p.k,
            terms: p.terms.iter().map(|m| m.exps().to_vec()).collect(),
        }
    }
}

impl TryFrom<PolyJson> for F2Poly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        if let Some(bad) = j.terms.iter().find(|t| t.len() != j.k) {
            return Err(Error::Parse(format!("term {bad:?} does not have {} exponents", j.k)));
        }
        let terms = j
            .terms
            .iter()
            .map(|t| ExponentVector::new(t))
            .collect::<Result<Vec<_>>>()?;
        F2Poly::from_terms(j.k, terms)
    }
}

impl Add for &F2Poly {
    type Output = F2Poly;

    /// Panics on mismatched variable counts; see [`F2Poly::checked_add`].
    fn add(self, rhs: &F2Poly) -> F2Poly {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl AddAssign<&F2Poly> for F2Poly {
    fn add_assign(&mut self, rhs: &F2Poly) {
        *self = &*self + rhs;
    }
}

impl Mul for &F2Poly {
    type Output = F2Poly;

    /// Panics on mismatched variable counts or exponent overflow; see
    /// [`F2Poly::checked_mul`].
    fn mul(self, rhs: &F2Poly) -> F2Poly {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

/// Square matrix over F2, used for linear substitutions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitMatrix {
    rows: Vec<Vec<bool>>,
}

impl BitMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidArgument("bit matrix must be square and non-empty".into()));
        }
        Ok(BitMatrix { rows })
    }

    pub fn from_u8(rows: &[&[u8]]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for r in rows {
            let mut row = Vec::with_capacity(r.len());
            for &b in *r {
                match b {
                    0 => row.push(false),
                    1 => row.push(true),
                    _ => return Err(Error::InvalidArgument(format!("matrix entry {b} is not a bit"))),
                }
            }
            out.push(row);
        }
        Self::new(out)
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix {
            rows: (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect(),
        }
    }

    /// Matrix whose row `t` has bits from `masks[t]` (bit `s` is column `s`).
    pub fn from_row_masks(n: usize, masks: &[u32]) -> Self {
        BitMatrix {
            rows: masks
                .iter()
                .map(|m| (0..n).map(|s| (m >> s) & 1 == 1).collect())
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c]
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        check_same(self.n(), other.n())?;
        let n = self.n();
        Ok(BitMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| (0..n).filter(|&l| self.rows[i][l] && other.rows[l][j]).count() % 2 == 1)
                        .collect()
                })
                .collect(),
        })
    }

    pub fn is_invertible(&self) -> bool {
        let n = self.n();
        let mut m = self.rows.clone();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| m[r][col]) else {
                return false;
            };
            m.swap(col, p);
            for r in 0..n {
                if r != col && m[r][col] {
                    let pivot = m[col].clone();
                    for (x, v) in m[r].iter_mut().zip(pivot) {
                        *x ^= v;
                    }
                }
            }
        }
        true
    }

    /// Every element of `GL_n(F2)`, in order of increasing row masks.
    pub fn general_linear_group(n: usize) -> Vec<BitMatrix> {
        assert!((1..=4).contains(&n), "GL_n enumeration is limited to n <= 4");
        let mut out = Vec::new();
        let mut masks = vec![0u32; n];
        let limit = 1u32 << n;
        loop {
            let m = BitMatrix::from_row_masks(n, &masks);
            if m.is_invertible() {
                out.push(m);
            }
            let mut i = 0;
            loop {
                if i == n {
                    return out;
                }
                masks[i] += 1;
                if masks[i] < limit {
                    break;
                }
                masks[i] = 0;
                i += 1;
            }
        }
    }
}
