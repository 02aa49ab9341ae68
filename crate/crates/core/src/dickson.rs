//! Dickson invariants and Steenrod squares on polynomials.
//!
//! The generator `c_j` of the Dickson algebra `D_k` (degree `2^k - 2^j`) is
//! the sum of all monomials of that degree whose nonzero exponents are
//! 2-powers. Squares act through the total square `x -> x + x^2`, which is a
//! ring map, so the Cartan formula holds by construction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2poly::{check_k, ExponentVector, F2Poly};
use crate::symfun::two_power_monomial_sum;

fn check_j(k: usize, j: usize) -> Result<()> {
    if j >= k {
        Err(Error::InvalidArgument(format!(
            "Dickson generator index {j} out of range for k={k}"
        )))
    } else {
        Ok(())
    }
}

/// `c_j` in `x1..xk`.
pub fn dickson_generator(k: usize, j: usize) -> Result<F2Poly> {
    check_k(k)?;
    check_j(k, j)?;
    two_power_monomial_sum(k, (1 << k) - (1 << j))
}

/// Image of a monomial under `x_t -> x_t + x_t^2`, restricted to the
/// monomials that gained exactly `want` degrees (or all of them).
fn square_monomial(m: &ExponentVector, want: Option<u32>, out: &mut FxHashSet<ExponentVector>) -> Result<()> {
    // (1 + x)^e = sum of x^r over bitwise submasks r of e
    fn rec(
        t: usize,
        cur: &mut ExponentVector,
        base: &ExponentVector,
        left: Option<u32>,
        out: &mut FxHashSet<ExponentVector>,
    ) -> Result<()> {
        if t == base.k() {
            if left.is_none_or(|l| l == 0) && !out.remove(cur) {
                out.insert(*cur);
            }
            return Ok(());
        }
        let e = base.exps()[t];
        let mut r = e;
        loop {
            if left.is_none_or(|l| r <= l) {
                cur.set_exp(t, e.checked_add(r).ok_or(Error::ExponentOverflow)?)?;
                rec(t + 1, cur, base, left.map(|l| l - r), out)?;
            }
            if r == 0 {
                break;
            }
            r = (r - 1) & e;
        }
        cur.set_exp(t, e)?;
        Ok(())
    }
    let mut cur = *m;
    rec(0, &mut cur, m, want, out)
}

fn collect(k: usize, set: FxHashSet<ExponentVector>) -> Result<F2Poly> {
    F2Poly::from_terms(k, set)
}

/// The total square: the ring endomorphism `x_t -> x_t + x_t^2`.
pub fn total_square(p: &F2Poly) -> Result<F2Poly> {
    let mut out = FxHashSet::default();
    for m in p.terms() {
        square_monomial(m, None, &mut out)?;
    }
    collect(p.k(), out)
}

/// `Sq^i p`, applied to each homogeneous component of `p`.
pub fn sq(i: u32, p: &F2Poly) -> Result<F2Poly> {
    let mut out = FxHashSet::default();
    for m in p.terms() {
        if i <= m.degree() {
            square_monomial(m, Some(i), &mut out)?;
        }
    }
    collect(p.k(), out)
}

/// A polynomial in the abstract generators `c_0, .., c_{k-1}`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "WordJson", try_from = "WordJson")]
pub struct DicksonWord {
    k: usize,
    terms: BTreeSet<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct WordJson {
    k: usize,
    terms: Vec<Vec<u32>>,
}

impl From<DicksonWord> for WordJson {
    fn from(w: DicksonWord) -> Self {
        WordJson {
            k: w.k,
            terms: w.sorted_terms().into_iter().cloned().collect(),
        }
    }
}

impl TryFrom<WordJson> for DicksonWord {
    type Error = Error;

    fn try_from(j: WordJson) -> Result<Self> {
        check_k(j.k)?;
        let mut w = DicksonWord::zero(j.k)?;
        for t in j.terms {
            if t.len() != j.k {
                return Err(Error::Parse(format!("word term {t:?} does not have {} exponents", j.k)));
            }
            w.toggle(t);
        }
        Ok(w)
    }
}

impl DicksonWord {
    pub fn zero(k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(DicksonWord {
            k,
            terms: BTreeSet::new(),
        })
    }

    pub fn one(k: usize) -> Result<Self> {
        let mut w = Self::zero(k)?;
        w.terms.insert(vec![0; k]);
        Ok(w)
    }

    /// `c_j`; a negative index gives the zero word.
    pub fn generator(k: usize, j: i32) -> Result<Self> {
        let mut w = Self::zero(k)?;
        if j >= 0 {
            check_j(k, j as usize)?;
            let mut e = vec![0; k];
            e[j as usize] = 1;
            w.terms.insert(e);
        }
        Ok(w)
    }

    pub fn monomial(k: usize, exps: Vec<u32>) -> Result<Self> {
        let mut w = Self::zero(k)?;
        if exps.len() != k {
            return Err(Error::InvalidArgument(format!("word monomial needs {k} exponents")));
        }
        w.terms.insert(exps);
        Ok(w)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn toggle(&mut self, t: Vec<u32>) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    /// Degree of a word monomial in `x`: `sum e_j (2^k - 2^j)`.
    pub fn weighted_degree(&self, exps: &[u32]) -> u64 {
        exps.iter()
            .enumerate()
            .map(|(j, &e)| e as u64 * ((1u64 << self.k) - (1u64 << j)))
            .sum()
    }

    fn sorted_terms(&self) -> Vec<&Vec<u32>> {
        let mut v: Vec<&Vec<u32>> = self.terms.iter().collect();
        v.sort_by(|a, b| match self.weighted_degree(b).cmp(&self.weighted_degree(a)) {
            Ordering::Equal => b.cmp(a),
            o => o,
        });
        v
    }

    pub fn add(&self, other: &DicksonWord) -> Result<DicksonWord> {
        if self.k != other.k {
            return Err(Error::VariableMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let terms = self.terms.symmetric_difference(&other.terms).cloned().collect();
        Ok(DicksonWord { k: self.k, terms })
    }

    pub fn mul(&self, other: &DicksonWord) -> Result<DicksonWord> {
        if self.k != other.k {
            return Err(Error::VariableMismatch {
                left: self.k,
                right: other.k,
            });
        }
        let mut out = DicksonWord::zero(self.k)?;
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<DicksonWord> {
        let mut acc = DicksonWord::one(self.k)?;
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("word serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for DicksonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.sorted_terms().into_iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let factors: Vec<String> = t
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("c{j}") } else { format!("c{j}^{e}") })
                .collect();
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                f.write_str(&factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DicksonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DicksonWord[k={}]({})", self.k, self)
    }
}

/// One case of Hung's formula for `Sq^i c_s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HungCase {
    /// `i = 2^s - 2^r`: `c_r`.
    Single { r: usize },
    /// `i = 2^k - 2^t + 2^s - 2^r`, `r <= s < t`: `c_r c_t`.
    Pair { r: usize, t: usize },
    /// `i = 2^k - 2^s`: `c_s^2`.
    Square,
}

/// Every case of Hung's formula that matches `(k, i, s)`.
pub fn hung_cases(k: usize, i: u64, s: usize) -> Result<Vec<HungCase>> {
    check_k(k)?;
    check_j(k, s)?;
    let p = |n: usize| 1u64 << n;
    let mut out = Vec::new();
    for r in 0..=s {
        if i == p(s) - p(r) {
            out.push(HungCase::Single { r });
        }
    }
    for r in 0..=s {
        for t in s + 1..k {
            if i == p(k) - p(t) + p(s) - p(r) {
                out.push(HungCase::Pair { r, t });
            }
        }
    }
    if i == p(k) - p(s) {
        out.push(HungCase::Square);
    }
    Ok(out)
}

/// The right-hand side of Hung's formula for `Sq^i c_s` as a word; matching
/// cases are summed.
pub fn hung_rhs(k: usize, i: u64, s: usize) -> Result<DicksonWord> {
    let mut w = DicksonWord::zero(k)?;
    for case in hung_cases(k, i, s)? {
        let term = match case {
            HungCase::Single { r } => DicksonWord::generator(k, r as i32)?,
            HungCase::Pair { r, t } => {
                DicksonWord::generator(k, r as i32)?.mul(&DicksonWord::generator(k, t as i32)?)?
            }
            HungCase::Square => DicksonWord::generator(k, s as i32)?.pow(2)?,
        };
        w = w.add(&term)?;
    }
    Ok(w)
}

/// `D_k` with its generators expanded once.
#[derive(Clone, Debug)]
pub struct DicksonAlgebra {
    k: usize,
    generators: Vec<F2Poly>,
}

impl DicksonAlgebra {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k)?;
        let generators = (0..k).map(|j| dickson_generator(k, j)).collect::<Result<_>>()?;
        Ok(DicksonAlgebra { k, generators })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self, j: usize) -> &F2Poly {
        &self.generators[j]
    }

    /// Substitute the generators into a word and multiply out.
    pub fn expand(&self, w: &DicksonWord) -> Result<F2Poly> {
        if w.k != self.k {
            return Err(Error::VariableMismatch {
                left: self.k,
                right: w.k,
            });
        }
        let mut acc = F2Poly::zero(self.k)?;
        for t in &w.terms {
            acc = acc.checked_add(&self.expand_monomial(t)?)?;
        }
        Ok(acc)
    }

    fn expand_monomial(&self, exps: &[u32]) -> Result<F2Poly> {
        let mut prod = F2Poly::one(self.k)?;
        for (j, &e) in exps.iter().enumerate() {
            if e > 0 {
                prod = prod.checked_mul(&self.generators[j].pow(e)?)?;
            }
        }
        Ok(prod)
    }

    /// Leading exponent of `c_j`: `x1^(2^(k-1)) x2^(2^(k-2)) .. x_{k-j}^(2^j)`.
    pub fn generator_leading_term(&self, j: usize) -> Result<ExponentVector> {
        check_j(self.k, j)?;
        let exps: Vec<u32> = (0..self.k)
            .map(|t| if t < self.k - j { 1 << (self.k - 1 - t) } else { 0 })
            .collect();
        ExponentVector::new(&exps)
    }

    /// Writes `p` as a polynomial in the generators by repeatedly matching its
    /// leading term against a product of generator leading terms.
    pub fn subduct(&self, p: &F2Poly) -> Result<DicksonWord> {
        if p.k() != self.k {
            return Err(Error::VariableMismatch {
                left: self.k,
                right: p.k(),
            });
        }
        let k = self.k;
        let mut word = DicksonWord::zero(k)?;
        let mut rest = p.clone();
        while let Some(&lead) = rest.leading_term() {
            // x_t's exponent in prod c_j^{a_j} is 2^(k-1-t) * (a_0 + .. + a_{k-1-t})
            let mut cumulative = vec![0u32; k];
            for t in 0..k {
                let weight = 1u32 << (k - 1 - t);
                let e = lead.exps()[t];
                if e % weight != 0 {
                    return Err(Error::NotInAlgebra(lead.to_string()));
                }
                cumulative[k - 1 - t] = e / weight;
            }
            let mut a = vec![0u32; k];
            for m in 0..k {
                let prev = if m == 0 { 0 } else { cumulative[m - 1] };
                a[m] = cumulative[m]
                    .checked_sub(prev)
                    .ok_or_else(|| Error::NotInAlgebra(lead.to_string()))?;
            }
            if a.iter().all(|&x| x == 0) && !lead.is_one() {
                return Err(Error::NotInAlgebra(lead.to_string()));
            }
            let image = self.expand_monomial(&a)?;
            debug_assert_eq!(image.leading_term(), Some(&lead));
            rest = rest.checked_add(&image)?;
            if rest.leading_term().is_some_and(|l| *l >= lead) {
                return Err(Error::NotInAlgebra(lead.to_string()));
            }
            word.toggle(a);
        }
        Ok(word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plj::{p_by_division, PljQuery};

    fn p(k: usize, s: &str) -> F2Poly {
        F2Poly::parse(k, s).unwrap()
    }

    fn c(k: usize, j: i32) -> DicksonWord {
        DicksonWord::generator(k, j).unwrap()
    }

    #[test]
    fn generator_examples() {
        assert_eq!(dickson_generator(2, 0).unwrap(), p(2, "x1^2*x2 + x1*x2^2"));
        assert_eq!(dickson_generator(2, 1).unwrap(), p(2, "x1^2 + x1*x2 + x2^2"));
        assert_eq!(
            dickson_generator(3, 0).unwrap(),
            crate::symfun::monomial_symmetric(3, &[4, 2, 1]).unwrap()
        );
        for k in 1..=4 {
            for j in 0..k {
                let q = PljQuery::new(k, k as u32, j as u32).unwrap();
                assert_eq!(dickson_generator(k, j).unwrap(), p_by_division(q).unwrap());
            }
        }
        assert!(dickson_generator(2, 2).is_err());
    }

    #[test]
    fn total_square_examples() {
        assert_eq!(total_square(&p(2, "x1")).unwrap(), p(2, "x1 + x1^2"));
        assert_eq!(
            total_square(&p(2, "x1*x2")).unwrap(),
            &p(2, "x1 + x1^2") * &p(2, "x2 + x2^2")
        );
        let (a, b) = (p(2, "x1^3 + x2"), p(2, "x1*x2^2 + 1"));
        assert_eq!(
            total_square(&(&a + &b)).unwrap(),
            &total_square(&a).unwrap() + &total_square(&b).unwrap()
        );
    }

    #[test]
    fn sq_examples() {
        let c1 = p(2, "x1^2 + x1*x2 + x2^2");
        assert_eq!(sq(1, &c1).unwrap(), p(2, "x1^2*x2 + x1*x2^2"));
        assert_eq!(sq(0, &c1).unwrap(), c1);
        assert_eq!(sq(2, &c1).unwrap(), c1.square().unwrap());
        assert!(sq(3, &c1).unwrap().is_zero());
        // Sq^1 x^3 = x^4, Sq^2 x^3 = x^5
        assert_eq!(sq(1, &p(1, "x1^3")).unwrap(), p(1, "x1^4"));
        assert_eq!(sq(2, &p(1, "x1^3")).unwrap(), p(1, "x1^5"));
    }

    #[test]
    fn sq_is_component_of_total_square() {
        let q = p(3, "x1^5*x2 + x1*x2^2*x3^3 + x3^6 + x2^4*x3^2");
        let total = total_square(&q).unwrap();
        for i in 0..=7 {
            assert_eq!(sq(i, &q).unwrap(), total.homogeneous_component(6 + i), "i={i}");
        }
    }

    #[test]
    fn hung_examples() {
        assert_eq!(hung_rhs(2, 1, 1).unwrap(), c(2, 0));
        for k in 1..=4 {
            for s in 0..k {
                assert_eq!(hung_rhs(k, 0, s).unwrap(), c(k, s as i32));
                assert_eq!(
                    hung_rhs(k, (1 << k) - (1 << s), s).unwrap(),
                    c(k, s as i32).pow(2).unwrap()
                );
            }
        }
        assert!(hung_rhs(3, 1, 3).is_err());
    }

    #[test]
    fn word_text_and_json() {
        let w = c(3, 0).pow(2).unwrap().mul(&c(3, 2)).unwrap().add(&c(3, 1)).unwrap();
        assert_eq!(w.to_string(), "c0^2*c2 + c1");
        assert_eq!(DicksonWord::zero(3).unwrap().to_string(), "0");
        assert_eq!(DicksonWord::one(3).unwrap().to_string(), "1");
        assert_eq!(w.to_json(), r#"{"k":3,"terms":[[2,0,1],[0,1,0]]}"#);
        assert_eq!(DicksonWord::from_json(&w.to_json()).unwrap(), w);
        assert!(c(3, -1).is_zero());
    }

    #[test]
    fn expand_examples() {
        let d = DicksonAlgebra::new(3).unwrap();
        assert_eq!(d.expand(&c(3, 1)).unwrap(), dickson_generator(3, 1).unwrap());
        assert!(d.expand(&DicksonWord::zero(3).unwrap()).unwrap().is_zero());
        let w = c(3, 0).mul(&c(3, 2).pow(2).unwrap()).unwrap();
        assert_eq!(
            d.expand(&w).unwrap(),
            p_by_division(PljQuery::new(3, 4, 0).unwrap()).unwrap()
        );
    }

    #[test]
    fn leading_terms() {
        let d = DicksonAlgebra::new(4).unwrap();
        for j in 0..4 {
            assert_eq!(
                d.generator(j).leading_term(),
                Some(&d.generator_leading_term(j).unwrap())
            );
        }
    }

    #[test]
    fn subduct_examples() {
        for k in 2..=4 {
            let d = DicksonAlgebra::new(k).unwrap();
            for j in 0..k {
                assert_eq!(d.subduct(d.generator(j)).unwrap(), c(k, j as i32));
                let q = PljQuery::new(k, k as u32 + 1, j as u32).unwrap();
                let want = c(k, j as i32 - 1)
                    .pow(2)
                    .unwrap()
                    .add(&c(k, j as i32).mul(&c(k, k as i32 - 1).pow(2).unwrap()).unwrap())
                    .unwrap();
                assert_eq!(d.subduct(&p_by_division(q).unwrap()).unwrap(), want, "k={k} j={j}");
            }
        }
        let d = DicksonAlgebra::new(3).unwrap();
        assert!(matches!(d.subduct(&p(3, "x1")), Err(Error::NotInAlgebra(_))));
        assert!(matches!(d.subduct(&p(3, "x1^4*x2^2*x3")), Err(Error::NotInAlgebra(_))));
        assert!(d.subduct(&F2Poly::one(3).unwrap()).unwrap() == DicksonWord::one(3).unwrap());
    }
}
