//! The `v_j`-action on tensor classes `z_I`, one filtration step at a time.
//!
//! Monomials act on `z_I` by lowering indices, `x^E . z_I = z_{I-E}`, and a
//! class with a nonpositive index is zero. The `v_j`-action from `F_s/F_{s+1}`
//! to `F_{s+1}/F_{s+2}` is `sum_{l >= k} v_l p_{l,j}`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2poly::{check_k, F2Poly};
use crate::plj::{PljQuery, PljTable, MAX_ELL};
use crate::symfun::two_power_monomial_sum;

/// Indices `(i_1, .., i_k)` of `z_I`, all at least 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct IndexTuple(Vec<u32>);

impl IndexTuple {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        check_k(entries.len())?;
        if entries.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "index tuple {entries:?} has a nonpositive entry"
            )));
        }
        Ok(IndexTuple(entries))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `sum_t (i_t - 1)`, the largest degree that can act without killing `z_I`.
    pub fn excess(&self) -> u64 {
        self.0.iter().map(|&i| (i - 1) as u64).sum()
    }

    /// Componentwise `<=`.
    pub fn is_below(&self, other: &IndexTuple) -> bool {
        self.k() == other.k() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl TryFrom<Vec<u32>> for IndexTuple {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        IndexTuple::new(v)
    }
}

impl From<IndexTuple> for Vec<u32> {
    fn from(t: IndexTuple) -> Self {
        t.0
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "z({})", parts.join(","))
    }
}

impl FromStr for IndexTuple {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `5,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad index {:?}", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        IndexTuple::new(entries)
    }
}

/// `p . z_I` as an F2-sum of classes: terms that would push an index to zero
/// or below are dropped, repeats cancel.
pub fn act_polynomial(p: &F2Poly, index: &IndexTuple) -> Result<BTreeSet<IndexTuple>> {
    if p.k() != index.k() {
        return Err(Error::VariableMismatch {
            left: p.k(),
            right: index.k(),
        });
    }
    let mut out = BTreeSet::new();
    for m in p.terms() {
        if m.exps().iter().zip(index.entries()).all(|(&e, &i)| e < i) {
            let lowered = IndexTuple(index.entries().iter().zip(m.exps()).map(|(&i, &e)| i - e).collect());
            if !out.remove(&lowered) {
                out.insert(lowered);
            }
        }
    }
    Ok(out)
}

/// An element of `F_1/F_2`: an F2-sum of `v_l z_I` with `l >= k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GradedElement {
    terms: BTreeSet<(u32, IndexTuple)>,
}

#[derive(Serialize, Deserialize)]
struct GradedTermJson {
    ell: u32,
    z: IndexTuple,
}

#[derive(Serialize, Deserialize)]
struct GradedJson {
    terms: Vec<GradedTermJson>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
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

    /// Terms in canonical order: increasing `l`, then increasing index tuple.
    pub fn terms(&self) -> impl Iterator<Item = (u32, &IndexTuple)> {
        self.terms.iter().map(|(l, z)| (*l, z))
    }

    pub fn toggle(&mut self, ell: u32, z: IndexTuple) {
        let key = (ell, z);
        if !self.terms.remove(&key) {
            self.terms.insert(key);
        }
    }

    /// The classes multiplying `v_l`.
    pub fn component(&self, ell: u32) -> BTreeSet<IndexTuple> {
        self.terms
            .iter()
            .filter(|(l, _)| *l == ell)
            .map(|(_, z)| z.clone())
            .collect()
    }

    pub fn to_json(&self) -> String {
        let j = GradedJson {
            terms: self
                .terms
                .iter()
                .map(|(l, z)| GradedTermJson { ell: *l, z: z.clone() })
                .collect(),
        };
        serde_json::to_string(&j).expect("graded element serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GradedJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = GradedElement::zero();
        for t in j.terms {
            out.toggle(t.ell, t.z);
        }
        Ok(out)
    }
}

impl fmt::Display for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (ell, z)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "v{ell} * {z}")?;
        }
        Ok(())
    }
}

/// Evaluates `v_j`-actions for a fixed number of tensor factors, memoizing
/// the `p_{l,j}` it needs.
pub struct VAction {
    k: usize,
    table: PljTable,
}

impl VAction {
    pub fn new(k: usize) -> Result<Self> {
        check_k(k)?;
        Ok(VAction {
            k,
            table: PljTable::new(),
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn check(&self, j: u32, index: &IndexTuple) -> Result<()> {
        if index.k() != self.k {
            return Err(Error::VariableMismatch {
                left: self.k,
                right: index.k(),
            });
        }
        if j as usize >= self.k {
            return Err(Error::InvalidArgument(format!(
                "need 0 <= j <= k-1, got j={j}, k={}",
                self.k
            )));
        }
        Ok(())
    }

    /// Largest `l` whose `p_{l,j}` can act nontrivially on `z_I`:
    /// `2^l - 2^j <= sum (i_t - 1)`. `None` when even `l = k` is too big.
    pub fn max_ell(&self, j: u32, index: &IndexTuple) -> Option<u32> {
        let budget = index.excess() + (1u64 << j);
        // 2^l <= budget
        let top = 63 - budget.leading_zeros();
        (top as usize >= self.k).then_some(top)
    }

    /// The `v_l`-components of `v_j . z_I` for `k <= l <= ell_max`.
    pub fn vj_action_through(&self, j: u32, index: &IndexTuple, ell_max: u32) -> Result<GradedElement> {
        self.check(j, index)?;
        let mut out = GradedElement::zero();
        for ell in self.k as u32..=ell_max.min(MAX_ELL) {
            let p = self.table.get(PljQuery::new(self.k, ell, j)?)?;
            for z in act_polynomial(&p, index)? {
                out.toggle(ell, z);
            }
        }
        Ok(out)
    }

    /// `v_j . z_I` mod higher filtration. The sum over `l` is finite: beyond
    /// [`VAction::max_ell`] every term of `p_{l,j}` kills `z_I`.
    pub fn vj_action(&self, j: u32, index: &IndexTuple) -> Result<GradedElement> {
        self.check(j, index)?;
        match self.max_ell(j, index) {
            Some(top) => self.vj_action_through(j, index, top),
            None => Ok(GradedElement::zero()),
        }
    }

    /// Multiplication by 2, i.e. the `v_0`-action.
    pub fn two_times(&self, index: &IndexTuple) -> Result<GradedElement> {
        self.vj_action(0, index)
    }

    /// The `v_k`-coefficient of `v_j . z_I` in the `BP<k>` truncation: the sum
    /// of `z_{I-E}` over `E` with 2-power nonzero entries summing to
    /// `2^k - 2^j`.
    pub fn bp_k_action(&self, j: u32, index: &IndexTuple) -> Result<BTreeSet<IndexTuple>> {
        self.check(j, index)?;
        let d = (1u32 << self.k) - (1u32 << j);
        act_polynomial(&two_power_monomial_sum(self.k, d)?, index)
    }
}
