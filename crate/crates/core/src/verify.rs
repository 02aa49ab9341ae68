//! Identity suites. Each suite sweeps a range of `(k, l, j)` cells and
//! reports one [`Check`] per identity instance.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dickson::{dickson_generator, hung_cases, hung_rhs, sq, DicksonAlgebra, DicksonWord};
use crate::error::{Error, Result};
use crate::f2poly::{BitMatrix, ExponentVector, F2Poly};
use crate::plj::{
    p0_by_partitions, p0_by_surjections, p_by_system, p_closed_ell_eq_k, p_closed_k3, parity_census, pdef_denominator,
    pdef_numerator, ratio_with_top_exponent, PljQuery, PljTable, DEFAULT_BUDGET,
};
use crate::symfun::monomial_symmetric;

pub const DEFAULT_SEED: u64 = 0x5eed_2018;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Pdef,
    System,
    Thm2,
    Thm3,
    Thm4,
    Biglem,
    Dickson,
    Steenrod,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Pdef,
        Suite::System,
        Suite::Thm2,
        Suite::Thm3,
        Suite::Thm4,
        Suite::Biglem,
        Suite::Dickson,
        Suite::Steenrod,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pdef => "pdef",
            Suite::System => "system",
            Suite::Thm2 => "thm2",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::Biglem => "biglem",
            Suite::Dickson => "dickson",
            Suite::Steenrod => "steenrod",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }

    fn from_result(name: impl Into<String>, r: Result<bool>) -> Self {
        match r {
            Ok(ok) => Check::new(name, ok),
            Err(e) => Check::new(name, false).with_detail(e.to_string()),
        }
    }
}

/// Sweep limits. `None` means the suite's default range.
#[derive(Clone, Debug)]
pub struct Bounds {
    pub k_max: Option<usize>,
    pub k: Option<usize>,
    pub ell: Option<u32>,
    pub budget: u64,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            k_max: None,
            k: None,
            ell: None,
            budget: DEFAULT_BUDGET,
            seed: DEFAULT_SEED,
        }
    }
}

impl Bounds {
    fn ks(&self, default_min: usize, default_max: usize) -> Vec<usize> {
        match self.k {
            Some(k) => vec![k],
            None => (default_min..=self.k_max.unwrap_or(default_max)).collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Runs a suite. Budget exhaustion and out-of-range bounds are errors; failed
/// identities are not.
pub fn run_suite(suite: Suite, bounds: &Bounds, table: &PljTable) -> Result<SuiteReport> {
    let start = Instant::now();
    let checks = match suite {
        Suite::Pdef => pdef_suite(bounds, table)?,
        Suite::System => system_suite(bounds, table)?,
        Suite::Thm2 => thm2_suite(bounds, table)?,
        Suite::Thm3 => thm3_suite(bounds, table)?,
        Suite::Thm4 => thm4_suite(bounds, table)?,
        Suite::Biglem => biglem_suite(bounds)?,
        Suite::Dickson => dickson_suite(bounds, table)?,
        Suite::Steenrod => steenrod_suite(bounds, table)?,
    };
    Ok(SuiteReport {
        suite,
        checks,
        elapsed: start.elapsed(),
    })
}

/// `(k, l)` cells with `k <= l <= k + extra`, or the single requested cell.
fn cells(bounds: &Bounds, k_min: usize, k_max: usize, extra: u32) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    for k in bounds.ks(k_min, k_max) {
        match bounds.ell {
            Some(ell) => out.push((k, ell)),
            None => out.extend((k as u32..=k as u32 + extra).map(|ell| (k, ell))),
        }
    }
    out
}

fn plj(table: &PljTable, k: usize, ell: u32, j: u32) -> Result<F2Poly> {
    table.get(PljQuery::new(k, ell, j)?).map(|p| (*p).clone())
}

fn pdef_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    let mut checks: Vec<Check> = cells(bounds, 1, 4, 3)
        .par_iter()
        .flat_map_iter(|&(k, ell)| {
            (0..k as u32).map(move |j| {
                let name = format!("pdef identity k={k} l={ell} j={j}");
                Check::from_result(
                    name,
                    (|| {
                        let p = plj(table, k, ell, j)?;
                        let lhs = p.checked_mul(&pdef_denominator(k)?)?;
                        let deg = PljQuery::new(k, ell, j)?.degree();
                        Ok(lhs == pdef_numerator(k, j, 1 << ell)?
                            && p.is_symmetric()
                            && p.is_homogeneous()
                            && p.degree() == Some(deg))
                    })(),
                )
            })
        })
        .collect();
    for j in 0..3 {
        let r = ratio_with_top_exponent(3, j, 6);
        checks.push(
            Check::new(
                format!("non-2-power top exponent 6 not divisible k=3 j={j}"),
                matches!(r, Err(Error::NotDivisible(_))),
            )
            .with_detail(match r {
                Ok(q) => format!("unexpected quotient {q}"),
                Err(e) => e.to_string(),
            }),
        );
    }
    Ok(checks)
}

/// `sum_j p_{l,j} x_i^(2^j - 1) == x_i^(2^l - 1)` for every `i`.
pub fn system_identity_holds(k: usize, ell: u32, ps: &[F2Poly]) -> Result<bool> {
    for i in 0..k {
        let mut lhs = F2Poly::zero(k)?;
        for (j, p) in ps.iter().enumerate() {
            lhs = lhs.checked_add(&p.mul_monomial(&ExponentVector::var_power(k, i, (1 << j) - 1)?)?)?;
        }
        if lhs != F2Poly::monomial(ExponentVector::var_power(k, i, (1 << ell) - 1)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn system_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    Ok(cells(bounds, 1, 4, 3)
        .par_iter()
        .flat_map_iter(|&(k, ell)| {
            let by_div: Result<Vec<F2Poly>> = (0..k as u32).map(|j| plj(table, k, ell, j)).collect();
            let by_sys = p_by_system(k, ell);
            let ident = by_div
                .as_ref()
                .map_err(Clone::clone)
                .and_then(|ps| system_identity_holds(k, ell, ps));
            let agree = match (&by_div, &by_sys) {
                (Ok(a), Ok(b)) => Ok(a == b),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            };
            [
                Check::from_result(format!("system identity k={k} l={ell}"), ident),
                Check::from_result(format!("Cramer solution equals division k={k} l={ell}"), agree),
            ]
        })
        .collect())
}

fn thm2_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    if let Some(k) = bounds.k.filter(|&k| k != 3) {
        return Err(Error::InvalidArgument(format!(
            "suite thm2 requires k = 3, got k = {k}"
        )));
    }
    let ells: Vec<u32> = match bounds.ell {
        Some(l) => vec![l],
        None => (3..=7).collect(),
    };
    Ok(ells
        .par_iter()
        .flat_map_iter(|&ell| {
            (0..3u32).map(move |j| {
                Check::from_result(
                    format!("k=3 closed form k=3 l={ell} j={j}"),
                    (|| Ok(p_closed_k3(ell, j)? == plj(table, 3, ell, j)?))(),
                )
            })
        })
        .collect())
}

fn thm3_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    Ok(bounds
        .ks(1, 5)
        .into_par_iter()
        .flat_map_iter(|k| {
            (0..k as u32).map(move |j| {
                Check::from_result(
                    format!("l=k closed form k={k} l={k} j={j}"),
                    (|| Ok(p_closed_ell_eq_k(k, j)? == plj(table, k, k as u32, j)?))(),
                )
            })
        })
        .collect())
}

fn thm4_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    let mut checks: Vec<Check> = cells(bounds, 1, 4, 3)
        .par_iter()
        .map(|&(k, ell)| {
            Check::from_result(
                format!("surjections == partitions == division k={k} l={ell} j=0"),
                (|| {
                    let a = p0_by_surjections(k, ell)?;
                    let b = p0_by_partitions(k, ell)?;
                    Ok(a == b && b == plj(table, k, ell, 0)?)
                })(),
            )
        })
        .collect();
    // m_{2, 4, .., 2^(k-1), 2^l} = m_{1, .., 2^(k-1)} * sum m_{||S||}
    let product_cells: Vec<(usize, u32)> = match bounds.k {
        Some(k) if k <= 3 => (k as u32..=5.max(k as u32)).map(|l| (k, l)).collect(),
        Some(_) => Vec::new(),
        None => (1..=3).flat_map(|k| (k as u32..=5).map(move |l| (k, l))).collect(),
    };
    for (k, ell) in product_cells {
        checks.push(Check::from_result(
            format!("product identity k={k} l={ell}"),
            (|| {
                let mut parts: Vec<u32> = (1..k as u32).map(|i| 1 << i).collect();
                parts.push(1 << ell);
                Ok(monomial_symmetric(k, &parts)? == pdef_denominator(k)?.checked_mul(&p0_by_partitions(k, ell)?)?)
            })(),
        ));
    }
    Ok(checks)
}

pub const BIGLEM_CELLS: [(usize, u32); 6] = [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (3, 5)];

fn biglem_suite(bounds: &Bounds) -> Result<Vec<Check>> {
    let cells: Vec<(usize, u32)> = match (bounds.k, bounds.ell) {
        (Some(k), Some(ell)) => vec![(k, ell)],
        (Some(k), None) => BIGLEM_CELLS.iter().copied().filter(|c| c.0 == k).collect(),
        _ => BIGLEM_CELLS.to_vec(),
    };
    let mut checks = Vec::new();
    for (k, ell) in cells {
        let census = parity_census(k, ell, bounds.budget)?;
        let odd = census.odd_tuples();
        checks.push(
            Check::new(format!("parity census k={k} l={ell}"), census.matches_expectation()).with_detail(format!(
                "{} matrices, {} odd tuples: {}",
                census.matrices,
                odd.len(),
                census.to_json(false)
            )),
        );
    }
    Ok(checks)
}

/// Uniformly random invertible `n x n` bit matrix (rejection sampling).
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> BitMatrix {
    loop {
        let masks: Vec<u32> = (0..n).map(|_| rng.random_range(0..1u32 << n)).collect();
        let m = BitMatrix::from_row_masks(n, &masks);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Random polynomial with up to `max_terms` terms and exponents `<= max_exp`.
pub fn random_poly<R: Rng>(rng: &mut R, k: usize, max_terms: usize, max_exp: u32) -> F2Poly {
    let n = rng.random_range(0..=max_terms);
    let terms: Vec<ExponentVector> = (0..n)
        .map(|_| {
            let exps: Vec<u32> = (0..k).map(|_| rng.random_range(0..=max_exp)).collect();
            ExponentVector::new(&exps).expect("small exponents")
        })
        .collect();
    F2Poly::from_terms(k, terms).expect("valid k")
}

fn gl_invariant(p: &F2Poly, mats: &[BitMatrix]) -> Result<bool> {
    for a in mats {
        if p.substitute_linear(a)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

fn word(k: usize, factors: &[(i32, u32)]) -> Result<DicksonWord> {
    let mut w = DicksonWord::one(k)?;
    for &(j, e) in factors {
        w = w.mul(&DicksonWord::generator(k, j)?.pow(e)?)?;
    }
    Ok(w)
}

fn sum_words(k: usize, ws: &[DicksonWord]) -> Result<DicksonWord> {
    ws.iter().try_fold(DicksonWord::zero(k)?, |a, b| a.add(b))
}

/// `c_{j-1}^2 + c_j c_{k-1}^2`; negative indices read as zero.
pub fn formula_k_plus_1(k: usize, j: i32) -> Result<DicksonWord> {
    let kk = k as i32;
    sum_words(k, &[word(k, &[(j - 1, 2)])?, word(k, &[(j, 1), (kk - 1, 2)])?])
}

/// `c_j c_{k-2}^4 + c_j c_{k-1}^6 + c_{j-1}^2 c_{k-1}^4 + c_{j-2}^4`.
pub fn formula_k_plus_2(k: usize, j: i32) -> Result<DicksonWord> {
    let kk = k as i32;
    sum_words(
        k,
        &[
            word(k, &[(j, 1), (kk - 2, 4)])?,
            word(k, &[(j, 1), (kk - 1, 6)])?,
            word(k, &[(j - 1, 2), (kk - 1, 4)])?,
            word(k, &[(j - 2, 4)])?,
        ],
    )
}

fn dickson_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // p_{k,j} = c_j, and c_j is the 2-power monomial sum (checked both ways)
    for k in bounds.ks(1, 5) {
        for j in 0..k {
            checks.push(Check::from_result(
                format!("p_(k,j) == c_j k={k} l={k} j={j}"),
                (|| {
                    let c = dickson_generator(k, j)?;
                    Ok(c == plj(table, k, k as u32, j as u32)? && c == p_closed_ell_eq_k(k, j as u32)?)
                })(),
            ));
        }
    }
    // p_{l,0} = c_0 p_{l-1,k-1}^2
    for k in bounds.ks(1, 4) {
        for ell in k as u32 + 1..=k as u32 + 3 {
            checks.push(Check::from_result(
                format!("p_(l,0) == c_0 p_(l-1,k-1)^2 k={k} l={ell}"),
                (|| {
                    let rhs = dickson_generator(k, 0)?.checked_mul(&plj(table, k, ell - 1, k as u32 - 1)?.square()?)?;
                    Ok(plj(table, k, ell, 0)? == rhs)
                })(),
            ));
        }
    }
    // closed forms for l = k+1, k+2, both by expansion and by subduction
    for k in bounds.ks(3, 4).into_iter().filter(|&k| k >= 2) {
        let alg = DicksonAlgebra::new(k)?;
        for j in 0..k as i32 {
            for (offset, f) in [
                (1u32, formula_k_plus_1 as fn(usize, i32) -> Result<DicksonWord>),
                (2, formula_k_plus_2),
            ] {
                if offset == 2 && k < 3 {
                    continue;
                }
                let ell = k as u32 + offset;
                checks.push(Check::from_result(
                    format!("Dickson expression for p_(k+{offset},j) k={k} l={ell} j={j}"),
                    (|| {
                        let w = f(k, j)?;
                        let p = plj(table, k, ell, j as u32)?;
                        Ok(alg.expand(&w)? == p && alg.subduct(&p)? == w)
                    })(),
                ));
            }
        }
    }
    // GL-invariance: exhaustive for k <= 3, random for k = 4
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    for k in bounds.ks(1, 4) {
        let (mats, label) = if k <= 3 {
            (BitMatrix::general_linear_group(k), "all of GL")
        } else {
            (
                (0..50).map(|_| random_invertible(&mut rng, k)).collect(),
                "50 random elements of GL",
            )
        };
        let top = if k <= 3 { k as u32 + 2 } else { k as u32 + 1 };
        let cells: Vec<(u32, u32)> = (k as u32..=top)
            .flat_map(|l| (0..k as u32).map(move |j| (l, j)))
            .collect();
        checks.par_extend(cells.par_iter().map(|&(ell, j)| {
            Check::from_result(
                format!("GL-invariance ({label}, {} matrices) k={k} l={ell} j={j}", mats.len()),
                (|| gl_invariant(&plj(table, k, ell, j)?, &mats))(),
            )
        }));
        for j in 0..k {
            checks.push(Check::from_result(
                format!("GL-invariance of c_j ({label}) k={k} j={j}"),
                (|| gl_invariant(&dickson_generator(k, j)?, &mats))(),
            ));
        }
    }
    Ok(checks)
}

fn steenrod_suite(bounds: &Bounds, table: &PljTable) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for k in bounds.ks(1, 4) {
        let alg = DicksonAlgebra::new(k)?;
        for s in 0..k {
            let mut ok = true;
            let mut detail = String::new();
            for i in 0..=(1u64 << k) {
                let cases = hung_cases(k, i, s)?;
                if cases.len() > 1 {
                    detail.push_str(&format!("i={i} matches {} cases; ", cases.len()));
                }
                let lhs = sq(i as u32, alg.generator(s))?;
                if alg.expand(&hung_rhs(k, i, s)?)? != lhs {
                    ok = false;
                    detail.push_str(&format!("mismatch at i={i}; "));
                }
            }
            checks.push(Check::new(format!("Sq^i c_s formula k={k} s={s} (i <= 2^k)"), ok).with_detail(detail));
        }
    }
    let cells = cells(bounds, 1, 4, 2);
    checks.par_extend(cells.par_iter().flat_map_iter(|&(k, ell)| {
        (0..k as u32).map(move |j| {
            Check::from_result(
                format!("Sq^(2^i) p_(l,j) k={k} l={ell} j={j}"),
                (|| {
                    let p = plj(table, k, ell, j)?;
                    for i in 0..(k as u32).saturating_sub(1) {
                        let got = sq(1 << i, &p)?;
                        let ok = if j >= 1 && i == j - 1 {
                            got == plj(table, k, ell, j - 1)?
                        } else {
                            got.is_zero()
                        };
                        if !ok {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                })(),
            )
        })
    }));
    checks.par_extend(cells.par_iter().map(|&(k, ell)| {
        Check::from_result(
            format!("p_(l+1,k-1) == sum_j c_j Sq^(2^l-2^k+2^j) p_(l,k-1) k={k} l={ell}"),
            (|| {
                let p = plj(table, k, ell, k as u32 - 1)?;
                let mut rhs = F2Poly::zero(k)?;
                for j in 0..k {
                    let i = (1u32 << ell) - (1u32 << k) + (1u32 << j);
                    rhs = rhs.checked_add(&dickson_generator(k, j)?.checked_mul(&sq(i, &p)?)?)?;
                }
                Ok(rhs == plj(table, k, ell + 1, k as u32 - 1)?)
            })(),
        )
    }));
    // Cartan formula on random pairs
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed ^ 0xca57a);
    let mut ok = true;
    let cases = 200;
    for _ in 0..cases {
        let k = rng.random_range(1..=3);
        let a = random_poly(&mut rng, k, 6, 5);
        let b = random_poly(&mut rng, k, 6, 5);
        let n = rng.random_range(0..=12);
        if !cartan_holds(n, &a, &b)? {
            ok = false;
        }
    }
    checks.push(Check::new(format!("Cartan formula ({cases} random pairs)"), ok));
    Ok(checks)
}

/// `Sq^n(ab) == sum_i Sq^i a Sq^(n-i) b`.
pub fn cartan_holds(n: u32, a: &F2Poly, b: &F2Poly) -> Result<bool> {
    let lhs = sq(n, &a.checked_mul(b)?)?;
    let mut rhs = F2Poly::zero(a.k())?;
    for i in 0..=n {
        rhs = rhs.checked_add(&sq(i, a)?.checked_mul(&sq(n - i, b)?)?)?;
    }
    Ok(lhs == rhs)
}
