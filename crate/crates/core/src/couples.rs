//! Fundamental and balanced couples.
//!
//! A fundamental couple `[I, J]` is determined by its strictly increasing
//! chain `i_1 ≺ … ≺ i_m` of gaps (with `i_0 = 0` prepended), so enumerating
//! couples is enumerating chains in the gap poset.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{GapPresentation, SemigroupPair};

/// An `(α, β)`-fundamental couple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FundamentalCouple {
    #[serde(rename = "I")]
    i: Vec<i64>,
    #[serde(rename = "J")]
    j: Vec<i64>,
}

impl FundamentalCouple {
    /// Wraps `I`, `J` after checking every defining condition.
    pub fn new(pair: &SemigroupPair, i: Vec<i64>, j: Vec<i64>) -> Option<Self> {
        is_fundamental(pair, &i, &j).then_some(Self { i, j })
    }

    pub fn i(&self) -> &[i64] {
        &self.i
    }

    pub fn j(&self) -> &[i64] {
        &self.j
    }

    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_balanced(&self) -> BalancedCouple {
        BalancedCouple {
            i: self.i.clone(),
            j: self.j.clone(),
        }
    }
}

/// An `(α, β)`-balanced couple: only the congruence and ordering conditions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BalancedCouple {
    #[serde(rename = "I")]
    i: Vec<i64>,
    #[serde(rename = "J")]
    j: Vec<i64>,
}

impl BalancedCouple {
    pub fn new(pair: &SemigroupPair, i: Vec<i64>, j: Vec<i64>) -> Option<Self> {
        is_balanced(pair, &i, &j).then_some(Self { i, j })
    }

    pub fn i(&self) -> &[i64] {
        &self.i
    }

    pub fn j(&self) -> &[i64] {
        &self.j
    }

    pub fn len(&self) -> usize {
        self.i.len()
    }

    pub fn is_empty(&self) -> bool {
        self.i.is_empty()
    }

    pub fn is_reduced(&self, pair: &SemigroupPair) -> bool {
        is_reduced(pair, &self.i, &self.j)
    }

    /// Translates every entry by `−x`.
    pub fn shift(&self, x: i64) -> Self {
        Self {
            i: self.i.iter().map(|v| v - x).collect(),
            j: self.j.iter().map(|v| v - x).collect(),
        }
    }
}

/// Presentations of all gaps, indexed like `pair.gaps()`.
struct GapPoset {
    gaps: Vec<i64>,
    pres: Vec<GapPresentation>,
    /// `succ[k]`: indices `l` with `gaps[k] ≺ gaps[l]`, ascending by value.
    succ: Vec<Vec<usize>>,
}

impl GapPoset {
    fn new(pair: &SemigroupPair) -> Self {
        let gaps = pair.gaps();
        let pres: Vec<_> = gaps.iter().map(|&e| pair.present(e).unwrap()).collect();
        let succ = pres
            .iter()
            .map(|p| {
                pres.iter()
                    .enumerate()
                    .filter(|(_, q)| p.a > q.a && p.b < q.b)
                    .map(|(l, _)| l)
                    .collect()
            })
            .collect();
        Self { gaps, pres, succ }
    }

    fn couple(&self, pair: &SemigroupPair, chain: &[usize]) -> FundamentalCouple {
        let (alpha, beta, ab) = (pair.alpha(), pair.beta(), pair.product());
        let mut i = Vec::with_capacity(chain.len() + 1);
        let mut j = Vec::with_capacity(chain.len() + 1);
        i.push(0);
        if chain.is_empty() {
            j.push(ab);
            return FundamentalCouple { i, j };
        }
        j.push((beta - self.pres[chain[0]].a) * alpha);
        for w in chain.windows(2) {
            j.push(ab - self.pres[w[1]].a * alpha - self.pres[w[0]].b * beta);
        }
        j.push((alpha - self.pres[*chain.last().unwrap()].b) * beta);
        i.extend(chain.iter().map(|&k| self.gaps[k]));
        FundamentalCouple { i, j }
    }
}

/// Builds the couple of a `≺`-chain of gaps (the empty chain gives `[(0), (αβ)]`).
pub fn couple_from_chain(pair: &SemigroupPair, chain: &[i64]) -> Result<FundamentalCouple> {
    let mut pres = Vec::with_capacity(chain.len());
    for &e in chain {
        if !pair.is_gap(e) {
            return Err(Error::NotAGap(e));
        }
        pres.push(pair.present(e)?);
    }
    for (k, w) in pres.windows(2).enumerate() {
        if !(w[0].a > w[1].a && w[0].b < w[1].b) {
            return Err(Error::NotAChain(k + 1));
        }
    }
    let poset = GapPoset {
        gaps: chain.to_vec(),
        pres,
        succ: Vec::new(),
    };
    let idx: Vec<usize> = (0..chain.len()).collect();
    Ok(poset.couple(pair, &idx))
}

/// Depth-first iterator over all fundamental couples, in lexicographic
/// order of `I`.
pub struct CoupleIter {
    pair: SemigroupPair,
    poset: GapPoset,
    /// chain so far, with the position reached in each level's successor list
    chain: Vec<usize>,
    cursor: Vec<usize>,
    started: bool,
    roots: Vec<usize>,
}

impl CoupleIter {
    fn with_roots(pair: &SemigroupPair, roots: Option<Vec<usize>>) -> Self {
        let poset = GapPoset::new(pair);
        let include_empty = roots.is_none();
        let roots = roots.unwrap_or_else(|| (0..poset.gaps.len()).collect());
        Self {
            pair: *pair,
            poset,
            chain: Vec::new(),
            cursor: vec![0],
            started: !include_empty,
            roots,
        }
    }

    fn children(&self, depth: usize) -> &[usize] {
        if depth == 0 {
            &self.roots
        } else {
            &self.poset.succ[self.chain[depth - 1]]
        }
    }
}

impl Iterator for CoupleIter {
    type Item = FundamentalCouple;

    fn next(&mut self) -> Option<FundamentalCouple> {
        if !self.started {
            self.started = true;
            return Some(self.poset.couple(&self.pair, &[]));
        }
        loop {
            let depth = self.chain.len();
            let pos = *self.cursor.last()?;
            if let Some(&child) = self.children(depth).get(pos) {
                *self.cursor.last_mut().unwrap() += 1;
                self.chain.push(child);
                self.cursor.push(0);
                return Some(self.poset.couple(&self.pair, &self.chain));
            }
            self.cursor.pop();
            self.chain.pop()?;
        }
    }
}

/// Streams every fundamental couple.
pub fn iter(pair: &SemigroupPair) -> CoupleIter {
    CoupleIter::with_roots(pair, None)
}

/// All fundamental couples, lexicographic in `I`. Top-level chain starts are
/// explored in parallel and concatenated in order.
pub fn enumerate(pair: &SemigroupPair) -> Vec<FundamentalCouple> {
    let n_gaps = pair.genus() as usize;
    if n_gaps < 32 {
        return iter(pair).collect();
    }
    let mut out = vec![GapPoset::new(pair).couple(pair, &[])];
    let parts: Vec<Vec<FundamentalCouple>> = (0..n_gaps)
        .into_par_iter()
        .map(|root| CoupleIter::with_roots(pair, Some(vec![root])).collect())
        .collect();
    out.extend(parts.into_iter().flatten());
    out
}

/// Number of fundamental couples (chains in the gap poset, empty chain
/// included), by dynamic programming over the `≺`-DAG.
pub fn count(pair: &SemigroupPair) -> BigUint {
    let poset = GapPoset::new(pair);
    // e ≺ f forces a(e) > a(f): process in ascending a
    let mut order: Vec<usize> = (0..poset.gaps.len()).collect();
    order.sort_by_key(|&k| poset.pres[k].a);
    let mut chains_from = vec![BigUint::zero(); poset.gaps.len()];
    for &k in &order {
        let mut c = BigUint::one();
        for &l in &poset.succ[k] {
            c += &chains_from[l];
        }
        chains_from[k] = c;
    }
    chains_from.iter().fold(BigUint::one(), |acc, c| acc + c)
}

/// Literal check of the fundamental-couple conditions.
pub fn is_fundamental(pair: &SemigroupPair, i: &[i64], j: &[i64]) -> bool {
    let (alpha, beta, ab) = (pair.alpha(), pair.beta(), pair.product());
    if i.is_empty() || i.len() != j.len() || i[0] != 0 {
        return false;
    }
    let m = i.len() - 1;
    if !i[1..].iter().all(|&e| pair.is_gap(e)) {
        return false;
    }
    if m >= 2 && !j[1..m].iter().all(|&e| pair.is_gap(e)) {
        return false;
    }
    if j[0] > ab || j[m] > ab {
        return false;
    }
    for k in 0..=m {
        if (i[k] - j[k]).rem_euclid(alpha) != 0 || i[k] >= j[k] {
            return false;
        }
    }
    for k in 0..m {
        if (j[k] - i[k + 1]).rem_euclid(beta) != 0 || j[k] <= i[k + 1] {
            return false;
        }
    }
    if (j[m] - i[0]).rem_euclid(beta) != 0 || j[m] < i[0] {
        return false;
    }
    for k in 1..=m {
        for l in k + 1..=m {
            if !pair.is_gap((i[k] - i[l]).abs()) {
                return false;
            }
        }
    }
    true
}

fn balanced_conditions(pair: &SemigroupPair, i: &[i64], j: &[i64], strict: bool) -> bool {
    let (alpha, beta) = (pair.alpha(), pair.beta());
    if i.is_empty() || i.len() != j.len() {
        return false;
    }
    let m = i.len() - 1;
    let below = |x: i64, y: i64| if strict { x < y } else { x <= y };
    for k in 0..=m {
        if (i[k] - j[k]).rem_euclid(alpha) != 0 || !below(i[k], j[k]) {
            return false;
        }
    }
    for k in 0..m {
        if (j[k] - i[k + 1]).rem_euclid(beta) != 0 || !below(i[k + 1], j[k]) {
            return false;
        }
    }
    (j[m] - i[0]).rem_euclid(beta) == 0 && below(i[0], j[m])
}

pub fn is_balanced(pair: &SemigroupPair, i: &[i64], j: &[i64]) -> bool {
    balanced_conditions(pair, i, j, false)
}

/// Balanced with strict inequalities and the four minimality bounds.
pub fn is_reduced(pair: &SemigroupPair, i: &[i64], j: &[i64]) -> bool {
    if !balanced_conditions(pair, i, j, true) {
        return false;
    }
    let ab = pair.product();
    let m = i.len() - 1;
    for k in 1..=m {
        if (j[k - 1] - i[k]).min(j[k] - i[k]) >= ab {
            return false;
        }
    }
    if (j[m] - i[0]).min(j[0] - i[0]) >= ab {
        return false;
    }
    for k in 0..m {
        if (j[k] - i[k]).min(j[k] - i[k + 1]) >= ab {
            return false;
        }
    }
    (j[m] - i[m]).min(j[m] - i[0]) < ab
}

/// Smallest `x ≥ floor` with `x ≡ ra (mod α)` and `x ≡ rb (mod β)`.
fn smallest_crt_solution(pair: &SemigroupPair, ra: i64, rb: i64, floor: i64) -> i64 {
    let (alpha, beta, ab) = (pair.alpha(), pair.beta(), pair.product());
    // x = ra + α·k with α·k ≡ rb − ra (mod β)
    let k = ((rb - ra).rem_euclid(beta) * pair.inv_alpha_mod_beta()).rem_euclid(beta);
    let base = ra + alpha * k;
    base - (base - floor).div_euclid(ab) * ab
}

/// For each `k`, the smallest `x ≥ i_k, i_{k+1}` (cyclically) solving
/// `x ≡ i_k (mod α)`, `x ≡ i_{k+1} (mod β)`. On reduced couples this
/// reproduces `J` from `I`.
pub fn minimal_connectors(pair: &SemigroupPair, i: &[i64]) -> Vec<i64> {
    (0..i.len())
        .map(|k| {
            let next = i[(k + 1) % i.len()];
            smallest_crt_solution(pair, i[k], next, i[k].max(next))
        })
        .collect()
}

/// A seeded random balanced couple of length `1..=max_length`. Entries of `I`
/// are drawn from `[−2αβ, 3αβ]`; each `j_k` is the smallest admissible
/// connector plus `αβ` times a random multiple in `0..=slack_bound`.
pub fn random_balanced(
    pair: &SemigroupPair,
    seed: u64,
    max_length: usize,
    slack_bound: u32,
) -> BalancedCouple {
    assert!(max_length >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ab = pair.product();
    let len = rng.gen_range(1..=max_length);
    let i: Vec<i64> = (0..len).map(|_| rng.gen_range(-2 * ab..=3 * ab)).collect();
    let j = minimal_connectors(pair, &i)
        .into_iter()
        .map(|x| x + ab * i64::from(rng.gen_range(0..=slack_bound)))
        .collect();
    let c = BalancedCouple { i, j };
    debug_assert!(is_balanced(pair, &c.i, &c.j));
    c
}
