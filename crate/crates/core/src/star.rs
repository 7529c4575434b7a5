//! Condition (★): `Σ_{i∈I} h_{n+i} ≤ Σ_{j∈J} h_{n+j}` for every integer `n`
//! and every fundamental couple `[I, J]`.
//!
//! The quantifier over `n` reduces to a finite window. Below `L0 − αβ` both
//! sides vanish because `0 ≤ i` and `j ≤ αβ`. Past the top exponent `D` of
//! the canonical numerator every coefficient grows by `Q(1)` per step of
//! `αβ`, and `|I| = |J|` makes the difference of the two sides periodic, so
//! the range `[L0 − αβ, max(0, D) + αβ]` decides every `n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::couples::{self, BalancedCouple, FundamentalCouple};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::semigroup::{Generator, SemigroupPair};
use crate::series::{canonical_is_nonnegative, expand_full, Coeff, RationalSeries};

/// A failing instance of (★).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub couple: FundamentalCouple,
    pub n: i64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "I = {:?}, J = {:?}, n = {}: {} > {}",
            self.couple.i(),
            self.couple.j(),
            self.n,
            self.lhs,
            self.rhs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StarVerdict {
    Holds,
    Fails(Violation),
}

impl StarVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, StarVerdict::Holds)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            StarVerdict::Holds => None,
            StarVerdict::Fails(v) => Some(v),
        }
    }
}

/// Verdicts of (★_k) for each residue `k` modulo `δ = gcd(d1, d2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralVerdict {
    pub delta: i64,
    pub pair: SemigroupPair,
    pub slices: Vec<StarVerdict>,
}

impl GeneralVerdict {
    pub fn holds(&self) -> bool {
        self.slices.iter().all(StarVerdict::holds)
    }

    /// First failing residue and its certificate.
    pub fn first_violation(&self) -> Option<(i64, &Violation)> {
        self.slices
            .iter()
            .enumerate()
            .find_map(|(k, v)| v.violation().map(|v| (k as i64, v)))
    }
}

/// An instance of (★) at shift `m` whose negative-index left side and
/// nonnegative-index right side both hit multiples of one weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalHit {
    pub couple: FundamentalCouple,
    pub m: i64,
    pub side: Generator,
    pub strict: bool,
}

/// Couples above this count are scanned in parallel.
const PARALLEL_COUPLES: usize = 64;

/// Checks (★) for many series over one pair, enumerating the couples once.
#[derive(Clone, Debug)]
pub struct StarChecker {
    pair: SemigroupPair,
    couples: Vec<FundamentalCouple>,
}

impl StarChecker {
    pub fn new(pair: SemigroupPair) -> Self {
        Self {
            couples: couples::enumerate(&pair),
            pair,
        }
    }

    pub fn pair(&self) -> &SemigroupPair {
        &self.pair
    }

    pub fn couples(&self) -> &[FundamentalCouple] {
        &self.couples
    }

    fn canonical(&self, h: &RationalSeries) -> Result<LaurentPoly> {
        if h.pair() != &self.pair {
            return Err(Error::MismatchedPair);
        }
        let q = h.canonical_numerator()?;
        if !canonical_is_nonnegative(&self.pair, &q) {
            return Err(Error::NotNonnegative);
        }
        Ok(q)
    }

    pub fn check(&self, h: &RationalSeries) -> Result<StarVerdict> {
        let q = self.canonical(h)?;
        Ok(self.check_canonical(&q))
    }

    /// (★) for `Q / ((1 − t^α)(1 − t^β))`, assumed nonnegative.
    pub(crate) fn check_canonical(&self, q: &LaurentPoly) -> StarVerdict {
        let (Some(l0), Some(top)) = (q.min_exp(), q.max_exp()) else {
            return StarVerdict::Holds;
        };
        let ab = self.pair.product();
        let (n_lo, n_hi) = (l0 - ab, top.max(0) + ab);
        let (lo, hi) = (n_lo, n_hi + ab);
        // sums of at most α window entries stay below i64::MAX / 2
        let limit = i64::MAX / (2 * (self.pair.alpha() + 1));
        let found = match expand_full::<i64>(q, &self.pair, lo, hi, Some(limit)) {
            Some(w) => self.scan(&w, lo, n_lo, n_hi),
            None => {
                let w: Vec<BigInt> = expand_full(q, &self.pair, lo, hi, None).unwrap();
                self.scan(&w, lo, n_lo, n_hi)
            }
        };
        match found {
            None => StarVerdict::Holds,
            Some((k, n, lhs, rhs)) => StarVerdict::Fails(Violation {
                couple: self.couples[k].clone(),
                n,
                lhs,
                rhs,
            }),
        }
    }

    fn scan<T: Coeff>(
        &self,
        w: &[T],
        lo: i64,
        n_lo: i64,
        n_hi: i64,
    ) -> Option<(usize, i64, BigInt, BigInt)> {
        let at = |e: i64| &w[(e - lo) as usize];
        let test = |k: usize, c: &FundamentalCouple| {
            (n_lo..=n_hi).find_map(|n| {
                let mut lhs = T::zero();
                for &i in c.i() {
                    lhs += at(n + i);
                }
                let mut rhs = T::zero();
                for &j in c.j() {
                    rhs += at(n + j);
                }
                (lhs > rhs).then(|| (k, n, lhs.into(), rhs.into()))
            })
        };
        if self.couples.len() >= PARALLEL_COUPLES {
            self.couples
                .par_iter()
                .enumerate()
                .find_map_first(|(k, c)| test(k, c))
        } else {
            self.couples
                .iter()
                .enumerate()
                .find_map(|(k, c)| test(k, c))
        }
    }

    /// Every critical instance for side `g`, with `m` measured from the
    /// minimal support index of `h`.
    pub fn critical_hits(&self, h: &RationalSeries, g: Generator) -> Result<Vec<CriticalHit>> {
        let q = self.canonical(h)?;
        Ok(self.critical_hits_canonical(&q, g))
    }

    pub(crate) fn critical_hits_canonical(
        &self,
        q: &LaurentPoly,
        g: Generator,
    ) -> Vec<CriticalHit> {
        let Some(l0) = q.min_exp() else {
            return Vec::new();
        };
        let q = q.shift(-l0);
        let ab = self.pair.product();
        let step = self.pair.weight(g);
        let w: Vec<BigInt> = expand_full(&q, &self.pair, -ab, ab, None).unwrap();
        let at = |e: i64| &w[(e + ab) as usize];
        let mut hits = Vec::new();
        for c in &self.couples {
            for m in -ab..0 {
                let left = c.i().iter().any(|&i| m + i < 0 && (m + i) % step == 0);
                let right = c.j().iter().any(|&j| m + j >= 0 && (m + j) % step == 0);
                if !(left && right) {
                    continue;
                }
                let lhs: BigInt = c.i().iter().map(|&i| at(m + i)).sum();
                let rhs: BigInt = c.j().iter().map(|&j| at(m + j)).sum();
                hits.push(CriticalHit {
                    couple: c.clone(),
                    m,
                    side: g,
                    strict: lhs < rhs,
                });
            }
        }
        hits
    }

    /// Whether every critical instance for side `g` holds strictly.
    pub(crate) fn all_critical_strict(&self, q: &LaurentPoly, g: Generator) -> bool {
        self.critical_hits_canonical(q, g).iter().all(|h| h.strict)
    }
}

/// Decides (★) for a nonnegative series over a coprime pair.
pub fn check_star(h: &RationalSeries) -> Result<StarVerdict> {
    StarChecker::new(*h.pair()).check(h)
}

/// Decides (★_k) for every residue `k` modulo `δ = gcd(d1, d2)`.
///
/// `num` and the two denominator flags describe
/// `num / ((1 − t^d1)^den1 (1 − t^d2)^den2)`; each Veronese slice is checked
/// over `(d1/δ, d2/δ)`.
pub fn check_star_general(
    d1: i64,
    d2: i64,
    num: &LaurentPoly,
    den1: bool,
    den2: bool,
) -> Result<GeneralVerdict> {
    let h = RationalSeries::general(d1, d2, num.clone(), den1, den2)?;
    check_star_series_general(&h, d1.gcd(&d2))
}

/// As [`check_star_general`], for a series already carrying its denominator.
pub fn check_star_series_general(h: &RationalSeries, delta: i64) -> Result<GeneralVerdict> {
    let checker = StarChecker::new(*h.pair());
    let slices = (0..delta)
        .map(|k| {
            let slice = if delta == 1 {
                h.clone()
            } else {
                h.veronese(delta, k)?
            };
            checker.check(&slice)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GeneralVerdict {
        delta,
        pair: *h.pair(),
        slices,
    })
}

/// Critical instances for side `g` that hold with equality.
pub fn find_nonstrict_critical(h: &RationalSeries, g: Generator) -> Result<Vec<CriticalHit>> {
    let hits = StarChecker::new(*h.pair()).critical_hits(h, g)?;
    Ok(hits.into_iter().filter(|c| !c.strict).collect())
}

/// `Σ_{i∈I} h_i ≤ Σ_{j∈J} h_j` for a balanced couple.
pub fn check_balanced_inequality(h: &RationalSeries, c: &BalancedCouple) -> bool {
    match h.canonical_numerator() {
        Ok(q) => balanced_holds_canonical(h.pair(), &q, c),
        Err(_) => {
            let lhs: BigInt = c.i().iter().map(|&i| h.coeff(i)).sum();
            let rhs: BigInt = c.j().iter().map(|&j| h.coeff(j)).sum();
            lhs <= rhs
        }
    }
}

pub(crate) fn balanced_holds_canonical(
    pair: &SemigroupPair,
    q: &LaurentPoly,
    c: &BalancedCouple,
) -> bool {
    let h = |n: i64| -> BigInt {
        q.terms()
            .filter(|&(e, _)| e <= n)
            .map(|(e, coeff)| coeff * pair.representation_count(n - e))
            .sum()
    };
    let lhs: BigInt = c.i().iter().map(|&i| h(i)).sum();
    let rhs: BigInt = c.j().iter().map(|&j| h(j)).sum();
    lhs <= rhs
}

/// First `n` violating `Σ_{k<α} h_{n+k} ≤ Σ_{k<α} h_{n+β+k}`, if any.
///
/// Multiplying `H` by `(1 − t^β)(1 + t + … + t^{α−1})` gives `Q / (1 − t)`,
/// whose coefficients are the partial sums of `Q`; the inequality at `n` is
/// the partial sum up to `n + α + β − 1` being nonnegative.
pub fn inequality_24_violation(h: &RationalSeries) -> Result<Option<i64>> {
    let pair = *h.pair();
    let q = h.canonical_numerator()?;
    if !canonical_is_nonnegative(&pair, &q) {
        return Err(Error::NotNonnegative);
    }
    let mut partial = BigInt::zero();
    for (e, c) in q.terms() {
        partial += c;
        if partial.is_negative() {
            return Ok(Some(e - pair.alpha() - pair.beta() + 1));
        }
    }
    Ok(None)
}

pub fn check_inequality_24(h: &RationalSeries) -> Result<bool> {
    Ok(inequality_24_violation(h)?.is_none())
}
