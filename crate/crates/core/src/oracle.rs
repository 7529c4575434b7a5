//! Brute-force reference implementations and test-series generators.
//!
//! Nothing here reuses the fast paths: membership is a double loop,
//! couples are counted as cliques of gaps, and decomposability is decided by
//! exhaustive backtracking on an explicitly expanded coefficient window.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::semigroup::{GapPresentation, SemigroupPair};
use crate::series::{to_rational, Denom, RationalSeries, Term, TermList};

/// `n = xα + yβ` for some `x, y ≥ 0`, by exhaustive search.
pub fn brute_is_member(pair: &SemigroupPair, n: i64) -> bool {
    if n < 0 {
        return false;
    }
    (0..=n / pair.alpha()).any(|x| (n - x * pair.alpha()) % pair.beta() == 0)
}

/// The presentation `n = p·αβ − a·α − b·β` found by scanning all triples.
///
/// # Panics
///
/// If the number of matching triples is not exactly one.
pub fn brute_present(pair: &SemigroupPair, n: i64) -> Result<GapPresentation> {
    if n <= 0 {
        return Err(Error::NonPositive(n));
    }
    let (alpha, beta) = (pair.alpha(), pair.beta());
    let mut hits = Vec::new();
    for p in 1..=n / (alpha * beta) + 2 {
        for a in 0..beta {
            for b in 0..alpha {
                if p * alpha * beta - a * alpha - b * beta == n {
                    hits.push(GapPresentation { p, a, b });
                }
            }
        }
    }
    assert_eq!(
        hits.len(),
        1,
        "presentation of {n} over {pair} is not unique: {hits:?}"
    );
    Ok(hits[0])
}

/// Number of gap subsets whose pairwise differences are all gaps, counting
/// the empty subset once.
pub fn brute_count_couples(pair: &SemigroupPair) -> Result<u64> {
    if pair.product() > 200 {
        return Err(Error::TooLarge(format!(
            "alpha * beta = {} > 200",
            pair.product()
        )));
    }
    let gaps: Vec<i64> = (1..pair.product())
        .filter(|&n| !brute_is_member(pair, n))
        .collect();
    let compatible = |x: i64, y: i64| {
        let d = (x - y).abs();
        d > 0 && !brute_is_member(pair, d)
    };
    fn extend(
        gaps: &[i64],
        chosen: &mut Vec<i64>,
        from: usize,
        ok: &dyn Fn(i64, i64) -> bool,
    ) -> u64 {
        let mut total = 1;
        for k in from..gaps.len() {
            if chosen.iter().all(|&c| ok(c, gaps[k])) {
                chosen.push(gaps[k]);
                total += extend(gaps, chosen, k + 1, ok);
                chosen.pop();
            }
        }
        total
    }
    Ok(extend(&gaps, &mut Vec::new(), 0, &compatible))
}

/// A series of dimension at most one as an explicit window `h_lo … h_{hi−1}`,
/// zero below `lo` and continued by `h_n = h_{n−αβ}` from `hi` on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Periodic {
    lo: i64,
    vals: Vec<i128>,
}

impl Periodic {
    /// Expands `num / den` by long division.
    fn expand(h: &RationalSeries) -> Result<Self> {
        let pair = h.pair();
        let period = pair.product();
        let num = h.numerator();
        let Some(lo) = num.min_exp() else {
            return Ok(Self {
                lo: 0,
                vals: Vec::new(),
            });
        };
        let mut den: Vec<i128> = vec![1];
        for d in h.denominator_exponents() {
            let mut next = vec![0i128; den.len() + d as usize];
            for (k, c) in den.iter().enumerate() {
                next[k] += c;
                next[k + d as usize] -= c;
            }
            den = next;
        }
        let start = num.max_exp().unwrap() + den.len() as i64 + period;
        let end = start + period;
        let mut vals: Vec<i128> = Vec::new();
        for n in lo..end {
            let mut v = num
                .coeff(n)
                .to_i128()
                .ok_or(Error::TooLarge("coefficient".into()))?;
            for (k, c) in den.iter().enumerate().skip(1) {
                let idx = n - lo - k as i64;
                if idx >= 0 {
                    v -= c * vals[idx as usize];
                }
            }
            vals.push(v);
        }
        let split = (start - lo) as usize;
        if (split..vals.len()).any(|k| vals[k] != vals[k - period as usize]) {
            return Err(Error::DimensionTooHigh);
        }
        vals.truncate(split);
        let mut out = Self { lo, vals };
        out.normalize(period);
        Ok(out)
    }

    fn at(&self, n: i64, period: i64) -> i128 {
        if n < self.lo {
            return 0;
        }
        let hi = self.lo + self.vals.len() as i64;
        let mut n = n;
        while n >= hi {
            n -= period;
        }
        if n < self.lo {
            0
        } else {
            self.vals[(n - self.lo) as usize]
        }
    }

    /// Canonical form: `lo` is the first nonzero index and the window is the
    /// shortest one of length at least `period`.
    fn normalize(&mut self, period: i64) {
        let hi = self.lo + self.vals.len() as i64;
        let Some(first) = (self.lo..hi + period).find(|&n| self.at(n, period) != 0) else {
            self.vals.clear();
            self.lo = 0;
            return;
        };
        let vals: Vec<i128> = (first..hi.max(first + period))
            .map(|n| self.at(n, period))
            .collect();
        self.lo = first;
        self.vals = vals;
        let p = period as usize;
        while self.vals.len() > p
            && self.vals[self.vals.len() - 1] == self.vals[self.vals.len() - 1 - p]
        {
            self.vals.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    /// Sum over one full period of the stable part.
    fn sigma(&self, period: i64) -> i128 {
        let hi = self.lo + self.vals.len() as i64;
        (hi..hi + period).map(|n| self.at(n, period)).sum()
    }

    /// Subtracts `t^lo / (1 − t^g)`; `None` when a coefficient turns negative.
    /// The window spans at least one period past `lo`, so the atom is periodic
    /// on the implicit tail as well.
    fn subtract_atom(&self, g: i64, period: i64) -> Option<Self> {
        let mut vals = self.vals.clone();
        for k in (0..vals.len()).step_by(g as usize) {
            vals[k] -= 1;
            if vals[k] < 0 {
                return None;
            }
        }
        let mut out = Self { lo: self.lo, vals };
        out.normalize(period);
        Some(out)
    }
}

/// Whether a series of dimension at most one is a nonnegative integer
/// combination of atoms `t^k/(1 − t^α)` and `t^k/(1 − t^β)`, by backtracking
/// over the atom anchored at the lowest nonzero coefficient.
///
/// `budget` bounds the search depth; it defaults to the stable window sum
/// plus one, which no successful branch can exceed.
pub fn brute_decomposable_dim1(h: &RationalSeries, budget: Option<u64>) -> Result<bool> {
    let pair = *h.pair();
    let period = pair.product();
    let start = Periodic::expand(h)?;
    if start.vals.iter().any(|&v| v < 0) {
        return Err(Error::NotNonnegative);
    }
    let sigma = start.sigma(period);
    let budget = budget.unwrap_or(sigma as u64 + 1);
    let mut failed: HashSet<Periodic> = HashSet::new();
    let mut exceeded = false;

    fn search(
        state: &Periodic,
        weights: [i64; 2],
        period: i64,
        depth: u64,
        budget: u64,
        failed: &mut HashSet<Periodic>,
        exceeded: &mut bool,
    ) -> bool {
        if state.is_zero() {
            return true;
        }
        if depth >= budget {
            *exceeded = true;
            return false;
        }
        if failed.contains(state) {
            return false;
        }
        for g in weights {
            if let Some(next) = state.subtract_atom(g, period) {
                if search(&next, weights, period, depth + 1, budget, failed, exceeded) {
                    return true;
                }
            }
        }
        failed.insert(state.clone());
        false
    }

    let found = search(
        &start,
        [pair.alpha(), pair.beta()],
        period,
        0,
        budget,
        &mut failed,
        &mut exceeded,
    );
    match (found, exceeded) {
        (true, _) => Ok(true),
        (false, true) => Err(Error::BudgetExceeded),
        (false, false) => Ok(false),
    }
}

/// Random term list of `n_atoms` atoms with nonempty denominators, shifts in
/// `[−shift_bound, shift_bound]` and coefficients in `1..=3`.
pub fn random_star_terms(seed: u64, n_atoms: usize, shift_bound: i64) -> TermList {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let denoms = [Denom::Alpha, Denom::Beta, Denom::Both];
    (0..n_atoms)
        .map(|_| {
            let denom = denoms[rng.gen_range(0..denoms.len())];
            let shift = rng.gen_range(-shift_bound..=shift_bound);
            Term::new(shift, rng.gen_range(1..=3), denom)
        })
        .collect()
}

/// A series that satisfies (★) by construction.
pub fn random_star_series(
    pair: &SemigroupPair,
    seed: u64,
    n_atoms: usize,
    shift_bound: i64,
) -> RationalSeries {
    assert!(n_atoms >= 1);
    to_rational(pair, &random_star_terms(seed, n_atoms, shift_bound))
}

#[derive(Clone, Debug)]
pub struct CorpusMember {
    pub series: RationalSeries,
    pub recipe: TermList,
}

/// Seeded family of (★)-satisfying series over one pair.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub seed: u64,
    pub members: Vec<CorpusMember>,
}

impl Corpus {
    pub fn generate(
        pair: &SemigroupPair,
        seed: u64,
        size: usize,
        max_atoms: usize,
        shift_bound: i64,
    ) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let members = (0..size)
            .map(|_| {
                let recipe =
                    random_star_terms(rng.gen(), rng.gen_range(1..=max_atoms), shift_bound);
                CorpusMember {
                    series: to_rational(pair, &recipe),
                    recipe,
                }
            })
            .collect();
        Self { seed, members }
    }
}

/// A fixed inequality `Σ_{i∈lhs} h_{n+i} ≤ Σ_{j∈rhs} h_{n+j}` for `(3, 5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegressionVector {
    pub label: u8,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
}

/// The right side `{4, 5, 6}` sometimes quoted for vector 11. It is violated
/// by `1/(1 − t^5)` at `n = −2`, so it cannot be a necessary condition.
pub const VECTOR_11_SHIFTED_RHS: [i64; 3] = [4, 5, 6];

/// The seven necessary inequalities for weights `(3, 5)`, labelled 6 to 12.
pub fn regression_vectors_3_5() -> Vec<RegressionVector> {
    let v = |label, lhs: &[i64], rhs: &[i64]| RegressionVector {
        label,
        lhs: lhs.to_vec(),
        rhs: rhs.to_vec(),
    };
    vec![
        v(6, &[0], &[15]),
        v(7, &[0, 1], &[6, 10]),
        v(8, &[0, 2], &[5, 12]),
        v(9, &[0, 4], &[9, 10]),
        v(10, &[0, 7], &[10, 12]),
        v(11, &[0, 1, 2], &[5, 6, 7]),
        v(12, &[0, 2, 4], &[5, 7, 9]),
    ]
}

/// First `n` in `[from, to]` where a regression vector fails on `h`.
pub fn vector_violation(
    h: &RationalSeries,
    v: &RegressionVector,
    from: i64,
    to: i64,
) -> Option<i64> {
    let reach = v.lhs.iter().chain(&v.rhs).copied().max().unwrap_or(0);
    let w = h.coeffs(from, to + reach);
    let at = |e: i64| -> &BigInt { &w[(e - from) as usize] };
    (from..=to).find(|&n| {
        let lhs: BigInt = v.lhs.iter().map(|&i| at(n + i)).sum();
        let rhs: BigInt = v.rhs.iter().map(|&j| at(n + j)).sum();
        lhs > rhs
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn pair(a: i64, b: i64) -> SemigroupPair {
        SemigroupPair::new(a, b).unwrap()
    }

    #[test]
    fn presentations() {
        let s = pair(3, 5);
        assert_eq!(
            brute_present(&s, 7).unwrap(),
            GapPresentation { p: 1, a: 1, b: 1 }
        );
        assert_eq!(
            brute_present(&s, 15).unwrap(),
            GapPresentation { p: 1, a: 0, b: 0 }
        );
        assert_eq!(brute_present(&s, 0), Err(Error::NonPositive(0)));
    }

    #[test]
    fn couple_counts() {
        assert_eq!(brute_count_couples(&pair(4, 5)).unwrap(), 14);
        assert_eq!(brute_count_couples(&pair(3, 5)).unwrap(), 7);
        assert_eq!(brute_count_couples(&pair(1, 2)).unwrap(), 1);
        assert!(matches!(
            brute_count_couples(&pair(11, 19)),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn decomposability() {
        let s = pair(3, 5);
        assert!(
            brute_decomposable_dim1(&RationalSeries::atom(s, 0, 1, Denom::Alpha), None).unwrap()
        );
        let nu_zero = TermList::new(vec![
            Term::new(1, 1, Denom::Empty),
            Term::new(0, 1, Denom::Alpha),
            Term::new(7, 1, Denom::Alpha),
            Term::new(8, 1, Denom::Alpha),
        ])
        .unwrap();
        assert!(!brute_decomposable_dim1(&to_rational(&s, &nu_zero), None).unwrap());
        let t = pair(3, 4);
        let h = RationalSeries::new(
            t,
            LaurentPoly::from_terms([(0, 1), (1, 1), (6, 1), (7, 1), (8, 1)]),
            true,
            false,
        );
        assert!(brute_decomposable_dim1(&h, None).unwrap());
        assert!(brute_decomposable_dim1(&RationalSeries::zero(s), None).unwrap());
    }

    #[test]
    fn decomposability_rejects_dimension_two() {
        let s = pair(2, 3);
        let free = RationalSeries::atom(s, 0, 1, Denom::Both);
        assert_eq!(
            brute_decomposable_dim1(&free, None),
            Err(Error::DimensionTooHigh)
        );
    }

    #[test]
    fn tiny_budget_is_reported() {
        let s = pair(3, 5);
        let h = RationalSeries::atom(s, 0, 2, Denom::Alpha);
        assert_eq!(
            brute_decomposable_dim1(&h, Some(1)),
            Err(Error::BudgetExceeded)
        );
        assert!(brute_decomposable_dim1(&h, Some(2)).unwrap());
    }

    #[test]
    fn generators_are_seeded() {
        let s = pair(3, 5);
        assert_eq!(
            random_star_series(&s, 9, 4, 6),
            random_star_series(&s, 9, 4, 6)
        );
        let c1 = Corpus::generate(&s, 1, 5, 3, 4);
        let c2 = Corpus::generate(&s, 1, 5, 3, 4);
        assert_eq!(c1.members.len(), 5);
        for (a, b) in c1.members.iter().zip(&c2.members) {
            assert_eq!(a.recipe, b.recipe);
        }
    }

    #[test]
    fn shifted_vector_11_fails_on_r_mod_x() {
        let s = pair(3, 5);
        let h = RationalSeries::atom(s, 0, 1, Denom::Beta);
        let shifted = RegressionVector {
            label: 11,
            lhs: vec![0, 1, 2],
            rhs: VECTOR_11_SHIFTED_RHS.to_vec(),
        };
        assert_eq!(vector_violation(&h, &shifted, -20, 20), Some(-2));
        for v in regression_vectors_3_5() {
            assert_eq!(
                vector_violation(&h, &v, -20, 40),
                None,
                "vector {}",
                v.label
            );
        }
    }
}
