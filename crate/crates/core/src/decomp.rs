//! Hilbert depth and explicit decompositions into shifted atoms.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::semigroup::{Generator, SemigroupPair};
use crate::series::{
    canonical_c_min, canonical_dimension, canonical_is_nonnegative, to_rational, Denom,
    RationalSeries, Term, TermList,
};
use crate::star::{StarChecker, StarVerdict, Violation};

/// How a decomposition was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// The input term list already avoids the empty denominator.
    ExactModuleInput,
    /// Greedy atom subtraction on a series of dimension at most one.
    Dim1Greedy,
    /// Peeling a free tail off a raw dimension-2 series, then the greedy.
    TailPeelHeuristic,
    /// The canonical numerator is nonnegative: a direct sum of shifted free modules.
    FreeNumerator,
}

/// A term list whose value is the decomposed series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub terms: TermList,
    pub provenance: Provenance,
}

impl Decomposition {
    fn new(terms: impl IntoIterator<Item = Term>, provenance: Provenance) -> Self {
        Self {
            terms: terms.into_iter().collect::<TermList>().normalized(),
            provenance,
        }
    }

    /// Whether every atom has a free direction.
    pub fn certifies_positive_depth(&self) -> bool {
        self.terms.terms().iter().all(|t| t.denom != Denom::Empty)
    }

    pub fn only_free_atoms(&self) -> bool {
        self.terms.terms().iter().all(|t| t.denom == Denom::Both)
    }
}

/// Series accepted by the depth and decomposition entry points.
#[derive(Clone, Debug)]
pub enum Input {
    Terms(TermList),
    Series(RationalSeries),
}

impl Input {
    pub fn to_series(&self, pair: &SemigroupPair) -> Result<RationalSeries> {
        match self {
            Input::Terms(t) => Ok(to_rational(pair, t)),
            Input::Series(h) if h.pair() == pair => Ok(h.clone()),
            Input::Series(_) => Err(Error::MismatchedPair),
        }
    }
}

impl From<TermList> for Input {
    fn from(t: TermList) -> Self {
        Input::Terms(t)
    }
}

impl From<RationalSeries> for Input {
    fn from(h: RationalSeries) -> Self {
        Input::Series(h)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PdResult {
    Finite(u32),
    Unbounded,
}

impl fmt::Display for PdResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdResult::Finite(r) => write!(f, "{r}"),
            PdResult::Unbounded => write!(f, "unbounded"),
        }
    }
}

/// Largest `r` with `(1 − t^d)^r · H` nonnegative.
pub fn pd(h: &RationalSeries, d: i64) -> Result<PdResult> {
    if d < 1 {
        return Err(Error::NonPositive(d));
    }
    if !h.is_nonnegative()? {
        return Err(Error::NotNonnegative);
    }
    if h.is_zero() {
        return Ok(PdResult::Unbounded);
    }
    // a nonzero nonnegative product has a pole at t = 1, so r never exceeds 2
    let mut best = 0;
    for r in 1..=3 {
        if h.mul_one_minus_pow(d, r).is_nonnegative()? {
            best = r;
        }
    }
    Ok(PdResult::Finite(best))
}

/// Evidence attached to a depth classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// The canonical numerator, all of whose coefficients are nonnegative.
    FreeNumerator(LaurentPoly),
    Decomposition(Decomposition),
    /// (★) holds but no explicit witness was found.
    Star,
    Violation(Violation),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DepthReport {
    pub hdep: u8,
    pub certificate: Certificate,
    pub caveat: Option<String>,
}

pub const RAW_SERIES_CAVEAT: &str = "module-series assumption required for constructive witness";

pub fn hilbert_depth(pair: &SemigroupPair, input: &Input) -> Result<DepthReport> {
    let h = input.to_series(pair)?;
    let q = h.canonical_numerator()?;
    if !canonical_is_nonnegative(pair, &q) {
        return Err(Error::NotNonnegative);
    }
    if q.has_nonnegative_coeffs() {
        return Ok(DepthReport {
            hdep: 2,
            certificate: Certificate::FreeNumerator(q),
            caveat: None,
        });
    }
    let checker = StarChecker::new(*pair);
    if let StarVerdict::Fails(v) = checker.check_canonical(&q) {
        return Ok(DepthReport {
            hdep: 0,
            certificate: Certificate::Violation(v),
            caveat: None,
        });
    }
    let (certificate, caveat) = match decompose_with(&checker, input, &h, &q) {
        Ok(d) => (Certificate::Decomposition(d), None),
        Err(Error::NotFound) => (Certificate::Star, Some(RAW_SERIES_CAVEAT.to_string())),
        Err(e) => return Err(e),
    };
    Ok(DepthReport {
        hdep: 1,
        certificate,
        caveat,
    })
}

/// For two variables the decomposition invariant equals the Hilbert depth.
pub fn nu(pair: &SemigroupPair, input: &Input) -> Result<u8> {
    Ok(hilbert_depth(pair, input)?.hdep)
}

/// Numerator over `(1 − t^α)(1 − t^β)` of the atom `t^s / ∏_{g ∈ denom} (1 − t^g)`.
fn atom_numerator(pair: &SemigroupPair, s: i64, denom: Denom) -> LaurentPoly {
    let mut p = LaurentPoly::monomial(s, 1);
    if !denom.has_alpha() {
        p = p.mul_one_minus_pow(pair.alpha());
    }
    if !denom.has_beta() {
        p = p.mul_one_minus_pow(pair.beta());
    }
    p
}

fn expect_dim1_ready(checker: &StarChecker, q: &LaurentPoly) -> Result<()> {
    let pair = checker.pair();
    if !canonical_is_nonnegative(pair, q) {
        return Err(Error::NotNonnegative);
    }
    if canonical_dimension(q) > 1 {
        return Err(Error::DimensionTooHigh);
    }
    if let StarVerdict::Fails(v) = checker.check_canonical(q) {
        return Err(Error::StarFails(Box::new(v)));
    }
    Ok(())
}

/// Greedy decomposition of a (★)-satisfying series of dimension at most one
/// into atoms `t^s/(1 − t^α)` and `t^s/(1 − t^β)`.
///
/// Each step anchors an atom at the current minimal support index `s`. An
/// `α`-atom is legal when `h_{s+rα} > 0` for all `r > 0` and every
/// `α`-critical instance is strict; symmetrically for `β`. One of the two is
/// always legal, and the stable window sum drops by `β` or `α` per step.
pub fn decompose_dim1(pair: &SemigroupPair, h: &RationalSeries) -> Result<Decomposition> {
    if h.pair() != pair {
        return Err(Error::MismatchedPair);
    }
    let checker = StarChecker::new(*pair);
    let q = h.canonical_numerator()?;
    greedy(&checker, q)
}

fn greedy(checker: &StarChecker, mut q: LaurentPoly) -> Result<Decomposition> {
    expect_dim1_ready(checker, &q)?;
    let pair = *checker.pair();
    let mut counts: BTreeMap<(i64, Denom), BigInt> = BTreeMap::new();
    while let Some(s) = q.min_exp() {
        let base = q.shift(-s);
        let c_alpha = canonical_c_min(&pair, &base, Generator::Alpha);
        let c_beta = canonical_c_min(&pair, &base, Generator::Beta);
        let side = match (c_alpha.is_positive(), c_beta.is_positive()) {
            (false, false) => {
                return Err(Error::InvariantBroken(format!(
                    "no atom can be subtracted at index {s}"
                )))
            }
            (false, true) => Generator::Beta,
            (true, false) => Generator::Alpha,
            (true, true) => {
                if checker.all_critical_strict(&base, Generator::Alpha) {
                    Generator::Alpha
                } else {
                    Generator::Beta
                }
            }
        };
        // an α-atom is 1/(1 − t^α): its numerator over the full denominator is 1 − t^β
        let denom = Denom::from(side);
        let next = &q - &atom_numerator(&pair, s, denom);
        if cfg!(debug_assertions) {
            debug_assert!(
                canonical_is_nonnegative(&pair, &next),
                "greedy step left a negative coefficient"
            );
            debug_assert!(
                checker.check_canonical(&next).holds(),
                "greedy step broke (★)"
            );
            let before = sigma_of(&pair, &q);
            let after = sigma_of(&pair, &next);
            let drop = match side {
                Generator::Alpha => pair.beta(),
                Generator::Beta => pair.alpha(),
            };
            debug_assert_eq!(before - after, BigInt::from(drop));
        }
        q = next;
        *counts.entry((s, denom)).or_default() += 1;
    }
    Ok(Decomposition::new(
        counts.into_iter().map(|((shift, denom), coeff)| Term {
            shift,
            coeff,
            denom,
        }),
        Provenance::Dim1Greedy,
    ))
}

fn sigma_of(pair: &SemigroupPair, q: &LaurentPoly) -> BigInt {
    RationalSeries::new(*pair, q.clone(), true, true)
        .sigma()
        .unwrap_or_default()
}

fn free_atoms(q: &LaurentPoly) -> Decomposition {
    Decomposition::new(
        q.terms().map(|(e, c)| Term::new(e, c.clone(), Denom::Both)),
        Provenance::FreeNumerator,
    )
}

/// Decomposes a (★)-satisfying series into atoms with nonempty denominators.
pub fn decompose(pair: &SemigroupPair, input: &Input) -> Result<Decomposition> {
    let h = input.to_series(pair)?;
    let q = h.canonical_numerator()?;
    let checker = StarChecker::new(*pair);
    decompose_with(&checker, input, &h, &q)
}

fn decompose_with(
    checker: &StarChecker,
    input: &Input,
    h: &RationalSeries,
    q: &LaurentPoly,
) -> Result<Decomposition> {
    let pair = *checker.pair();
    if !canonical_is_nonnegative(&pair, q) {
        return Err(Error::NotNonnegative);
    }
    if q.has_nonnegative_coeffs() {
        return Ok(free_atoms(q));
    }
    if let StarVerdict::Fails(v) = checker.check_canonical(q) {
        return Err(Error::StarFails(Box::new(v)));
    }
    match input {
        Input::Terms(terms) => decompose_terms(checker, terms),
        Input::Series(_) if canonical_dimension(q) <= 1 => greedy(checker, q.clone()),
        Input::Series(_) => tail_peel(checker, h, q),
    }
}

/// Dimension reduction for a term list: move the free part far out, where it
/// no longer interacts with the finite-length part, and add back the
/// difference as atoms over `1 − t^β`.
fn decompose_terms(checker: &StarChecker, terms: &TermList) -> Result<Decomposition> {
    let pair = *checker.pair();
    let ab = pair.product();
    let [q0, qa, qb, q2] = terms.parts();
    let Some(deg0) = q0.max_exp() else {
        return Ok(Decomposition::new(
            terms.terms().iter().cloned(),
            Provenance::ExactModuleInput,
        ));
    };
    // rαβ + min(Q_2) > deg(Q_0) + αβ; for shifts ≥ 0 this is the usual choice of r
    let low2 = q2.min_exp().unwrap_or(0).min(0);
    let r = ((deg0 + ab - low2).div_euclid(ab) + 1).max(1);
    let span = LaurentPoly::geometric(pair.alpha(), r * pair.beta());
    let reduced = &(&q0
        .mul_one_minus_pow(pair.alpha())
        .mul_one_minus_pow(pair.beta())
        + &qa.mul_one_minus_pow(pair.beta()))
        + &(&qb.mul_one_minus_pow(pair.alpha()) + &(&q2 * &span).mul_one_minus_pow(pair.alpha()));
    let dim1 = match greedy(checker, reduced) {
        Ok(d) => d,
        Err(Error::StarFails(v)) => {
            return Err(Error::InvariantBroken(format!(
                "reduced series fails (★): {v}"
            )))
        }
        Err(e) => return Err(e),
    };
    let free = q2
        .shift(r * ab)
        .terms()
        .map(|(e, c)| Term::new(e, c.clone(), Denom::Both))
        .collect::<Vec<_>>();
    Ok(Decomposition::new(
        dim1.terms.terms().iter().cloned().chain(free),
        Provenance::Dim1Greedy,
    ))
}

/// Raw dimension-2 input: subtract `Q(1)·t^{rαβ}/((1 − t^α)(1 − t^β))` for
/// increasing `r` until the remainder is a (★)-satisfying series of
/// dimension one.
fn tail_peel(checker: &StarChecker, h: &RationalSeries, q: &LaurentPoly) -> Result<Decomposition> {
    let pair = *checker.pair();
    let ab = pair.product();
    let k = q.eval_one();
    let (Some(l0), Some(top)) = (q.min_exp(), q.max_exp()) else {
        return Ok(free_atoms(q));
    };
    let first = l0.div_euclid(ab) + i64::from(l0.rem_euclid(ab) != 0);
    let last = (top + 10 * ab).div_euclid(ab);
    for r in first..=last {
        let rest = q - &LaurentPoly::monomial(r * ab, k.clone());
        if !canonical_is_nonnegative(&pair, &rest) || !checker.check_canonical(&rest).holds() {
            continue;
        }
        let dim1 = greedy(checker, rest)?;
        let out = Decomposition::new(
            dim1.terms
                .terms()
                .iter()
                .cloned()
                .chain([Term::new(r * ab, k.clone(), Denom::Both)]),
            Provenance::TailPeelHeuristic,
        );
        debug_assert!(verify_decomposition(h, &out));
        return Ok(out);
    }
    Err(Error::NotFound)
}

/// Exact re-summation check; also requires every atom to have a free direction.
pub fn verify_decomposition(h: &RationalSeries, d: &Decomposition) -> bool {
    if !d.certifies_positive_depth() {
        return false;
    }
    let resum = to_rational(h.pair(), &d.terms);
    resum.same_value(h).unwrap_or(false)
}

/// Renders a decomposition as a direct sum of shifted cyclic modules:
/// `R/(Y)` for `1/(1 − t^α)`, `R/(X)` for `1/(1 − t^β)`, `R` for the free
/// atom and `R/𝔪` for a constant.
pub fn witness_module(d: &Decomposition) -> String {
    let parts: Vec<String> = d
        .terms
        .normalized()
        .terms()
        .iter()
        .map(render_atom)
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" ⊕ ")
    }
}

fn render_atom(t: &Term) -> String {
    let base = match t.denom {
        Denom::Both => "R",
        Denom::Alpha => "R/(Y)",
        Denom::Beta => "R/(X)",
        Denom::Empty => "R/𝔪",
    };
    let atomic = t.denom == Denom::Both;
    let mut s = match t.shift {
        0 => base.to_string(),
        k => {
            let twist = if k > 0 {
                format!("(\u{2212}{k})")
            } else {
                format!("({})", -k)
            };
            if atomic {
                format!("{base}{twist}")
            } else {
                format!("({base}){twist}")
            }
        }
    };
    if !t.coeff.is_one() {
        if !(atomic && t.shift == 0) {
            s = format!("({s})");
        }
        s = format!("{s}^{}", t.coeff);
    }
    s
}
