//! Rational Laurent series over the denominator `(1 − t^α)(1 − t^β)`.
//!
//! Analysis always runs on the canonical numerator `Q` of
//! `H = Q / ((1 − t^α)(1 − t^β))`. Writing `D` for the top exponent of `Q`,
//! the coefficients satisfy `h_{n+αβ} = h_n + Q(1)` for every `n ≥ D`
//! (the representation count of `m ≥ 0` grows by exactly one when `m` grows
//! by `αβ`). That identity turns every "for all n" question into a finite
//! window check.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::semigroup::{Generator, SemigroupPair};

/// Which of the factors `1 − t^α`, `1 − t^β` divide an atom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Denom {
    /// Laurent polynomial part.
    Empty,
    Alpha,
    Beta,
    Both,
}

impl Denom {
    pub fn from_generators(gens: &[Generator]) -> Self {
        let a = gens.contains(&Generator::Alpha);
        let b = gens.contains(&Generator::Beta);
        match (a, b) {
            (false, false) => Denom::Empty,
            (true, false) => Denom::Alpha,
            (false, true) => Denom::Beta,
            (true, true) => Denom::Both,
        }
    }

    pub fn generators(self) -> Vec<Generator> {
        match self {
            Denom::Empty => vec![],
            Denom::Alpha => vec![Generator::Alpha],
            Denom::Beta => vec![Generator::Beta],
            Denom::Both => vec![Generator::Alpha, Generator::Beta],
        }
    }

    pub fn has_alpha(self) -> bool {
        matches!(self, Denom::Alpha | Denom::Both)
    }

    pub fn has_beta(self) -> bool {
        matches!(self, Denom::Beta | Denom::Both)
    }

    pub fn size(self) -> usize {
        usize::from(self.has_alpha()) + usize::from(self.has_beta())
    }
}

impl From<Generator> for Denom {
    fn from(g: Generator) -> Self {
        match g {
            Generator::Alpha => Denom::Alpha,
            Generator::Beta => Denom::Beta,
        }
    }
}

/// One summand `coeff · t^shift / ∏_{g ∈ denom} (1 − t^g)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub shift: i64,
    pub coeff: BigInt,
    pub denom: Denom,
}

impl Term {
    pub fn new(shift: i64, coeff: impl Into<BigInt>, denom: Denom) -> Self {
        Self {
            shift,
            coeff: coeff.into(),
            denom,
        }
    }
}

/// A sum of shifted atoms with positive coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TermList(Vec<Term>);

impl TermList {
    pub fn new(terms: Vec<Term>) -> Result<Self> {
        if terms.iter().any(|t| !t.coeff.is_positive()) {
            return Err(Error::NonPositiveCoefficient);
        }
        Ok(Self(terms))
    }

    pub fn terms(&self) -> &[Term] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Collects the numerators `Q_∅, Q_α, Q_β, Q_αβ` of each denominator class.
    pub fn parts(&self) -> [LaurentPoly; 4] {
        let part = |d: Denom| {
            LaurentPoly::from_terms(
                self.0
                    .iter()
                    .filter(|t| t.denom == d)
                    .map(|t| (t.shift, t.coeff.clone())),
            )
        };
        [
            part(Denom::Empty),
            part(Denom::Alpha),
            part(Denom::Beta),
            part(Denom::Both),
        ]
    }

    /// Merges equal `(shift, denom)` atoms and sorts by shift, then denominator.
    pub fn normalized(&self) -> Self {
        let mut merged: BTreeMap<(i64, Denom), BigInt> = BTreeMap::new();
        for t in &self.0 {
            *merged.entry((t.shift, t.denom)).or_default() += &t.coeff;
        }
        Self(
            merged
                .into_iter()
                .map(|((shift, denom), coeff)| Term {
                    shift,
                    coeff,
                    denom,
                })
                .collect(),
        )
    }
}

impl FromIterator<Term> for TermList {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

/// `num / ((1 − t^α)^[den_alpha] (1 − t^β)^[den_beta] ∏ (1 − t^d)^r)`.
///
/// `extra_den` carries factors outside `{α, β}`, which arise for weights
/// with a common divisor before Veronese slicing.
#[derive(Clone, Debug)]
pub struct RationalSeries {
    pair: SemigroupPair,
    num: LaurentPoly,
    den_alpha: bool,
    den_beta: bool,
    extra_den: BTreeMap<i64, u32>,
}

impl RationalSeries {
    pub fn new(pair: SemigroupPair, num: LaurentPoly, den_alpha: bool, den_beta: bool) -> Self {
        Self {
            pair,
            num,
            den_alpha,
            den_beta,
            extra_den: BTreeMap::new(),
        }
    }

    pub fn with_extra_den(mut self, d: i64, mult: u32) -> Self {
        assert!(d >= 1, "denominator exponents must be positive");
        if mult > 0 {
            *self.extra_den.entry(d).or_default() += mult;
        }
        self
    }

    /// `num / ((1 − t^d1)^e1 (1 − t^d2)^e2)` for arbitrary positive weights.
    /// The pair becomes `(d1/δ, d2/δ)` with `δ = gcd(d1, d2)`; for `δ > 1`
    /// both factors are kept in `extra_den`.
    pub fn general(d1: i64, d2: i64, num: LaurentPoly, den1: bool, den2: bool) -> Result<Self> {
        if d1 < 1 || d2 < 1 {
            return Err(Error::NonPositiveWeight);
        }
        let delta = d1.gcd(&d2);
        let pair = SemigroupPair::new(d1 / delta, d2 / delta)?;
        if delta == 1 {
            let (da, db) = if d1 < d2 { (den1, den2) } else { (den2, den1) };
            return Ok(Self::new(pair, num, da, db));
        }
        Ok(Self::new(pair, num, false, false)
            .with_extra_den(d1, u32::from(den1))
            .with_extra_den(d2, u32::from(den2)))
    }

    pub fn zero(pair: SemigroupPair) -> Self {
        Self::new(pair, LaurentPoly::zero(), true, true)
    }

    /// `coeff · t^shift / ∏_{g ∈ denom} (1 − t^g)`.
    pub fn atom(pair: SemigroupPair, shift: i64, coeff: impl Into<BigInt>, denom: Denom) -> Self {
        Self::new(
            pair,
            LaurentPoly::monomial(shift, coeff),
            denom.has_alpha(),
            denom.has_beta(),
        )
    }

    pub fn pair(&self) -> &SemigroupPair {
        &self.pair
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den_alpha(&self) -> bool {
        self.den_alpha
    }

    pub fn den_beta(&self) -> bool {
        self.den_beta
    }

    pub fn extra_den(&self) -> &BTreeMap<i64, u32> {
        &self.extra_den
    }

    /// Every denominator factor `1 − t^d`, with multiplicity.
    pub fn denominator_exponents(&self) -> Vec<i64> {
        let mut out = Vec::new();
        if self.den_alpha {
            out.push(self.pair.alpha());
        }
        if self.den_beta {
            out.push(self.pair.beta());
        }
        for (&d, &r) in &self.extra_den {
            out.extend(std::iter::repeat_n(d, r as usize));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator over exactly `(1 − t^α)(1 − t^β)`.
    pub fn canonical_numerator(&self) -> Result<LaurentPoly> {
        let mut q = self.num.clone();
        if !self.den_alpha {
            q = q.mul_one_minus_pow(self.pair.alpha());
        }
        if !self.den_beta {
            q = q.mul_one_minus_pow(self.pair.beta());
        }
        for (&d, &r) in &self.extra_den {
            for _ in 0..r {
                q = q
                    .div_one_minus_pow(d)
                    .ok_or(Error::UnsupportedDenominator)?;
            }
        }
        Ok(q)
    }

    /// The same series in canonical form `Q / ((1 − t^α)(1 − t^β))`.
    pub fn canonical(&self) -> Result<Self> {
        Ok(Self::new(
            self.pair,
            self.canonical_numerator()?,
            true,
            true,
        ))
    }

    /// Cancels `1 − t^α` and `1 − t^β` against the numerator where possible.
    pub fn reduced(&self) -> Result<Self> {
        let mut q = self.canonical_numerator()?;
        let mut den_alpha = true;
        let mut den_beta = true;
        if q.is_zero() {
            return Ok(Self::new(self.pair, q, false, false));
        }
        if let Some(r) = q.div_one_minus_pow(self.pair.alpha()) {
            q = r;
            den_alpha = false;
        }
        if let Some(r) = q.div_one_minus_pow(self.pair.beta()) {
            q = r;
            den_beta = false;
        }
        Ok(Self::new(self.pair, q, den_alpha, den_beta))
    }

    /// Value equality.
    pub fn same_value(&self, other: &Self) -> Result<bool> {
        if self.pair != other.pair {
            return Err(Error::MismatchedPair);
        }
        Ok(self.canonical_numerator()? == other.canonical_numerator()?)
    }

    fn check_pair(&self, other: &Self) -> Result<()> {
        if self.pair != other.pair {
            Err(Error::MismatchedPair)
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        let q = &self.canonical_numerator()? + &other.canonical_numerator()?;
        Ok(Self::new(self.pair, q, true, true))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_pair(other)?;
        let q = &self.canonical_numerator()? - &other.canonical_numerator()?;
        Ok(Self::new(self.pair, q, true, true))
    }

    /// `t^s · H`.
    pub fn shift(&self, s: i64) -> Self {
        Self {
            num: self.num.shift(s),
            ..self.clone()
        }
    }

    /// `H − t^s / ∏_{g ∈ denom} (1 − t^g)`.
    pub fn subtract_atom(&self, s: i64, denom: Denom) -> Result<Self> {
        self.sub(&Self::atom(self.pair, s, 1, denom))
    }

    /// `(1 − t^d)^r · H`.
    pub fn mul_one_minus_pow(&self, d: i64, r: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..r {
            out.num = out.num.mul_one_minus_pow(d);
        }
        out
    }

    /// Coefficients `h_from ..= h_to`, by recurrence through each
    /// denominator factor. Works for any declared denominator.
    pub fn coeffs(&self, from: i64, to: i64) -> Vec<BigInt> {
        assert!(from <= to);
        let len = (to - from + 1) as usize;
        let Some(l0) = self.num.min_exp() else {
            return vec![BigInt::zero(); len];
        };
        if to < l0 {
            return vec![BigInt::zero(); len];
        }
        let base = from.min(l0);
        let mut h: Vec<BigInt> = (base..=to).map(|e| self.num.coeff(e)).collect();
        for d in self.denominator_exponents() {
            let d = d as usize;
            for k in d..h.len() {
                let (done, rest) = h.split_at_mut(k);
                rest[0] += &done[k - d];
            }
        }
        h.drain(..(from - base) as usize);
        h
    }

    /// A single coefficient. Uses the closed-form representation count when
    /// the denominator is `(1 − t^α)(1 − t^β)` after canonicalization.
    pub fn coeff(&self, n: i64) -> BigInt {
        match self.canonical_numerator() {
            Ok(q) => q
                .terms()
                .filter(|&(e, _)| e <= n)
                .map(|(e, c)| c * self.pair.representation_count(n - e))
                .sum(),
            Err(_) => self.coeffs(n, n).pop().unwrap(),
        }
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_support(&self) -> Option<i64> {
        self.num.min_exp()
    }

    /// `N = max(0, D) + αβ` for the canonical numerator's top exponent `D`.
    pub fn stabilization_index(&self) -> Result<i64> {
        let q = self.canonical_numerator()?;
        Ok(q.max_exp().unwrap_or(0).max(0) + self.pair.product())
    }

    /// Exact nonnegativity test.
    pub fn is_nonnegative(&self) -> Result<bool> {
        let q = self.canonical_numerator()?;
        Ok(canonical_is_nonnegative(&self.pair, &q))
    }

    /// Pole order at `t = 1`.
    pub fn dimension(&self) -> Result<u8> {
        let q = self.canonical_numerator()?;
        Ok(canonical_dimension(&q))
    }

    /// The constant sum of `αβ` consecutive coefficients far out, for a
    /// series of dimension at most one.
    pub fn sigma(&self) -> Result<BigInt> {
        let q = self.canonical_numerator()?;
        if canonical_dimension(&q) > 1 {
            return Err(Error::DimensionTooHigh);
        }
        let Some(top) = q.max_exp() else {
            return Ok(BigInt::zero());
        };
        let start = top.max(0) + self.pair.product();
        let w: Vec<BigInt> =
            expand_full(&q, &self.pair, start, start + self.pair.product() - 1, None).unwrap();
        Ok(w.iter().sum())
    }

    /// `min { h_{r·g} | r > 0 }` for `g` one of the weights; the series must
    /// be nonnegative.
    pub fn c_min(&self, g: Generator) -> Result<BigInt> {
        let q = self.canonical_numerator()?;
        if !canonical_is_nonnegative(&self.pair, &q) {
            return Err(Error::NotNonnegative);
        }
        Ok(canonical_c_min(&self.pair, &q, g))
    }

    /// Veronese slice: the series `Σ_n h_{nδ+k} u^n`. Every denominator factor
    /// must be a multiple of `δ`; the result lives over `self.pair`.
    pub fn veronese(&self, delta: i64, k: i64) -> Result<Self> {
        if delta < 1 || k < 0 || k >= delta {
            return Err(Error::BadResidue { delta, residue: k });
        }
        let mut den_alpha = false;
        let mut den_beta = false;
        let mut extra: BTreeMap<i64, u32> = BTreeMap::new();
        for d in self.denominator_exponents() {
            if d % delta != 0 {
                return Err(Error::UnsupportedDenominator);
            }
            let e = d / delta;
            if e == self.pair.alpha() && !den_alpha {
                den_alpha = true;
            } else if e == self.pair.beta() && !den_beta {
                den_beta = true;
            } else {
                *extra.entry(e).or_default() += 1;
            }
        }
        Ok(Self {
            pair: self.pair,
            num: self.num.residue_slice(delta, k),
            den_alpha,
            den_beta,
            extra_den: extra,
        })
    }
}

impl PartialEq for RationalSeries {
    fn eq(&self, other: &Self) -> bool {
        match self.same_value(other) {
            Ok(v) => v,
            Err(_) => {
                self.pair == other.pair
                    && self.num == other.num
                    && self.den_alpha == other.den_alpha
                    && self.den_beta == other.den_beta
                    && self.extra_den == other.extra_den
            }
        }
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dens = self.denominator_exponents();
        if dens.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({})/(", self.num)?;
        for d in dens {
            write!(f, "(1 - t^{d})")?;
        }
        write!(f, ")")
    }
}

/// Sums a term list over the common denominator `(1 − t^α)(1 − t^β)`.
pub fn to_rational(pair: &SemigroupPair, terms: &TermList) -> RationalSeries {
    let (alpha, beta) = (pair.alpha(), pair.beta());
    let [q0, qa, qb, q2] = terms.parts();
    let num = &(&q0.mul_one_minus_pow(alpha).mul_one_minus_pow(beta) + &qa.mul_one_minus_pow(beta))
        + &(&qb.mul_one_minus_pow(alpha) + &q2);
    RationalSeries::new(*pair, num, true, true)
}

/// Coefficient types usable in window scans: machine integers for the fast
/// path, big integers otherwise.
pub(crate) trait Coeff:
    Clone
    + Ord
    + Zero
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + Into<BigInt>
    + Send
    + Sync
{
    fn from_big(b: &BigInt, limit: Option<i64>) -> Option<Self>;
    fn checked_sum(&self, other: &Self, limit: Option<i64>) -> Option<Self>;
}

impl Coeff for i64 {
    fn from_big(b: &BigInt, limit: Option<i64>) -> Option<Self> {
        let v = b.to_i64()?;
        (v.unsigned_abs() <= limit.unwrap_or(i64::MAX) as u64).then_some(v)
    }

    fn checked_sum(&self, other: &Self, limit: Option<i64>) -> Option<Self> {
        let v = self.checked_add(*other)?;
        (v.unsigned_abs() <= limit.unwrap_or(i64::MAX) as u64).then_some(v)
    }
}

impl Coeff for BigInt {
    fn from_big(b: &BigInt, _: Option<i64>) -> Option<Self> {
        Some(b.clone())
    }

    fn checked_sum(&self, other: &Self, _: Option<i64>) -> Option<Self> {
        Some(self + other)
    }
}

/// Coefficients `h_lo ..= h_hi` of `q / ((1 − t^α)(1 − t^β))`; `None` when a
/// value leaves the range allowed by `limit` for the coefficient type.
pub(crate) fn expand_full<T: Coeff>(
    q: &LaurentPoly,
    pair: &SemigroupPair,
    lo: i64,
    hi: i64,
    limit: Option<i64>,
) -> Option<Vec<T>> {
    let len = (hi - lo + 1).max(0) as usize;
    let Some(l0) = q.min_exp() else {
        return Some(vec![T::zero(); len]);
    };
    if hi < l0 {
        return Some(vec![T::zero(); len]);
    }
    let base = lo.min(l0);
    let n = (hi - base + 1) as usize;
    let mut h: Vec<T> = Vec::with_capacity(n);
    let offset = (l0 - base) as usize;
    let dense = q.dense();
    for k in 0..n {
        let v = if k >= offset && k - offset < dense.len() {
            T::from_big(&dense[k - offset], limit)?
        } else {
            T::zero()
        };
        h.push(v);
    }
    for d in [pair.alpha() as usize, pair.beta() as usize] {
        for k in d..n {
            let v = h[k].checked_sum(&h[k - d], limit)?;
            h[k] = v;
        }
    }
    h.drain(..(lo - base).max(0) as usize);
    if lo < base {
        let mut padded = vec![T::zero(); (base - lo) as usize];
        padded.extend(h);
        h = padded;
    }
    Some(h)
}

pub(crate) fn canonical_is_nonnegative(pair: &SemigroupPair, q: &LaurentPoly) -> bool {
    let (Some(l0), Some(top)) = (q.min_exp(), q.max_exp()) else {
        return true;
    };
    if q.eval_one().is_negative() {
        return false;
    }
    // beyond `top` each step of αβ adds Q(1) ≥ 0, so one period past `top` decides
    let hi = top + pair.product();
    if let Some(w) = expand_full::<i64>(q, pair, l0, hi, Some(i64::MAX / 4)) {
        return w.iter().all(|v| *v >= 0);
    }
    let w: Vec<BigInt> = expand_full(q, pair, l0, hi, None).unwrap();
    w.iter().all(|v| !v.is_negative())
}

pub(crate) fn canonical_dimension(q: &LaurentPoly) -> u8 {
    if q.is_zero() {
        return 0;
    }
    let mut rest = q.clone();
    for dim in [2, 1] {
        match rest.div_one_minus_pow(1) {
            Some(r) => rest = r,
            None => return dim,
        }
    }
    0
}

pub(crate) fn canonical_c_min(pair: &SemigroupPair, q: &LaurentPoly, g: Generator) -> BigInt {
    let step = pair.weight(g);
    let top = q.max_exp().unwrap_or(0).max(0) + pair.product();
    let w: Vec<BigInt> = expand_full(q, pair, step, top + step, None).unwrap();
    w.iter()
        .step_by(step as usize)
        .min()
        .cloned()
        .unwrap_or_default()
}
