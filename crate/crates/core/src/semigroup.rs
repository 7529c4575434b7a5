//! Arithmetic of the numerical semigroup generated by two coprime weights.
//!
//! Every positive integer `n` has a unique presentation
//! `n = p·αβ − a·α − b·β` with `p > 0`, `0 ≤ a < β`, `0 ≤ b < α`, and `n` is a
//! gap exactly when `p = 1` and `a, b ≥ 1`. Most operations here are read off
//! that presentation.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A coprime pair `α < β` of positive weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SemigroupPair {
    alpha: i64,
    beta: i64,
    #[serde(skip)]
    inv_beta_mod_alpha: i64,
    #[serde(skip)]
    inv_alpha_mod_beta: i64,
}

/// Which generator a denominator factor or a critical inequality refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Generator {
    Alpha,
    Beta,
}

/// The unique triple with `n = p·αβ − a·α − b·β`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GapPresentation {
    pub p: i64,
    pub a: i64,
    pub b: i64,
}

/// Relation of `e1` to `e2` under the gap order
/// `e1 ⪯ e2 ⟺ a(e1) ≥ a(e2) ∧ b(e1) ≤ b(e2)`.
///
/// `Strict` requires both coordinate inequalities to be strict, which is
/// stronger than `⪯` plus inequality. `Incomparable` means `e1 ⪯ e2` fails,
/// even if `e2 ⪯ e1` holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GapOrder {
    Strict,
    WeakOnly,
    Equal,
    Incomparable,
}

fn mod_inverse(x: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = x.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m)
}

impl SemigroupPair {
    /// Validates and orders a pair of weights.
    pub fn new(d1: i64, d2: i64) -> Result<Self> {
        if d1 < 1 || d2 < 1 {
            return Err(Error::NonPositiveWeight);
        }
        if d1 == d2 {
            return Err(Error::Equal);
        }
        let g = d1.gcd(&d2);
        if g > 1 {
            return Err(Error::NonCoprime(g));
        }
        let (alpha, beta) = (d1.min(d2), d1.max(d2));
        // keep room for window arithmetic around a few multiples of αβ
        match alpha.checked_mul(beta) {
            Some(ab) if ab <= i64::MAX / 64 => {}
            _ => return Err(Error::WeightOverflow),
        }
        Ok(Self {
            alpha,
            beta,
            inv_beta_mod_alpha: mod_inverse(beta, alpha),
            inv_alpha_mod_beta: mod_inverse(alpha, beta),
        })
    }

    pub fn alpha(&self) -> i64 {
        self.alpha
    }

    pub fn beta(&self) -> i64 {
        self.beta
    }

    pub fn weight(&self, g: Generator) -> i64 {
        match g {
            Generator::Alpha => self.alpha,
            Generator::Beta => self.beta,
        }
    }

    pub(crate) fn inv_alpha_mod_beta(&self) -> i64 {
        self.inv_alpha_mod_beta
    }

    /// `αβ`.
    pub fn product(&self) -> i64 {
        self.alpha * self.beta
    }

    /// Smallest semigroup element congruent to `n` modulo `α`; these are the
    /// Apéry elements `s·β`.
    fn apery_alpha_rep(&self, n: i64) -> i64 {
        let s = (n.rem_euclid(self.alpha) * self.inv_beta_mod_alpha).rem_euclid(self.alpha);
        s * self.beta
    }

    pub fn is_member(&self, n: i64) -> bool {
        n >= 0 && n >= self.apery_alpha_rep(n)
    }

    pub fn conductor(&self) -> i64 {
        (self.alpha - 1) * (self.beta - 1)
    }

    pub fn genus(&self) -> i64 {
        self.conductor() / 2
    }

    /// The gaps in ascending order.
    pub fn gaps(&self) -> Vec<i64> {
        (1..self.conductor())
            .filter(|&n| !self.is_member(n))
            .collect()
    }

    pub fn is_gap(&self, n: i64) -> bool {
        n > 0 && !self.is_member(n)
    }

    /// Number of ways to write `n = xα + yβ` with `x, y ≥ 0`.
    ///
    /// For `n = qαβ + s` with `0 ≤ s < αβ` this is `q + [s ∈ S]`.
    pub fn representation_count(&self, n: i64) -> i64 {
        if n < 0 {
            return 0;
        }
        let ab = self.product();
        n.div_euclid(ab) + i64::from(self.is_member(n.rem_euclid(ab)))
    }

    /// The unique presentation of a positive integer.
    pub fn present(&self, n: i64) -> Result<GapPresentation> {
        if n <= 0 {
            return Err(Error::NonPositive(n));
        }
        let b = ((-n).rem_euclid(self.alpha) * self.inv_beta_mod_alpha).rem_euclid(self.alpha);
        let a = ((-n).rem_euclid(self.beta) * self.inv_alpha_mod_beta).rem_euclid(self.beta);
        let total = n + a * self.alpha + b * self.beta;
        debug_assert_eq!(total % self.product(), 0);
        Ok(GapPresentation {
            p: total / self.product(),
            a,
            b,
        })
    }

    fn gap_presentation(&self, e: i64) -> Result<GapPresentation> {
        if !self.is_gap(e) {
            return Err(Error::NotAGap(e));
        }
        self.present(e)
    }

    /// The Apéry set of `g ∈ {α, β}`, ascending.
    pub fn apery(&self, g: i64) -> Result<Vec<i64>> {
        if g == self.alpha {
            Ok((0..self.alpha).map(|s| s * self.beta).collect())
        } else if g == self.beta {
            Ok((0..self.beta).map(|r| r * self.alpha).collect())
        } else {
            Err(Error::BadModulus(g))
        }
    }

    pub fn gap_order(&self, e1: i64, e2: i64) -> Result<GapOrder> {
        let p1 = self.gap_presentation(e1)?;
        let p2 = self.gap_presentation(e2)?;
        Ok(if e1 == e2 {
            GapOrder::Equal
        } else if p1.a > p2.a && p1.b < p2.b {
            GapOrder::Strict
        } else if p1.a >= p2.a && p1.b <= p2.b {
            GapOrder::WeakOnly
        } else {
            GapOrder::Incomparable
        })
    }

    /// The unique gap `j ≥ e1, e2` with `j ≡ e1 (mod α)` and `j ≡ e2 (mod β)`,
    /// which exists exactly when `e1 ⪯ e2`.
    pub fn connecting_gap(&self, e1: i64, e2: i64) -> Result<Option<i64>> {
        let p1 = self.gap_presentation(e1)?;
        let p2 = self.gap_presentation(e2)?;
        Ok((p1.a >= p2.a && p1.b <= p2.b)
            .then(|| self.product() - p2.a * self.alpha - p1.b * self.beta))
    }

    /// Whether `|e1 − e2|` is a gap, decided by the sign of
    /// `(a(e2) − a(e1))·(b(e2) − b(e1))`.
    pub fn diff_is_gap(&self, e1: i64, e2: i64) -> Result<bool> {
        let p1 = self.gap_presentation(e1)?;
        let p2 = self.gap_presentation(e2)?;
        Ok((p2.a - p1.a) * (p2.b - p1.b) < 0)
    }
}

impl fmt::Display for SemigroupPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.alpha, self.beta)
    }
}
