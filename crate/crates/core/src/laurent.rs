//! Laurent polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An element of `Z[t, 1/t]`.
///
/// Stored densely from the lowest to the highest nonzero exponent. Both ends
/// are always nonzero, and the zero polynomial has no stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        Self::from_dense(exp, vec![coeff.into()])
    }

    /// Builds `coeffs[0] t^low + coeffs[1] t^(low+1) + ...`.
    pub fn from_dense(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = Self { low, coeffs };
        p.trim();
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let terms: Vec<(i64, BigInt)> = terms.into_iter().map(|(e, c)| (e, c.into())).collect();
        let Some(low) = terms.iter().map(|t| t.0).min() else {
            return Self::zero();
        };
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            coeffs[(e - low) as usize] += c;
        }
        Self::from_dense(low, coeffs)
    }

    /// `1 + t^d + t^(2d) + ... + t^((count-1)d)`.
    pub fn geometric(d: i64, count: i64) -> Self {
        Self::from_terms((0..count).map(|k| (k * d, 1)))
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.low = 0;
            }
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.low += first as i64;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// Dense coefficient slice starting at [`min_exp`](Self::min_exp).
    pub fn dense(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn shift(&self, s: i64) -> Self {
        Self {
            low: if self.is_zero() { 0 } else { self.low + s },
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::from_dense(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiplies by `1 - t^d`.
    pub fn mul_one_minus_pow(&self, d: i64) -> Self {
        assert!(d > 0);
        if self.is_zero() {
            return Self::zero();
        }
        let n = self.coeffs.len();
        let d = d as usize;
        let mut out = vec![BigInt::zero(); n + d];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
            out[k + d] -= c;
        }
        Self::from_dense(self.low, out)
    }

    /// Exact division by `1 - t^d`; `None` when it does not divide.
    pub fn div_one_minus_pow(&self, d: i64) -> Option<Self> {
        assert!(d > 0);
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.coeffs.len();
        let d = d as usize;
        if n <= d {
            return None;
        }
        // quotient q satisfies q_k = c_k + q_{k-d}
        let mut q: Vec<BigInt> = Vec::with_capacity(n - d);
        for k in 0..n - d {
            let mut v = self.coeffs[k].clone();
            if k >= d {
                v += &q[k - d];
            }
            q.push(v);
        }
        for k in n - d..n {
            let carried = if k >= d {
                q.get(k - d).cloned().unwrap_or_default()
            } else {
                BigInt::zero()
            };
            if !(&self.coeffs[k] + carried).is_zero() {
                return None;
            }
        }
        Some(Self::from_dense(self.low, q))
    }

    /// Splits off the coefficients with exponent congruent to `residue`
    /// modulo `delta`, returning them as a polynomial in `u = t^delta`
    /// (exponent `e` maps to `(e - residue) / delta`).
    pub fn residue_slice(&self, delta: i64, residue: i64) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|(e, _)| e.rem_euclid(delta) == residue)
                .map(|(e, c)| ((e - residue).div_euclid(delta), c.clone())),
        )
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exp().unwrap().max(rhs.max_exp().unwrap());
        let mut out = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_dense(low, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (a, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (b, y) in rhs.coeffs.iter().enumerate() {
                out[a + b] += x * y;
            }
        }
        LaurentPoly::from_dense(self.low + rhs.low, out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            match (k, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let show_mag = !mag.is_one() || e == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}
