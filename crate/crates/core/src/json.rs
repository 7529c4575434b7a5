//! JSON documents: the series input format and the result shapes.
//!
//! A series document names two weights and gives either a term list or a
//! numerator with denominator flags:
//!
//! ```json
//! {"alpha":3,"beta":5,"terms":[{"shift":0,"coeff":1,"denom":["alpha","beta"]}]}
//! {"alpha":3,"beta":5,"numerator":[[0,1],[1,-1]],"den_alpha":1,"den_beta":1}
//! ```
//!
//! Integers of any size are accepted and emitted as JSON numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Deserialize;
use serde_json::{json, Number, Value};

use crate::couples::FundamentalCouple;
use crate::decomp::{witness_module, Certificate, Decomposition, DepthReport, Input, PdResult};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::semigroup::{Generator, SemigroupPair};
use crate::series::{Denom, RationalSeries, Term, TermList};
use crate::star::{GeneralVerdict, StarVerdict, Violation};

pub fn big_to_json(b: &BigInt) -> Value {
    Value::Number(
        b.to_string()
            .parse()
            .expect("decimal integers are valid JSON numbers"),
    )
}

pub fn json_to_big(n: &Number) -> Result<BigInt> {
    n.to_string()
        .parse()
        .map_err(|_| Error::Schema(format!("expected an integer, got {n}")))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTerm {
    shift: i64,
    coeff: Number,
    denom: Vec<Generator>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSeries {
    alpha: i64,
    beta: i64,
    terms: Option<Vec<RawTerm>>,
    numerator: Option<Vec<(i64, Number)>>,
    den_alpha: Option<u8>,
    den_beta: Option<u8>,
}

/// One term of a document, with flags for the document's first (`"alpha"`)
/// and second (`"beta"`) weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocTerm {
    pub shift: i64,
    pub coeff: BigInt,
    pub first: bool,
    pub second: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SeriesBody {
    Terms(Vec<DocTerm>),
    Numerator {
        num: LaurentPoly,
        den1: bool,
        den2: bool,
    },
}

/// A validated series document. The weights are kept as written; they need
/// not be ordered or coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesDoc {
    pub d1: i64,
    pub d2: i64,
    pub body: SeriesBody,
}

fn flag(v: Option<u8>, name: &str) -> Result<bool> {
    match v {
        None | Some(1) => Ok(true),
        Some(0) => Ok(false),
        Some(x) => Err(Error::Schema(format!("{name} must be 0 or 1, got {x}"))),
    }
}

impl SeriesDoc {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawSeries =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_raw(raw)
    }

    pub fn from_value(v: Value) -> Result<Self> {
        let raw: RawSeries = serde_json::from_value(v).map_err(|e| Error::Schema(e.to_string()))?;
        Self::from_raw(raw)
    }

    fn from_raw(raw: RawSeries) -> Result<Self> {
        if raw.alpha < 1 || raw.beta < 1 {
            return Err(Error::NonPositiveWeight);
        }
        let body = match (raw.terms, raw.numerator) {
            (Some(terms), None) => {
                if raw.den_alpha.is_some() || raw.den_beta.is_some() {
                    return Err(Error::Schema(
                        "den_alpha/den_beta only apply to \"numerator\"".into(),
                    ));
                }
                let mut out = Vec::with_capacity(terms.len());
                for t in terms {
                    let first = t.denom.contains(&Generator::Alpha);
                    let second = t.denom.contains(&Generator::Beta);
                    if t.denom.len() != usize::from(first) + usize::from(second) {
                        return Err(Error::Schema("repeated generator in denom".into()));
                    }
                    out.push(DocTerm {
                        shift: t.shift,
                        coeff: json_to_big(&t.coeff)?,
                        first,
                        second,
                    });
                }
                SeriesBody::Terms(out)
            }
            (None, Some(num)) => {
                let mut coeffs = Vec::with_capacity(num.len());
                for (e, c) in num {
                    coeffs.push((e, json_to_big(&c)?));
                }
                SeriesBody::Numerator {
                    num: LaurentPoly::from_terms(coeffs),
                    den1: flag(raw.den_alpha, "den_alpha")?,
                    den2: flag(raw.den_beta, "den_beta")?,
                }
            }
            _ => {
                return Err(Error::Schema(
                    "exactly one of \"terms\" and \"numerator\" is required".into(),
                ))
            }
        };
        Ok(Self {
            d1: raw.alpha,
            d2: raw.beta,
            body,
        })
    }

    /// The coprime pair and input; labels are remapped when the document lists
    /// the larger weight first.
    pub fn input(&self) -> Result<(SemigroupPair, Input)> {
        let pair = SemigroupPair::new(self.d1, self.d2)?;
        let swapped = pair.alpha() != self.d1;
        let order = |a: bool, b: bool| if swapped { (b, a) } else { (a, b) };
        let input = match &self.body {
            SeriesBody::Terms(terms) => {
                let list = terms
                    .iter()
                    .map(|t| {
                        let (a, b) = order(t.first, t.second);
                        let denom = match (a, b) {
                            (false, false) => Denom::Empty,
                            (true, false) => Denom::Alpha,
                            (false, true) => Denom::Beta,
                            (true, true) => Denom::Both,
                        };
                        Term::new(t.shift, t.coeff.clone(), denom)
                    })
                    .collect();
                Input::Terms(TermList::new(list)?)
            }
            SeriesBody::Numerator { num, den1, den2 } => {
                let (a, b) = order(*den1, *den2);
                Input::Series(RationalSeries::new(pair, num.clone(), a, b))
            }
        };
        Ok((pair, input))
    }

    /// The series over arbitrary weights together with `δ = gcd(d1, d2)`.
    pub fn general_series(&self) -> Result<(RationalSeries, i64)> {
        let (num, den1, den2) = match &self.body {
            SeriesBody::Numerator { num, den1, den2 } => (num.clone(), *den1, *den2),
            SeriesBody::Terms(terms) => {
                if terms.iter().any(|t| t.coeff <= BigInt::from(0)) {
                    return Err(Error::NonPositiveCoefficient);
                }
                let mut num = LaurentPoly::zero();
                for t in terms {
                    let mut p = LaurentPoly::monomial(t.shift, t.coeff.clone());
                    if !t.first {
                        p = p.mul_one_minus_pow(self.d1);
                    }
                    if !t.second {
                        p = p.mul_one_minus_pow(self.d2);
                    }
                    num = &num + &p;
                }
                (num, true, true)
            }
        };
        let series = RationalSeries::general(self.d1, self.d2, num, den1, den2)?;
        Ok((series, self.d1.gcd(&self.d2)))
    }
}

pub fn terms_json(terms: &TermList) -> Value {
    Value::Array(
        terms
            .terms()
            .iter()
            .map(|t| {
                json!({
                    "shift": t.shift,
                    "coeff": big_to_json(&t.coeff),
                    "denom": t.denom.generators(),
                })
            })
            .collect(),
    )
}

/// A series document for a term list over a coprime pair.
pub fn series_doc_json(pair: &SemigroupPair, terms: &TermList) -> Value {
    json!({"alpha": pair.alpha(), "beta": pair.beta(), "terms": terms_json(terms)})
}

pub fn numerator_json(q: &LaurentPoly) -> Value {
    Value::Array(q.terms().map(|(e, c)| json!([e, big_to_json(c)])).collect())
}

pub fn couple_json(c: &FundamentalCouple) -> Value {
    json!({"I": c.i(), "J": c.j()})
}

pub fn violation_json(v: &Violation) -> Value {
    json!({
        "I": v.couple.i(),
        "J": v.couple.j(),
        "n": v.n,
        "lhs": big_to_json(&v.lhs),
        "rhs": big_to_json(&v.rhs),
    })
}

pub fn verdict_json(v: &StarVerdict) -> Value {
    match v {
        StarVerdict::Holds => json!({"holds": true}),
        StarVerdict::Fails(v) => json!({"holds": false, "violation": violation_json(v)}),
    }
}

/// Verdict for possibly non-coprime weights; for `δ = 1` this is the plain
/// verdict shape.
pub fn general_verdict_json(v: &GeneralVerdict) -> Value {
    if v.delta == 1 {
        return verdict_json(&v.slices[0]);
    }
    let mut out = json!({
        "holds": v.holds(),
        "delta": v.delta,
        "alpha": v.pair.alpha(),
        "beta": v.pair.beta(),
        "slices": v.slices.iter().enumerate().map(|(k, s)| {
            let mut item = verdict_json(s);
            item["residue"] = json!(k);
            item
        }).collect::<Vec<_>>(),
    });
    if let Some((k, viol)) = v.first_violation() {
        let mut vj = violation_json(viol);
        vj["residue"] = json!(k);
        out["violation"] = vj;
    }
    out
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "atoms": terms_json(&d.terms),
        "witness_module": witness_module(d),
        "provenance": d.provenance,
    })
}

pub fn depth_report_json(r: &DepthReport) -> Value {
    let certificate = match &r.certificate {
        Certificate::FreeNumerator(q) => {
            json!({"kind": "free_numerator", "numerator": numerator_json(q)})
        }
        Certificate::Decomposition(d) => {
            let mut v = decomposition_json(d);
            v["kind"] = json!("decomposition");
            v
        }
        Certificate::Star => json!({"kind": "star", "holds": true}),
        Certificate::Violation(v) => json!({"kind": "violation", "violation": violation_json(v)}),
    };
    let mut out = json!({"hdep": r.hdep, "nu": r.hdep, "certificate": certificate});
    if let Some(c) = &r.caveat {
        out["caveat"] = json!(c);
    }
    out
}

pub fn pd_json(d: i64, r: PdResult) -> Value {
    match r {
        PdResult::Finite(r) => json!({"d": d, "pd": r}),
        PdResult::Unbounded => json!({"d": d, "pd": "unbounded"}),
    }
}

pub fn semigroup_json(pair: &SemigroupPair) -> Value {
    json!({
        "alpha": pair.alpha(),
        "beta": pair.beta(),
        "gaps": pair.gaps(),
        "conductor": pair.conductor(),
        "genus": pair.genus(),
        "apery_alpha": pair.apery(pair.alpha()).unwrap(),
        "apery_beta": pair.apery(pair.beta()).unwrap(),
    })
}
