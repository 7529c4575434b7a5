//! Acceptance suite: one PASS/FAIL line per criterion, with timings.
//!
//! Run with `cargo test -p hdepth --test acceptance`.

use std::collections::{BTreeSet, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};

use hdepth::couples::{self, random_balanced};
use hdepth::oracle::{
    brute_decomposable_dim1, brute_is_member, brute_present, random_star_terms,
    regression_vectors_3_5, vector_violation, Corpus,
};
use hdepth::series::TermList;
use hdepth::star::{check_balanced_inequality, find_nonstrict_critical, CriticalHit, StarChecker};
use hdepth::{
    check_star, decompose, decompose_dim1, hilbert_depth, pd, to_rational, verify_decomposition,
    Denom, Error, FundamentalCouple, Generator, Input, LaurentPoly, PdResult, RationalSeries,
    SemigroupPair, StarVerdict, Term,
};

type Outcome = Result<String, String>;

fn pair(a: i64, b: i64) -> SemigroupPair {
    SemigroupPair::new(a, b).unwrap()
}

fn terms(list: &[(i64, i64, Denom)]) -> TermList {
    TermList::new(list.iter().map(|&(s, c, d)| Term::new(s, c, d)).collect()).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mixed_module() -> TermList {
    terms(&[
        (0, 1, Denom::Both),
        (1, 1, Denom::Empty),
        (2, 1, Denom::Empty),
    ])
}

fn nu_zero() -> TermList {
    terms(&[
        (1, 1, Denom::Empty),
        (0, 1, Denom::Alpha),
        (7, 1, Denom::Alpha),
        (8, 1, Denom::Alpha),
    ])
}

fn alpha_atoms_series() -> RationalSeries {
    RationalSeries::new(
        pair(3, 4),
        LaurentPoly::from_terms([(0, 1), (1, 1), (6, 1), (7, 1), (8, 1)]),
        true,
        false,
    )
}

/// Re-evaluates a certificate from raw coefficients.
fn certificate_verifies(h: &RationalSeries, v: &StarVerdict) -> bool {
    let Some(v) = v.violation() else { return false };
    let lhs: BigInt = v.couple.i().iter().map(|&i| h.coeff(v.n + i)).sum();
    let rhs: BigInt = v.couple.j().iter().map(|&j| h.coeff(v.n + j)).sum();
    lhs == v.lhs && rhs == v.rhs && lhs > rhs
}

fn c1_couple_counts() -> Outcome {
    for ((a, b), expected) in [
        ((4, 5), 14u32),
        ((4, 7), 30),
        ((6, 11), 728),
        ((11, 13), 104006),
    ] {
        let n = couples::count(&pair(a, b));
        ensure(n == BigUint::from(expected), || {
            format!("count({a},{b}) = {n}, expected {expected}")
        })?;
    }
    let started = Instant::now();
    let listed = couples::enumerate(&pair(11, 13)).len();
    let elapsed = started.elapsed();
    ensure(listed == 104006, || {
        format!("enumerate(11,13) produced {listed} couples")
    })?;
    ensure(elapsed < Duration::from_secs(10), || {
        format!("enumerate(11,13) took {elapsed:?}")
    })?;
    Ok(format!(
        "14, 30, 728, 104006; full enumeration of (11,13) in {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn c2_genus_and_gaps() -> Outcome {
    for ((a, b), g) in [((4, 5), 6), ((4, 7), 9), ((6, 11), 25), ((11, 13), 60)] {
        let s = pair(a, b);
        ensure(s.genus() == g, || format!("genus({a},{b}) = {}", s.genus()))?;
        ensure(s.gaps().len() as i64 == g, || {
            format!("|gaps({a},{b})| = {}", s.gaps().len())
        })?;
    }
    let s = pair(3, 5);
    ensure(s.gaps() == vec![1, 2, 4, 7], || {
        format!("gaps(3,5) = {:?}", s.gaps())
    })?;
    ensure(s.conductor() == 8, || {
        format!("conductor(3,5) = {}", s.conductor())
    })?;
    Ok("genus 6, 9, 25, 60; gaps(3,5) = [1,2,4,7]; conductor 8".into())
}

fn multiset(v: &[i64]) -> Vec<i64> {
    let mut v = v.to_vec();
    v.sort_unstable();
    v
}

fn c3_inequality_reconstruction() -> Outcome {
    let s = pair(3, 5);
    let enumerated: BTreeSet<(Vec<i64>, Vec<i64>)> = couples::enumerate(&s)
        .iter()
        .map(|c| (multiset(c.i()), multiset(c.j())))
        .collect();
    let vectors = regression_vectors_3_5();
    let expected: BTreeSet<(Vec<i64>, Vec<i64>)> = vectors
        .iter()
        .map(|v| (multiset(&v.lhs), multiset(&v.rhs)))
        .collect();
    ensure(enumerated == expected, || {
        format!("couples {enumerated:?} vs vectors {expected:?}")
    })?;
    let numbered: BTreeSet<_> = vectors
        .iter()
        .filter(|v| v.label != 11)
        .map(|v| (multiset(&v.lhs), multiset(&v.rhs)))
        .collect();
    ensure(
        numbered.is_subset(&enumerated) && numbered.len() == 6,
        || "couple-shaped regression vectors not all enumerated".into(),
    )?;

    let v11 = vectors.iter().find(|v| v.label == 11).unwrap();
    let checker = StarChecker::new(s);
    let corpus = Corpus::generate(&s, 3, 1000, 5, 10);
    let mut passing = 0;
    for m in &corpus.members {
        if !checker.check(&m.series).map_err(|e| e.to_string())?.holds() {
            return Err(format!("corpus member fails (★): {:?}", m.recipe));
        }
        passing += 1;
        let lo = m.series.min_support().unwrap_or(0) - 15;
        let hi = m.series.stabilization_index().map_err(|e| e.to_string())?;
        if let Some(n) = vector_violation(&m.series, v11, lo, hi) {
            return Err(format!("non-couple vector fails at n = {n} on {:?}", m.recipe));
        }
    }
    Ok(format!(
        "7 couples = regression vectors; the non-couple vector holds on {passing} (★) series"
    ))
}

fn c4_mixed_module() -> Outcome {
    let s = pair(3, 5);
    let h = to_rational(&s, &mixed_module());
    let p = pd(&h, 15).map_err(|e| e.to_string())?;
    ensure(p == PdResult::Finite(1), || format!("pd = {p}"))?;
    let v = check_star(&h).map_err(|e| e.to_string())?;
    ensure(certificate_verifies(&h, &v), || {
        format!("certificate {v:?} does not verify")
    })?;
    let report = hilbert_depth(&s, &Input::Terms(mixed_module())).map_err(|e| e.to_string())?;
    ensure(report.hdep == 0, || format!("hdep = {}", report.hdep))?;
    Ok(format!("pd_15 = 1; {}; hdep = 0", v.violation().unwrap()))
}

fn c5_nu_zero() -> Outcome {
    let s = pair(3, 5);
    let h = to_rational(&s, &nu_zero());
    let v = check_star(&h).map_err(|e| e.to_string())?;
    ensure(certificate_verifies(&h, &v), || {
        format!("certificate {v:?} does not verify")
    })?;
    let brute = brute_decomposable_dim1(&h, None);
    ensure(brute == Ok(false), || format!("brute search: {brute:?}"))?;
    let report = hilbert_depth(&s, &Input::Terms(nu_zero())).map_err(|e| e.to_string())?;
    ensure(report.hdep == 0, || format!("hdep = {}", report.hdep))?;
    Ok(format!(
        "{}; no atom decomposition; hdep = 0",
        v.violation().unwrap()
    ))
}

fn c6_alpha_atoms_series() -> Outcome {
    let s = pair(3, 4);
    let h = alpha_atoms_series();
    let c = h.c_min(Generator::Beta).map_err(|e| e.to_string())?;
    ensure(c == BigInt::from(1), || format!("c_4 = {c}"))?;
    let hits = find_nonstrict_critical(&h, Generator::Beta).map_err(|e| e.to_string())?;
    let wanted = CriticalHit {
        couple: FundamentalCouple::new(&s, vec![0, 5], vec![9, 8]).unwrap(),
        m: -4,
        side: Generator::Beta,
        strict: false,
    };
    ensure(hits.contains(&wanted), || {
        format!("m = -4 hit missing from {hits:?}")
    })?;
    let d = decompose_dim1(&s, &h).map_err(|e| e.to_string())?;
    ensure(
        d.terms.terms().iter().all(|t| t.denom == Denom::Alpha),
        || format!("atoms {:?}", d.terms),
    )?;
    ensure(verify_decomposition(&h, &d), || {
        "decomposition does not re-sum".into()
    })?;
    let h4 = h.subtract_atom(0, Denom::Beta).map_err(|e| e.to_string())?;
    ensure(h4.is_nonnegative() == Ok(true), || {
        "H - 1/(1-t^4) is not nonnegative".into()
    })?;
    let v = check_star(&h4).map_err(|e| e.to_string())?;
    ensure(certificate_verifies(&h4, &v), || {
        format!("H - 1/(1-t^4): {v:?}")
    })?;
    Ok(format!(
        "c_4 = 1; tight h_-4 + h_1 = h_4 + h_5; {} (1-t^3)-atoms; H - 1/(1-t^4) fails at {}",
        d.terms.terms().len(),
        v.violation().unwrap()
    ))
}

/// `N / C` when the cyclotomic cofactor `C` divides `N` (both dense from
/// degree 0, `C` monic with constant term 1).
fn exact_quotient(n: &[i64], c: &[i64]) -> Option<Vec<i64>> {
    if n.len() < c.len() {
        return n.iter().all(|&x| x == 0).then(Vec::new);
    }
    let mut rem = n.to_vec();
    let mut q = vec![0; n.len() - c.len() + 1];
    for k in 0..q.len() {
        let f = rem[k];
        q[k] = f;
        if f != 0 {
            for (l, &cl) in c.iter().enumerate() {
                rem[k + l] -= f * cl;
            }
        }
    }
    rem.iter().all(|&x| x == 0).then_some(q)
}

fn dense_mul_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0; p.len() + d];
    for (k, &c) in p.iter().enumerate() {
        out[k] += c;
        out[k + d] -= c;
    }
    out
}

fn dense_div_one_minus(p: &[i64], d: usize) -> Vec<i64> {
    let mut q = p.to_vec();
    for k in d..q.len() {
        q[k] += q[k - d];
    }
    q.truncate(p.len() - d);
    q
}

/// Nonnegativity of `Q / ((1 − t^α)(1 − t^β))` for `Q(1) = 0`, `Q` dense from 0.
fn dim1_nonnegative(q: &[i64], alpha: usize, beta: usize, buf: &mut Vec<i64>) -> bool {
    let n = q.len() + alpha * beta;
    buf.clear();
    buf.extend_from_slice(q);
    buf.resize(n, 0);
    for d in [alpha, beta] {
        for k in d..n {
            buf[k] += buf[k - d];
        }
    }
    buf.iter().all(|&v| v >= 0)
}

fn digits(code: u64, len: usize) -> Vec<i64> {
    let mut x = code;
    (0..len)
        .map(|_| {
            let d = (x % 3) as i64;
            x /= 3;
            d
        })
        .collect()
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn c7_oracle_equivalence() -> Outcome {
    const LEN: usize = 13;
    let mut summary = Vec::new();
    let mut total_members = 0;
    for (a, b) in [(2, 3), (3, 4), (3, 5)] {
        let s = pair(a, b);
        let (alpha, beta, ab) = (a as usize, b as usize, (a * b) as usize);
        let checker = StarChecker::new(s);
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut buf = Vec::new();
        // cofactor C = (1 − t^αβ)(1 − t)/((1 − t^α)(1 − t^β))
        let mut one = vec![1i64];
        one = dense_mul_one_minus(&one, ab);
        one = dense_mul_one_minus(&one, 1);
        let cofactor = trim(dense_div_one_minus(&dense_div_one_minus(&one, alpha), beta));
        let (mut holds, mut fails) = (0usize, 0usize);
        // shifts are irrelevant to both sides, so numerators start with a nonzero digit
        for code in 0..3u64.pow(LEN as u32) {
            let digits = digits(code, LEN);
            if digits[0] == 0 {
                continue;
            }
            let digits = trim(digits);
            // family B: Q = R·(1 − t)
            let q_b = dense_mul_one_minus(&digits, 1);
            // family A: H = N/(1 − t^αβ), Q = (N / C)·(1 − t)
            let q_a = exact_quotient(&digits, &cofactor).map(|r| dense_mul_one_minus(&trim(r), 1));
            for q in std::iter::once(q_b).chain(q_a) {
                if !dim1_nonnegative(&q, alpha, beta, &mut buf) || !seen.insert(q.clone()) {
                    continue;
                }
                let h = RationalSeries::new(
                    s,
                    LaurentPoly::from_terms(q.iter().enumerate().map(|(e, &c)| (e as i64, c))),
                    true,
                    true,
                );
                let star = checker.check(&h).map_err(|e| format!("{h}: {e}"))?.holds();
                let brute = match brute_decomposable_dim1(&h, None) {
                    Ok(v) => v,
                    Err(Error::BudgetExceeded) => {
                        return Err(format!("{s}: budget exceeded on {h}"))
                    }
                    Err(e) => return Err(format!("{s}: oracle error {e} on {h}")),
                };
                if star != brute {
                    return Err(format!("{s}: (★) {star} but search {brute} on {h}"));
                }
                if star {
                    holds += 1;
                } else {
                    fails += 1;
                }
            }
        }
        total_members += holds + fails;
        summary.push(format!(
            "({a},{b}): {} series, {holds} hold / {fails} fail",
            holds + fails
        ));
    }
    Ok(format!(
        "{total_members} series, 0 discrepancies; {}",
        summary.join("; ")
    ))
}

fn c8_round_trip() -> Outcome {
    let pairs = [pair(2, 3), pair(3, 4), pair(3, 5), pair(4, 7)];
    let checkers: Vec<StarChecker> = pairs.iter().map(|p| StarChecker::new(*p)).collect();
    let (mut outputs, mut not_found, mut skipped) = (0, 0, 0);
    let mut provenances = BTreeSet::new();
    let mut seed = 0u64;
    while outputs < 500 {
        seed += 1;
        if seed > 5000 {
            return Err(format!("only {outputs} outputs after {seed} attempts"));
        }
        let k = (seed % pairs.len() as u64) as usize;
        let s = pairs[k];
        let mut recipe = random_star_terms(seed, 1 + (seed % 4) as usize, 8)
            .terms()
            .to_vec();
        // some inputs gain a finite-length part; keep them only if (★) survives
        if seed.is_multiple_of(3) {
            recipe.push(Term::new((seed % 5) as i64, 1, Denom::Empty));
        }
        let recipe = TermList::new(recipe).unwrap();
        let h = to_rational(&s, &recipe);
        if !checkers[k].check(&h).map_err(|e| e.to_string())?.holds() {
            skipped += 1;
            continue;
        }
        let input = if seed.is_multiple_of(2) {
            Input::Terms(recipe)
        } else {
            Input::Series(h.clone())
        };
        match decompose(&s, &input) {
            Ok(d) => {
                if !verify_decomposition(&h, &d) {
                    return Err(format!("{s}: witness does not re-sum for {input:?}"));
                }
                provenances.insert(format!("{:?}", d.provenance));
                outputs += 1;
            }
            Err(Error::NotFound) => not_found += 1,
            Err(e) => return Err(format!("{s}: {e} for {input:?}")),
        }
    }
    Ok(format!(
        "{outputs} witnesses re-sum exactly ({}); {not_found} raw inputs without witness; {skipped} draws failed (★)",
        provenances.into_iter().collect::<Vec<_>>().join(", ")
    ))
}

fn c9_balanced_couples() -> Outcome {
    let s = pair(3, 5);
    let corpus = Corpus::generate(&s, 9, 200, 5, 10);
    let checker = StarChecker::new(s);
    let couples: Vec<_> = (0..200)
        .map(|k| random_balanced(&s, 1000 + k, 5, 2))
        .collect();
    let mut cases = 0;
    for m in &corpus.members {
        if !checker.check(&m.series).map_err(|e| e.to_string())?.holds() {
            return Err(format!("corpus member fails (★): {:?}", m.recipe));
        }
        for c in &couples {
            cases += 1;
            if !check_balanced_inequality(&m.series, c) {
                return Err(format!(
                    "fails for I = {:?}, J = {:?} on {:?}",
                    c.i(),
                    c.j(),
                    m.recipe
                ));
            }
        }
    }
    Ok(format!("{cases} cases hold"))
}

fn c10_semigroup_suite() -> Outcome {
    let pairs = [
        (1, 4),
        (2, 3),
        (2, 7),
        (3, 5),
        (3, 7),
        (4, 9),
        (5, 6),
        (5, 8),
        (7, 10),
        (11, 13),
    ];
    for (a, b) in pairs {
        let s = pair(a, b);
        for n in 1..=500 {
            let fast = s.present(n).map_err(|e| e.to_string())?;
            let brute = brute_present(&s, n).map_err(|e| e.to_string())?;
            ensure(fast == brute, || {
                format!("present({a},{b}; {n}): {fast:?} vs {brute:?}")
            })?;
        }
    }
    let mut gap_pairs = 0;
    for b in 2..=15 {
        for a in 1..b {
            let Ok(s) = SemigroupPair::new(a, b) else {
                continue;
            };
            let gaps = s.gaps();
            for &e1 in &gaps {
                for &e2 in &gaps {
                    let d = (e1 - e2).abs();
                    let brute = d > 0 && !brute_is_member(&s, d);
                    let fast = s.diff_is_gap(e1, e2).map_err(|e| e.to_string())?;
                    ensure(fast == brute, || format!("diff_is_gap({a},{b}; {e1},{e2})"))?;
                    gap_pairs += 1;
                }
            }
        }
    }
    Ok(format!(
        "present agrees on [1,500] x 10 pairs; gap differences agree on {gap_pairs} gap pairs"
    ))
}

fn main() -> ExitCode {
    type Criterion = (u8, &'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        (
            1,
            "couple counts",
            Some(Duration::from_secs(10)),
            c1_couple_counts,
        ),
        (2, "genus, gaps, conductor", None, c2_genus_and_gaps),
        (
            3,
            "(3,5) inequality reconstruction",
            Some(Duration::from_secs(5)),
            c3_inequality_reconstruction,
        ),
        (4, "mixed module of depth 0", None, c4_mixed_module),
        (5, "nu = 0 example", None, c5_nu_zero),
        (6, "tight critical inequality", None, c6_alpha_atoms_series),
        (
            7,
            "oracle equivalence, exhaustive family",
            Some(Duration::from_secs(600)),
            c7_oracle_equivalence,
        ),
        (
            8,
            "decomposition round-trip",
            Some(Duration::from_secs(60)),
            c8_round_trip,
        ),
        (
            9,
            "balanced-couple inequalities",
            Some(Duration::from_secs(60)),
            c9_balanced_couples,
        ),
        (10, "semigroup suite", None, c10_semigroup_suite),
    ];
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY")
        .ok()
        .and_then(|v| v.parse().ok());
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        if only.is_some_and(|k| k != id) {
            continue;
        }
        let started = Instant::now();
        let mut result = run();
        let elapsed = started.elapsed();
        if let (Ok(_), Some(limit)) = (&result, limit) {
            if elapsed > limit {
                result = Err(format!(
                    "took {:.1}s, limit {}s",
                    elapsed.as_secs_f64(),
                    limit.as_secs()
                ));
            }
        }
        let limit = limit
            .map(|l| format!(", limit {}s", l.as_secs()))
            .unwrap_or_default();
        match result {
            Ok(detail) => println!(
                "PASS  [{id:>2}] {name}: {detail} ({:.2}s{limit})",
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!(
                    "FAIL  [{id:>2}] {name}: {detail} ({:.2}s{limit})",
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        ExitCode::FAILURE
    } else {
        println!("all acceptance criteria passed");
        ExitCode::SUCCESS
    }
}
