//! `hdepth selftest`: fast paths against the brute-force oracles.

use std::time::Instant;

use serde_json::{json, Value};

use hdepth::oracle::{brute_count_couples, brute_decomposable_dim1, brute_present, Corpus};
use hdepth::series::TermList;
use hdepth::star::{check_inequality_24, StarChecker};
use hdepth::{
    couples, decompose, verify_decomposition, Denom, Input, LaurentPoly, RationalSeries,
    SemigroupPair, Term,
};

fn coprime_pairs(max_beta: i64) -> Vec<SemigroupPair> {
    let mut out = Vec::new();
    for b in 2..=max_beta {
        for a in 1..b {
            if let Ok(p) = SemigroupPair::new(a, b) {
                out.push(p);
            }
        }
    }
    out
}

struct Check {
    name: &'static str,
    cases: usize,
    failures: Vec<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failures.len() < 5 {
            self.failures.push(detail());
        }
    }

    fn json(&self, started: Instant) -> Value {
        json!({
            "name": self.name,
            "passed": self.failures.is_empty(),
            "cases": self.cases,
            "failures": self.failures,
            "seconds": started.elapsed().as_secs_f64(),
        })
    }
}

fn presentations(quick: bool) -> Check {
    let mut c = Check::new("present_vs_brute");
    let top = if quick { 100 } else { 500 };
    for pair in coprime_pairs(if quick { 7 } else { 11 })
        .into_iter()
        .filter(|p| p.alpha() > 1)
    {
        for n in 1..=top {
            let ok = pair.present(n).ok() == brute_present(&pair, n).ok();
            c.record(ok, || format!("{pair}: n = {n}"));
        }
    }
    c
}

fn couple_counts(quick: bool) -> Check {
    let mut c = Check::new("couple_count_vs_cliques");
    let limit = if quick { 60 } else { 150 };
    for pair in coprime_pairs(limit)
        .into_iter()
        .filter(|p| p.product() <= limit)
    {
        let fast = couples::count(&pair);
        let listed = couples::iter(&pair).count();
        let brute = brute_count_couples(&pair).ok();
        let ok = brute.map(|b| b.into()) == Some(fast.clone()) && fast == listed.into();
        c.record(ok, || {
            format!("{pair}: dp {fast}, dfs {listed}, brute {brute:?}")
        });
    }
    c
}

fn corpus_checks(quick: bool, seed: u64) -> Check {
    let mut c = Check::new("corpus_star_24_roundtrip");
    let size = if quick { 40 } else { 200 };
    for (a, b) in [(2, 3), (3, 5), (4, 7)] {
        let pair = SemigroupPair::new(a, b).unwrap();
        let checker = StarChecker::new(pair);
        let corpus = Corpus::generate(&pair, seed ^ pair.product() as u64, size, 4, 8);
        for m in &corpus.members {
            let star = checker.check(&m.series).map(|v| v.holds()).unwrap_or(false);
            let ineq = check_inequality_24(&m.series).unwrap_or(false);
            let input = Input::Terms(m.recipe.clone());
            let resum = decompose(&pair, &input)
                .map(|d| verify_decomposition(&m.series, &d))
                .unwrap_or(false);
            c.record(star && ineq && resum, || {
                format!(
                    "{pair}: {:?} star={star} ineq24={ineq} resum={resum}",
                    m.recipe
                )
            });
        }
    }
    c
}

fn dim1_equivalence(quick: bool) -> Check {
    let mut c = Check::new("dim1_star_vs_search");
    let degree = if quick { 6 } else { 9 };
    for (a, b) in [(2, 3), (3, 4), (3, 5)] {
        let pair = SemigroupPair::new(a, b).unwrap();
        let checker = StarChecker::new(pair);
        let total = 3u64.pow(degree as u32 + 1);
        for code in 0..total {
            let mut x = code;
            let r: Vec<(i64, i64)> = (0..=degree)
                .map(|e| {
                    let v = (x % 3) as i64;
                    x /= 3;
                    (e, v)
                })
                .collect();
            let num = LaurentPoly::from_terms(r).mul_one_minus_pow(1);
            let h = RationalSeries::new(pair, num, true, true);
            if !h.is_nonnegative().unwrap_or(false) {
                continue;
            }
            let star = checker.check(&h).map(|v| v.holds()).ok();
            let brute = brute_decomposable_dim1(&h, None).ok();
            c.record(star.is_some() && star == brute, || {
                format!("{pair}: {h} star={star:?} brute={brute:?}")
            });
        }
    }
    c
}

fn known_examples() -> Check {
    let mut c = Check::new("known_examples");
    let pair = SemigroupPair::new(3, 5).unwrap();
    let terms = |list: &[(i64, i64, Denom)]| {
        TermList::new(list.iter().map(|&(s, k, d)| Term::new(s, k, d)).collect()).unwrap()
    };
    let ex31 = terms(&[
        (0, 1, Denom::Both),
        (1, 1, Denom::Empty),
        (2, 1, Denom::Empty),
    ]);
    let nu0 = terms(&[
        (1, 1, Denom::Empty),
        (0, 1, Denom::Alpha),
        (7, 1, Denom::Alpha),
        (8, 1, Denom::Alpha),
    ]);
    for (name, t) in [("mixed_module", ex31), ("nu_zero", nu0)] {
        let depth = hdepth::nu(&pair, &Input::Terms(t)).ok();
        c.record(depth == Some(0), || format!("{name}: depth {depth:?}"));
    }
    c.record(
        couples::count(&SemigroupPair::new(4, 5).unwrap()) == 14u32.into(),
        || "count(4,5)".into(),
    );
    c
}

pub fn run(quick: bool, seed: u64) -> Value {
    let suite: [&dyn Fn() -> Check; 5] = [
        &|| presentations(quick),
        &|| couple_counts(quick),
        &|| corpus_checks(quick, seed),
        &|| dim1_equivalence(quick),
        &known_examples,
    ];
    let mut checks = Vec::new();
    let mut passed = true;
    for f in suite {
        let started = Instant::now();
        let check = f();
        passed &= check.failures.is_empty();
        checks.push(check.json(started));
    }
    json!({"passed": passed, "quick": quick, "seed": seed, "checks": checks})
}
