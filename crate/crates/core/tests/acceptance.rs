//! Acceptance suite: one pass/fail line per criterion, exact equality
//! throughout (tolerance zero). Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use fpl_core::linkpat::{all_dyck_words, all_ht_words, apply_e, apply_e_sym, dyck_to_pattern, ht_decode, LinkPattern};
use fpl_core::verify::{
    run, verify_ciucu, verify_degier, verify_qqt, verify_qqt_count, verify_qt, verify_refined, verify_rs,
    verify_thm6, verify_thm7, Identity, Status, VerificationReport,
};
use fpl_core::{
    asm_to_fpl, count_class, count_formula_a, enumerate_asms, fpl_to_asm, pattern_counts, qqt_reduce, HtWord,
    SymmetryClass,
};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn verified(reports: &[VerificationReport]) -> Result<(), String> {
    match reports.iter().find(|r| r.status != Status::Verified) {
        None => Ok(()),
        Some(r) => Err(r.render()),
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

fn c1() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=7 {
        let got = enumerate_asms(n, SymmetryClass::Plain).unwrap().count();
        if BigUint::from(got) != count_formula_a(n) {
            return outcome(false, format!("n={n}: enumerated {got}, formula {}", count_formula_a(n)));
        }
        counts.push(got.to_string());
    }
    outcome(true, format!("A(1..7) = {}", counts.join(", ")))
}

fn c2() -> Outcome {
    let ht = count_class(10, SymmetryClass::HalfTurn).unwrap();
    let a5 = count_formula_a(5);
    let total = &ht * &a5 * &a5;
    outcome(total == big(114640611228), format!("A_HT(10) = {ht}, times A(5)^2 = {total}"))
}

fn c3() -> Outcome {
    let ht = count_class(9, SymmetryClass::HalfTurn).unwrap();
    let product = &ht * count_formula_a(5) * count_formula_a(4);
    let ok = ht == big(39204) && product == big(706377672);
    outcome(ok, format!("A_HT(9) = {ht}, times 429 * 42 = {product}"))
}

fn c4() -> Outcome {
    let totals: Vec<VerificationReport> = (1..=3).map(verify_qqt_count).collect();
    let per: Vec<VerificationReport> = (1..=2).map(verify_qqt).collect();
    let lhs: Vec<String> = totals.iter().map(|r| r.lhs.clone().unwrap_or_default()).collect();
    let ok = verified(&totals).and(verified(&per)).is_ok() && lhs == ["6", "350", "172872"];
    outcome(ok, format!("qQT totals {} match the product; per-pattern equal for n <= 2", lhs.join(", ")))
}

fn c5() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=3).map(verify_qt).collect();
    let lhs: Vec<String> = reports.iter().map(|r| r.lhs.clone().unwrap_or_default()).collect();
    let ok = verified(&reports).is_ok() && lhs == ["2", "40", "6860"];
    outcome(ok, format!("QT per-pattern equal, totals {}", lhs.join(", ")))
}

fn c6() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=5).map(verify_rs).collect();
    let last = reports.last().unwrap();
    let ok = verified(&reports).is_ok() && last.per_pattern.len() == 42 && last.lhs.as_deref() == Some("429");
    outcome(ok, format!("N <= 5 exact, {} patterns at N = 5", last.per_pattern.len()))
}

fn c7() -> Outcome {
    let reports: Vec<VerificationReport> = (2..=6).map(verify_degier).collect();
    let last = reports.last().unwrap();
    let ok = verified(&reports).is_ok() && last.per_pattern.len() == 20 && last.lhs.as_deref() == Some("140");
    outcome(ok, format!("N <= 6 exact, {} words total {} at N = 6", last.per_pattern.len(), last.lhs.clone().unwrap_or_default()))
}

fn c8() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=2).map(verify_refined).collect();
    match verified(&reports) {
        Ok(()) => outcome(true, "coefficient-wise equal at n = 1, 2"),
        Err(e) => outcome(false, e),
    }
}

fn c9() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=4).map(verify_thm7).collect();
    let values: Vec<String> = reports.iter().map(|r| r.lhs.clone().unwrap_or_default()).collect();
    let ok = verified(&reports).is_ok() && values == ["2", "14", "294", "18018"];
    outcome(ok, format!("brute = ciucu = lgv = formula = {}", values.join(", ")))
}

fn c10() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=3).map(verify_ciucu).collect();
    let values: Vec<String> = reports.iter().map(|r| r.lhs.clone().unwrap_or_default()).collect();
    match verified(&reports) {
        Ok(()) => outcome(true, format!("M(G) = 2^n M*(G') = {}", values.join(", "))),
        Err(e) => outcome(false, e),
    }
}

fn c11() -> Outcome {
    let reports: Vec<VerificationReport> = (1..=2).map(verify_thm6).collect();
    match verified(&reports) {
        Ok(()) => outcome(true, "injective, cardinalities 1, 2, 4, 14"),
        Err(e) => outcome(false, e),
    }
}

fn relations_hold(m: usize, p: &LinkPattern, i: usize, j: usize, e: &dyn Fn(usize, &LinkPattern) -> LinkPattern) -> bool {
    let gap = |a: usize, b: usize| {
        let d = (a + m - b) % m;
        d.min(m - d)
    };
    let ei = e(i, p);
    let idempotent = e(i, &ei) == ei;
    let commute = gap(i, j) <= 1 || e(i, &e(j, p)) == e(j, &e(i, p));
    let absorb = [i % m + 1, (i + m - 2) % m + 1].iter().all(|&k| gap(i, k) != 1 || e(i, &e(k, &ei)) == ei);
    idempotent && commute && absorb
}

fn c12() -> Outcome {
    let plain = |i: usize, p: &LinkPattern| apply_e(i, p);
    let sym = |i: usize, p: &LinkPattern| apply_e_sym(i, p).unwrap();
    for n in 1..=5 {
        let m = 2 * n;
        for w in all_dyck_words(n) {
            let p = dyck_to_pattern(&w);
            for i in 1..=m {
                for j in 1..=m {
                    if !relations_hold(m, &p, i, j, &plain) {
                        return outcome(false, format!("relation fails at {w} e_{i} e_{j}"));
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let cases = 2000;
    for _ in 0..cases {
        if rng.gen_bool(0.5) {
            let n = rng.gen_range(1..=8);
            let words = all_dyck_words(n);
            let p = dyck_to_pattern(&words[rng.gen_range(0..words.len())]);
            let (i, j) = (rng.gen_range(1..=2 * n), rng.gen_range(1..=2 * n));
            if !relations_hold(2 * n, &p, i, j, &plain) {
                return outcome(false, format!("random relation fails at size {n}"));
            }
        } else {
            let n = rng.gen_range(3..=8);
            let words = all_ht_words(n);
            let p = ht_decode(&words[rng.gen_range(0..words.len())]);
            let (i, j) = (rng.gen_range(1..=n), rng.gen_range(1..=n));
            if !relations_hold(n, &p, i, j, &sym) {
                return outcome(false, format!("random symmetrized relation fails at size {n}"));
            }
        }
    }
    for n in 1..=5 {
        for a in enumerate_asms(n, SymmetryClass::Plain).unwrap() {
            if fpl_to_asm(&asm_to_fpl(&a)) != a {
                return outcome(false, format!("round trip fails at size {n}"));
            }
        }
    }
    for n in 1..=5 {
        let d = pattern_counts(n, SymmetryClass::Plain).unwrap();
        for (w, c) in &d.counts {
            let r = dyck_to_pattern(&w.parse().unwrap()).rotate(1).to_dyck().to_string();
            if d.get(&r) != *c {
                return outcome(false, format!("rotation changes the count of {w}"));
            }
        }
    }
    let example = qqt_reduce(&"babaababba".parse::<HtWord>().unwrap()).unwrap();
    if example.as_str() != "babca" {
        return outcome(false, format!("babaababba reduced to {example}"));
    }
    outcome(true, format!("TL relations exhaustive N <= 5 and {cases} random cases N <= 8; round trip n <= 5; rotation N <= 5; babaababba -> babca"))
}

fn c13() -> Outcome {
    let qt = run(Identity::QtProduct, 6, false);
    let qqt = run(Identity::QqtCount, 5, false);
    let ok = qt.status == Status::Skipped
        && qt.lhs.is_none()
        && qt.rhs.as_deref() == Some("10995014015567296")
        && qqt.status == Status::Skipped
        && qqt.lhs.is_none()
        && qqt.rhs.as_deref() == Some("23679655141428");
    outcome(
        ok,
        format!(
            "formula sides only: size 24 QT {}, size 22 qQT {}; enumeration skipped",
            qt.rhs.unwrap_or_default(),
            qqt.rhs.unwrap_or_default()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 13] = [
        ("counting oracle n = 1..7", c1, Duration::from_secs(60)),
        ("size-20 QT count", c2, Duration::from_secs(600)),
        ("size-18 qQT product", c3, Duration::from_secs(300)),
        ("qQT totals and per-pattern", c4, Duration::from_secs(1800)),
        ("QT per-pattern", c5, Duration::from_secs(1800)),
        ("stationary distribution, plain", c6, Duration::from_secs(300)),
        ("stationary distribution, half-turn", c7, Duration::from_secs(300)),
        ("refined qQT identity", c8, Duration::from_secs(600)),
        ("holed-hexagon triple agreement", c9, Duration::from_secs(120)),
        ("matching factorization instance", c10, Duration::from_secs(120)),
        ("FPL to tiling bijection", c11, Duration::from_secs(300)),
        ("property suites", c12, Duration::from_secs(300)),
        ("sizes beyond enumeration", c13, Duration::from_secs(300)),
    ];
    let mut failures = 0;
    for (k, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let within = elapsed <= *budget;
        let ok = result.ok && within;
        if !ok {
            failures += 1;
        }
        let timing = format!("{:.2}s of {}s", elapsed.as_secs_f64(), budget.as_secs());
        let status = if ok { "PASS" } else { "FAIL" };
        let late = if within { "" } else { " (over time budget)" };
        println!("criterion {:>2}: {status} {name}: {} [{timing}]{late}", k + 1, result.detail);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}
