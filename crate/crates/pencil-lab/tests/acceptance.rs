//! Acceptance suite: one pass/fail line per criterion.
//!
//! Runs as a plain binary (`harness = false`); the process exits nonzero
//! when any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pencil_lab::absfactor::absolute_factor_count_q;
use pencil_lab::arith::field::q_int;
use pencil_lab::arith::{BPoly, Q};
use pencil_lab::corpus::{check_item, gen_klein, golden_corpus, klein_forms, random_y_monic, CorpusItem};
use pencil_lab::pencil::{is_composite, primset, redset_refined, places_bound_check, singset_prime_field, PrimeFieldSingset};
use pencil_lab::rank::{rank_checks, rank_report, rho_a, rho_a_radical};
use pencil_lab::verify::{run_suite, Suite, SuiteSizes};
use pencil_lab::Error;

struct Outcome {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, summary: impl Into<String>) -> Self {
        Outcome { passed, summary: summary.into(), details: Vec::new() }
    }
}

fn special_items() -> Vec<CorpusItem> {
    golden_corpus().into_iter().filter(|it| it.w.is_none()).collect()
}

fn render(f: &BPoly<Q>) -> String {
    f.render("X", "Y")
}

/// Klein identity, checked coefficientwise.
fn criterion1() -> Outcome {
    let (h1, h2, h3) = klein_forms();
    let lhs = &h1.pow(2) + &h2.pow(3);
    let rhs = h3.pow(5).scale(&q_int(1728));
    Outcome::new(lhs == rhs, format!("H1^2 + H2^3 = 1728*H3^5 on {} terms", lhs.terms().len()))
}

/// Redset and place counts of the example families.
fn criterion2() -> Outcome {
    let mut out = Outcome::new(true, "");
    let mut n = 0;
    for item in golden_corpus().iter().filter(|it| it.id.starts_with("example")) {
        for o in check_item(item) {
            n += 1;
            out.passed &= o.passed;
            if !o.passed {
                out.details.push(format!("{}: {} ({})", o.item, o.fact, o.detail));
            }
        }
    }
    out.summary = format!("{n} facts over the example families");
    out
}

/// ζ = −1 and vanishing jungian residual on random Y-monic inputs.
fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut done, mut skipped, mut bad) = (0, 0, Vec::new());
    while done < 100 {
        let f = random_y_monic(&mut rng, 5);
        match rank_report(&f) {
            Ok(r) => {
                done += 1;
                if r.zeta != Some(-1) || r.jungian_residual != Some(0) {
                    bad.push(format!("{}: zeta {:?}, residual {:?}", render(&f), r.zeta, r.jungian_residual));
                }
            }
            Err(_) => skipped += 1,
        }
    }
    let mut out = Outcome::new(bad.is_empty(), format!("100 inputs, {} violations, {skipped} skipped", bad.len()));
    out.details = bad;
    out
}

/// Rank formulas against each other and against sampled fibers.
fn criterion4() -> Outcome {
    let mut out = Outcome::new(true, "");
    let (mut radical, mut sampled) = (0, 0);
    for (k, item) in special_items().iter().enumerate() {
        match (rho_a(&item.f), rho_a_radical(&item.f)) {
            (Ok(a), Ok(b)) => {
                radical += 1;
                if a != b {
                    out.passed = false;
                    out.details.push(format!("{}: rho_a {a} vs three-term {b}", item.id));
                }
            }
            (_, Err(Error::NotSquarefree)) => {}
            (a, b) => {
                out.passed = false;
                out.details.push(format!("{}: {a:?} / {b:?}", item.id));
            }
        }
        match rank_checks(&item.f, k as u64, 2, 5) {
            Ok(c) => {
                sampled += 1;
                if !(c.generic_ok && c.upper_ok) {
                    out.passed = false;
                    out.details.push(format!("{}: {c:?}", item.id));
                }
            }
            Err(e) => {
                out.passed = false;
                out.details.push(format!("{}: {e}", item.id));
            }
        }
    }
    out.summary = format!("{radical} radical items, {sampled} items sampled at 2 generic and 5 random parameters");
    out
}

/// Place bound for the redset, defect-set bounds, Klein primset.
fn criterion5() -> Outcome {
    let mut out = Outcome::new(true, "");
    let (mut places, mut defsets) = (0, 0);
    for (k, item) in special_items().iter().enumerate() {
        let result = (|| -> pencil_lab::Result<()> {
            let p = item.pencil()?;
            if !is_composite(&p)?.composite {
                let red = redset_refined(&p)?;
                let c = places_bound_check(&p, &red, k as u64)?;
                places += 1;
                if !c.holds {
                    out.passed = false;
                    out.details.push(format!("{}: |redset| {} vs {:?}", item.id, c.redset_size, c.samples));
                }
            }
            let b = rank_report(&item.f)?.bounds;
            defsets += 1;
            let ok = b.inclusion && b.singset_bound_holds && b.defset_bound_holds && b.corrected_defset_bound_holds;
            if !ok {
                out.passed = false;
                out.details.push(format!("{}: {b:?}", item.id));
            }
            Ok(())
        })();
        if let Err(e) = result {
            out.passed = false;
            out.details.push(format!("{}: {e}", item.id));
        }
    }
    let klein = gen_klein();
    match klein.pencil().and_then(|p| primset(&p)) {
        Ok(pr) => {
            let mut pattern = pr.mu_pattern();
            pattern.sort_unstable();
            let ok = pr.plus_size() == 3 && pattern == [2, 3, 5];
            out.passed &= ok;
            if !ok {
                out.details.push(format!("klein: |primset+| {} with pattern {pattern:?}", pr.plus_size()));
            }
        }
        Err(e) => {
            out.passed = false;
            out.details.push(format!("klein: {e}"));
        }
    }
    // Outside the corpus: the cubic Y³ − 3Y exceeds the literal defect-set
    // bound while the bound derived from ζ = −1 holds.
    let cubic = &BPoly::monomial(q_int(1), 0, 3) + &BPoly::monomial(q_int(-3), 0, 1);
    if let Ok(r) = rank_report(&cubic) {
        let b = r.bounds;
        out.details.push(format!(
            "note: Y^3 - 3*Y has |defset| = {} > 1 + rho_a + deg h = {}; |defset \\ multset \\ {{0}}| = {} <= {}: {}",
            b.defset_size, b.defset_bound, b.corrected_defset_size, b.corrected_defset_bound, b.corrected_defset_bound_holds
        ));
    }
    out.summary = format!(
        "place bound on {places} noncomposite items, defect-set bounds on {defsets} items, Klein |primset+| = 3"
    );
    out
}

/// Local multiplicities and kernel reductions against brute force.
fn criterion6() -> Outcome {
    let sizes = SuiteSizes { zeta: 0, bezout: 0, gamma: 0, local: 200, kernel: 100, scans: 0 };
    let lines: Vec<_> = run_suite(Suite::Oracles, 1, &sizes)
        .into_iter()
        .filter(|l| l.label.starts_with("local") || l.label.starts_with("resultants"))
        .collect();
    let mut out = Outcome::new(
        lines.len() == 2 && lines.iter().all(|l| l.passed),
        lines.iter().map(|l| format!("{} ({})", l.label, l.detail)).collect::<Vec<_>>().join("; "),
    );
    out.details = lines.iter().filter(|l| !l.passed).map(|l| l.detail.clone()).collect();
    out
}

/// Characteristic-p degeneracy and the multiple-fiber convention.
fn criterion7() -> Outcome {
    let mut out = Outcome::new(true, "");
    for p in [2u64, 3, 5, 7] {
        let f = &BPoly::monomial(q_int(1), p as usize, 0) + &BPoly::monomial(q_int(1), 0, p as usize);
        match singset_prime_field(&f, p) {
            Ok(PrimeFieldSingset::AllOfField { p: q }) if q == p => {}
            other => {
                out.passed = false;
                out.details.push(format!("X^{p} + Y^{p} mod {p}: {other:?}"));
            }
        }
    }
    let y2 = BPoly::monomial(q_int(1), 0, 2);
    match rank_report(&y2) {
        Ok(r) => {
            let defset: Vec<Option<Q>> = r.defset.members.iter().map(|m| m.as_rational()).collect();
            let ok = r.rho_pi == -1 && defset == [Some(q_int(0))] && r.zeta == Some(-1);
            out.passed &= ok;
            if !ok {
                out.details.push(format!("Y^2: rho_pi {}, defset {}, zeta {:?}", r.rho_pi, r.defset.render(), r.zeta));
            }
        }
        Err(e) => {
            out.passed = false;
            out.details.push(format!("Y^2: {e}"));
        }
    }
    out.summary = "X^p + Y^p gives the whole field for p = 2, 3, 5, 7; Y^2 gives rho_pi = -1, defset {0}, zeta = -1".into();
    out
}

/// Parity of absolute irreducibility of X² + Y^u.
fn criterion8() -> Outcome {
    let mut out = Outcome::new(true, "u = 1..7");
    for u in 1..=7usize {
        let f = &BPoly::monomial(q_int(1), 2, 0) + &BPoly::monomial(q_int(1), 0, u);
        let want = if u % 2 == 1 { 1 } else { 2 };
        match absolute_factor_count_q(&f) {
            Ok(n) if n == want => {}
            other => {
                out.passed = false;
                out.details.push(format!("u = {u}: {other:?}, expected {want}"));
            }
        }
    }
    out
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Duration);
    let criteria: [Criterion; 8] = [
        ("Klein identity", criterion1, Duration::from_secs(5)),
        ("example families golden suite", criterion2, Duration::from_secs(60)),
        ("zeta = -1 property suite", criterion3, Duration::from_secs(600)),
        ("rank cross-checks", criterion4, Duration::from_secs(600)),
        ("bound suite", criterion5, Duration::from_secs(600)),
        ("oracle agreement", criterion6, Duration::from_secs(600)),
        ("degenerate inputs", criterion7, Duration::from_secs(60)),
        ("parity of absolute irreducibility", criterion8, Duration::from_secs(10)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        let elapsed = t.elapsed();
        let in_time = elapsed <= *budget;
        let passed = o.passed && in_time;
        if !passed {
            failed += 1;
        }
        println!(
            "criterion {}: {} — {name}: {} [{:.1?}, budget {:?}{}]",
            i + 1,
            if passed { "PASS" } else { "FAIL" },
            o.summary,
            elapsed,
            budget,
            if in_time { "" } else { ", exceeded" }
        );
        for d in &o.details {
            println!("    {d}");
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
