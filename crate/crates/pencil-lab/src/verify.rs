//! Self-verification suites run by `pencil-lab verify`: the golden corpus,
//! algebraic identities on seeded random inputs, and differential checks
//! against the brute-force oracles.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::field::{q_frac, q_int};
use crate::arith::nf::{Nf, NumberField};
use crate::arith::{BPoly, Q};
use crate::corpus::{
    check_item, golden_corpus, kernel_modp_check, klein_forms, oracle_local_dimension, random_bpoly, random_y_monic,
    structured_random, LocalDim, StructuredKind,
};
use crate::error::{Error, Result};
use crate::intersect::{affine_total, fulton, intersection_multiplicity, Mult};
use crate::rank::rank_report;

/// One pass/fail line of a suite.
#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub suite: &'static str,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Examples,
    Identities,
    Oracles,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Examples, Suite::Identities, Suite::Oracles];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Examples => "paper-examples",
            Suite::Identities => "identities",
            Suite::Oracles => "oracles",
        }
    }
}

/// Sizes of the randomized families.
#[derive(Clone, Copy, Debug)]
pub struct SuiteSizes {
    pub zeta: usize,
    pub bezout: usize,
    pub gamma: usize,
    pub local: usize,
    pub kernel: usize,
    pub scans: usize,
}

impl Default for SuiteSizes {
    fn default() -> Self {
        SuiteSizes { zeta: 100, bezout: 20, gamma: 20, local: 200, kernel: 100, scans: 50 }
    }
}

pub fn run_suite(suite: Suite, seed: u64, sizes: &SuiteSizes) -> Vec<CheckLine> {
    match suite {
        Suite::Examples => golden_examples(),
        Suite::Identities => identities(seed, sizes),
        Suite::Oracles => oracles(seed, sizes),
    }
}

fn golden_examples() -> Vec<CheckLine> {
    golden_corpus()
        .iter()
        .flat_map(check_item)
        .map(|o| CheckLine {
            suite: "paper-examples",
            label: format!("{}: {}", o.item, o.fact),
            passed: o.passed,
            detail: o.detail,
        })
        .collect()
}

/// Aggregate line for a randomized family: passes when no instance fails;
/// the detail lists the first failures.
fn family(suite: &'static str, label: String, results: Vec<std::result::Result<(), String>>) -> CheckLine {
    let total = results.len();
    let failures: Vec<String> = results.into_iter().filter_map(|r| r.err()).collect();
    CheckLine {
        suite,
        label,
        passed: failures.is_empty(),
        detail: if failures.is_empty() {
            format!("{total} instances")
        } else {
            format!("{} of {total} failed; first: {}", failures.len(), failures[..failures.len().min(3)].join("; "))
        },
    }
}

fn render(f: &BPoly<Q>) -> String {
    f.render("X", "Y")
}

fn random_q(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Q {
    q_frac(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

fn identities(seed: u64, sizes: &SuiteSizes) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let zeta = (0..sizes.zeta)
        .map(|_| {
            let f = random_y_monic(&mut rng, 5);
            match rank_report(&f) {
                Ok(r) if r.zeta == Some(-1) && r.jungian_residual == Some(0) => Ok(()),
                Ok(r) => Err(format!("{}: zeta {:?}, residual {:?}", render(&f), r.zeta, r.jungian_residual)),
                Err(e) => Err(format!("{}: {e}", render(&f))),
            }
        })
        .collect();
    out.push(family("identities", "zeta = -1 and jungian residual 0 on random Y-monic inputs".into(), zeta));

    let bezout = (0..sizes.bezout)
        .map(|_| {
            let (g, h) = loop {
                let (dg, dh) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
                let g = random_bpoly(&mut rng, dg, 0.7, 5);
                let h = random_bpoly(&mut rng, dh, 0.7, 5);
                if g.total_deg() >= 1 && h.total_deg() >= 1 && g.degree_form().gcd(&h.degree_form()).total_deg() == 0 {
                    break (g, h);
                }
            };
            let want = (g.total_deg() * h.total_deg()) as usize;
            match affine_total(&g, &h) {
                Ok(Mult::Finite(n)) if n == want => Ok(()),
                Ok(m) => Err(format!("{} and {}: total {m:?}, expected {want}", render(&g), render(&h))),
                Err(e) => Err(format!("{} and {}: {e}", render(&g), render(&h))),
            }
        })
        .collect();
    out.push(family("identities", "affine intersection total = deg g * deg h without common points at infinity".into(), bezout));

    let (h1, h2, h3) = klein_forms();
    let klein = &h1.pow(2) + &h2.pow(3) == h3.pow(5).scale(&q_int(1728));
    out.push(CheckLine {
        suite: "identities",
        label: "H1^2 + H2^3 = 1728*H3^5".into(),
        passed: klein,
        detail: "degree 60 binary forms compared coefficientwise".into(),
    });

    let x = BPoly::x(&());
    let y = BPoly::y(&());
    let xy = &x * &y;
    let gamma = (0..sizes.gamma)
        .map(|_| {
            let g = random_q(&mut rng, 20, 7);
            let c = |v: &Q| BPoly::constant(v.clone());
            let lhs = &(&(&xy - &c(&g)) * &(&xy + &c(&q_int(1)))) + &c(&g);
            let rhs = &x * &(&(&xy * &y) + &y.scale(&(q_int(1) - g.clone())));
            if lhs == rhs {
                Ok(())
            } else {
                Err(format!("gamma = {g}"))
            }
        })
        .collect();
    out.push(family("identities", "(XY - g)(XY + 1) + g = X(XY^2 + (1 - g)Y) for random g".into(), gamma));
    out
}

/// Cap for the local-quotient oracle: germs of degree ≤ 3 meet with
/// multiplicity ≤ 9 unless they share a component.
const LOCAL_CAP: usize = 12;

/// Random polynomial vanishing at the origin, of total degree ≤ 3, with no
/// linear part half of the time (forcing tangency-type multiplicities).
fn local_germ(rng: &mut ChaCha8Rng) -> BPoly<Q> {
    loop {
        let skip_linear = rng.gen_bool(0.5);
        let terms: Vec<_> = random_bpoly(rng, 3, 0.5, 5)
            .terms()
            .into_iter()
            .filter(|&((i, j), _)| i + j >= if skip_linear { 2 } else { 1 })
            .map(|((i, j), c)| (i, j, c))
            .collect();
        if !terms.is_empty() {
            return BPoly::from_terms(&terms, &());
        }
    }
}

fn oracles(seed: u64, sizes: &SuiteSizes) -> Vec<CheckLine> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mut out = Vec::new();
    let k = NumberField::rationals();
    let local = (0..sizes.local)
        .map(|_| -> std::result::Result<(), String> {
            let (a, b) = (local_germ(&mut rng), local_germ(&mut rng));
            let (u, v) = (random_q(&mut rng, 5, 3), random_q(&mut rng, 5, 3));
            let (mu, mv) = (-u.clone(), -v.clone());
            let (g, h) = (a.translate(&mu, &mv), b.translate(&mu, &mv));
            let tag = || format!("{} and {} at ({u}, {v})", render(&g), render(&h));
            let at_origin = fulton(&a, &b).map_err(|e| format!("{}: {e}", tag()))?;
            let at_point = intersection_multiplicity(&g, &h, &Nf::from_q(&u, &k), &Nf::from_q(&v, &k))
                .map_err(|e| format!("{}: {e}", tag()))?;
            let oracle = oracle_local_dimension(&g, &h, &u, &v, LOCAL_CAP).map_err(|e| format!("{}: {e}", tag()))?;
            let agree = match (at_origin, oracle) {
                (Mult::Finite(m), LocalDim::Finite(d)) => m == d,
                (Mult::Infinite, LocalDim::ExceedsCap) => true,
                _ => false,
            };
            if agree && at_point == at_origin {
                Ok(())
            } else {
                Err(format!("{}: fulton {at_origin:?} / {at_point:?}, oracle {oracle:?}", tag()))
            }
        })
        .collect();
    out.push(family("oracles", "local intersection multiplicity = dim of the local quotient".into(), local));

    let kernel = (0..sizes.kernel as u64)
        .map(|i| {
            let c = kernel_modp_check(seed.wrapping_mul(1000).wrapping_add(i));
            if c.resultant_agree && c.gcd_agree {
                Ok(())
            } else {
                Err(format!("instance {i}: {c:?}"))
            }
        })
        .collect();
    out.push(family("oracles", "resultants and gcds commute with reduction mod p".into(), kernel));

    let scans = (0..sizes.scans as u64)
        .map(|i| {
            let item = structured_random(seed.wrapping_mul(1000).wrapping_add(i), 4, StructuredKind::Smooth);
            match check_item(&item).into_iter().find(|o| !o.passed) {
                None => Ok(()),
                Some(o) => Err(format!("{}: {}", o.item, o.detail)),
            }
        })
        .collect();
    out.push(family("oracles", "prime-field singular fibers lie in the reduced singset".into(), scans));
    out
}

/// Parse a suite name (`all` selects every suite).
pub fn parse_suites(name: &str) -> Result<Vec<Suite>> {
    if name == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .iter()
        .find(|s| s.name() == name)
        .map(|s| vec![*s])
        .ok_or_else(|| Error::Parse { offset: 0, msg: format!("unknown suite '{name}'") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let sizes = SuiteSizes { zeta: 5, bezout: 4, gamma: 3, local: 30, kernel: 10, scans: 3 };
        for suite in [Suite::Identities, Suite::Oracles] {
            for line in run_suite(suite, 3, &sizes) {
                assert!(line.passed, "{line:?}");
            }
        }
        assert!(parse_suites("bogus").is_err());
        assert_eq!(parse_suites("all").unwrap().len(), 3);
    }
}
