//! Seeded random polynomials and instances with planted structure.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::field::q_int;
use crate::arith::{BPoly, Q};

use super::{CorpusItem, Fact};

/// Random polynomial with terms of total degree ≤ `deg`, each present with
/// probability `density` and integer coefficient in [−`c`, `c`] ∖ {0}.
pub fn random_bpoly(rng: &mut ChaCha8Rng, deg: usize, density: f64, c: i64) -> BPoly<Q> {
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=deg - i {
            if rng.gen_bool(density) {
                let mut v = 0;
                while v == 0 {
                    v = rng.gen_range(-c..=c);
                }
                terms.push((i, j, q_int(v)));
            }
        }
    }
    BPoly::from_terms(&terms, &())
}

/// Y^N plus random terms of total degree < N, with N in [1, `max_deg`]:
/// the degree form is Y^N.
pub fn random_y_monic(rng: &mut ChaCha8Rng, max_deg: usize) -> BPoly<Q> {
    let n = rng.gen_range(1..=max_deg);
    let lower = if n > 1 { random_bpoly(rng, n - 1, 0.5, 4) } else { BPoly::zero(&()) };
    &BPoly::monomial(q_int(1), 0, n) + &lower
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuredKind {
    /// f = g·h + c₀ with g = X + p(Y), h = Y + q(X), deg p, deg q ≥ 2.
    Product,
    /// f = u·h^μ + c₀ with h = X + p(Y).
    Power,
    /// Dense random f; facts come from prime-field scans.
    Smooth,
}

/// Seeded instance with a planted fact; `deg_bound` ≥ 4.
pub fn structured_random(seed: u64, deg_bound: usize, kind: StructuredKind) -> CorpusItem {
    let deg_bound = deg_bound.max(4);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c0 = q_int(rng.gen_range(-5..=5));
    let univariate = |rng: &mut ChaCha8Rng, d: usize, in_y: bool| {
        let mut terms = Vec::new();
        for k in 1..d {
            let v = rng.gen_range(-3..=3);
            if v != 0 {
                terms.push(if in_y { (0, k, q_int(v)) } else { (k, 0, q_int(v)) });
            }
        }
        let lead = if rng.gen_bool(0.5) { 1 } else { -1 };
        terms.push(if in_y { (0, d, q_int(lead)) } else { (d, 0, q_int(lead)) });
        BPoly::from_terms(&terms, &())
    };
    let x = BPoly::x(&());
    let y = BPoly::y(&());
    let (id, f, facts) = match kind {
        StructuredKind::Product => {
            let dp = rng.gen_range(2..=deg_bound - 2);
            let dq = rng.gen_range(2..=deg_bound - dp);
            let g = &x + &univariate(&mut rng, dp, true);
            let h = &y + &univariate(&mut rng, dq, false);
            let f = &(&g * &h) + &BPoly::constant(c0.clone());
            (
                "product",
                f,
                vec![Fact::Composite(false), Fact::RedsetMember { value: c0.clone(), exponents: vec![1, 1] }],
            )
        }
        StructuredKind::Power => {
            let mu = rng.gen_range(2..=3u32);
            let dp = rng.gen_range(1..=(deg_bound / mu as usize).max(1));
            let h = &x + &univariate(&mut rng, dp, true);
            let u = q_int(rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 });
            let f = &h.pow(mu).scale(&u) + &BPoly::constant(c0.clone());
            ("power", f, vec![Fact::Composite(true), Fact::PrimsetMember { value: Some(c0.clone()), mu }])
        }
        StructuredKind::Smooth => {
            let mut f = random_bpoly(&mut rng, deg_bound, 0.6, 5);
            while f.total_deg() < 2 {
                f = random_bpoly(&mut rng, deg_bound, 0.6, 5);
            }
            ("smooth", f, vec![Fact::PrimeScanCovered(vec![11, 13, 17, 19, 23])])
        }
    };
    CorpusItem {
        id: format!("structured_{id}(seed={seed})"),
        params: vec![("seed".into(), seed.to_string()), ("deg_bound".into(), deg_bound.to_string())],
        f,
        w: None,
        partner: None,
        extra: Vec::new(),
        facts,
    }
}
