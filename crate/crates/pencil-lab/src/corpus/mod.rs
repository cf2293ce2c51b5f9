//! Instance generators with exact expected facts, and the checker that
//! compares those facts against the main pipeline.
//!
//! Families (named by the constructor that builds them):
//!
//! * `example1`: a(X)·Y + X − z with a(X) = ∏(X − aᵢ);
//! * `example2`: a(X)·Y² + γ·b(X)·Y + X − z where b shares its first μ roots
//!   with a;
//! * `example3`: a(X)·Y² + b(X)·Y + X − z with b drawn by rejection sampling
//!   so that no fiber splits;
//! * `example4`: a(X)·Y² + Y + X^(m+1) − z;
//! * `example5`: Y^m·a(X/Y) + z = ∏(X − aᵢ·Y) + z;
//! * `hyperbolas`: X^a·Y^b − 1 paired with X^a′·Y^b′ − 1;
//! * `klein`: the icosahedral pencil H₁² − c·H₂³;
//! * `fermat`: X^a + Y^a − 1 (no expected facts);
//! * `parity`: X² + Y^u;
//! * structured random instances with a planted reducible or power fiber.

mod oracle;
mod random;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::absfactor::absolute_factor_count_q;
use crate::arith::field::{q_int, qzero};
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, Field, UPoly, Q};
use crate::error::{Error, Result};
use crate::intersect::tau_places_at_infinity;
use crate::pencil::{
    is_composite, normalize, primset, redset_refined, refset_equal, singset, FiberValue, Pencil,
};

pub use oracle::{
    good_prime, kernel_modp_check, oracle_local_dimension, oracle_primefield_scan, KernelCheck, LocalDim,
    PrimeScan,
};
pub use random::{random_bpoly, random_y_monic, structured_random, StructuredKind};

/// One exact expected fact about a corpus item.
#[derive(Clone, Debug)]
pub enum Fact {
    /// redset(f, w) over Q̄ equals the given rational set (and the pencil is
    /// not composite).
    Redset(Vec<Q>),
    /// Parameter c₀ is in redset with the given nondecreasing exponent
    /// sequence.
    RedsetMember { value: Q, exponents: Vec<u32> },
    /// Number of places at infinity of f = 0.
    Tau(usize),
    Composite(bool),
    /// c₀ (None = ∞) is in primset with exponent μ.
    PrimsetMember { value: Option<Q>, mu: u32 },
    /// primset(f, w)₊ equals exactly these (value, μ) pairs.
    PrimsetPlus(Vec<(Option<Q>, u32)>),
    /// The named polynomial identity holds exactly.
    Identity(String),
    /// redset of the partner polynomial equals the given set.
    PartnerRedset(Vec<Q>),
    /// Whether the refined redsets of f and the partner agree.
    RefsetEqual(bool),
    /// Number of absolutely irreducible factors of f.
    AbsoluteFactorCount(usize),
    /// singset(f) over Q, reduced modulo each good prime p in the list,
    /// covers the singular parameters found by exhaustive search over F_p.
    PrimeScanCovered(Vec<u64>),
}

impl Fact {
    pub fn describe(&self) -> String {
        let set = |v: &[Q]| format!("{{{}}}", v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(", "));
        let val = |v: &Option<Q>| v.as_ref().map_or("∞".to_string(), |q| q.to_string());
        match self {
            Fact::Redset(v) => format!("redset = {}", set(v)),
            Fact::RedsetMember { value, exponents } => format!("{value} ∈ redset with exponents {exponents:?}"),
            Fact::Tau(t) => format!("τ = {t}"),
            Fact::Composite(b) => format!("composite = {b}"),
            Fact::PrimsetMember { value, mu } => format!("{} ∈ primset with μ = {mu}", val(value)),
            Fact::PrimsetPlus(m) => format!(
                "primset₊ = {{{}}}",
                m.iter().map(|(v, mu)| format!("{} (μ = {mu})", val(v))).collect::<Vec<_>>().join(", ")
            ),
            Fact::Identity(name) => format!("identity {name}"),
            Fact::PartnerRedset(v) => format!("partner redset = {}", set(v)),
            Fact::RefsetEqual(b) => format!("refset equality = {b}"),
            Fact::AbsoluteFactorCount(n) => format!("absolute factor count = {n}"),
            Fact::PrimeScanCovered(ps) => format!("prime-field scans covered for p ∈ {ps:?}"),
        }
    }
}

/// A generated instance with its expected facts.
#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub f: BPoly<Q>,
    pub w: Option<BPoly<Q>>,
    /// Second polynomial of a compared pair.
    pub partner: Option<BPoly<Q>>,
    /// Named auxiliary polynomials (identity checks).
    pub extra: Vec<(String, BPoly<Q>)>,
    pub facts: Vec<Fact>,
}

impl CorpusItem {
    fn new(id: String, params: Vec<(String, String)>, f: BPoly<Q>) -> Self {
        CorpusItem { id, params, f, w: None, partner: None, extra: Vec::new(), facts: Vec::new() }
    }

    pub fn pencil(&self) -> Result<Pencil> {
        normalize(&self.f, self.w.as_ref())
    }

    fn extra(&self, name: &str) -> &BPoly<Q> {
        &self.extra.iter().find(|(n, _)| n == name).expect("auxiliary polynomial").1
    }
}

/// Outcome of checking one fact.
#[derive(Clone, Debug, Serialize)]
pub struct FactOutcome {
    pub item: String,
    pub fact: String,
    pub passed: bool,
    pub detail: String,
}

fn render_list(v: &[Q]) -> String {
    v.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(",")
}

fn a_poly(a: &[Q]) -> UPoly<Q> {
    a.iter().fold(UPoly::one(&()), |acc, ai| &acc * &UPoly::linear_root(ai))
}

fn distinct(v: &[Q]) -> bool {
    v.iter().enumerate().all(|(i, a)| !v[..i].contains(a))
}

fn y() -> BPoly<Q> {
    BPoly::y(&())
}

fn x() -> BPoly<Q> {
    BPoly::x(&())
}

fn cst(c: &Q) -> BPoly<Q> {
    BPoly::constant(c.clone())
}

fn collision(msg: &str) -> Error {
    Error::Precondition(format!("parameter collision: {msg}"))
}

/// a(X)·Y + X − z.
pub fn gen_example1(a: &[Q], z: &Q) -> Result<CorpusItem> {
    if !distinct(a) {
        return Err(collision("the aᵢ must be pairwise distinct"));
    }
    if a.contains(z) {
        return Err(collision("z must differ from every aᵢ"));
    }
    let m = a.len();
    let f = &(&BPoly::from_x(&a_poly(a)) * &y()) + &(&x() - &cst(z));
    let mut item = CorpusItem::new(
        format!("example1(m={m})"),
        vec![("m".into(), m.to_string()), ("a".into(), render_list(a)), ("z".into(), z.to_string())],
        f,
    );
    item.facts = vec![
        Fact::Redset(a.iter().map(|ai| ai - z).collect()),
        Fact::Tau(m + 1),
        Fact::Composite(false),
    ];
    Ok(item)
}

/// a(X)·Y² + γ·b(X)·Y + X − z with b = ∏_{i ≤ μ}(X − aᵢ)·∏(X − bⱼ).
pub fn gen_example2(a: &[Q], mu: usize, b_extra: &[Q], gamma: &Q, z: &Q) -> Result<CorpusItem> {
    let m = a.len();
    if m == 0 || mu == 0 || mu > m || b_extra.len() != m - mu {
        return Err(collision("need 1 ≤ μ ≤ m and m − μ extra roots of b"));
    }
    let b: Vec<Q> = a[..mu].iter().chain(b_extra).cloned().collect();
    if !distinct(a) || !distinct(&b) || b_extra.iter().any(|v| a.contains(v)) {
        return Err(collision("roots of a and b"));
    }
    if gamma.is_zero() {
        return Err(collision("γ must be nonzero"));
    }
    if m == 1 {
        // Z² + γZ + 1 must have two distinct rational roots.
        let disc = gamma * gamma - q_int(4);
        if disc.is_zero() || !is_rational_square(&disc) {
            return Err(collision("for m = 1, Z² + γZ + 1 must split with distinct roots"));
        }
    }
    if a[..mu].contains(z) {
        return Err(collision("z must differ from a₁,…,a_μ"));
    }
    let y2 = &y() * &y();
    let f = &(&(&BPoly::from_x(&a_poly(a)) * &y2) + &(&BPoly::from_x(&a_poly(&b).scale(gamma)) * &y()))
        + &(&x() - &cst(z));
    let mut item = CorpusItem::new(
        format!("example2(m={m},mu={mu})"),
        vec![
            ("m".into(), m.to_string()),
            ("mu".into(), mu.to_string()),
            ("a".into(), render_list(a)),
            ("b".into(), render_list(&b)),
            ("gamma".into(), gamma.to_string()),
            ("z".into(), z.to_string()),
        ],
        f,
    );
    item.facts =
        vec![Fact::Redset(a[..mu].iter().map(|ai| ai - z).collect()), Fact::Tau(m + 2), Fact::Composite(false)];
    Ok(item)
}

fn is_rational_square(q: &Q) -> bool {
    use num::Signed;
    if q.is_negative() {
        return false;
    }
    let sq = |n: &num::BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    sq(q.numer()) && sq(q.denom())
}

/// Coefficients β₁, β₂, β_m of b(X) = X^m + β₁X^(m−1) + β₂X^(m−2) + β_m
/// (for m = 2 the last two coincide) accepted by the inequations that rule
/// out every factorization of a fiber.
fn example3_admissible(a: &[Q], beta: (Q, Q, Q)) -> bool {
    let m = a.len();
    let ap = a_poly(a);
    // α_j: coefficient of X^(m−j) in a(X).
    let alpha = |j: usize| ap.coeff(m - j);
    let (b1, b2, bm) = beta;
    let b = b_poly(m, &b1, &b2, &bm);
    if a.iter().any(|ai| b.eval(ai).is_zero()) {
        return false;
    }
    for (i, ai) in a.iter().enumerate() {
        let _ = i;
        let quot = ap.div_exact(&UPoly::linear_root(ai)).expect("root");
        // α_{i j}: coefficient of X^(m−1−j) in a(X)/(X − aᵢ).
        let ai1 = quot.coeff(m - 2);
        let ai2 = if m >= 3 { quot.coeff(m - 3) } else { qzero() };
        let forbidden = match m {
            2 => &(&(&b1 * &ai1) - &(&ai1 * &ai1)) - &(&ai1 + ai),
            3 => &(&(&(&b1 * &ai1) - &(&ai1 * &ai1)) + &ai2) + &q_int(1),
            _ => &(&(&b1 * &ai1) - &(&ai1 * &ai1)) + &ai2,
        };
        if b2 == forbidden {
            return false;
        }
    }
    match m {
        2 => b1 != &q_int(1) + &alpha(1),
        _ => b1 != alpha(1),
    }
}

fn b_poly(m: usize, b1: &Q, b2: &Q, bm: &Q) -> UPoly<Q> {
    let mut c = vec![qzero(); m + 1];
    c[m] = q_int(1);
    c[m - 1] = b1.clone();
    c[m - 2] = b2.clone();
    if m > 2 {
        c[0] = &c[0] + bm;
    }
    UPoly::new(c, ())
}

/// a(X)·Y² + b(X)·Y + X − z with b drawn from small integers by rejection.
pub fn gen_example3(a: &[Q], z: &Q, seed: u64) -> Result<CorpusItem> {
    let m = a.len();
    if m < 2 || !distinct(a) {
        return Err(collision("need m ≥ 2 pairwise distinct aᵢ"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = 0;
    let (b1, b2, bm) = loop {
        draws += 1;
        if draws > 10_000 {
            return Err(Error::Internal("no admissible b found".into()));
        }
        let beta = (
            q_int(rng.gen_range(-4..=4)),
            q_int(rng.gen_range(-4..=4)),
            if m > 2 { q_int(rng.gen_range(-4..=4)) } else { qzero() },
        );
        if example3_admissible(a, beta.clone()) {
            break beta;
        }
    };
    let b = b_poly(m, &b1, &b2, &bm);
    let y2 = &y() * &y();
    let f = &(&(&BPoly::from_x(&a_poly(a)) * &y2) + &(&BPoly::from_x(&b) * &y())) + &(&x() - &cst(z));
    let mut item = CorpusItem::new(
        format!("example3(m={m})"),
        vec![
            ("m".into(), m.to_string()),
            ("a".into(), render_list(a)),
            ("b".into(), b.render("X")),
            ("z".into(), z.to_string()),
            ("seed".into(), seed.to_string()),
            ("draws".into(), draws.to_string()),
        ],
        f,
    );
    item.facts = vec![Fact::Redset(vec![]), Fact::Tau(m + 2), Fact::Composite(false)];
    Ok(item)
}

/// a(X)·Y² + Y + X^(m+1) − z.
pub fn gen_example4(a: &[Q], z: &Q) -> Result<CorpusItem> {
    if !distinct(a) {
        return Err(collision("the aᵢ must be pairwise distinct"));
    }
    let m = a.len();
    let y2 = &y() * &y();
    let f = &(&(&BPoly::from_x(&a_poly(a)) * &y2) + &y()) + &(&x().pow(m as u32 + 1) - &cst(z));
    let mut item = CorpusItem::new(
        format!("example4(m={m})"),
        vec![("m".into(), m.to_string()), ("a".into(), render_list(a)), ("z".into(), z.to_string())],
        f,
    );
    item.facts = vec![Fact::Redset(vec![]), Fact::Tau(m + 1), Fact::Composite(false)];
    Ok(item)
}

/// ∏(X − aᵢ·Y) + z.
pub fn gen_example5(a: &[Q], z: &Q) -> Result<CorpusItem> {
    let m = a.len();
    if m < 2 || !distinct(a) {
        return Err(collision("need m ≥ 2 pairwise distinct aᵢ"));
    }
    if z.is_zero() {
        return Err(collision("z must be nonzero"));
    }
    let lines = a.iter().fold(BPoly::one(&()), |acc, ai| &acc * &(&x() - &y().scale(ai)));
    let mut item = CorpusItem::new(
        format!("example5(m={m})"),
        vec![("m".into(), m.to_string()), ("a".into(), render_list(a)), ("z".into(), z.to_string())],
        &lines + &cst(z),
    );
    item.facts = vec![Fact::Redset(vec![z.clone()]), Fact::Tau(m), Fact::Composite(false)];
    Ok(item)
}

/// The binary forms H₁, H₂, H₃ of degrees 30, 20, 12.
pub fn klein_forms() -> (BPoly<Q>, BPoly<Q>, BPoly<Q>) {
    let m = |c: i64, i: usize, j: usize| BPoly::monomial(q_int(c), i, j);
    let sum = |v: Vec<BPoly<Q>>| v.iter().fold(BPoly::zero(&()), |acc, t| &acc + t);
    let h1 = sum(vec![m(1, 30, 0), m(1, 0, 30), m(-10005, 20, 10), m(-10005, 10, 20), m(522, 25, 5), m(-522, 5, 25)]);
    let h2 = sum(vec![m(-1, 20, 0), m(-1, 0, 20), m(-494, 10, 10), m(228, 15, 5), m(-228, 5, 15)]);
    let h3 = sum(vec![m(1, 11, 1), m(-1, 1, 11), m(11, 6, 6)]);
    (h1, h2, h3)
}

/// The pencil H₁² − c·H₂³; at c = −1 the fiber is 1728·H₃⁵.
pub fn gen_klein() -> CorpusItem {
    let (h1, h2, h3) = klein_forms();
    let f = h1.pow(2);
    let w = h2.pow(3);
    let mut item = CorpusItem::new("klein".into(), vec![], f);
    item.w = Some(w);
    item.extra = vec![("H1".into(), h1), ("H2".into(), h2), ("H3".into(), h3)];
    item.facts = vec![
        Fact::Identity("H1^2 + H2^3 = 1728*H3^5".into()),
        Fact::PrimsetPlus(vec![(Some(qzero()), 2), (Some(q_int(-1)), 5), (None, 3)]),
    ];
    item
}

/// X^a₁·Y^a₂ − 1 paired with X^a₁′·Y^a₂′ − 1.
pub fn gen_hyperbolas(a1: u32, a2: u32, b1: u32, b2: u32) -> Result<CorpusItem> {
    use num::integer::gcd;
    if a1 == 0 || a2 == 0 || b1 == 0 || b2 == 0 || gcd(a1, a2) != 1 || gcd(b1, b2) != 1 {
        return Err(collision("exponents must be positive and coprime in each pair"));
    }
    let h = |i: u32, j: u32| &BPoly::monomial(q_int(1), i as usize, j as usize) - &BPoly::one(&());
    let mut item = CorpusItem::new(
        format!("hyperbolas({a1},{a2}|{b1},{b2})"),
        vec![("exponents".into(), format!("{a1},{a2}")), ("partner_exponents".into(), format!("{b1},{b2}"))],
        h(a1, a2),
    );
    item.partner = Some(h(b1, b2));
    let (mut e, mut e2) = (vec![a1, a2], vec![b1, b2]);
    e.sort_unstable();
    e2.sort_unstable();
    item.facts = vec![
        Fact::Redset(vec![q_int(-1)]),
        Fact::PartnerRedset(vec![q_int(-1)]),
        Fact::RefsetEqual(e == e2),
    ];
    Ok(item)
}

/// X² + Y^u: absolutely irreducible exactly for odd u.
pub fn gen_parity(u: u32) -> CorpusItem {
    let f = &BPoly::monomial(q_int(1), 2, 0) + &BPoly::monomial(q_int(1), 0, u as usize);
    let mut item = CorpusItem::new(format!("parity(u={u})"), vec![("u".into(), u.to_string())], f);
    item.facts = vec![Fact::AbsoluteFactorCount(if u % 2 == 1 { 1 } else { 2 })];
    item
}

/// X^a + Y^a − 1 and its partner of degree a′; exploratory only.
pub fn gen_fermat(a: u32, a_prime: u32) -> CorpusItem {
    let fm = |d: u32| {
        &(&BPoly::monomial(q_int(1), d as usize, 0) + &BPoly::monomial(q_int(1), 0, d as usize)) - &BPoly::one(&())
    };
    let mut item = CorpusItem::new(
        format!("fermat({a},{a_prime})"),
        vec![("a".into(), a.to_string()), ("a_prime".into(), a_prime.to_string())],
        fm(a),
    );
    item.partner = Some(fm(a_prime));
    item
}

/// A free-standing special pencil with a known redset and singset.
pub fn gen_special(id: &str, f: BPoly<Q>, redset: Vec<Q>) -> CorpusItem {
    let mut item = CorpusItem::new(id.into(), vec![], f);
    item.facts = vec![Fact::Redset(redset)];
    item
}

/// The fixed golden corpus.
pub fn golden_corpus() -> Vec<CorpusItem> {
    let q = |v: &[i64]| v.iter().map(|&a| q_int(a)).collect::<Vec<_>>();
    let mut out = vec![
        gen_example1(&[], &qzero()).unwrap(),
        gen_example1(&q(&[0]), &q_int(1)).unwrap(),
        gen_example1(&q(&[0, 1]), &q_int(2)).unwrap(),
        gen_example1(&q(&[0, 1, -1]), &q_int(2)).unwrap(),
        gen_example2(&q(&[0]), 1, &[], &crate::arith::field::q_frac(5, 2), &q_int(1)).unwrap(),
        gen_example2(&q(&[0, 1]), 1, &q(&[2]), &q_int(1), &q_int(3)).unwrap(),
        gen_example2(&q(&[0, 1, 2]), 2, &q(&[-1]), &q_int(2), &q_int(5)).unwrap(),
        gen_example3(&q(&[0, 1]), &qzero(), 1).unwrap(),
        gen_example3(&q(&[0, 1, 2]), &q_int(1), 2).unwrap(),
        gen_example4(&q(&[0]), &qzero()).unwrap(),
        gen_example4(&q(&[0, 1]), &q_int(1)).unwrap(),
        gen_example5(&q(&[1, -1]), &q_int(1)).unwrap(),
        gen_example5(&q(&[0, 1, 2]), &q_int(2)).unwrap(),
        gen_hyperbolas(1, 2, 1, 3).unwrap(),
        gen_hyperbolas(1, 2, 2, 1).unwrap(),
        gen_hyperbolas(2, 3, 1, 6).unwrap(),
        gen_special("xy_plus_one", &BPoly::monomial(q_int(1), 1, 1) + &BPoly::one(&()), vec![q_int(1)]),
        gen_klein(),
    ];
    out.extend([1, 2, 3, 4, 5, 6, 7].map(gen_parity));
    out
}

fn set_of(v: &[Q]) -> AlgebraicSet {
    AlgebraicSet::from_rationals(v)
}

fn redset_outcome(p: &Pencil, want: &[Q]) -> Result<(bool, String)> {
    let r = redset_refined(p)?;
    if let Some(c) = &r.composite {
        if c.composite {
            return Ok((false, "pencil is composite".into()));
        }
    }
    let ok = r.set == set_of(want) && r.infinity.is_none();
    Ok((ok, format!("computed {}", r.set.render())))
}

fn check_fact(item: &CorpusItem, fact: &Fact) -> Result<(bool, String)> {
    match fact {
        Fact::Redset(want) => redset_outcome(&item.pencil()?, want),
        Fact::PartnerRedset(want) => {
            let g = item.partner.as_ref().ok_or_else(|| Error::Precondition("no partner".into()))?;
            redset_outcome(&normalize(g, None)?, want)
        }
        Fact::RedsetMember { value, exponents } => {
            let r = redset_refined(&item.pencil()?)?;
            let v = FiberValue::rational(value);
            let got = r.members.iter().find(|m| m.fiber.value == v).map(|m| m.fiber.exponents());
            Ok((got.as_ref() == Some(exponents), format!("computed exponents {got:?}")))
        }
        Fact::Tau(t) => {
            let got = tau_places_at_infinity(&item.f)?;
            Ok((got == *t, format!("computed τ = {got}")))
        }
        Fact::Composite(b) => {
            let c = is_composite(&item.pencil()?)?;
            Ok((c.composite == *b, format!("generic factor count {}", c.generic_count)))
        }
        Fact::PrimsetMember { value, mu } => {
            let pr = primset(&item.pencil()?)?;
            let v = value.as_ref().map_or(FiberValue::Infinity, FiberValue::rational);
            let got = pr.members.iter().find(|m| m.value == v).map(|m| m.mu);
            Ok((got == Some(*mu), format!("computed μ {got:?}")))
        }
        Fact::PrimsetPlus(want) => {
            let pr = primset(&item.pencil()?)?;
            let mut got: Vec<(String, u32)> = pr.members.iter().map(|m| (m.value.render(), m.mu)).collect();
            let mut exp: Vec<(String, u32)> = want
                .iter()
                .map(|(v, mu)| (v.as_ref().map_or(FiberValue::Infinity, FiberValue::rational).render(), *mu))
                .collect();
            got.sort();
            exp.sort();
            Ok((got == exp && pr.plus_size() == want.len(), format!("computed {got:?}, |primset₊| = {}", pr.plus_size())))
        }
        Fact::Identity(_) => {
            let (h1, h2, h3) = (item.extra("H1"), item.extra("H2"), item.extra("H3"));
            let lhs = &h1.pow(2) + &h2.pow(3);
            let rhs = h3.pow(5).scale(&q_int(1728));
            Ok((lhs == rhs, format!("degree {} forms compared coefficientwise", lhs.total_deg())))
        }
        Fact::RefsetEqual(b) => {
            let g = item.partner.as_ref().ok_or_else(|| Error::Precondition("no partner".into()))?;
            let c = refset_equal(&item.f, g)?;
            Ok((c.equal == *b, format!("refsets {:?} vs {:?}", c.left, c.right)))
        }
        Fact::AbsoluteFactorCount(n) => {
            let got = absolute_factor_count_q(&item.f)?;
            Ok((got == *n, format!("computed {got}")))
        }
        Fact::PrimeScanCovered(primes) => {
            let s = singset(&item.pencil()?)?;
            let mut checked = Vec::new();
            for &p in primes {
                if !good_prime(&item.f, p)? {
                    continue;
                }
                let scan = oracle_primefield_scan(&item.f, p)?;
                let cover = crate::pencil::singset_prime_field(&item.f, p)?;
                let covered = match cover {
                    crate::pencil::PrimeFieldSingset::Values { values, .. } => {
                        scan.singular.iter().all(|v| values.contains(v))
                    }
                    crate::pencil::PrimeFieldSingset::AllOfField { .. } => true,
                };
                if !covered {
                    return Ok((false, format!("p = {p}: scan {:?} vs singset {}", scan.singular, s.set.render())));
                }
                checked.push(p);
            }
            Ok((!checked.is_empty(), format!("good primes checked {checked:?}")))
        }
    }
}

/// Check every expected fact of an item against the pipeline.
pub fn check_item(item: &CorpusItem) -> Vec<FactOutcome> {
    item.facts
        .iter()
        .map(|fact| {
            let (passed, detail) = match check_fact(item, fact) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            FactOutcome { item: item.id.clone(), fact: fact.describe(), passed, detail }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_reject_collisions() {
        assert!(gen_example1(&[q_int(1), q_int(1)], &qzero()).is_err());
        assert!(gen_example1(&[q_int(1)], &q_int(1)).is_err());
        assert!(gen_example2(&[q_int(0)], 1, &[], &q_int(1), &q_int(3)).is_err());
        assert!(gen_example5(&[q_int(0), q_int(1)], &qzero()).is_err());
        assert!(gen_hyperbolas(2, 4, 1, 3).is_err());
    }

    #[test]
    fn example1_shape() {
        let it = gen_example1(&[q_int(0), q_int(1)], &q_int(2)).unwrap();
        // X(X − 1)Y + X − 2
        let want = BPoly::from_terms(
            &[(2, 1, q_int(1)), (1, 1, q_int(-1)), (1, 0, q_int(1)), (0, 0, q_int(-2))],
            &(),
        );
        assert_eq!(it.f, want);
    }

    #[test]
    fn example3_draws_are_admissible() {
        let a = [q_int(0), q_int(1), q_int(2)];
        let it = gen_example3(&a, &q_int(1), 2).unwrap();
        assert_eq!(it.f.deg_y(), 2);
        // The excluded coincidence β₁ = α₁ is rejected.
        assert!(!example3_admissible(&a, (q_int(-3), q_int(0), q_int(1))));
    }

    #[test]
    fn klein_identity_and_degrees() {
        let it = gen_klein();
        let (h1, h2, h3) = klein_forms();
        assert_eq!((h1.total_deg(), h2.total_deg(), h3.total_deg()), (30, 20, 12));
        assert_eq!(&h1.pow(2) + &h2.pow(3), h3.pow(5).scale(&q_int(1728)));
        assert_eq!(it.f.total_deg(), 60);
    }

    #[test]
    fn small_items_pass() {
        for it in [
            gen_example1(&[q_int(0), q_int(1)], &q_int(2)).unwrap(),
            gen_example5(&[q_int(1), q_int(-1)], &q_int(1)).unwrap(),
            gen_hyperbolas(1, 2, 1, 3).unwrap(),
            gen_parity(3),
            gen_parity(4),
        ] {
            for o in check_item(&it) {
                assert!(o.passed, "{o:?}");
            }
        }
    }
}
