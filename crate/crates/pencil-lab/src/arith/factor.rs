//! Univariate factorization over Q (Zassenhaus): squarefree reduction,
//! distinct/equal-degree factorization modulo a small prime, multifactor
//! Hensel lifting and subset recombination.  Also exposes the prime-field
//! factorization used on its own by other modules.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{is_prime_u64, Field, Fp, Q};
use super::modular::{gcd_q, int_to_q, primitive_int, primitive_q, reduce_int, symmetric_mod};
use super::upoly::UPoly;

/// `base^e mod m` in F_p[x], exponent given as a big integer.
pub fn powmod_poly(base: &UPoly<Fp>, e: &BigInt, m: &UPoly<Fp>) -> UPoly<Fp> {
    let mut acc = UPoly::one(&m.ctx);
    let b = base.rem(m);
    let bits = e.bits();
    for i in (0..bits).rev() {
        acc = (&acc * &acc).rem(m);
        if e.bit(i) {
            acc = (&acc * &b).rem(m);
        }
    }
    acc
}

/// Distinct-degree factorization of a monic squarefree polynomial over F_p:
/// pairs (product of all irreducible factors of degree d, d).
pub fn ddf(f: &UPoly<Fp>) -> Vec<(UPoly<Fp>, usize)> {
    let p = f.ctx;
    let mut out = Vec::new();
    let mut f = f.monic();
    let x = UPoly::x(&p);
    let mut h = x.clone();
    let mut d = 1;
    while 2 * d <= f.deg() as usize {
        h = powmod_poly(&h, &BigInt::from(p), &f);
        let g = (&h - &x).gcd(&f);
        if g.deg() > 0 {
            out.push((g.clone(), d));
            f = f.div_exact(&g).unwrap();
            h = h.rem(&f);
        }
        d += 1;
    }
    if f.deg() > 0 {
        let dd = f.deg() as usize;
        out.push((f, dd));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus) for odd p.
pub fn edf(f: &UPoly<Fp>, d: usize, rng: &mut ChaCha8Rng) -> Vec<UPoly<Fp>> {
    let p = f.ctx;
    let n = f.deg() as usize;
    if n == d {
        return vec![f.monic()];
    }
    let e = (num::pow(BigInt::from(p), d) - 1u32) / 2u32;
    loop {
        let a = UPoly::new((0..n).map(|_| Fp::new(rng.gen_range(0..p), p)).collect(), p);
        if a.deg() <= 0 {
            continue;
        }
        let b = &powmod_poly(&a, &e, f) - &UPoly::one(&p);
        let g = b.gcd(f);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = f.div_exact(&g).unwrap();
            let mut out = edf(&g, d, rng);
            out.extend(edf(&h, d, rng));
            return out;
        }
    }
}

/// Complete factorization of a squarefree polynomial over F_p (p odd) into
/// monic irreducibles.
pub fn factor_fp_squarefree(f: &UPoly<Fp>, rng: &mut ChaCha8Rng) -> Vec<UPoly<Fp>> {
    let mut out = Vec::new();
    for (g, d) in ddf(f) {
        out.extend(edf(&g, d, rng));
    }
    out
}

/// Number of irreducible factors of a squarefree polynomial over F_p.
pub fn count_factors_fp(f: &UPoly<Fp>) -> usize {
    ddf(f).iter().map(|(g, d)| g.deg() as usize / d).sum()
}

/// Squarefree decomposition over Q using modular gcds.  Factors are monic.
pub fn squarefree_q(f: &UPoly<Q>) -> Vec<(UPoly<Q>, u32)> {
    let mut out = Vec::new();
    if f.deg() <= 0 {
        return out;
    }
    let f = f.monic();
    let d = f.derivative();
    let a0 = gcd_q(&f, &d);
    let mut b = f.div_exact(&a0).unwrap();
    let c = d.div_exact(&a0).unwrap();
    let mut dd = &c - &b.derivative();
    let mut i = 1;
    while b.deg() > 0 {
        let a = gcd_q(&b, &dd);
        if a.deg() > 0 {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).unwrap();
        let cc = dd.div_exact(&a).unwrap();
        dd = &cc - &b.derivative();
        i += 1;
    }
    out
}

/// Integer polynomial arithmetic helpers for Hensel lifting.
type ZPoly = Vec<BigInt>;

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    a.iter().map(|x| x.mod_floor(m)).collect()
}

fn fp_to_z(a: &UPoly<Fp>) -> ZPoly {
    a.c.iter().map(|x| BigInt::from(x.v)).collect()
}

/// Lift a factorization f ≡ lc·∏ g_i (mod p) with monic pairwise coprime g_i
/// to a factorization modulo p^k ≥ `bound`.  Returns (lifted factors, p^k).
fn hensel_lift(f: &ZPoly, gs: &[UPoly<Fp>], p: u64, bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let pb = BigInt::from(p);
    let lc = f.last().unwrap().clone();
    let lc_p = Fp::from_big(&lc, p);
    let lc_inv = lc_p.inverse().unwrap();
    let r = gs.len();
    // s_i = (∏_{j≠i} g_j)^{-1} mod g_i over F_p.
    let mut s = Vec::with_capacity(r);
    for i in 0..r {
        let mut prod = UPoly::one(&p);
        for (j, g) in gs.iter().enumerate() {
            if j != i {
                prod = (&prod * g).rem(&gs[i]);
            }
        }
        s.push(prod.inverse_mod(&gs[i]).expect("factors mod p must be coprime"));
    }
    let mut lifted: Vec<ZPoly> = gs.iter().map(fp_to_z).collect();
    let mut pk = pb.clone();
    while &pk <= bound {
        let mut prod: ZPoly = vec![lc.clone()];
        for g in &lifted {
            prod = zmul(&prod, g);
        }
        let n = f.len().max(prod.len());
        let e: ZPoly = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                let d = a - b;
                debug_assert!((&d % &pk).is_zero());
                d / &pk
            })
            .collect();
        let ep = reduce_int(&e, p);
        if !ep.is_zero() {
            let ep = ep.scale(&lc_inv);
            for i in 0..r {
                let delta = (&ep * &s[i]).rem(&gs[i]);
                let dz = fp_to_z(&delta);
                for (k, dk) in dz.iter().enumerate() {
                    lifted[i][k] += &pk * dk;
                }
            }
        }
        pk *= &pb;
    }
    let lifted = lifted.iter().map(|g| zmod(g, &pk)).collect();
    (lifted, pk)
}

fn l2_norm_bound(f: &ZPoly) -> BigInt {
    // ceil(sqrt(sum a_i^2)) + 1
    let s: BigInt = f.iter().map(|a| a * a).sum();
    s.sqrt() + 1u32
}

/// Factor a primitive squarefree integer polynomial of degree ≥ 2 with
/// nonzero constant term into irreducibles over Z (positive leading coeffs).
fn zassenhaus(f: &ZPoly, rng: &mut ChaCha8Rng) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();
    let fq = int_to_q(f);
    // Choose the prime giving the fewest modular factors among a few candidates.
    let mut best: Option<(usize, u64)> = None;
    let mut tried = 0;
    let mut cand = 1009u64;
    while tried < 6 && cand < 50_000 {
        cand += 2;
        if !is_prime_u64(cand) || (&lc % cand).is_zero() {
            continue;
        }
        let fp = reduce_int(f, cand);
        if fp.gcd(&fp.derivative()).deg() > 0 {
            continue;
        }
        tried += 1;
        let c = count_factors_fp(&fp.monic());
        if c == 1 {
            return vec![f.clone()];
        }
        if best.is_none_or(|(bc, _)| c < bc) {
            best = Some((c, cand));
        }
    }
    let (_, p) = best.expect("no good prime found below 50000");
    let fp = reduce_int(f, p).monic();
    let gs = factor_fp_squarefree(&fp, rng);
    let bound = BigInt::from(2u32) * lc.abs() * num::pow(BigInt::from(2u32), n) * l2_norm_bound(f);
    let (mut lifted, pk) = hensel_lift(f, &gs, p, &bound);

    let mut result = Vec::new();
    let mut rem = fq.clone();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        let combos = combinations(lifted.len(), s);
        for combo in combos {
            let cur_lc = primitive_int(&rem).last().unwrap().clone();
            let mut prod: ZPoly = vec![cur_lc.clone()];
            for &i in &combo {
                prod = zmod(&zmul(&prod, &lifted[i]), &pk);
            }
            let cand: ZPoly = prod.iter().map(|a| symmetric_mod(a, &pk)).collect();
            let cq = primitive_q(&int_to_q(&cand));
            if cq.deg() <= 0 {
                continue;
            }
            if let Some(q) = rem.div_exact(&cq) {
                result.push(primitive_int(&cq));
                rem = q;
                let mut keep = Vec::new();
                for (i, g) in lifted.iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(g.clone());
                    }
                }
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if rem.deg() > 0 {
        result.push(primitive_int(&rem));
    }
    result
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Result of factoring over Q: `unit · ∏ factor^mult` where each factor is a
/// primitive integer polynomial with positive leading coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(UPoly<Q>, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UPoly<Q> {
        let mut acc = UPoly::constant(self.unit.clone());
        for (g, m) in &self.factors {
            acc = &acc * &g.pow(*m);
        }
        acc
    }
}

/// Complete factorization of a nonzero polynomial over Q.
pub fn factor_q(p: &UPoly<Q>) -> Factorization {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_fac7);
    let mut factors: Vec<(UPoly<Q>, u32)> = Vec::new();
    for (sf, m) in squarefree_q(p) {
        let mut z = primitive_int(&sf);
        if z[0].is_zero() {
            factors.push((UPoly::x(&()), m));
            z.remove(0);
        }
        if z.len() <= 1 {
            continue;
        }
        let parts = if z.len() == 2 { vec![z] } else { zassenhaus(&z, &mut rng) };
        for part in parts {
            factors.push((int_to_q(&part), m));
        }
    }
    factors.sort_by(|a, b| canonical_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
    let mut prod = UPoly::one(&());
    for (g, m) in &factors {
        prod = &prod * &g.pow(*m);
    }
    let unit = p.lc() / prod.lc();
    Factorization { unit, factors }
}

/// Distinct irreducible factors (primitive integer form), sorted canonically.
pub fn irreducible_factors(p: &UPoly<Q>) -> Vec<UPoly<Q>> {
    factor_q(p).factors.into_iter().map(|(g, _)| g).collect()
}

pub fn is_irreducible_q(p: &UPoly<Q>) -> bool {
    let f = factor_q(p);
    f.factors.len() == 1 && f.factors[0].1 == 1
}

/// Canonical order on integer polynomials: degree, then coefficients from
/// the top down.
pub fn canonical_cmp(a: &UPoly<Q>, b: &UPoly<Q>) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        for i in (0..a.c.len()).rev() {
            let o = a.c[i].cmp(&b.c[i]);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    })
}

/// Exponent of the irreducible `phi` in `p` (p nonzero).
pub fn multiplicity_of(phi: &UPoly<Q>, p: &UPoly<Q>) -> u32 {
    let mut k = 0;
    let mut cur = p.clone();
    while let Some(q) = cur.div_exact(phi) {
        k += 1;
        cur = q;
    }
    k
}

/// Integer coefficients as i64 when they fit (used in reports and tests).
pub fn small_coeffs(p: &UPoly<Q>) -> Option<Vec<i64>> {
    p.c.iter().map(|a| if a.is_integer() { a.to_integer().to_i64() } else { None }).collect()
}

pub fn is_one_poly(p: &UPoly<Q>) -> bool {
    p.deg() == 0 && Field::is_one(&p.c[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(v: &[i64]) -> UPoly<Q> {
        UPoly::from_i64s(v, &())
    }

    #[test]
    fn x4_minus_1() {
        let f = factor_q(&qp(&[-1, 0, 0, 0, 1]));
        let facs: Vec<_> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(facs, vec![qp(&[-1, 1]), qp(&[1, 1]), qp(&[1, 0, 1])]);
        assert_eq!(f.expand(), qp(&[-1, 0, 0, 0, 1]));
    }

    #[test]
    fn irreducible_quadratic_and_swinnerton_dyer() {
        assert!(is_irreducible_q(&qp(&[1, 0, 1])));
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime.
        assert!(is_irreducible_q(&qp(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn product_of_two_cubics() {
        let a = qp(&[3, -1, 2, 5]);
        let b = qp(&[-6, 0, 4, 3]);
        let f = factor_q(&(&a * &b));
        let facs: Vec<_> = f.factors.iter().map(|(g, _)| g.clone()).collect();
        assert_eq!(facs.len(), 2);
        assert!(facs.contains(&a) && facs.contains(&b));
        assert_eq!(f.expand(), &a * &b);
    }

    #[test]
    fn multiplicities_and_rational_content() {
        let p = (&qp(&[1, 2]).pow(3) * &qp(&[0, 1])).scale(&Q::new(3.into(), 4.into()));
        let f = factor_q(&p);
        assert_eq!(f.factors, vec![(qp(&[0, 1]), 1), (qp(&[1, 2]), 3)]);
        assert_eq!(f.expand(), p);
    }

    #[test]
    fn higher_degree_with_many_modular_factors() {
        // (x^8 - 1)(x^6 + x + 1): cyclotomic pieces split a lot mod p.
        let a = qp(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let b = qp(&[1, 1, 0, 0, 0, 0, 1]);
        let f = factor_q(&(&a * &b));
        assert_eq!(f.expand(), &a * &b);
        assert_eq!(f.factors.len(), 5);
        for (g, _) in &f.factors {
            assert!(is_irreducible_q(g));
        }
    }
}
