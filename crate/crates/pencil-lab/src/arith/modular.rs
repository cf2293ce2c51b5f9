//! Integer-coefficient helpers and modular algorithms over Q.
//!
//! Polynomials over Q are mapped to primitive integer polynomials, reduced
//! modulo word-size primes, processed there and lifted back by the Chinese
//! remainder theorem.

use num::bigint::BigInt;
use num::integer::Integer;
use num::{One, Signed, Zero};

use super::bpoly::BPoly;
use super::field::{big_primes, Field, Fp, Q};
use super::upoly::UPoly;

/// Least common multiple of the denominators of the coefficients.
pub fn denominator_lcm<'a>(it: impl Iterator<Item = &'a Q>) -> BigInt {
    it.fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Primitive integer polynomial associated to `p` (positive leading coefficient).
pub fn primitive_int(p: &UPoly<Q>) -> Vec<BigInt> {
    if p.is_zero() {
        return vec![];
    }
    let l = denominator_lcm(p.c.iter());
    let mut v: Vec<BigInt> = p.c.iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
    let g = v.iter().fold(BigInt::zero(), |acc, a| acc.gcd(a));
    let sign = if v.last().unwrap().is_negative() { -BigInt::one() } else { BigInt::one() };
    let g = g * sign;
    for a in v.iter_mut() {
        *a = &*a / &g;
    }
    v
}

pub fn int_to_q(v: &[BigInt]) -> UPoly<Q> {
    UPoly::new(v.iter().map(|a| Q::from_integer(a.clone())).collect(), ())
}

/// Canonical primitive integer form of a rational polynomial, as a Q-polynomial.
pub fn primitive_q(p: &UPoly<Q>) -> UPoly<Q> {
    int_to_q(&primitive_int(p))
}

pub fn reduce_int(v: &[BigInt], p: u64) -> UPoly<Fp> {
    UPoly::new(v.iter().map(|a| Fp::from_big(a, p)).collect(), p)
}

/// Reduce a rational polynomial mod p; `None` if a denominator vanishes.
pub fn reduce_q(v: &UPoly<Q>, p: u64) -> Option<UPoly<Fp>> {
    let c: Option<Vec<Fp>> = v.c.iter().map(|a| Fp::from_rational(&p, a)).collect();
    Some(UPoly::new(c?, p))
}

pub fn reduce_bq(f: &BPoly<Q>, p: u64) -> Option<BPoly<Fp>> {
    let rows: Option<Vec<UPoly<Fp>>> = f.rows.iter().map(|r| reduce_q(r, p)).collect();
    Some(BPoly::new(rows?, p))
}

/// Symmetric representative of `a` modulo `m`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Incremental Chinese remaindering of coefficient vectors.
#[derive(Clone, Debug)]
pub struct Crt {
    pub modulus: BigInt,
    pub vals: Vec<BigInt>,
}

impl Crt {
    pub fn new() -> Self {
        Crt { modulus: BigInt::one(), vals: vec![] }
    }
    /// Combine with residues modulo a new prime `p`.
    pub fn add(&mut self, res: &[u64], p: u64) {
        let pb = BigInt::from(p);
        if self.vals.len() < res.len() {
            self.vals.resize(res.len(), BigInt::zero());
        }
        let minv = {
            let m = Fp::from_big(&self.modulus, p);
            BigInt::from(m.inverse().expect("moduli must be coprime").v)
        };
        for i in 0..self.vals.len() {
            let r = BigInt::from(*res.get(i).unwrap_or(&0));
            let cur = &self.vals[i];
            // x = cur + M * ((r - cur) * M^{-1} mod p)
            let t = ((&r - cur) * &minv).mod_floor(&pb);
            self.vals[i] = cur + &self.modulus * t;
        }
        self.modulus *= pb;
    }
    pub fn symmetric(&self) -> Vec<BigInt> {
        self.vals.iter().map(|a| symmetric_mod(a, &self.modulus)).collect()
    }
}

impl Default for Crt {
    fn default() -> Self {
        Self::new()
    }
}

/// Monic gcd over Q by the modular algorithm with trial division.
pub fn gcd_q(a: &UPoly<Q>, b: &UPoly<Q>) -> UPoly<Q> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.deg() == 0 || b.deg() == 0 {
        return UPoly::one(&());
    }
    let ai = primitive_int(a);
    let bi = primitive_int(b);
    let la = ai.last().unwrap().clone();
    let lb = bi.last().unwrap().clone();
    let gamma = la.gcd(&lb);
    let aq = int_to_q(&ai);
    let bq = int_to_q(&bi);
    let mut best_deg = usize::MAX;
    let mut crt = Crt::new();
    let mut last: Option<Vec<BigInt>> = None;
    for p in big_primes() {
        if (&la % p).is_zero() || (&lb % p).is_zero() {
            continue;
        }
        let g = reduce_int(&ai, p).gcd(&reduce_int(&bi, p));
        let d = g.deg() as usize;
        if d == 0 {
            return UPoly::one(&());
        }
        if d > best_deg {
            continue;
        }
        if d < best_deg {
            best_deg = d;
            crt = Crt::new();
            last = None;
        }
        let gm = Fp::from_big(&gamma, p);
        let res: Vec<u64> = g.c.iter().map(|c| c.times(&gm).v).collect();
        crt.add(&res, p);
        let cand = crt.symmetric();
        if last.as_ref() == Some(&cand) {
            let h = int_to_q(&cand);
            if aq.rem(&h).is_zero() && bq.rem(&h).is_zero() {
                return h.monic();
            }
        }
        last = Some(cand);
    }
    unreachable!("prime supply exhausted")
}

/// Max-norm and 1-norm helpers on integer vectors.
pub fn norm1(v: &[BigInt]) -> BigInt {
    v.iter().map(|a| a.abs()).sum()
}
