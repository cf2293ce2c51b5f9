//! Coefficient fields.
//!
//! Every polynomial type in the crate is generic over [`Field`].  A field
//! element carries enough context to build new elements of the same field
//! (the modulus of a prime field, the defining polynomial of a number field),
//! so algorithms never need a separate ring handle.

use std::fmt::Debug;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number; the ground field of every pencil.
pub type Q = BigRational;

/// A commutative field with exact arithmetic.
///
/// Method names are spelled out (`plus`, `times`, ...) so they never collide
/// with the operator traits some implementors also provide.
pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    /// Data shared by all elements of one field instance.
    type Ctx: Clone + PartialEq + Debug + Send + Sync + 'static;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_int(ctx: &Self::Ctx, v: &BigInt) -> Self;
    /// Image of a rational number; `None` when its denominator vanishes.
    fn from_rational(ctx: &Self::Ctx, v: &Q) -> Option<Self>;
    fn context(&self) -> Self::Ctx;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Option<Self>;
    /// Characteristic of the field (0 for characteristic zero).
    fn characteristic(ctx: &Self::Ctx) -> u64;
    /// Human readable rendering used in reports and error messages.
    fn render(&self) -> String;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_int(ctx, &BigInt::from(v))
    }

    fn divide(&self, o: &Self) -> Self {
        self.times(&o.inverse().expect("division by zero in field"))
    }

    fn pow_u(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.context());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

impl Field for Q {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <Q as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <Q as One>::one()
    }
    fn from_int(_: &(), v: &BigInt) -> Self {
        Q::from_integer(v.clone())
    }
    fn from_rational(_: &(), v: &Q) -> Option<Self> {
        Some(v.clone())
    }
    fn context(&self) {}
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Element of the prime field Z/pZ with p < 2^63.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_big(v: &BigInt, p: u64) -> Self {
        let r = v % BigInt::from(p);
        let r = if r.is_negative() { r + BigInt::from(p) } else { r };
        Fp { v: r.to_u64().unwrap(), p }
    }

    /// Centered lift into (-p/2, p/2].
    pub fn symmetric(&self) -> i64 {
        if self.v > self.p / 2 {
            self.v as i64 - self.p as i64
        } else {
            self.v as i64
        }
    }
}

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (p as i128, (a % p) as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if t < 0 {
        t += p as i128;
    }
    Some(t as u64)
}

impl Field for Fp {
    type Ctx = u64;

    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1 % *p, p: *p }
    }
    fn from_int(p: &u64, v: &BigInt) -> Self {
        Fp::from_big(v, *p)
    }
    fn from_i64(p: &u64, v: i64) -> Self {
        Fp { v: v.rem_euclid(*p as i64) as u64, p: *p }
    }
    fn from_rational(p: &u64, v: &Q) -> Option<Self> {
        let d = Fp::from_big(v.denom(), *p);
        let inv = invmod(d.v, *p)?;
        let n = Fp::from_big(v.numer(), *p);
        Some(Fp { v: mulmod(n.v, inv, *p), p: *p })
    }
    fn context(&self) -> u64 {
        self.p
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn is_one(&self) -> bool {
        self.v == 1
    }
    fn plus(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn minus(&self, o: &Self) -> Self {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    fn times(&self, o: &Self) -> Self {
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn negate(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inverse(&self) -> Option<Self> {
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn characteristic(p: &u64) -> u64 {
        *p
    }
    fn render(&self) -> String {
        self.v.to_string()
    }
}

/// Deterministic Miller–Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes strictly below `start`, in decreasing order.
pub fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (2..start).rev().filter(|&n| is_prime_u64(n))
}

/// Large word-size primes used by the modular algorithms (just below 2^31).
pub fn big_primes() -> impl Iterator<Item = u64> {
    primes_below(1 << 31)
}

pub fn qzero() -> Q {
    <Q as Zero>::zero()
}

pub fn qone() -> Q {
    <Q as One>::one()
}

pub fn q_int(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse_roundtrip() {
        let p = 1_000_003;
        for v in [1u64, 2, 17, 999_999, 123_456] {
            let a = Fp::new(v, p);
            assert!(a.times(&a.inverse().unwrap()).is_one());
        }
        assert!(Fp::new(0, p).inverse().is_none());
    }

    #[test]
    fn rational_image_in_prime_field() {
        let h = Fp::from_rational(&7, &q_frac(1, 2)).unwrap();
        assert_eq!(h.v, 4);
        assert!(Fp::from_rational(&7, &q_frac(1, 7)).is_none());
    }

    #[test]
    fn miller_rabin_small_and_large() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime_u64(2_147_483_647));
        assert!(!is_prime_u64(2_147_483_649));
        assert_eq!(big_primes().next(), Some(2_147_483_647));
    }

    #[test]
    fn pow_matches_repeated_product() {
        let a = q_frac(-3, 2);
        assert_eq!(a.pow_u(3), q_frac(-27, 8));
        assert!(Fp::new(3, 7).pow_u(6).is_one());
    }
}
