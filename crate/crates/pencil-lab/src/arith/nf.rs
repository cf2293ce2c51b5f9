//! Number fields Q[t]/(m(t)) and the rational-function field Q(c).

use std::sync::Arc;

use num::bigint::BigInt;

use super::field::{qone, qzero, Field, Q};
use super::upoly::UPoly;

/// A number field given by a monic irreducible modulus over Q.
#[derive(Clone, Debug)]
pub struct NumberField {
    pub modulus: UPoly<Q>,
}

impl PartialEq for NumberField {
    fn eq(&self, o: &Self) -> bool {
        self.modulus == o.modulus
    }
}
impl Eq for NumberField {}

impl NumberField {
    /// Builds Q[t]/(m); the modulus is made monic.  Irreducibility is the
    /// caller's responsibility (checked separately by [`super::factor`]).
    pub fn new(m: &UPoly<Q>) -> Arc<Self> {
        assert!(m.deg() >= 1, "number field modulus must have degree >= 1");
        Arc::new(NumberField { modulus: m.monic() })
    }
    /// The field Q itself, presented as Q[t]/(t).
    pub fn rationals() -> Arc<Self> {
        Self::new(&UPoly::x(&()))
    }
    pub fn degree(&self) -> usize {
        self.modulus.deg() as usize
    }
}

/// Element of a number field, stored as a reduced polynomial in the generator.
#[derive(Clone, Debug)]
pub struct Nf {
    pub p: UPoly<Q>,
    pub k: Arc<NumberField>,
}

impl PartialEq for Nf {
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p
    }
}

impl Nf {
    pub fn from_poly(p: &UPoly<Q>, k: &Arc<NumberField>) -> Self {
        Nf { p: p.rem(&k.modulus), k: k.clone() }
    }
    /// The generator t of the field.
    pub fn generator(k: &Arc<NumberField>) -> Self {
        Self::from_poly(&UPoly::x(&()), k)
    }
    pub fn from_q(v: &Q, k: &Arc<NumberField>) -> Self {
        Nf { p: UPoly::constant(v.clone()), k: k.clone() }
    }
    /// Rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<Q> {
        if self.p.deg() <= 0 {
            Some(self.p.coeff(0))
        } else {
            None
        }
    }

    /// Minimal polynomial over Q (monic), by linear dependence of powers.
    pub fn minpoly(&self) -> UPoly<Q> {
        let d = self.k.degree();
        // Row-reduced basis of span{1, a, ..., a^{i-1}} with combination records.
        let mut basis: Vec<(Vec<Q>, Vec<Q>, usize)> = Vec::new();
        let mut pw = Nf::one(&self.k);
        for i in 0..=d {
            let mut v: Vec<Q> = (0..d).map(|j| pw.p.coeff(j)).collect();
            let mut comb = vec![qzero(); d + 1];
            comb[i] = qone();
            for (bv, bc, piv) in &basis {
                if !v[*piv].is_zero() {
                    let f = v[*piv].clone() / &bv[*piv];
                    for j in 0..d {
                        v[j] = &v[j] - &f * &bv[j];
                    }
                    for j in 0..=d {
                        comb[j] = &comb[j] - &f * &bc[j];
                    }
                }
            }
            match v.iter().position(|x| !x.is_zero()) {
                None => return UPoly::new(comb, ()).monic(),
                Some(piv) => basis.push((v, comb, piv)),
            }
            pw = pw.times(self);
        }
        unreachable!("powers of a field element must become dependent")
    }

    /// Norm N_{K/Q}, computed as a resultant with the modulus.
    pub fn norm(&self) -> Q {
        self.k.modulus.resultant(&self.p)
    }
}

impl Field for Nf {
    type Ctx = Arc<NumberField>;

    fn zero(k: &Self::Ctx) -> Self {
        Nf { p: UPoly::zero(&()), k: k.clone() }
    }
    fn one(k: &Self::Ctx) -> Self {
        Nf { p: UPoly::one(&()), k: k.clone() }
    }
    fn from_int(k: &Self::Ctx, v: &BigInt) -> Self {
        Nf::from_q(&Q::from_integer(v.clone()), k)
    }
    fn from_rational(k: &Self::Ctx, v: &Q) -> Option<Self> {
        Some(Nf::from_q(v, k))
    }
    fn context(&self) -> Self::Ctx {
        self.k.clone()
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero()
    }
    fn is_one(&self) -> bool {
        self.p.deg() == 0 && self.p.c[0].is_one()
    }
    fn plus(&self, o: &Self) -> Self {
        Nf { p: &self.p + &o.p, k: self.k.clone() }
    }
    fn minus(&self, o: &Self) -> Self {
        Nf { p: &self.p - &o.p, k: self.k.clone() }
    }
    fn times(&self, o: &Self) -> Self {
        if self.p.deg() <= 0 || o.p.deg() <= 0 {
            return Nf { p: &self.p * &o.p, k: self.k.clone() };
        }
        Nf { p: (&self.p * &o.p).rem(&self.k.modulus), k: self.k.clone() }
    }
    fn negate(&self) -> Self {
        Nf { p: -&self.p, k: self.k.clone() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.p.is_zero() {
            return None;
        }
        if self.p.deg() == 0 {
            return Some(Nf::from_q(&self.p.c[0].recip(), &self.k));
        }
        let inv = self.p.inverse_mod(&self.k.modulus)?;
        Some(Nf { p: inv, k: self.k.clone() })
    }
    fn characteristic(_: &Self::Ctx) -> u64 {
        0
    }
    fn render(&self) -> String {
        self.p.render("t")
    }
}

/// Element of Q(c): a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc {
    pub num: UPoly<Q>,
    pub den: UPoly<Q>,
}

impl RatFunc {
    pub fn new(num: UPoly<Q>, den: UPoly<Q>) -> Self {
        assert!(!den.is_zero(), "zero denominator in rational function");
        if num.is_zero() {
            return RatFunc { num, den: UPoly::one(&()) };
        }
        let g = num.gcd(&den);
        let n = num.div_exact(&g).unwrap();
        let d = den.div_exact(&g).unwrap();
        let l = d.lc();
        RatFunc { num: n.scale(&l.recip()), den: d.monic() }
    }
    pub fn from_poly(p: UPoly<Q>) -> Self {
        RatFunc { num: p, den: UPoly::one(&()) }
    }
    /// The parameter c itself.
    pub fn parameter() -> Self {
        Self::from_poly(UPoly::x(&()))
    }
    /// Value at c = v; `None` at a pole.
    pub fn eval(&self, v: &Q) -> Option<Q> {
        let d = self.den.eval(v);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(v) / d)
        }
    }
}

impl Field for RatFunc {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        Self::from_poly(UPoly::zero(&()))
    }
    fn one(_: &()) -> Self {
        Self::from_poly(UPoly::one(&()))
    }
    fn from_int(_: &(), v: &BigInt) -> Self {
        Self::from_poly(UPoly::constant(Q::from_integer(v.clone())))
    }
    fn from_rational(_: &(), v: &Q) -> Option<Self> {
        Some(Self::from_poly(UPoly::constant(v.clone())))
    }
    fn context(&self) {}
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone());
        }
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den)
    }
    fn negate(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }
    fn characteristic(_: &()) -> u64 {
        0
    }
    fn render(&self) -> String {
        if self.den.deg() == 0 {
            self.num.render("c")
        } else {
            format!("({})/({})", self.num.render("c"), self.den.render("c"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{q_frac, q_int};
    use super::*;

    fn sqrt2() -> Arc<NumberField> {
        NumberField::new(&UPoly::from_i64s(&[-2, 0, 1], &()))
    }

    #[test]
    fn conjugate_product_in_quadratic_field() {
        let k = sqrt2();
        let t = Nf::generator(&k);
        let one = Nf::one(&k);
        let prod = one.plus(&t).times(&one.minus(&t));
        assert_eq!(prod, Nf::from_q(&q_int(-1), &k));
    }

    #[test]
    fn inverse_of_generator() {
        let k = sqrt2();
        let t = Nf::generator(&k);
        let inv = t.inverse().unwrap();
        assert_eq!(inv, Nf::from_poly(&UPoly::new(vec![q_int(0), q_frac(1, 2)], ()), &k));
        assert!(t.times(&inv).is_one());
    }

    #[test]
    fn minimal_polynomial_by_krylov() {
        let k = sqrt2();
        let t = Nf::generator(&k);
        let a = t.plus(&Nf::one(&k)); // 1 + sqrt2: x^2 - 2x - 1
        assert_eq!(a.minpoly(), UPoly::from_i64s(&[-1, -2, 1], &()));
        assert_eq!(Nf::from_q(&q_int(3), &k).minpoly(), UPoly::from_i64s(&[-3, 1], &()));
        assert_eq!(a.norm(), q_int(-1));
    }

    #[test]
    fn rational_function_field_axioms() {
        let c = RatFunc::parameter();
        let one = RatFunc::one(&());
        let a = c.plus(&one).inverse().unwrap(); // 1/(c+1)
        let b = a.times(&c.plus(&one));
        assert!(b.is_one());
        assert_eq!(a.eval(&q_int(1)), Some(q_frac(1, 2)));
        assert_eq!(a.eval(&q_int(-1)), None);
    }
}
