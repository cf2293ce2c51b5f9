//! Dense univariate polynomials over an arbitrary [`Field`].

use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Q};

/// Dense univariate polynomial, coefficients lowest degree first.
///
/// The coefficient vector never ends in a zero; the zero polynomial has an
/// empty vector and [`UPoly::deg`] returns `-1` in place of −∞.
#[derive(Clone, PartialEq, Debug)]
pub struct UPoly<F: Field> {
    pub c: Vec<F>,
    pub ctx: F::Ctx,
}

impl<F: Field> UPoly<F> {
    pub fn new(mut c: Vec<F>, ctx: F::Ctx) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c, ctx }
    }
    pub fn zero(ctx: &F::Ctx) -> Self {
        UPoly { c: vec![], ctx: ctx.clone() }
    }
    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }
    pub fn constant(a: F) -> Self {
        let ctx = a.context();
        Self::new(vec![a], ctx)
    }
    /// The polynomial `x`.
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::monomial(F::one(ctx), 1)
    }
    pub fn monomial(a: F, k: usize) -> Self {
        let ctx = a.context();
        let mut c = vec![F::zero(&ctx); k];
        c.push(a);
        Self::new(c, ctx)
    }
    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        let ctx = a.context();
        Self::new(vec![a.negate(), F::one(&ctx)], ctx)
    }
    pub fn from_i64s(v: &[i64], ctx: &F::Ctx) -> Self {
        Self::new(v.iter().map(|&a| F::from_i64(ctx, a)).collect(), ctx.clone())
    }

    /// Degree, with −1 standing in for −∞ on the zero polynomial.
    pub fn deg(&self) -> isize {
        self.c.len() as isize - 1
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    pub fn coeff(&self, i: usize) -> F {
        self.c.get(i).cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }
    pub fn lc(&self) -> F {
        self.c.last().cloned().unwrap_or_else(|| F::zero(&self.ctx))
    }
    pub fn trailing_zeros(&self) -> usize {
        self.c.iter().position(|a| !a.is_zero()).unwrap_or(0)
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero(&self.ctx);
        }
        UPoly { c: self.c.iter().map(|x| x.times(a)).collect(), ctx: self.ctx.clone() }
    }
    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().inverse().unwrap();
        self.scale(&inv)
    }
    /// Multiply by x^k.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![F::zero(&self.ctx); k];
        c.extend(self.c.iter().cloned());
        UPoly { c, ctx: self.ctx.clone() }
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero(&self.ctx);
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a.times(&F::from_i64(&self.ctx, i as i64)))
            .collect();
        Self::new(c, self.ctx.clone())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.deg() < d.deg() {
            return (Self::zero(&self.ctx), self.clone());
        }
        let inv = d.lc().inverse().unwrap();
        let dd = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![F::zero(&self.ctx); r.len() - dd];
        for i in (0..q.len()).rev() {
            let t = r[i + dd].times(&inv);
            if !t.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] = r[i + j].minus(&t.times(b));
                }
            }
            q[i] = t;
        }
        r.truncate(dd);
        (Self::new(q, self.ctx.clone()), Self::new(r, self.ctx.clone()))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }
    /// Quotient when `d` divides `self`, else `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let ctx = &self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = r1;
            r1 = r;
            let s = &s0 - &(&q * &s1);
            s0 = s1;
            s1 = s;
            let t = &t0 - &(&q * &t1);
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().inverse().unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.deg() == 0 {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Resultant via the Euclidean remainder sequence.
    ///
    /// Convention: `res(a, b) = lc(a)^deg(b) · ∏ b(α)` over the roots α of a,
    /// which is the Sylvester determinant with the a-block on top.
    pub fn resultant(&self, o: &Self) -> F {
        let ctx = self.ctx.clone();
        if self.is_zero() || o.is_zero() {
            return F::zero(&ctx);
        }
        let (mut a, mut b) = (self.clone(), o.clone());
        let mut acc = F::one(&ctx);
        loop {
            let da = a.deg();
            let db = b.deg();
            if da == 0 {
                return acc.times(&a.lc().pow_u(db as u64));
            }
            if db == 0 {
                return acc.times(&b.lc().pow_u(da as u64));
            }
            // res(a,b) = (-1)^{da·db} res(b,a); res(b,a) = lc(b)^{da-dr} res(b, a mod b)
            let r = a.rem(&b);
            if r.is_zero() {
                return F::zero(&ctx);
            }
            let dr = r.deg();
            if (da * db) % 2 == 1 {
                acc = acc.negate();
            }
            acc = acc.times(&b.lc().pow_u((da - dr) as u64));
            a = b;
            b = r;
        }
    }

    /// p(q(x)).
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for a in self.c.iter().rev() {
            acc = &(&acc * q) + &Self::constant(a.clone());
        }
        acc
    }

    /// p(x + a).
    pub fn shift(&self, a: &F) -> Self {
        let lin = Self::new(vec![a.clone(), F::one(&self.ctx)], self.ctx.clone());
        self.compose(&lin)
    }

    /// Squarefree decomposition (Yun): pairs (factor, multiplicity) with
    /// monic, pairwise coprime, squarefree factors and increasing
    /// multiplicities; the input equals lc · ∏ factor^mult.
    /// Requires characteristic 0 or larger than the degree.
    pub fn squarefree(&self) -> Vec<(Self, u32)> {
        let mut out = Vec::new();
        if self.deg() <= 0 {
            return out;
        }
        let d = self.derivative();
        let a0 = self.gcd(&d);
        let mut b = self.div_exact(&a0).unwrap().monic();
        let mut c = d.div_exact(&a0).unwrap().scale(&self.lc().inverse().unwrap());
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.deg() > 0 {
            let a = b.gcd(&dd);
            if a.deg() > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            c = dd.div_exact(&a).unwrap();
            dd = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Squarefree part, monic.
    pub fn squarefree_part(&self) -> Self {
        if self.deg() <= 0 {
            return Self::one(&self.ctx);
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).unwrap().monic()
    }

    /// Map coefficients into another field.
    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G) -> UPoly<G> {
        UPoly::new(self.c.iter().map(f).collect(), ctx.clone())
    }

    pub fn render(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let coef = a.render();
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            parts.push(if mono.is_empty() {
                format!("({coef})")
            } else if a.is_one() {
                mono
            } else {
                format!("({coef})*{mono}")
            });
        }
        parts.join(" + ")
    }
}

impl UPoly<Q> {
    /// Interpolate the unique polynomial of degree < n through n points.
    pub fn interpolate(xs: &[Q], ys: &[Q]) -> Self {
        interpolate(xs, ys, &())
    }
}

/// Newton interpolation over any field.
pub fn interpolate<F: Field>(xs: &[F], ys: &[F], ctx: &F::Ctx) -> UPoly<F> {
    let n = xs.len();
    let mut coef: Vec<F> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = coef[i].minus(&coef[i - 1]);
            let den = xs[i].minus(&xs[i - j]);
            coef[i] = num.divide(&den);
        }
    }
    let mut p = UPoly::zero(ctx);
    for i in (0..n).rev() {
        p = &(&p * &UPoly::linear_root(&xs[i])) + &UPoly::constant(coef[i].clone());
    }
    p
}

impl<F: Field> Add for &UPoly<F> {
    type Output = UPoly<F>;
    fn add(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        UPoly::new(c, self.ctx.clone())
    }
}

impl<F: Field> Sub for &UPoly<F> {
    type Output = UPoly<F>;
    fn sub(self, o: &UPoly<F>) -> UPoly<F> {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negate(),
                _ => unreachable!(),
            })
            .collect();
        UPoly::new(c, self.ctx.clone())
    }
}

impl<F: Field> Mul for &UPoly<F> {
    type Output = UPoly<F>;
    fn mul(self, o: &UPoly<F>) -> UPoly<F> {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(&self.ctx);
        }
        let mut c = vec![F::zero(&self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].plus(&a.times(b));
            }
        }
        UPoly::new(c, self.ctx.clone())
    }
}

impl<F: Field> Neg for &UPoly<F> {
    type Output = UPoly<F>;
    fn neg(self) -> UPoly<F> {
        UPoly { c: self.c.iter().map(|a| a.negate()).collect(), ctx: self.ctx.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{q_int, Fp};
    use super::*;

    fn qp(v: &[i64]) -> UPoly<Q> {
        UPoly::from_i64s(v, &())
    }

    #[test]
    fn zero_polynomial_has_sentinel_degree() {
        assert_eq!(qp(&[]).deg(), -1);
        assert_eq!(qp(&[0, 0]).deg(), -1);
        assert_eq!(qp(&[1, 0, 2, 0]).deg(), 2);
    }

    #[test]
    fn gcd_of_shared_linear_factor() {
        // gcd(X^2-1, X^3-1) = X-1
        assert_eq!(qp(&[-1, 0, 1]).gcd(&qp(&[-1, 0, 0, 1])), qp(&[-1, 1]));
    }

    #[test]
    fn squarefree_examples() {
        // X^3+X^2 -> (X+1)^1 (X)^2
        let sf = qp(&[0, 0, 1, 1]).squarefree();
        assert_eq!(sf, vec![(qp(&[1, 1]), 1), (qp(&[0, 1]), 2)]);
        // Y^3-3Y+2 -> (Y+2)(Y-1)^2
        let sf = qp(&[2, -3, 0, 1]).squarefree();
        assert_eq!(sf, vec![(qp(&[2, 1]), 1), (qp(&[-1, 1]), 2)]);
        let g = qp(&[1, 0, 1]);
        assert_eq!(g.squarefree(), vec![(g.clone(), 1)]);
    }

    #[test]
    fn resultant_convention_and_values() {
        // res(x-1, x+1) = 2 ; res(x^2-2, x) = -2 ; res(x, x^2-2) = -2
        assert_eq!(qp(&[-1, 1]).resultant(&qp(&[1, 1])), q_int(2));
        assert_eq!(qp(&[-2, 0, 1]).resultant(&qp(&[0, 1])), q_int(-2));
        assert_eq!(qp(&[0, 1]).resultant(&qp(&[-2, 0, 1])), q_int(-2));
        // res(2x^2+1, x^3) = 2^3 * prod(alpha^3) = 8 * (a1 a2)^3 = 8*(1/2)^3 = 1
        assert_eq!(qp(&[1, 0, 2]).resultant(&qp(&[0, 0, 0, 1])), q_int(1));
        // degree-odd swap sign: res(x^3+x, x^2 + 1) = 0
        assert_eq!(qp(&[0, 1, 0, 1]).resultant(&qp(&[1, 0, 1])), q_int(0));
        // res(x - 2, 3) = 3
        assert_eq!(qp(&[-2, 1]).resultant(&qp(&[3])), q_int(3));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = qp(&[1, 2, 3, 4]);
        let b = qp(&[-5, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(&(&s * &a) + &(&t * &b), g);
        assert_eq!(g, qp(&[1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = qp(&[3, -1, 0, 2]);
        let xs: Vec<Q> = (0..4).map(q_int).collect();
        let ys: Vec<Q> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }

    #[test]
    fn prime_field_division() {
        let p = 101u64;
        let a: UPoly<Fp> = UPoly::from_i64s(&[3, 4, 5, 6], &p);
        let b: UPoly<Fp> = UPoly::from_i64s(&[1, 1], &p);
        let (q, r) = a.divrem(&b);
        assert_eq!(&(&q * &b) + &r, a);
    }
}
