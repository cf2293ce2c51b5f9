//! Bivariate polynomials over an arbitrary [`Field`].
//!
//! Stored densely by Y-degree: `rows[j]` is the coefficient of `Y^j`, itself a
//! univariate polynomial in X.  A sparse exponent-pair view is available via
//! [`BPoly::terms`] and [`BPoly::from_terms`].

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::Field;
use super::upoly::UPoly;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Debug)]
pub struct BPoly<F: Field> {
    pub rows: Vec<UPoly<F>>,
    pub ctx: F::Ctx,
}

impl<F: Field> BPoly<F> {
    pub fn new(mut rows: Vec<UPoly<F>>, ctx: F::Ctx) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BPoly { rows, ctx }
    }
    pub fn zero(ctx: &F::Ctx) -> Self {
        BPoly { rows: vec![], ctx: ctx.clone() }
    }
    pub fn one(ctx: &F::Ctx) -> Self {
        Self::constant(F::one(ctx))
    }
    pub fn constant(a: F) -> Self {
        let ctx = a.context();
        Self::new(vec![UPoly::constant(a)], ctx)
    }
    pub fn x(ctx: &F::Ctx) -> Self {
        Self::new(vec![UPoly::x(ctx)], ctx.clone())
    }
    pub fn y(ctx: &F::Ctx) -> Self {
        Self::new(vec![UPoly::zero(ctx), UPoly::one(ctx)], ctx.clone())
    }
    /// Embed a polynomial in X.
    pub fn from_x(p: &UPoly<F>) -> Self {
        Self::new(vec![p.clone()], p.ctx.clone())
    }
    /// Embed a polynomial in Y.
    pub fn from_y(p: &UPoly<F>) -> Self {
        Self::new(p.c.iter().map(|a| UPoly::constant(a.clone())).collect(), p.ctx.clone())
    }
    pub fn monomial(a: F, i: usize, j: usize) -> Self {
        let ctx = a.context();
        let mut rows = vec![UPoly::zero(&ctx); j];
        rows.push(UPoly::monomial(a, i));
        Self::new(rows, ctx)
    }
    /// Build from (deg_x, deg_y, coefficient) triples; repeated exponents add.
    pub fn from_terms(terms: &[(usize, usize, F)], ctx: &F::Ctx) -> Self {
        let mut acc = Self::zero(ctx);
        for (i, j, a) in terms {
            acc = &acc + &Self::monomial(a.clone(), *i, *j);
        }
        acc
    }
    /// Sparse view: map (deg_x, deg_y) → nonzero coefficient.
    pub fn terms(&self) -> BTreeMap<(usize, usize), F> {
        let mut m = BTreeMap::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, a) in r.c.iter().enumerate() {
                if !a.is_zero() {
                    m.insert((i, j), a.clone());
                }
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }
    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.rows.first().is_none_or(|r| r.deg() <= 0)
    }
    /// Y-degree (−1 for zero).
    pub fn deg_y(&self) -> isize {
        self.rows.len() as isize - 1
    }
    /// X-degree (−1 for zero).
    pub fn deg_x(&self) -> isize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(-1)
    }
    /// Total degree (−1 for zero).
    pub fn total_deg(&self) -> isize {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| !r.is_zero())
            .map(|(j, r)| r.deg() + j as isize)
            .max()
            .unwrap_or(-1)
    }
    pub fn coeff(&self, i: usize, j: usize) -> F {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_else(|| F::zero(&self.ctx))
    }
    pub fn row(&self, j: usize) -> UPoly<F> {
        self.rows.get(j).cloned().unwrap_or_else(|| UPoly::zero(&self.ctx))
    }
    /// Leading coefficient with respect to Y (a polynomial in X).
    pub fn lc_y(&self) -> UPoly<F> {
        self.rows.last().cloned().unwrap_or_else(|| UPoly::zero(&self.ctx))
    }
    /// Constant value, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<F> {
        if self.is_constant() {
            Some(self.coeff(0, 0))
        } else {
            None
        }
    }
    /// The polynomial in X, when Y does not occur.
    pub fn as_x_poly(&self) -> Option<UPoly<F>> {
        if self.deg_y() <= 0 {
            Some(self.row(0))
        } else {
            None
        }
    }
    /// Column view: coefficient of X^i as a polynomial in Y.
    pub fn column(&self, i: usize) -> UPoly<F> {
        UPoly::new(self.rows.iter().map(|r| r.coeff(i)).collect(), self.ctx.clone())
    }

    pub fn scale(&self, a: &F) -> Self {
        Self::new(self.rows.iter().map(|r| r.scale(a)).collect(), self.ctx.clone())
    }
    pub fn scale_x(&self, p: &UPoly<F>) -> Self {
        Self::new(self.rows.iter().map(|r| r * p).collect(), self.ctx.clone())
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

    pub fn dx(&self) -> Self {
        Self::new(self.rows.iter().map(|r| r.derivative()).collect(), self.ctx.clone())
    }
    pub fn dy(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, r)| r.scale(&F::from_i64(&self.ctx, j as i64)))
            .collect();
        Self::new(rows, self.ctx.clone())
    }

    /// f(a, Y) as a polynomial in Y.
    pub fn eval_x(&self, a: &F) -> UPoly<F> {
        UPoly::new(self.rows.iter().map(|r| r.eval(a)).collect(), self.ctx.clone())
    }
    /// f(X, b) as a polynomial in X.
    pub fn eval_y(&self, b: &F) -> UPoly<F> {
        let mut acc = UPoly::zero(&self.ctx);
        for r in self.rows.iter().rev() {
            acc = &acc.scale(b) + r;
        }
        acc
    }
    pub fn eval(&self, a: &F, b: &F) -> F {
        self.eval_x(a).eval(b)
    }

    /// Substitute X := px, Y := py.
    pub fn compose(&self, px: &Self, py: &Self) -> Self {
        let mut acc = Self::zero(&self.ctx);
        for r in self.rows.iter().rev() {
            let mut rv = Self::zero(&self.ctx);
            for a in r.c.iter().rev() {
                rv = &(&rv * px) + &Self::constant(a.clone());
            }
            acc = &(&acc * py) + &rv;
        }
        acc
    }

    /// Linear change of variables X := aX + bY + e, Y := cX + dY + g, done
    /// through binomial expansion (faster than generic composition).
    pub fn affine(&self, a: &F, b: &F, e: &F, c: &F, d: &F, g: &F) -> Self {
        let ctx = &self.ctx;
        let lin = |p: &F, q: &F, r: &F| {
            Self::from_terms(&[(1, 0, p.clone()), (0, 1, q.clone()), (0, 0, r.clone())], ctx)
        };
        let lx = lin(a, b, e);
        let ly = lin(c, d, g);
        let dx = self.deg_x().max(0) as usize;
        let dy = self.deg_y().max(0) as usize;
        let mut px = vec![Self::one(ctx)];
        for i in 1..=dx {
            px.push(&px[i - 1] * &lx);
        }
        let mut py = vec![Self::one(ctx)];
        for j in 1..=dy {
            py.push(&py[j - 1] * &ly);
        }
        let mut acc = Self::zero(ctx);
        for (j, r) in self.rows.iter().enumerate() {
            let mut rv = Self::zero(ctx);
            for (i, coef) in r.c.iter().enumerate() {
                if !coef.is_zero() {
                    rv = &rv + &px[i].scale(coef);
                }
            }
            if !rv.is_zero() {
                acc = &acc + &(&rv * &py[j]);
            }
        }
        acc
    }

    /// Shear X := X + λY (the normalizing substitution).
    pub fn shear(&self, lambda: &F) -> Self {
        let z = F::zero(&self.ctx);
        let o = F::one(&self.ctx);
        self.affine(&o, lambda, &z, &z, &o, &z)
    }
    /// Translate: f(X + u, Y + v).
    pub fn translate(&self, u: &F, v: &F) -> Self {
        let z = F::zero(&self.ctx);
        let o = F::one(&self.ctx);
        self.affine(&o, &z, u, &z, &o, v)
    }
    /// Exchange the roles of X and Y.
    pub fn swap_xy(&self) -> Self {
        let n = (self.deg_x() + 1).max(0) as usize;
        Self::new((0..n).map(|i| self.column(i)).collect(), self.ctx.clone())
    }

    /// Degree form: the homogeneous part of top total degree.
    pub fn degree_form(&self) -> Self {
        let d = self.total_deg();
        if d < 0 {
            return self.clone();
        }
        let mut terms = Vec::new();
        for ((i, j), a) in self.terms() {
            if (i + j) as isize == d {
                terms.push((i, j, a));
            }
        }
        Self::from_terms(&terms, &self.ctx)
    }
    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let terms: Vec<_> =
            self.terms().into_iter().filter(|((i, j), _)| i + j == d).map(|((i, j), a)| (i, j, a)).collect();
        Self::from_terms(&terms, &self.ctx)
    }
    pub fn is_homogeneous(&self) -> bool {
        let d = self.total_deg();
        self.terms().keys().all(|(i, j)| (i + j) as isize == d)
    }
    /// Binary form → dehomogenized polynomial F(t) = f(t, 1).
    pub fn dehomogenize_y(&self) -> UPoly<F> {
        self.eval_y(&F::one(&self.ctx))
    }

    pub fn map<G: Field>(&self, ctx: &G::Ctx, f: impl Fn(&F) -> G + Copy) -> BPoly<G> {
        BPoly::new(self.rows.iter().map(|r| r.map(ctx, f)).collect(), ctx.clone())
    }

    /// Gcd of the X-polynomial coefficients (the content in F[X]), monic.
    pub fn content_x(&self) -> UPoly<F> {
        let mut g = UPoly::zero(&self.ctx);
        for r in &self.rows {
            g = g.gcd(r);
            if g.deg() == 0 {
                break;
            }
        }
        g
    }
    /// Divide every row by a polynomial in X that divides all of them.
    pub fn div_x(&self, p: &UPoly<F>) -> Self {
        Self::new(self.rows.iter().map(|r| r.div_exact(p).expect("content must divide")).collect(), self.ctx.clone())
    }
    pub fn primitive_part_x(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_x();
        self.div_x(&c)
    }

    /// Exact quotient in F[X,Y], or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "bivariate division by zero");
        if self.is_zero() {
            return Some(self.clone());
        }
        let dd = d.deg_y();
        if self.deg_y() < dd {
            return None;
        }
        let lcd = d.lc_y();
        let mut r = self.clone();
        let mut q = vec![UPoly::zero(&self.ctx); (self.deg_y() - dd + 1) as usize];
        while !r.is_zero() && r.deg_y() >= dd {
            let k = (r.deg_y() - dd) as usize;
            let t = r.lc_y().div_exact(&lcd)?;
            let mut tr = vec![UPoly::zero(&self.ctx); k];
            tr.push(t.clone());
            let tb = Self::new(tr, self.ctx.clone());
            r = &r - &(&tb * d);
            q[k] = &q[k] + &t;
        }
        if r.is_zero() {
            Some(Self::new(q, self.ctx.clone()))
        } else {
            None
        }
    }
    pub fn divides(&self, o: &Self) -> bool {
        o.div_exact(self).is_some()
    }

    /// Pseudo-remainder with respect to Y: lc(d)^(δ+1)·self mod d.
    pub fn prem(&self, d: &Self) -> Self {
        let dd = d.deg_y();
        let lcd = d.lc_y();
        let mut r = self.clone();
        while !r.is_zero() && r.deg_y() >= dd {
            let k = (r.deg_y() - dd) as usize;
            let t = r.lc_y();
            let mut tr = vec![UPoly::zero(&self.ctx); k];
            tr.push(t);
            let tb = Self::new(tr, self.ctx.clone());
            r = &r.scale_x(&lcd) - &(&tb * d);
        }
        r
    }

    /// Canonical normalization: leading Y-row made monic in X; a nonzero
    /// constant becomes 1.
    pub fn normalize(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc_y().lc().inverse().unwrap();
        self.scale(&inv)
    }

    /// Greatest common divisor, normalized by [`BPoly::normalize`].
    ///
    /// Primitive polynomial remainder sequence over F[X] in Y, with the
    /// X-contents handled by the univariate Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.normalize();
        }
        if o.is_zero() {
            return self.normalize();
        }
        let ca = self.content_x();
        let cb = o.content_x();
        let c = ca.gcd(&cb);
        let mut a = self.div_x(&ca);
        let mut b = o.div_x(&cb);
        if a.deg_y() < b.deg_y() {
            std::mem::swap(&mut a, &mut b);
        }
        let g = loop {
            if b.deg_y() == 0 {
                break Self::one(&self.ctx);
            }
            let r = a.prem(&b);
            if r.is_zero() {
                break b;
            }
            a = b;
            b = r.primitive_part_x();
        };
        (&g * &Self::from_x(&c)).normalize()
    }

    /// Squarefree decomposition with respect to Y, combined with the
    /// decomposition of the X-content.  Factors are normalized, pairwise
    /// coprime and squarefree; multiplicities are strictly increasing.
    pub fn squarefree(&self) -> Result<Vec<(Self, u32)>> {
        let p = F::characteristic(&self.ctx);
        let tot = self.total_deg().max(0) as u64;
        if p != 0 && p <= tot {
            return Err(Error::CharacteristicTooSmall { p, bound: tot });
        }
        let mut by_mult: BTreeMap<u32, Self> = BTreeMap::new();
        let cont = self.content_x();
        for (fac, m) in cont.squarefree() {
            by_mult.insert(m, Self::from_x(&fac));
        }
        let f = self.div_x(&cont);
        if f.deg_y() > 0 {
            let fy = f.dy();
            let a0 = f.gcd(&fy);
            let mut b = f.div_exact(&a0).unwrap();
            let c = fy.div_exact(&a0).unwrap();
            let mut d = &c - &b.dy();
            let mut i = 1;
            while b.deg_y() > 0 {
                let a = b.gcd(&d);
                if a.deg_y() > 0 {
                    let e = by_mult.entry(i).or_insert_with(|| Self::one(&self.ctx));
                    *e = (&*e * &a).normalize();
                }
                b = b.div_exact(&a).unwrap();
                let cc = d.div_exact(&a).unwrap();
                d = &cc - &b.dy();
                i += 1;
            }
        }
        Ok(by_mult.into_iter().filter(|(_, g)| !g.is_constant()).map(|(m, g)| (g, m)).collect())
    }

    /// Squarefree part (radical), normalized.
    pub fn radical(&self) -> Result<Self> {
        let mut acc = Self::one(&self.ctx);
        for (g, _) in self.squarefree()? {
            acc = &acc * &g;
        }
        Ok(acc.normalize())
    }

    pub fn render(&self, vx: &str, vy: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for ((i, j), a) in self.terms().into_iter().rev() {
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push(vx.to_string()),
                _ => mono.push(format!("{vx}^{i}")),
            }
            match j {
                0 => {}
                1 => mono.push(vy.to_string()),
                _ => mono.push(format!("{vy}^{j}")),
            }
            let coef = a.render();
            parts.push(if mono.is_empty() {
                coef
            } else if a.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", coef, mono.join("*"))
            });
        }
        parts.join(" + ")
    }
}

impl<F: Field> Add for &BPoly<F> {
    type Output = BPoly<F>;
    fn add(self, o: &BPoly<F>) -> BPoly<F> {
        let n = self.rows.len().max(o.rows.len());
        let rows = (0..n)
            .map(|j| match (self.rows.get(j), o.rows.get(j)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                _ => unreachable!(),
            })
            .collect();
        BPoly::new(rows, self.ctx.clone())
    }
}

impl<F: Field> Sub for &BPoly<F> {
    type Output = BPoly<F>;
    fn sub(self, o: &BPoly<F>) -> BPoly<F> {
        let n = self.rows.len().max(o.rows.len());
        let rows = (0..n)
            .map(|j| match (self.rows.get(j), o.rows.get(j)) {
                (Some(a), Some(b)) => a - b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => -b,
                _ => unreachable!(),
            })
            .collect();
        BPoly::new(rows, self.ctx.clone())
    }
}

impl<F: Field> Mul for &BPoly<F> {
    type Output = BPoly<F>;
    fn mul(self, o: &BPoly<F>) -> BPoly<F> {
        if self.is_zero() || o.is_zero() {
            return BPoly::zero(&self.ctx);
        }
        let mut rows = vec![UPoly::zero(&self.ctx); self.rows.len() + o.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.rows.iter().enumerate() {
                if !b.is_zero() {
                    rows[i + j] = &rows[i + j] + &(a * b);
                }
            }
        }
        BPoly::new(rows, self.ctx.clone())
    }
}

impl<F: Field> Neg for &BPoly<F> {
    type Output = BPoly<F>;
    fn neg(self) -> BPoly<F> {
        BPoly { rows: self.rows.iter().map(|r| -r).collect(), ctx: self.ctx.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{q_int, Fp, Q};
    use super::*;

    pub(crate) fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, a)| (i, j, q_int(a))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn gcd_examples() {
        // gcd(X^2-1, X^3-1) = X-1
        let g = bq(&[(2, 0, 1), (0, 0, -1)]).gcd(&bq(&[(3, 0, 1), (0, 0, -1)]));
        assert_eq!(g, bq(&[(1, 0, 1), (0, 0, -1)]));
        // gcd(Y^2 - X^3, 2Y) = 1
        let g = bq(&[(0, 2, 1), (3, 0, -1)]).gcd(&bq(&[(0, 1, 2)]));
        assert_eq!(g, bq(&[(0, 0, 1)]));
        // gcd(3Y^2-3, Y^2-1) = Y^2-1
        let g = bq(&[(0, 2, 3), (0, 0, -3)]).gcd(&bq(&[(0, 2, 1), (0, 0, -1)]));
        assert_eq!(g, bq(&[(0, 2, 1), (0, 0, -1)]));
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let d = bq(&[(1, 1, 1), (0, 0, 1), (2, 0, 1)]);
        let a = bq(&[(0, 2, 1), (1, 0, -3)]);
        let b = bq(&[(1, 1, 2), (0, 1, 1), (0, 0, 5)]);
        let g = (&a * &d).gcd(&(&b * &d));
        assert_eq!(g, d.normalize());
    }

    #[test]
    fn exact_division_and_shear() {
        let a = bq(&[(1, 1, 1), (0, 0, 1)]);
        let b = bq(&[(0, 1, 1), (1, 0, -1)]);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&bq(&[(0, 1, 1), (0, 0, 7)])), None);
        // XY + 1 under X -> X + Y is Y^2 + XY + 1
        assert_eq!(bq(&[(1, 1, 1), (0, 0, 1)]).shear(&q_int(1)), bq(&[(0, 2, 1), (1, 1, 1), (0, 0, 1)]));
    }

    #[test]
    fn bivariate_squarefree() {
        // (Y - X)^2 (Y + 1) X^3
        let l = bq(&[(0, 1, 1), (1, 0, -1)]);
        let m = bq(&[(0, 1, 1), (0, 0, 1)]);
        let x = bq(&[(1, 0, 1)]);
        let f = &(&(&l * &l) * &m) * &(&x * &(&x * &x));
        let sf = f.squarefree().unwrap();
        assert_eq!(sf, vec![(m.clone(), 1), (l.clone(), 2), (x.clone(), 3)]);
    }

    #[test]
    fn degree_form_and_terms() {
        let f = bq(&[(2, 1, 1), (1, 0, 1), (0, 0, -2)]);
        assert_eq!(f.degree_form(), bq(&[(2, 1, 1)]));
        assert_eq!(f.total_deg(), 3);
        assert_eq!(f.terms().len(), 3);
        assert_eq!(f.swap_xy().swap_xy(), f);
    }

    #[test]
    fn characteristic_guard() {
        let f: BPoly<Fp> = BPoly::from_terms(&[(0, 5, Fp::new(1, 3)), (1, 0, Fp::new(1, 3))], &3);
        assert!(matches!(f.squarefree(), Err(Error::CharacteristicTooSmall { .. })));
    }
}
