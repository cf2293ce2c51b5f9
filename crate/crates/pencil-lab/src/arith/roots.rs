//! Certified complex root isolation and exact algebraic numbers.
//!
//! Roots are first approximated in floating point (Aberth iteration), then
//! certified exactly: with Weierstrass corrections `W_i`, the disks of
//! radius `n·|W_i|` around the approximations cover all roots and each
//! connected component holds as many roots as disks.  We enclose each disk
//! in a square with a rational half-side and accept once the squares are
//! pairwise disjoint.  Failing that, approximations are refined by
//! Durand–Kerner steps in rounded dyadic arithmetic at doubled precision.

use std::cmp::Ordering;
use std::sync::Arc;

use num::bigint::BigInt;
use num::{Signed, ToPrimitive};

use super::factor::{canonical_cmp, factor_q, squarefree_q};
use super::field::{qzero, Field, Q};
use super::modular::primitive_q;
use super::nf::{Nf, NumberField};
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Exact complex rational number.
#[derive(Clone, Debug, PartialEq)]
struct Cq {
    re: Q,
    im: Q,
}

impl Cq {
    fn sub(&self, o: &Cq) -> Cq {
        Cq { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Cq) -> Cq {
        Cq { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
    fn norm2(&self) -> Q {
        &self.re * &self.re + &self.im * &self.im
    }
    fn div(&self, o: &Cq) -> Cq {
        let n = o.norm2();
        let num = self.mul(&Cq { re: o.re.clone(), im: -&o.im });
        Cq { re: num.re / &n, im: num.im / n }
    }
    fn round(&self, bits: u32) -> Cq {
        Cq { re: round_dyadic(&self.re, bits), im: round_dyadic(&self.im, bits) }
    }
}

fn round_dyadic(q: &Q, bits: u32) -> Q {
    let s = BigInt::from(1u8) << bits;
    let v = (q * Q::from_integer(s.clone())).round();
    v / Q::from_integer(s)
}

fn f64_to_q(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(qzero)
}

fn eval_c(p: &UPoly<Q>, z: &Cq) -> Cq {
    let mut acc = Cq { re: qzero(), im: qzero() };
    for a in p.c.iter().rev() {
        acc = acc.mul(z);
        acc.re = &acc.re + a;
    }
    acc
}

/// Rational r with r ≥ sqrt(q), within a small relative factor.
fn sqrt_upper(q: &Q) -> Q {
    if q.is_zero() {
        return qzero();
    }
    let e = q.numer().bits() as i64 - q.denom().bits() as i64;
    let k = e / 2;
    let scale = |x: &Q, k: i64| -> Q {
        if k >= 0 {
            x * Q::from_integer(BigInt::from(1u8) << k as u32)
        } else {
            x / Q::from_integer(BigInt::from(1u8) << (-k) as u32)
        }
    };
    let reduced = scale(q, -2 * k);
    let f = reduced.to_f64().unwrap_or(1.0).sqrt() * (1.0 + 1e-9) + 1e-300;
    let mut r = scale(&f64_to_q(f), k);
    while &(&r * &r) < q {
        r = &r * Q::new(BigInt::from(9), BigInt::from(8));
    }
    r
}

/// Closed axis-parallel rectangle with rational corners.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rect {
    pub re_lo: Q,
    pub re_hi: Q,
    pub im_lo: Q,
    pub im_hi: Q,
}

impl Rect {
    pub fn point(re: Q) -> Rect {
        Rect { re_lo: re.clone(), re_hi: re, im_lo: qzero(), im_hi: qzero() }
    }
    pub fn intersects(&self, o: &Rect) -> bool {
        self.re_lo <= o.re_hi && o.re_lo <= self.re_hi && self.im_lo <= o.im_hi && o.im_lo <= self.im_hi
    }
    pub fn is_real(&self) -> bool {
        self.im_lo.is_zero() && self.im_hi.is_zero()
    }
    pub fn mid(&self) -> (Q, Q) {
        let two = Q::from_integer(BigInt::from(2));
        ((&self.re_lo + &self.re_hi) / &two, (&self.im_lo + &self.im_hi) / two)
    }
    pub fn width(&self) -> Q {
        let a = &self.re_hi - &self.re_lo;
        let b = &self.im_hi - &self.im_lo;
        if a > b {
            a
        } else {
            b
        }
    }
    pub fn mid_f64(&self) -> (f64, f64) {
        let (a, b) = self.mid();
        (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN))
    }
}

/// Floating point Aberth iteration; returns approximations (may be poor).
fn aberth_f64(p: &UPoly<Q>) -> Option<Vec<(f64, f64)>> {
    let n = p.deg() as usize;
    let c: Vec<f64> = p.c.iter().map(|a| a.to_f64().unwrap_or(f64::NAN)).collect();
    if c.iter().any(|x| !x.is_finite()) || c[n] == 0.0 {
        return None;
    }
    let lc = c[n];
    // Fujiwara-style radius bound.
    let mut rad: f64 = 0.0;
    for i in 0..n {
        let v = (c[i] / lc).abs().powf(1.0 / (n - i) as f64);
        rad = rad.max(v);
    }
    let rad = 2.0 * rad.max(1e-3);
    let mut z: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            (rad * 0.5 * th.cos(), rad * 0.5 * th.sin())
        })
        .collect();
    let cmul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
    let cdiv = |a: (f64, f64), b: (f64, f64)| {
        let d = b.0 * b.0 + b.1 * b.1;
        ((a.0 * b.0 + a.1 * b.1) / d, (a.1 * b.0 - a.0 * b.1) / d)
    };
    let dc: Vec<f64> = (1..=n).map(|i| c[i] * i as f64).collect();
    for _ in 0..2000 {
        let mut maxstep: f64 = 0.0;
        for i in 0..n {
            let zi = z[i];
            let mut pv = (0.0, 0.0);
            for a in c.iter().rev() {
                pv = cmul(pv, zi);
                pv.0 += a;
            }
            let mut dv = (0.0, 0.0);
            for a in dc.iter().rev() {
                dv = cmul(dv, zi);
                dv.0 += a;
            }
            if pv.0 == 0.0 && pv.1 == 0.0 {
                continue;
            }
            let ratio = cdiv(pv, dv);
            let mut s = (0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    let d = (zi.0 - zj.0, zi.1 - zj.1);
                    let inv = cdiv((1.0, 0.0), d);
                    s.0 += inv.0;
                    s.1 += inv.1;
                }
            }
            let den = (1.0 - (ratio.0 * s.0 - ratio.1 * s.1), -(ratio.0 * s.1 + ratio.1 * s.0));
            let w = cdiv(ratio, den);
            if !w.0.is_finite() || !w.1.is_finite() {
                continue;
            }
            z[i] = (zi.0 - w.0, zi.1 - w.1);
            let m = (w.0 * w.0 + w.1 * w.1).sqrt() / (1.0 + (z[i].0 * z[i].0 + z[i].1 * z[i].1).sqrt());
            maxstep = maxstep.max(m);
        }
        if maxstep < 1e-15 {
            break;
        }
    }
    if z.iter().any(|w| !w.0.is_finite() || !w.1.is_finite()) {
        return None;
    }
    Some(z)
}

/// Try to certify approximations; returns one square per root on success.
fn certify(p: &UPoly<Q>, zs: &[Cq]) -> Option<Vec<Rect>> {
    let n = zs.len();
    let lc = p.lc();
    let nq = Q::from_integer(BigInt::from(n));
    let mut rs = Vec::with_capacity(n);
    for i in 0..n {
        let pv = eval_c(p, &zs[i]);
        let mut den = &lc * &lc;
        for j in 0..n {
            if j != i {
                let d = zs[i].sub(&zs[j]).norm2();
                if d.is_zero() {
                    return None;
                }
                den *= d;
            }
        }
        let w2 = pv.norm2() / den;
        rs.push(sqrt_upper(&(&nq * &nq * w2)));
    }
    let rects: Vec<Rect> = zs
        .iter()
        .zip(&rs)
        .map(|(z, r)| Rect { re_lo: &z.re - r, re_hi: &z.re + r, im_lo: &z.im - r, im_hi: &z.im + r })
        .collect();
    for i in 0..n {
        for j in (i + 1)..n {
            if rects[i].intersects(&rects[j]) {
                return None;
            }
        }
    }
    // A square centred on the real axis holds a root together with its
    // conjugate, so by uniqueness the root is real.
    Some(
        rects
            .into_iter()
            .zip(zs)
            .map(|(r, z)| if z.im.is_zero() { Rect { im_lo: qzero(), im_hi: qzero(), ..r } } else { r })
            .collect(),
    )
}

fn dk_step(p: &UPoly<Q>, zs: &[Cq], bits: u32) -> Vec<Cq> {
    let lc = Cq { re: p.lc(), im: qzero() };
    let n = zs.len();
    (0..n)
        .map(|i| {
            let pv = eval_c(p, &zs[i]);
            let mut den = lc.clone();
            for j in 0..n {
                if j != i {
                    den = den.mul(&zs[i].sub(&zs[j]));
                }
            }
            if den.norm2().is_zero() {
                return zs[i].clone();
            }
            zs[i].sub(&pv.div(&den)).round(bits)
        })
        .collect()
}

fn snap(zs: &[Cq], bits: u32) -> Vec<Cq> {
    let tol = Q::new(BigInt::from(1), BigInt::from(1u8) << (bits / 2));
    zs.iter()
        .map(|z| {
            let mag = z.re.abs() + Q::from_integer(BigInt::from(1));
            if z.im.abs() < &tol * &mag {
                Cq { re: z.re.clone(), im: qzero() }
            } else {
                z.clone()
            }
        })
        .collect()
}

/// Certified isolating rectangles for all complex roots of a squarefree
/// polynomial, sorted by (real part, imaginary part) of their midpoints.
/// `min_bits` forces the working precision to at least that many bits
/// (used when finer boxes are needed).
pub fn isolate_squarefree(p: &UPoly<Q>, min_bits: u32) -> Vec<Rect> {
    let n = p.deg();
    assert!(n >= 1, "isolation needs a nonconstant polynomial");
    if n == 1 {
        return vec![Rect::point(-(p.coeff(0) / p.coeff(1)))];
    }
    let p = primitive_q(p);
    let mut bits: u32 = 53;
    let mut zs: Vec<Cq> = match aberth_f64(&p) {
        Some(z) => z.into_iter().map(|(a, b)| Cq { re: f64_to_q(a), im: f64_to_q(b) }).collect(),
        None => (0..n as usize)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
                Cq { re: f64_to_q(th.cos()), im: f64_to_q(th.sin()) }
            })
            .collect(),
    };
    loop {
        if bits >= min_bits {
            if let Some(mut rects) = certify(&p, &snap(&zs, bits)) {
                rects.sort_by(|a, b| {
                    let (ar, ai) = a.mid();
                    let (br, bi) = b.mid();
                    ar.cmp(&br).then(ai.cmp(&bi))
                });
                return rects;
            }
        }
        bits = bits.saturating_mul(2).max(min_bits);
        assert!(bits <= 1 << 16, "root isolation failed to converge");
        for _ in 0..12 {
            zs = dk_step(&p, &zs, bits);
        }
    }
}

/// An algebraic number: irreducible primitive integer minimal polynomial
/// (positive leading coefficient) plus a rectangle isolating one of its roots.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    pub minpoly: UPoly<Q>,
    pub rect: Rect,
    /// Position among the canonically sorted roots of `minpoly`.
    pub index: usize,
}

impl AlgebraicNumber {
    pub fn rational(v: &Q) -> Self {
        let mp = primitive_q(&UPoly::linear_root(v));
        AlgebraicNumber { minpoly: mp, rect: Rect::point(v.clone()), index: 0 }
    }
    pub fn degree(&self) -> usize {
        self.minpoly.deg() as usize
    }
    pub fn as_rational(&self) -> Option<Q> {
        if self.degree() == 1 {
            Some(-(self.minpoly.coeff(0) / self.minpoly.coeff(1)))
        } else {
            None
        }
    }
    pub fn is_real(&self) -> bool {
        self.rect.is_real()
    }
    /// All roots of an irreducible minimal polynomial, canonically ordered.
    pub fn conjugates(minpoly: &UPoly<Q>) -> Vec<AlgebraicNumber> {
        let mp = primitive_q(minpoly);
        isolate_squarefree(&mp, 0)
            .into_iter()
            .enumerate()
            .map(|(i, r)| AlgebraicNumber { minpoly: mp.clone(), rect: r, index: i })
            .collect()
    }
    /// Index of the root of `minpoly` inside `rect` (which must isolate it).
    fn locate(minpoly: &UPoly<Q>, rect: &Rect) -> usize {
        let mut bits = 53;
        loop {
            let rs = isolate_squarefree(minpoly, bits);
            let hits: Vec<usize> = (0..rs.len()).filter(|&i| rs[i].intersects(rect)).collect();
            if hits.len() == 1 {
                let (mr, mi) = rs[hits[0]].mid();
                // Map back to the canonical order of the default isolation.
                let canon = isolate_squarefree(minpoly, 0);
                return canon
                    .iter()
                    .position(|c| {
                        c.re_lo <= mr && mr <= c.re_hi && c.im_lo <= mi && mi <= c.im_hi && c.intersects(&rs[hits[0]])
                    })
                    .unwrap_or(hits[0]);
            }
            bits *= 2;
            assert!(bits <= 1 << 16, "failed to separate algebraic numbers");
        }
    }
    /// Rectangle of width below 2^-bits around this number.
    pub fn refined(&self, bits: u32) -> Rect {
        let target = Q::new(BigInt::from(1), BigInt::from(1u8) << bits);
        if self.degree() == 1 {
            return self.rect.clone();
        }
        let mut b = 64;
        loop {
            let rs = isolate_squarefree(&self.minpoly, b);
            let r = &rs[self.index];
            if r.width() < target {
                return r.clone();
            }
            b *= 2;
        }
    }
    /// The number field Q(α) together with α's image in it (the generator).
    pub fn field(&self) -> Arc<NumberField> {
        NumberField::new(&self.minpoly)
    }
    pub fn as_nf(&self) -> Nf {
        Nf::generator(&self.field())
    }
    /// Display: rational value or a root description.
    pub fn render(&self) -> String {
        if let Some(q) = self.as_rational() {
            return q.to_string();
        }
        let (a, b) = self.rect.mid_f64();
        let approx = if self.is_real() { format!("{a:.6}") } else { format!("{a:.6}{b:+.6}i") };
        format!("root[{}]({})≈{}", self.index, self.minpoly.render("t"), approx)
    }
    /// Total order used for reports: degree, coefficients, box midpoint.
    pub fn report_cmp(&self, o: &Self) -> Ordering {
        canonical_cmp(&self.minpoly, &o.minpoly).then_with(|| {
            let (ar, ai) = self.rect.mid();
            let (br, bi) = o.rect.mid();
            ar.cmp(&br).then(ai.cmp(&bi))
        })
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, o: &Self) -> bool {
        if self.minpoly != o.minpoly {
            return false;
        }
        if self.rect == o.rect || self.degree() == 1 {
            return true;
        }
        Self::locate(&self.minpoly, &self.rect) == Self::locate(&o.minpoly, &o.rect)
    }
}

/// One algebraic number per complex root of a squarefree polynomial.
pub fn isolate_roots(p: &UPoly<Q>) -> Result<Vec<AlgebraicNumber>> {
    if p.deg() < 1 {
        return Ok(vec![]);
    }
    if squarefree_q(p).iter().any(|(_, m)| *m > 1) {
        return Err(Error::NotSquarefree);
    }
    let mut out = Vec::new();
    for (phi, _) in factor_q(p).factors {
        out.extend(AlgebraicNumber::conjugates(&phi));
    }
    out.sort_by(|a, b| a.report_cmp(b));
    Ok(out)
}

/// A finite set of algebraic numbers, given by a squarefree defining
/// polynomial (product of distinct irreducible primitive factors) and its
/// isolated roots.
#[derive(Clone, Debug)]
pub struct AlgebraicSet {
    pub factors: Vec<UPoly<Q>>,
    pub members: Vec<AlgebraicNumber>,
}

impl AlgebraicSet {
    pub fn empty() -> Self {
        AlgebraicSet { factors: vec![], members: vec![] }
    }
    /// The set of roots of the given polynomials (multiplicities ignored).
    pub fn from_polys(ps: &[UPoly<Q>]) -> Self {
        let mut factors: Vec<UPoly<Q>> = Vec::new();
        for p in ps {
            if p.deg() < 1 {
                continue;
            }
            for (phi, _) in factor_q(p).factors {
                if !factors.contains(&phi) {
                    factors.push(phi);
                }
            }
        }
        Self::from_irreducibles(factors)
    }
    /// From distinct irreducible primitive factors.
    pub fn from_irreducibles(factors: Vec<UPoly<Q>>) -> Self {
        let mut factors: Vec<UPoly<Q>> = factors.iter().map(primitive_q).collect();
        factors.sort_by(canonical_cmp);
        factors.dedup();
        let mut members = Vec::new();
        for phi in &factors {
            members.extend(AlgebraicNumber::conjugates(phi));
        }
        members.sort_by(|a, b| a.report_cmp(b));
        AlgebraicSet { factors, members }
    }
    pub fn from_rationals(vs: &[Q]) -> Self {
        let ps: Vec<UPoly<Q>> = vs.iter().map(UPoly::linear_root).collect();
        Self::from_polys(&ps)
    }
    pub fn defining(&self) -> UPoly<Q> {
        let mut acc = UPoly::one(&());
        for f in &self.factors {
            acc = &acc * f;
        }
        acc
    }
    pub fn len(&self) -> usize {
        self.members.len()
    }
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
    pub fn union(&self, o: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend(o.factors.iter().cloned());
        Self::from_irreducibles(f)
    }
    pub fn minus(&self, o: &Self) -> Self {
        Self::from_irreducibles(self.factors.iter().filter(|f| !o.factors.contains(f)).cloned().collect())
    }
    pub fn intersect(&self, o: &Self) -> Self {
        Self::from_irreducibles(self.factors.iter().filter(|f| o.factors.contains(f)).cloned().collect())
    }
    /// Whether the roots of the irreducible `phi` belong to the set.
    pub fn contains_factor(&self, phi: &UPoly<Q>) -> bool {
        self.factors.contains(&primitive_q(phi))
    }
    pub fn is_subset(&self, o: &Self) -> bool {
        self.factors.iter().all(|f| o.factors.contains(f))
    }
    pub fn contains_rational(&self, v: &Q) -> bool {
        self.factors.iter().any(|f| f.eval(v).is_zero())
    }
    /// The rational members, ascending.
    pub fn rationals(&self) -> Vec<Q> {
        let mut v: Vec<Q> = self.members.iter().filter_map(|m| m.as_rational()).collect();
        v.sort();
        v
    }
    pub fn render(&self) -> String {
        let items: Vec<String> = self.members.iter().map(|m| m.render()).collect();
        format!("{{{}}}", items.join(", "))
    }
}

impl PartialEq for AlgebraicSet {
    fn eq(&self, o: &Self) -> bool {
        self.factors == o.factors
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::{q_frac, q_int};
    use super::*;

    fn qp(v: &[i64]) -> UPoly<Q> {
        UPoly::from_i64s(v, &())
    }

    #[test]
    fn sqrt_two_real_roots() {
        let roots = isolate_roots(&qp(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| r.is_real()));
        let (a, _) = roots[0].rect.mid_f64();
        let (b, _) = roots[1].rect.mid_f64();
        assert!((a + std::f64::consts::SQRT_2).abs() < 1e-6 && (b - std::f64::consts::SQRT_2).abs() < 1e-6);
        // Certified sign change inside each interval.
        for r in &roots {
            let p = qp(&[-2, 0, 1]);
            assert!(p.eval(&r.rect.re_lo) * p.eval(&r.rect.re_hi) < qzero());
        }
    }

    #[test]
    fn imaginary_unit_pair() {
        let roots = isolate_roots(&qp(&[1, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots.iter().all(|r| !r.is_real()));
        let (_, i0) = roots[0].rect.mid_f64();
        let (_, i1) = roots[1].rect.mid_f64();
        assert!((i0 + 1.0).abs() < 1e-6 && (i1 - 1.0).abs() < 1e-6);
        assert!(roots[0].rect.im_hi < qzero() && roots[1].rect.im_lo > qzero());
    }

    #[test]
    fn rational_fast_path() {
        let roots = isolate_roots(&UPoly::new(vec![q_frac(-3, 2), q_int(1)], ())).unwrap();
        assert_eq!(roots[0].as_rational(), Some(q_frac(3, 2)));
    }

    #[test]
    fn non_squarefree_rejected() {
        assert_eq!(isolate_roots(&qp(&[1, 2, 1])).unwrap_err(), Error::NotSquarefree);
    }

    #[test]
    fn equality_across_precisions() {
        let a = &AlgebraicNumber::conjugates(&qp(&[-2, 0, 0, 1]))[0];
        let fine = AlgebraicNumber { rect: a.refined(80), ..a.clone() };
        assert_eq!(a, &fine);
        let others = AlgebraicNumber::conjugates(&qp(&[-2, 0, 0, 1]));
        assert_ne!(&others[1], &fine);
    }

    #[test]
    fn clustered_roots_are_separated() {
        // (x - 1)(x - 1 - 1e-12) style cluster via x^2 - (2+e)x + (1+e)
        let e = q_frac(1, 1_000_000_000_000);
        let p = &UPoly::linear_root(&q_int(1)) * &UPoly::linear_root(&(q_int(1) + e));
        let rs = isolate_squarefree(&p, 0);
        assert_eq!(rs.len(), 2);
        assert!(!rs[0].intersects(&rs[1]));
    }

    #[test]
    fn algebraic_set_union_and_membership() {
        let a = AlgebraicSet::from_rationals(&[q_int(-2), q_int(2)]);
        let b = AlgebraicSet::from_polys(&[qp(&[-4, 0, 1])]);
        assert_eq!(a, b);
        let c = a.union(&AlgebraicSet::from_polys(&[qp(&[1, 0, 1])]));
        assert_eq!(c.len(), 4);
        assert!(c.contains_rational(&q_int(2)));
        assert!(a.is_subset(&c));
    }
}
