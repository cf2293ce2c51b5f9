//! Pencils of binary forms f, w of one degree d.  Every fiber is a product
//! of d lines through the base point (0, 0), so the whole computation runs
//! on the dehomogenized univariate polynomials u_c(t) = f(t, 1) − c·w(t, 1),
//! the line Y = 0 appearing with multiplicity d − deg u_c.

use crate::arith::factor::{factor_q, squarefree_q};
use crate::arith::modular::primitive_q;
use crate::arith::nf::{Nf, NumberField};
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, Field, UPoly, Q};
use crate::error::Result;

use super::fiber::{FiberValue, Layer, RefinedFiber};
use super::sets::{assemble_primset, MultMember, Multset, PrimMember, Primset, Singset};
use super::Pencil;

/// f and w are nonconstant binary forms of the same degree.
pub fn is_binary_pencil(f: &BPoly<Q>, w: &BPoly<Q>) -> bool {
    !w.is_constant() && f.is_homogeneous() && w.is_homogeneous() && f.total_deg() == w.total_deg()
}

pub(crate) fn generic_count(p: &Pencil) -> usize {
    p.n
}

/// The Jacobian form K with f·w_X − w·f_X = Y·K and f·w_Y − w·f_Y = −X·K.
/// A line of multiplicity e in some fiber divides K exactly e − 1 times.
fn jacobian(p: &Pencil) -> BPoly<Q> {
    let g1 = &(&p.f * &p.w.dx()) - &(&p.w * &p.f.dx());
    g1.div_exact(&BPoly::y(&())).expect("Euler relation")
}

/// The parameter orbits carried by the lines of a squarefree factor s(t) of
/// the dehomogenized Jacobian.
fn layer_values(p: &Pencil, s: &UPoly<Q>) -> Vec<FiberValue> {
    let (fu, wu) = (p.f.dehomogenize_y(), p.w.dehomogenize_y());
    let (rf, rw) = (fu.rem(s), wu.rem(s));
    if rw.is_zero() {
        return vec![FiberValue::Infinity];
    }
    // One rational value along the whole layer.
    let c = rf.lc() / rw.lc();
    if rf.is_zero() || (&rf - &rw.scale(&c)).is_zero() {
        let c = if rf.is_zero() { Q::from_integer(0.into()) } else { c };
        return vec![FiberValue::rational(&c)];
    }
    let mut out = Vec::new();
    for (phi, _) in factor_q(s).factors {
        let k = NumberField::new(&phi);
        let t = Nf::generator(&k);
        let fv = fu.map(&k, |c| Nf::from_q(c, &k)).eval(&t);
        let wv = wu.map(&k, |c| Nf::from_q(c, &k)).eval(&t);
        let v = if wv.is_zero() {
            FiberValue::Infinity
        } else {
            FiberValue::Finite(primitive_q(&fv.times(&wv.inverse().unwrap()).minpoly()))
        };
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Parameter orbits with a multiple line, with the Jacobian part on them.
fn multiple_values(p: &Pencil) -> Vec<(FiberValue, BPoly<Q>)> {
    let k = jacobian(p);
    let mut out: Vec<(FiberValue, BPoly<Q>)> = Vec::new();
    let mut push = |v: FiberValue, part: BPoly<Q>| match out.iter_mut().find(|(u, _)| *u == v) {
        Some((_, acc)) => *acc = &*acc * &part,
        None => out.push((v, part)),
    };
    let ku = k.dehomogenize_y();
    let d = k.total_deg() as usize;
    for (s, e) in squarefree_q(&ku) {
        for v in layer_values(p, &s) {
            // The Jacobian part supported on these lines.
            let vs = match &v {
                FiberValue::Infinity => s.gcd(&p.w.dehomogenize_y()),
                FiberValue::Finite(phi) if phi.deg() == 1 => {
                    let c = v.as_rational().unwrap();
                    s.gcd(&(&p.f.dehomogenize_y() - &p.w.dehomogenize_y().scale(&c)))
                }
                FiberValue::Finite(_) => s.clone(),
            };
            push(v, homogenize(&vs.pow(e), vs.deg() as usize * e as usize));
        }
    }
    // The line Y = 0.
    let ymult = d - ku.deg().max(0) as usize;
    if ymult > 0 {
        let (fd, wd) = (p.f.coeff(p.n, 0), p.w.coeff(p.n, 0));
        let v = if wd.is_zero() { FiberValue::Infinity } else { FiberValue::rational(&(fd / wd)) };
        push(v, BPoly::y(&()).pow(ymult as u32));
    }
    out
}

/// Y^d·s(X/Y).
fn homogenize(s: &UPoly<Q>, d: usize) -> BPoly<Q> {
    let terms: Vec<(usize, usize, Q)> =
        s.c.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(i, a)| (i, d - i, a.clone())).collect();
    BPoly::from_terms(&terms, &())
}

/// Layers of a binary form given by its dehomogenization and degree.
fn form_layers<F: Field>(u: &UPoly<F>, d: usize) -> Vec<Layer> {
    let mut by_e: std::collections::BTreeMap<u32, (usize, usize)> = Default::default();
    for (s, e) in u.squarefree() {
        let k = s.deg() as usize;
        let entry = by_e.entry(e).or_default();
        entry.0 += k;
        entry.1 += k - s.trailing_zeros();
    }
    let ymult = d - u.deg().max(0) as usize;
    if ymult > 0 {
        // The line Y = 0 has Y-degree 1.
        let entry = by_e.entry(ymult as u32).or_default();
        entry.0 += 1;
        entry.1 += 1;
    }
    by_e.into_iter().map(|(e, (count, deg_y))| Layer { multiplicity: e, count, deg_y }).collect()
}

pub(crate) fn refine(p: &Pencil, v: &FiberValue) -> RefinedFiber {
    let (fu, wu) = (p.f.dehomogenize_y(), p.w.dehomogenize_y());
    let layers = match v {
        FiberValue::Infinity => form_layers(&wu, p.n),
        FiberValue::Finite(phi) if phi.deg() == 1 => {
            let c = v.as_rational().unwrap();
            form_layers(&(&fu - &wu.scale(&c)), p.n)
        }
        FiberValue::Finite(phi) => {
            let k = NumberField::new(phi);
            let theta = Nf::generator(&k);
            let fk = fu.map(&k, |c| Nf::from_q(c, &k));
            let wk = wu.map(&k, |c| Nf::from_q(c, &k));
            form_layers(&(&fk - &wk.scale(&theta)), p.n)
        }
    };
    RefinedFiber { value: v.clone(), layers, rational_weighted_count: None }
}

pub(crate) fn multset(p: &Pencil) -> Result<Multset> {
    let mut members = Vec::new();
    let mut infinity = None;
    for (v, part) in multiple_values(p) {
        let m = MultMember { witness: part.radical()?, part, value: v.clone() };
        if v == FiberValue::Infinity {
            infinity = Some(m);
        } else {
            members.push(m);
        }
    }
    let set = AlgebraicSet::from_irreducibles(
        members
            .iter()
            .filter_map(|m| match &m.value {
                FiberValue::Finite(q) => Some(q.clone()),
                FiberValue::Infinity => None,
            })
            .collect(),
    );
    Ok(Multset { set, members, infinity, h_hat: jacobian(p), product_identity: None })
}

pub(crate) fn singset(p: &Pencil) -> Result<Singset> {
    // Away from the base point a fiber is singular exactly on its multiple
    // lines.
    let m = multset(p)?;
    Ok(Singset {
        curve_values: m.set.clone(),
        point_values: AlgebraicSet::empty(),
        set: m.set,
        infinity: m.infinity.is_some(),
        base_points_dropped: 1,
        notes: vec!["the common point (0, 0) of all fibers is a base point".into()],
    })
}

pub(crate) fn primset(p: &Pencil) -> Result<Primset> {
    let mut members = Vec::new();
    for (v, _) in multiple_values(p) {
        let fib = refine(p, &v);
        if let Some(mu) = fib.prim_exponent() {
            members.push(PrimMember { value: v, mu, count: fib.layers[0].count });
        }
    }
    Ok(assemble_primset(members))
}

#[cfg(test)]
mod tests {
    use super::super::normalize;
    use super::*;
    use crate::arith::field::q_int;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn squares_and_products() {
        // f = X², w = Y²: fibers X² − cY²; multiple at 0 and ∞ (μ = 2).
        let p = normalize(&bq(&[(2, 0, 1)]), Some(&bq(&[(0, 2, 1)]))).unwrap();
        assert!(p.binary);
        let pr = primset(&p).unwrap();
        assert_eq!(pr.set.rationals(), vec![q_int(0)]);
        assert!(pr.infinity && pr.uni_infinity);
        assert_eq!(pr.mu_pattern(), vec![2, 2]);
        assert_eq!(pr.members.len(), 2);
        assert_eq!(pr.plus_size(), 2);
        let s = singset(&p).unwrap();
        assert!(s.infinity);
        // f = X³, w = Y³ − X²Y: the fiber at −1... layers at ∞ are Y(Y² − X²).
        let p = normalize(&bq(&[(3, 0, 1)]), Some(&bq(&[(0, 3, 1), (2, 1, -1)]))).unwrap();
        let r = refine(&p, &FiberValue::Infinity);
        assert_eq!(r.exponents(), vec![1, 1, 1]);
        let m = multset(&p).unwrap();
        assert_eq!(m.set.rationals(), vec![q_int(0)]);
    }
}
