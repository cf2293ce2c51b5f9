//! Points at infinity, local branch counts by Newton–Puiseux, and the number
//! of places at infinity.

use std::collections::BTreeMap;

use num::integer::gcd;
use serde::Serialize;

use crate::arith::factor::factor_q;
use crate::arith::nf::{Nf, NumberField};
use crate::arith::nffactor::{embed, split_over};
use crate::arith::{BPoly, Field, UPoly, Q};
use crate::error::{Error, Result};

/// A Galois-conjugate family of points at infinity: (t : 1 : 0) for the
/// roots t of `minpoly`, or the single point (1 : 0 : 0) when `minpoly` is
/// `None`.
#[derive(Clone, Debug)]
pub struct InfinityPoint {
    pub minpoly: Option<UPoly<Q>>,
    pub count: usize,
}

impl InfinityPoint {
    pub fn render(&self) -> String {
        match &self.minpoly {
            None => "(1 : 0 : 0)".into(),
            Some(p) if p.deg() == 1 => format!("({} : 1 : 0)", (-p.c[0].clone() / &p.c[1])),
            Some(p) => format!("(t : 1 : 0) where {} = 0", p.render("t")),
        }
    }
}

/// Points at infinity with their branch counts.
#[derive(Clone, Debug, Serialize)]
pub struct InfinityData {
    /// |𝒱_∞(f)|: the number of distinct points at infinity over Q̄.
    pub v_infinity: usize,
    /// Rendered families with (conjugate count, branches per point).
    pub points: Vec<(String, usize, usize)>,
    /// τ(f): Σ of branch counts over all points at infinity.
    pub tau: usize,
}

/// The distinct points at infinity of f, from the factorization of its
/// degree form f⁺ (a binary form): one family per irreducible factor of
/// f⁺(t, 1), plus (1 : 0 : 0) when Y divides f⁺.
pub fn points_at_infinity(f: &BPoly<Q>) -> Result<Vec<InfinityPoint>> {
    if f.is_constant() {
        return Err(Error::Precondition("points at infinity of a constant".into()));
    }
    let form = f.degree_form();
    let d = f.total_deg();
    let u = form.dehomogenize_y();
    let mut out = Vec::new();
    if u.deg() > 0 {
        for (phi, _) in factor_q(&u).factors {
            out.push(InfinityPoint { count: phi.deg() as usize, minpoly: Some(phi) });
        }
    }
    if u.deg() < d {
        out.push(InfinityPoint { minpoly: None, count: 1 });
    }
    Ok(out)
}

fn homogeneous_chart(f: &BPoly<Q>, at_y: bool) -> BPoly<Q> {
    // Chart Y = 1: F(x, 1, z); chart X = 1: F(1, y, z).  Output variables are
    // (remaining affine coordinate, z).
    let d = f.total_deg() as usize;
    let terms: Vec<(usize, usize, Q)> = f
        .terms()
        .into_iter()
        .map(|((i, j), c)| if at_y { (i, d - i - j, c) } else { (j, d - i - j, c) })
        .collect();
    BPoly::from_terms(&terms, &())
}

/// Number of branches of the projective closure of f at one point of the
/// given family (all conjugates have the same count).
pub fn branch_count_at_infinity(f: &BPoly<Q>, p: &InfinityPoint) -> Result<usize> {
    let bound = depth_bound(f);
    match &p.minpoly {
        None => {
            let g = homogeneous_chart(f, false);
            let k = NumberField::rationals();
            branches_at_origin(&g.map(&k, |c| Nf::from_q(c, &k)), bound)
        }
        Some(phi) => {
            let g = homogeneous_chart(f, true);
            let k = NumberField::new(phi);
            let t = Nf::generator(&k);
            let gk: BPoly<Nf> = g.map(&k, |c| Nf::from_q(c, &k)).translate(&t, &Nf::zero(&k));
            branches_at_origin(&gk, bound)
        }
    }
}

fn depth_bound(f: &BPoly<Q>) -> usize {
    let d = f.total_deg().max(1) as usize;
    2 * d * d
}

/// Branches of f at an affine point with coordinates in a number field.
pub fn branch_count(f: &BPoly<Q>, u: &Nf, v: &Nf) -> Result<usize> {
    let k = u.k.clone();
    let g: BPoly<Nf> = f.map(&k, |c| Nf::from_q(c, &k)).translate(u, v);
    branches_at_origin(&g, depth_bound(f))
}

/// τ(f): the number of places of f at infinity.
pub fn tau_places_at_infinity(f: &BPoly<Q>) -> Result<usize> {
    Ok(infinity_data(f)?.tau)
}

/// 𝒱_∞(f) with branch counts.
pub fn infinity_data(f: &BPoly<Q>) -> Result<InfinityData> {
    let pts = points_at_infinity(f)?;
    let mut tau = 0;
    let mut points = Vec::new();
    for p in &pts {
        let b = branch_count_at_infinity(f, p)?;
        tau += b * p.count;
        points.push((p.render(), p.count, b));
    }
    Ok(InfinityData { v_infinity: pts.iter().map(|p| p.count).sum(), points, tau })
}

/// Number of local analytic branches at the origin of a curve over a number
/// field, counted over the algebraic closure.
///
/// Newton–Puiseux: each edge of the Newton polygon with slope a/b gives a
/// characteristic polynomial φ(Z) whose simple roots each carry one branch.
/// A root ξ of multiplicity r > 1 is resolved by the substitution
/// x = ξ^v·x₁^b, y = x₁^a·(ξ^u + y₁) with u·b − v·a = 1 over K(ξ) and
/// recursion; conjugate roots of one irreducible factor over K contribute
/// equally.  `depth` bounds the recursion.
pub fn branches_at_origin(g: &BPoly<Nf>, depth: usize) -> Result<usize> {
    branches_rec(g, depth, depth)
}

fn branches_rec(g: &BPoly<Nf>, depth: usize, bound: usize) -> Result<usize> {
    if g.is_zero() {
        return Err(Error::Precondition("branches of the zero polynomial".into()));
    }
    if !g.coeff(0, 0).is_zero() {
        return Ok(0);
    }
    let mut count = 0;
    let mut g = g.clone();
    // x | g
    let tx = g.rows.iter().filter(|r| !r.is_zero()).map(|r| r.trailing_zeros()).min().unwrap_or(0);
    if tx > 0 {
        count += 1;
        let rows = g.rows.iter().map(|r| UPoly::new(r.c.iter().skip(tx.min(r.c.len())).cloned().collect(), r.ctx.clone())).collect();
        g = BPoly::new(rows, g.ctx.clone());
    }
    // y | g
    let ty = g.rows.iter().take_while(|r| r.is_zero()).count();
    if ty > 0 {
        count += 1;
        g = BPoly::new(g.rows[ty..].to_vec(), g.ctx.clone());
    }
    if !g.coeff(0, 0).is_zero() {
        return Ok(count);
    }
    if depth == 0 {
        return Err(Error::DepthExceeded(bound));
    }
    let terms = g.terms();
    let i0 = g.rows[0].trailing_zeros();
    let n0 = g.rows.iter().position(|r| !r.coeff(0).is_zero()).expect("x does not divide g");
    let mut p = (0usize, n0);
    while p.1 > 0 {
        // Next hull vertex: minimal slope (Δi/Δj), farthest on ties.
        let mut best: Option<(usize, usize)> = None;
        for &(i, j) in terms.keys() {
            if j >= p.1 {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => {
                    let lhs = (i - p.0) as i128 * (p.1 - bj) as i128;
                    let rhs = (bi - p.0) as i128 * (p.1 - j) as i128;
                    lhs < rhs || (lhs == rhs && j < bj)
                }
            };
            if better {
                best = Some((i, j));
            }
        }
        let q = best.expect("hull reaches the X-axis");
        count += edge_branches(&g, &terms, p, q, depth, bound)?;
        p = q;
    }
    debug_assert_eq!(p.0, i0);
    Ok(count)
}

fn edge_branches(
    g: &BPoly<Nf>,
    terms: &BTreeMap<(usize, usize), Nf>,
    p: (usize, usize),
    q: (usize, usize),
    depth: usize,
    bound: usize,
) -> Result<usize> {
    let k = g.ctx.clone();
    let di = q.0 - p.0;
    let dj = p.1 - q.1;
    let e = gcd(di, dj);
    let (a, b) = (di / e, dj / e);
    let level = b * p.0 + a * p.1;
    let mut phi = vec![Nf::zero(&k); e + 1];
    for (&(i, j), c) in terms {
        if b * i + a * j == level {
            phi[(j - q.1) / b] = c.clone();
        }
    }
    let phi = UPoly::new(phi, k.clone());
    let mut count = 0;
    for (layer, r) in phi.squarefree() {
        for ext in split_over(&layer) {
            if r == 1 {
                count += ext.degree;
            } else {
                let g1 = toric_transform(terms, a, b, level, &ext.theta, &ext.root);
                count += ext.degree * branches_rec(&g1, depth - 1, bound)?;
            }
        }
    }
    Ok(count)
}

/// g(ξ^v x^b, x^a (ξ^u + y)) / x^level over L, for u·b − v·a = 1.
fn toric_transform(
    terms: &BTreeMap<(usize, usize), Nf>,
    a: usize,
    b: usize,
    level: usize,
    theta: &Nf,
    xi: &Nf,
) -> BPoly<Nf> {
    let l = theta.k.clone();
    let u = (1..=a.max(1)).find(|&u| (u * b) % a.max(1) == 1 % a.max(1)).unwrap();
    let v = (u * b - 1) / a;
    let pw = |e: usize| -> Nf {
        let mut acc = Nf::one(&l);
        for _ in 0..e {
            acc = acc.times(xi);
        }
        acc
    };
    let base = BPoly::from_terms(&[(0, 0, pw(u)), (0, 1, Nf::one(&l))], &l);
    let mut powers = vec![BPoly::one(&l)];
    let maxj = terms.keys().map(|&(_, j)| j).max().unwrap_or(0);
    for j in 1..=maxj {
        let next = &powers[j - 1] * &base;
        powers.push(next);
    }
    let mut acc = BPoly::zero(&l);
    for (&(i, j), c) in terms {
        let c = embed(c, theta).times(&pw(v * i));
        let shift = b * i + a * j - level;
        let mono = BPoly::monomial(c, shift, 0);
        acc = &acc + &(&mono * &powers[j]);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    fn at_origin(f: &BPoly<Q>) -> usize {
        let k = NumberField::rationals();
        branches_at_origin(&f.map(&k, |c| Nf::from_q(c, &k)), 50).unwrap()
    }

    #[test]
    fn local_branches() {
        assert_eq!(at_origin(&bq(&[(0, 2, 1), (3, 0, -1)])), 1);
        assert_eq!(at_origin(&bq(&[(0, 2, 1), (2, 0, -1), (3, 0, -1)])), 2);
        // Tacnode y^2 = x^4 and its perturbation (y − x^2)^2 = x^5.
        assert_eq!(at_origin(&bq(&[(0, 2, 1), (4, 0, -1)])), 2);
        assert_eq!(at_origin(&bq(&[(0, 2, 1), (2, 1, -2), (4, 0, 1), (5, 0, -1)])), 1);
        // (y − x^2)^2 = x^6: two smooth branches y = x^2 ± x^3.
        assert_eq!(at_origin(&bq(&[(0, 2, 1), (2, 1, -2), (4, 0, 1), (6, 0, -1)])), 2);
        // Ordinary triple point with irrational tangents: y^3 − 2x^3 + x^4.
        assert_eq!(at_origin(&bq(&[(0, 3, 1), (3, 0, -2), (4, 0, 1)])), 3);
        // x·y·(x + y) + x^4 and a smooth point.
        assert_eq!(at_origin(&bq(&[(2, 1, 1), (1, 2, 1), (4, 0, 1)])), 3);
        assert_eq!(at_origin(&bq(&[(1, 0, 1), (0, 2, 1)])), 1);
        assert_eq!(at_origin(&bq(&[(0, 0, 1), (1, 1, 1)])), 0);
    }

    #[test]
    fn infinity() {
        let hyp = bq(&[(1, 1, 1), (0, 0, -1)]);
        assert_eq!(points_at_infinity(&hyp).unwrap().len(), 2);
        assert_eq!(tau_places_at_infinity(&hyp).unwrap(), 2);
        let cubic = bq(&[(0, 3, 1), (0, 1, -3)]);
        let pts = points_at_infinity(&cubic).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(pts[0].minpoly.is_none());
        // X(X − 1)Y + X − 2: degree form X^2·Y.
        let ex1 = bq(&[(2, 1, 1), (1, 1, -1), (1, 0, 1), (0, 0, -2)]);
        assert_eq!(points_at_infinity(&ex1).unwrap().len(), 2);
        assert_eq!(tau_places_at_infinity(&ex1).unwrap(), 3);
        // (X − a1 Y)(X − a2 Y) + 1 with a = 0, 1.
        let ex5 = bq(&[(2, 0, 1), (1, 1, -1), (0, 0, 1)]);
        assert_eq!(tau_places_at_infinity(&ex5).unwrap(), 2);
    }
}
