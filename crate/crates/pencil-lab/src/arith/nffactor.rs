//! Factorization over number fields by the norm method, and primitive
//! elements for simple extensions K(ξ) of a number field K.

use std::sync::Arc;

use super::bpoly::BPoly;
use super::factor::{factor_q, squarefree_q};
use super::field::{Field, Q};
use super::modular::gcd_q;
use super::nf::{Nf, NumberField};
use super::resultant::resultant_y_q;
use super::upoly::UPoly;

/// K(ξ) for a root ξ of one irreducible factor ψ over K, flattened to a
/// single number field L = Q(η).
#[derive(Clone, Debug)]
pub struct Extension {
    pub field: Arc<NumberField>,
    /// Image of K's generator in L.
    pub theta: Nf,
    /// The adjoined root ξ ∈ L.
    pub root: Nf,
    /// Degree of ψ over K.
    pub degree: usize,
    /// The irreducible factor ψ over K (monic).
    pub factor: UPoly<Nf>,
}

/// Map an element of K into L given the image of K's generator.
pub fn embed(a: &Nf, theta: &Nf) -> Nf {
    let mut acc = Nf::zero(&theta.k);
    for c in a.p.c.iter().rev() {
        acc = acc.times(theta).plus(&Nf::from_q(c, &theta.k));
    }
    acc
}

pub fn embed_poly(p: &UPoly<Nf>, theta: &Nf) -> UPoly<Nf> {
    UPoly::new(p.c.iter().map(|a| embed(a, theta)).collect(), theta.k.clone())
}

pub fn embed_bpoly(p: &BPoly<Nf>, theta: &Nf) -> BPoly<Nf> {
    BPoly::new(p.rows.iter().map(|r| embed_poly(r, theta)).collect(), theta.k.clone())
}

/// Φ(T − k·s) with θ replaced by the variable s, as a bivariate polynomial
/// over Q with X = T and Y = s.
fn shifted_lift(phi: &UPoly<Nf>, k: i64) -> BPoly<Q> {
    let t = BPoly::<Q>::x(&());
    let s = BPoly::<Q>::y(&());
    let lin = &t - &s.scale(&Q::from_integer(k.into()));
    let mut acc = BPoly::zero(&());
    for a in phi.c.iter().rev() {
        acc = &acc * &lin;
        acc = &acc + &BPoly::from_y(&a.p);
    }
    acc
}

/// Norm N(T) = Res_s(m(s), Φ(T − k s)) together with the shift k used, with
/// k chosen so that the norm is squarefree.
pub fn squarefree_norm(phi: &UPoly<Nf>) -> (UPoly<Q>, i64) {
    let k_field = phi.ctx.clone();
    let m = BPoly::from_y(&k_field.modulus);
    for k in [0i64, 1, -1, 2, -2, 3, -3, 4, 5, 7, 11, 13] {
        let h = shifted_lift(phi, k);
        let n = resultant_y_q(&m, &h);
        if gcd_q(&n, &n.derivative()).deg() == 0 {
            return (n, k);
        }
    }
    panic!("no squarefree norm found for a squarefree polynomial")
}

/// Irreducible factors (monic) of a squarefree polynomial over a number field,
/// each with its flattened extension field.
pub fn split_over(phi: &UPoly<Nf>) -> Vec<Extension> {
    let k_field = phi.ctx.clone();
    let phi = phi.monic();
    if phi.deg() == 1 {
        let root = phi.c[0].negate();
        return vec![Extension {
            field: k_field.clone(),
            theta: Nf::generator(&k_field),
            root,
            degree: 1,
            factor: phi,
        }];
    }
    let (norm, k) = squarefree_norm(&phi);
    let kq = Q::from_integer(k.into());
    let mut out = Vec::new();
    for (ni, _) in factor_q(&norm).factors {
        // ψ = gcd_K(Φ(T), N_i(T + kθ))
        let theta = Nf::generator(&k_field);
        let shift = theta.times(&Nf::from_q(&kq, &k_field));
        let ni_k: UPoly<Nf> = ni.map(&k_field, |c| Nf::from_q(c, &k_field)).shift(&shift);
        let psi = phi.gcd(&ni_k);
        if psi.deg() <= 0 {
            continue;
        }
        let degree = psi.deg() as usize;
        // L = Q(η), η a root of N_i.  Recover θ in L from the linear gcd of
        // m(s) and Φ_s(η − k s) over L.
        let l = NumberField::new(&ni);
        let eta = Nf::generator(&l);
        let m_l: UPoly<Nf> = k_field.modulus.map(&l, |c| Nf::from_q(c, &l));
        let s = UPoly::<Nf>::x(&l);
        let lin = &UPoly::constant(eta.clone()) - &s.scale(&Nf::from_q(&kq, &l));
        let mut p_s = UPoly::zero(&l);
        for a in phi.c.iter().rev() {
            p_s = &p_s * &lin;
            p_s = &p_s + &a.p.map(&l, |c| Nf::from_q(c, &l));
        }
        let g = m_l.gcd(&p_s);
        assert_eq!(g.deg(), 1, "norm method: expected a linear gcd");
        let theta_l = g.c[0].negate();
        let root = eta.minus(&theta_l.times(&Nf::from_q(&kq, &l)));
        out.push(Extension { field: l, theta: theta_l, root, degree, factor: psi });
    }
    out
}

/// Irreducible factorization over K of an arbitrary nonzero polynomial:
/// (monic irreducible factor, multiplicity).
pub fn factor_over(phi: &UPoly<Nf>) -> Vec<(UPoly<Nf>, u32)> {
    let mut out = Vec::new();
    for (sf, m) in phi.squarefree() {
        for e in split_over(&sf) {
            out.push((e.factor, m));
        }
    }
    out
}

/// Number of distinct roots in Q̄ of a polynomial over Q.
pub fn distinct_root_count(p: &UPoly<Q>) -> usize {
    squarefree_q(p).iter().map(|(g, _)| g.deg() as usize).sum()
}

#[cfg(test)]
mod tests {
    use super::super::field::q_int;
    use super::*;

    fn field(v: &[i64]) -> Arc<NumberField> {
        NumberField::new(&UPoly::from_i64s(v, &()))
    }

    fn nfp(k: &Arc<NumberField>, coeffs: &[Nf]) -> UPoly<Nf> {
        UPoly::new(coeffs.to_vec(), k.clone())
    }

    #[test]
    fn x2_minus_2_splits_over_sqrt2() {
        let k = field(&[-2, 0, 1]);
        let c = |v: i64| Nf::from_q(&q_int(v), &k);
        let phi = nfp(&k, &[c(-2), c(0), c(1)]);
        let f = factor_over(&phi);
        assert_eq!(f.len(), 2);
        assert!(f.iter().all(|(g, m)| g.deg() == 1 && *m == 1));
    }

    #[test]
    fn x4_plus_1_over_sqrt2_and_extension() {
        // x^4 + 1 = (x^2 + √2 x + 1)(x^2 − √2 x + 1) over Q(√2).
        let k = field(&[-2, 0, 1]);
        let c = |v: i64| Nf::from_q(&q_int(v), &k);
        let phi = nfp(&k, &[c(1), c(0), c(0), c(0), c(1)]);
        let exts = split_over(&phi);
        assert_eq!(exts.len(), 2);
        for e in &exts {
            assert_eq!(e.degree, 2);
            assert_eq!(e.field.degree(), 4);
            // θ² = 2 and ξ⁴ = −1 in L.
            assert_eq!(e.theta.times(&e.theta), Nf::from_q(&q_int(2), &e.field));
            assert_eq!(e.root.pow_u(4), Nf::from_q(&q_int(-1), &e.field));
            // ξ is a root of the K-factor mapped into L.
            let psi_l = embed_poly(&e.factor, &e.theta);
            assert!(psi_l.eval(&e.root).is_zero());
        }
    }

    #[test]
    fn rational_base_field() {
        let k = NumberField::rationals();
        let c = |v: i64| Nf::from_q(&q_int(v), &k);
        let phi = nfp(&k, &[c(-2), c(0), c(0), c(1)]);
        let exts = split_over(&phi);
        assert_eq!(exts.len(), 1);
        assert_eq!(exts[0].field.degree(), 3);
        assert_eq!(exts[0].root.pow_u(3), Nf::from_q(&q_int(2), &exts[0].field));
    }
}
