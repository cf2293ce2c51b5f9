//! Î(g,h) = max over μ of I(g, h − μ; 𝒜), its deficiency set α, the
//! weighted deficiency β and the legacy rank ρ(f).

use serde::Serialize;

use crate::arith::factor::factor_q;
use crate::arith::residue::{shear_i, y_monic_shear};
use crate::arith::resultant::{resultant_param, t_content};
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, UPoly, Q};
use crate::error::Result;

use super::points::split_totals;
use super::Mult;

/// Î(g, h) with its deficiency data.
#[derive(Clone, Debug, Serialize)]
pub struct IHat {
    /// max over μ of I(g, h − μ; 𝒜), attained at every μ outside `alpha`.
    pub value: Mult,
    /// Parameters λ with I(g, h − λ; 𝒜) < Î.
    #[serde(skip)]
    pub alpha: AlgebraicSet,
    /// Per irreducible factor of α's defining polynomial: the value
    /// I(g, h − λ; 𝒜) at its roots.
    #[serde(skip)]
    pub deficient: Vec<(UPoly<Q>, usize)>,
    /// Σ over λ ∈ α, λ ≠ 0, of (Î − I(g, h − λ; 𝒜)).
    pub beta: Mult,
}

impl IHat {
    fn zero() -> IHat {
        IHat { value: Mult::Finite(0), alpha: AlgebraicSet::empty(), deficient: vec![], beta: Mult::Finite(0) }
    }
}

/// Largest i with φ ∤ (coefficient of X^i as a polynomial in T).
fn value_at(r: &BPoly<Q>, phi: &UPoly<Q>) -> usize {
    let top = r.deg_x().max(0) as usize;
    (0..=top).rev().find(|&i| !phi.divides(&r.column(i))).unwrap_or(0)
}

/// Î(g, h) together with α and β.
///
/// With g sheared to have constant leading Y-coefficient,
/// R(X, T) = Res_Y(g, h − T) satisfies I(g, h − μ; 𝒜) = deg_X R(X, μ), so Î
/// is deg_X R, α is the zero set of its leading X-coefficient, and Î = ∞
/// exactly when R has a nontrivial T-content.  A constant h is compared only
/// against parameters μ ≠ h, giving Î = 0.
pub fn i_hat(g: &BPoly<Q>, h: &BPoly<Q>) -> Result<IHat> {
    if g.is_constant() || h.is_constant() {
        return Ok(IHat::zero());
    }
    let l = y_monic_shear(&[g]);
    let r = resultant_param(&shear_i(g, l), &shear_i(h, l), &BPoly::one(&()));
    let content = t_content(&r);
    if content.deg() > 0 {
        return Ok(IHat {
            value: Mult::Infinite,
            alpha: AlgebraicSet::empty(),
            deficient: vec![],
            beta: Mult::Infinite,
        });
    }
    let value = r.deg_x().max(0) as usize;
    let top = r.column(value);
    let mut deficient = Vec::new();
    let mut beta = 0usize;
    if top.deg() > 0 {
        for (phi, _) in factor_q(&top).factors {
            let v = value_at(&r, &phi);
            let is_zero_root = phi.deg() == 1 && phi.c[0] == Q::from_integer(0.into());
            if !is_zero_root {
                beta += phi.deg() as usize * (value - v);
            }
            deficient.push((phi, v));
        }
    }
    let alpha = AlgebraicSet::from_irreducibles(deficient.iter().map(|(p, _)| p.clone()).collect());
    Ok(IHat { value: Mult::Finite(value), alpha, deficient, beta: Mult::Finite(beta) })
}

/// β(g, h; 𝒜).
pub fn beta(g: &BPoly<Q>, h: &BPoly<Q>) -> Result<Mult> {
    Ok(i_hat(g, h)?.beta)
}

/// ρ(f) = I(f_X, f_Y; 𝒜∖f) + β(f_Y, f), evaluated literally (∞ propagates).
pub fn legacy_rank_rho(f: &BPoly<Q>) -> Result<Mult> {
    let fx = f.dx();
    let fy = f.dy();
    let g = fx.gcd(&fy);
    let fr = f.radical()?;
    let off = if !g.is_constant() && !g.radical()?.divides(&fr) {
        // A common component off f.
        Mult::Infinite
    } else {
        // Points off f avoid the common curve, so only the cofactors matter.
        let a = fx.div_exact(&g).expect("gcd divides");
        let b = fy.div_exact(&g).expect("gcd divides");
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Mult::Infinite,
            (true, false) | (false, true) => {
                let other = if a.is_zero() { &b } else { &a };
                if other.is_constant() || other.radical()?.divides(&fr) {
                    Mult::Finite(0)
                } else {
                    Mult::Infinite
                }
            }
            (false, false) => Mult::Finite(split_totals(&a, &b, f)?.1),
        }
    };
    Ok(off + beta(&fy, f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn ihat_examples() {
        let r = i_hat(&bq(&[(0, 2, 1), (3, 0, -1)]), &bq(&[(0, 1, 2)])).unwrap();
        assert_eq!((r.value, r.alpha.len(), r.beta), (Mult::Finite(3), 0, Mult::Finite(0)));
        let r = i_hat(&bq(&[(0, 2, 1)]), &bq(&[(0, 1, 2)])).unwrap();
        assert_eq!(r.value, Mult::Infinite);
        let r = i_hat(&bq(&[(1, 1, 1), (0, 0, -1)]), &bq(&[(1, 0, 1)])).unwrap();
        assert_eq!(r.value, Mult::Finite(1));
        assert_eq!(r.alpha.rationals(), vec![q_int(0)]);
        assert_eq!(r.beta, Mult::Finite(0));
        assert_eq!(r.deficient[0].1, 0);
    }

    #[test]
    fn deficiency_away_from_zero() {
        // g = Y − X^2, h = XY: I(g, h − μ) = deg(X^3 − μ) = 3 for every μ;
        // g = XY − 1, h = X + 1: X + 1 − μ meets the hyperbola once unless
        // μ = 1, so α = {1} and β = 1.
        let r = i_hat(&bq(&[(0, 1, 1), (2, 0, -1)]), &bq(&[(1, 1, 1)])).unwrap();
        assert_eq!((r.value, r.beta), (Mult::Finite(3), Mult::Finite(0)));
        let r = i_hat(&bq(&[(1, 1, 1), (0, 0, -1)]), &bq(&[(1, 0, 1), (0, 0, 1)])).unwrap();
        assert_eq!(r.value, Mult::Finite(1));
        assert_eq!(r.alpha.rationals(), vec![q_int(1)]);
        assert_eq!(r.beta, Mult::Finite(1));
    }

    #[test]
    fn legacy_rank() {
        assert_eq!(legacy_rank_rho(&bq(&[(0, 2, 1), (3, 0, -1)])).unwrap(), Mult::Finite(0));
        assert_eq!(legacy_rank_rho(&bq(&[(0, 2, 1)])).unwrap(), Mult::Infinite);
        // Literal evaluation for the hyperbola: β(X, XY − 1) involves
        // Î(X, XY − 1 − μ), infinite at μ = −1 where X divides the member.
        assert_eq!(legacy_rank_rho(&bq(&[(1, 1, 1), (0, 0, -1)])).unwrap(), Mult::Infinite);
    }
}
