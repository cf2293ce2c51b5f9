//! Constant residues: the value of f along an irreducible curve p = 0 when
//! f is constant there.

use super::bpoly::BPoly;
use super::factor::factor_q;
use super::field::{Field, Q};
use super::resultant::{resultant_param, t_content};
use super::roots::AlgebraicSet;
use super::upoly::UPoly;
use crate::error::{Error, Result};

/// Smallest λ ≥ 0 such that every polynomial's degree form is nonzero at
/// (λ, 1); after the shear X := X + λY each input has a constant leading
/// Y-coefficient and Y-degree equal to its total degree.
pub fn y_monic_shear<F: Field>(polys: &[&BPoly<F>]) -> i64 {
    let ctx = polys[0].ctx.clone();
    let one = F::one(&ctx);
    (0i64..)
        .find(|&l| {
            let lf = F::from_i64(&ctx, l);
            polys.iter().all(|p| p.is_zero() || !p.degree_form().eval(&lf, &one).is_zero())
        })
        .unwrap()
}

pub fn shear_i<F: Field>(f: &BPoly<F>, lambda: i64) -> BPoly<F> {
    if lambda == 0 {
        return f.clone();
    }
    f.shear(&F::from_i64(&f.ctx, lambda))
}

/// Value of f along p = 0.
#[derive(Clone, Debug, PartialEq)]
pub enum Residue {
    /// f is constant on p; the constant has this minimal polynomial.  When p
    /// is irreducible over Q but splits over Q̄, the conjugate components
    /// carry the conjugate values listed in `values`.
    Constant { minpoly: UPoly<Q>, values: AlgebraicSet },
    NotConstant,
}

/// T-content of Res_Y(p, f − T) after a normalizing shear: the product of
/// the minimal polynomials of the constant values of f along components of
/// p, with multiplicity.
pub fn residue_content(f: &BPoly<Q>, p: &BPoly<Q>) -> UPoly<Q> {
    if p.is_constant() {
        return UPoly::one(&());
    }
    let l = y_monic_shear(&[p]);
    let ps = shear_i(p, l);
    let fs = shear_i(f, l);
    let r = resultant_param(&ps, &fs, &BPoly::one(&()));
    t_content(&r)
}

/// The constant κ with f ≡ κ modulo p, if there is one.
pub fn residue_constant(f: &BPoly<Q>, p: &BPoly<Q>) -> Result<Residue> {
    if p.is_constant() {
        return Err(Error::Precondition("p must be nonconstant".into()));
    }
    if crate::absfactor::rational_factor_count(p)? != 1 {
        return Err(Error::Reducible);
    }
    let c = residue_content(f, p);
    if c.deg() <= 0 {
        return Ok(Residue::NotConstant);
    }
    let fac = factor_q(&c);
    if fac.factors.len() != 1 {
        return Err(Error::Internal("residue content of an irreducible curve has several factors".into()));
    }
    let phi = fac.factors[0].0.clone();
    Ok(Residue::Constant { values: AlgebraicSet::from_irreducibles(vec![phi.clone()]), minpoly: phi })
}

#[cfg(test)]
mod tests {
    use super::super::field::q_int;
    use super::*;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    fn value(r: Residue) -> Option<Vec<Q>> {
        match r {
            Residue::Constant { values, .. } => Some(values.rationals()),
            Residue::NotConstant => None,
        }
    }

    #[test]
    fn cubic_on_line() {
        let f = bq(&[(0, 3, 1), (0, 1, -3)]);
        let p = bq(&[(0, 1, 1), (0, 0, -1)]);
        assert_eq!(value(residue_constant(&f, &p).unwrap()), Some(vec![q_int(-2)]));
    }

    #[test]
    fn not_constant() {
        let f = bq(&[(1, 0, 1)]);
        let p = bq(&[(0, 1, 1)]);
        assert_eq!(residue_constant(&f, &p).unwrap(), Residue::NotConstant);
    }

    #[test]
    fn circle() {
        let f = bq(&[(2, 0, 1), (0, 2, 1)]);
        let p = bq(&[(2, 0, 1), (0, 2, 1), (0, 0, -5)]);
        assert_eq!(value(residue_constant(&f, &p).unwrap()), Some(vec![q_int(5)]));
    }

    #[test]
    fn vertical_line_and_reducible_input() {
        let f = bq(&[(2, 0, 1), (0, 1, 0)]);
        let p = bq(&[(1, 0, 1), (0, 0, -3)]);
        assert_eq!(value(residue_constant(&f, &p).unwrap()), Some(vec![q_int(9)]));
        let red = bq(&[(1, 1, 1)]);
        assert_eq!(residue_constant(&f, &red), Err(Error::Reducible));
    }
}
