//! Local intersection multiplicity at a point by Fulton's reduction.

use crate::arith::nf::Nf;
use crate::arith::{BPoly, Field, Q};
use crate::error::{Error, Result};

use super::Mult;

const STEP_GUARD: usize = 1_000_000;

/// I(a, b; origin) over any field.
///
/// Uses I(a, b) = I(a, c·b + q·a) for a unit c, and
/// I(Y·a1, b) = ord_X b(X, 0) + I(a1, b), reducing the degrees of the
/// restrictions to Y = 0 until one of the curves misses the origin.
pub fn fulton<F: Field>(a: &BPoly<F>, b: &BPoly<F>) -> Result<Mult> {
    if a.is_zero() || b.is_zero() {
        return Ok(Mult::Infinite);
    }
    // The reduction terminates only for finite values: detect a common
    // component through the origin first.
    let common = a.gcd(b);
    if !common.is_constant() && common.coeff(0, 0).is_zero() {
        return Ok(Mult::Infinite);
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut acc = 0usize;
    for _ in 0..STEP_GUARD {
        if a.is_zero() || b.is_zero() {
            return Ok(Mult::Infinite);
        }
        if !a.coeff(0, 0).is_zero() || !b.coeff(0, 0).is_zero() {
            return Ok(Mult::Finite(acc));
        }
        let (mut ra, mut rb) = (a.row(0), b.row(0));
        if ra.is_zero() && rb.is_zero() {
            // Y divides both.
            return Ok(Mult::Infinite);
        }
        if ra.deg() > rb.deg() {
            std::mem::swap(&mut a, &mut b);
            std::mem::swap(&mut ra, &mut rb);
        }
        if ra.is_zero() {
            acc += rb.trailing_zeros();
            a = BPoly::new(a.rows[1..].to_vec(), a.ctx.clone());
            continue;
        }
        let s = (rb.deg() - ra.deg()) as usize;
        let q = BPoly::monomial(rb.lc(), s, 0);
        b = &b.scale(&ra.lc()) - &(&q * &a);
    }
    Err(Error::Internal("intersection multiplicity did not terminate".into()))
}

/// I(g, h; (u, v)) for a point with coordinates in a number field.
pub fn intersection_multiplicity(g: &BPoly<Q>, h: &BPoly<Q>, u: &Nf, v: &Nf) -> Result<Mult> {
    let k = u.k.clone();
    let gk: BPoly<Nf> = g.map(&k, |c| Nf::from_q(c, &k)).translate(u, v);
    let hk: BPoly<Nf> = h.map(&k, |c| Nf::from_q(c, &k)).translate(u, v);
    fulton(&gk, &hk)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;
    use crate::arith::nf::NumberField;
    use crate::arith::UPoly;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn basic_values() {
        assert_eq!(fulton(&bq(&[(1, 0, 1)]), &bq(&[(0, 1, 1)])).unwrap(), Mult::Finite(1));
        assert_eq!(fulton(&bq(&[(0, 1, 1), (2, 0, -1)]), &bq(&[(0, 1, 1)])).unwrap(), Mult::Finite(2));
        assert_eq!(fulton(&bq(&[(2, 0, -3)]), &bq(&[(0, 1, 2)])).unwrap(), Mult::Finite(2));
        assert_eq!(fulton(&bq(&[(0, 2, 1), (3, 0, -1)]), &bq(&[(0, 1, 2)])).unwrap(), Mult::Finite(3));
        // Off the origin.
        assert_eq!(fulton(&bq(&[(0, 1, 1), (0, 0, -1)]), &bq(&[(1, 0, 1)])).unwrap(), Mult::Finite(0));
    }

    #[test]
    fn shared_component_is_infinite() {
        let y = bq(&[(0, 1, 1)]);
        assert_eq!(fulton(&bq(&[(0, 2, 1)]), &y).unwrap(), Mult::Infinite);
        let l = bq(&[(1, 0, 1), (0, 1, -1)]);
        let a = &l * &bq(&[(1, 0, 1), (0, 0, 1)]);
        let b = &l * &bq(&[(0, 1, 1), (0, 0, 2)]);
        assert_eq!(fulton(&a, &b).unwrap(), Mult::Infinite);
    }

    #[test]
    fn at_algebraic_point() {
        // Y = X^2 meets Y = 2 at (±√2, 2), transversally.
        let k = NumberField::new(&UPoly::from_i64s(&[-2, 0, 1], &()));
        let g = bq(&[(0, 1, 1), (2, 0, -1)]);
        let h = bq(&[(0, 1, 1), (0, 0, -2)]);
        let u = Nf::generator(&k);
        let v = Nf::from_q(&q_int(2), &k);
        assert_eq!(intersection_multiplicity(&g, &h, &u, &v).unwrap(), Mult::Finite(1));
        // Tangent line at (√2, 2): Y − 2√2·X + 2, multiplicity 2.
        let tk: BPoly<Nf> = g.map(&k, |c| Nf::from_q(c, &k));
        let line = BPoly::from_terms(
            &[
                (0, 1, Nf::one(&k)),
                (1, 0, u.times(&Nf::from_q(&q_int(-2), &k))),
                (0, 0, Nf::from_q(&q_int(2), &k)),
            ],
            &k,
        );
        assert_eq!(fulton(&tk.translate(&u, &v), &line.translate(&u, &v)).unwrap(), Mult::Finite(2));
    }
}
