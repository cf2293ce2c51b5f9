//! Common affine zeros of two curves, grouped into Galois-conjugate families,
//! and the totals I(g,h;𝒜), I(g,h;f), I(g,h;𝒜∖f).

use std::sync::Arc;

use serde::Serialize;

use crate::arith::factor::{factor_q, squarefree_q};
use crate::arith::nf::{Nf, NumberField};
use crate::arith::residue::shear_i;
use crate::arith::resultant::resultant_y_q;
use crate::arith::{BPoly, Field, UPoly, Q};
use crate::error::{Error, Result};

use super::Mult;

/// Shears tried, in order, to separate common points by their X-coordinate.
const SHEARS: [i64; 12] = [1, 2, -1, 3, -2, 5, -3, 7, 11, -5, 13, 17];

/// A point of the plane with coordinates in a number field.  Infinite points
/// are (x : y : 0) with the first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq)]
pub enum PlanePoint {
    Affine { x: Nf, y: Nf },
    Infinite { x: Nf, y: Nf },
}

impl PlanePoint {
    pub fn render(&self) -> String {
        match self {
            PlanePoint::Affine { x, y } => format!("({}, {})", x.render(), y.render()),
            PlanePoint::Infinite { x, y } => format!("({} : {} : 0)", x.render(), y.render()),
        }
    }
}

/// The `count` conjugate affine points (x(t), y(t)) as t runs over the roots
/// of the field's modulus, each with intersection multiplicity `mult`.
#[derive(Clone, Debug)]
pub struct PointFamily {
    pub field: Arc<NumberField>,
    pub x: Nf,
    pub y: Nf,
    pub mult: usize,
    pub count: usize,
}

impl PointFamily {
    pub fn point(&self) -> PlanePoint {
        PlanePoint::Affine { x: self.x.clone(), y: self.y.clone() }
    }
    /// Whether the points lie on f (exact evaluation).
    pub fn lies_on(&self, f: &BPoly<Q>) -> bool {
        let k = &self.field;
        let fk: BPoly<Nf> = f.map(k, |c| Nf::from_q(c, k));
        fk.eval(&self.x, &self.y).is_zero()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRecord {
    pub point: String,
    pub conjugates: usize,
    pub multiplicity: usize,
    pub on_curve: bool,
}

/// Per-point multiplicities of (g, h) with their totals, partitioned by
/// membership on f.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionProfile {
    pub records: Vec<ProfileRecord>,
    pub total: Mult,
    pub on_curve: Mult,
    pub off_curve: Mult,
}

fn nonconstant_gcd(g: &BPoly<Q>, h: &BPoly<Q>) -> bool {
    !g.gcd(h).is_constant()
}

/// Families from one shear, or `None` when some X-fiber holds more than one
/// common point.
fn families_for_shear(g: &BPoly<Q>, h: &BPoly<Q>, lambda: i64) -> Option<Vec<PointFamily>> {
    let gs = shear_i(g, lambda);
    let hs = shear_i(h, lambda);
    let r = resultant_y_q(&gs, &hs);
    let lam = Q::from_integer(lambda.into());
    let mut out = Vec::new();
    for (sf, e) in squarefree_q(&r) {
        for (phi, _) in factor_q(&sf).factors {
            let k = NumberField::new(&phi);
            let t = Nf::generator(&k);
            let gk: BPoly<Nf> = gs.map(&k, |c| Nf::from_q(c, &k));
            let hk: BPoly<Nf> = hs.map(&k, |c| Nf::from_q(c, &k));
            let d = gk.eval_x(&t).gcd(&hk.eval_x(&t)).monic();
            if d.deg() < 1 {
                return None;
            }
            let m = d.deg() as usize;
            let y0 = d.c[m - 1].times(&Nf::from_i64(&k, -(m as i64)).inverse().unwrap());
            let lin = UPoly::new(vec![y0.negate(), Nf::one(&k)], k.clone());
            if d != lin.pow(m as u32) {
                return None;
            }
            let x0 = t.plus(&y0.times(&Nf::from_q(&lam, &k)));
            out.push(PointFamily { field: k, x: x0, y: y0, mult: e as usize, count: phi.deg() as usize });
        }
    }
    Some(out)
}

fn valid_shears(g: &BPoly<Q>) -> impl Iterator<Item = i64> + '_ {
    let form = g.degree_form();
    let one = Q::one(&());
    SHEARS.into_iter().filter(move |&l| !form.eval(&Q::from_integer(l.into()), &one).is_zero())
}

/// Common affine zeros of g and h (which must have no common factor),
/// grouped into conjugate families.
pub fn common_points(g: &BPoly<Q>, h: &BPoly<Q>) -> Result<Vec<PointFamily>> {
    if g.is_zero() || h.is_zero() || nonconstant_gcd(g, h) {
        return Err(Error::CommonFactor);
    }
    if g.is_constant() || h.is_constant() {
        return Ok(vec![]);
    }
    let mut tries = 0;
    for l in valid_shears(g) {
        tries += 1;
        if let Some(f) = families_for_shear(g, h, l) {
            return Ok(f);
        }
    }
    Err(Error::ShearInstability(tries))
}

/// I(g, h; 𝒜): the sum of all affine intersection multiplicities, ∞ when g
/// and h share a component.  Two shears with constant leading Y-coefficient
/// must give the same resultant degree.
pub fn affine_total(g: &BPoly<Q>, h: &BPoly<Q>) -> Result<Mult> {
    if g.is_zero() || h.is_zero() {
        return Ok(Mult::Infinite);
    }
    if g.is_constant() || h.is_constant() {
        return Ok(Mult::Finite(0));
    }
    if nonconstant_gcd(g, h) {
        return Ok(Mult::Infinite);
    }
    let degs: Vec<isize> = valid_shears(g)
        .take(2)
        .map(|l| resultant_y_q(&shear_i(g, l), &shear_i(h, l)).deg())
        .collect();
    if degs.len() < 2 || degs[0] != degs[1] {
        return Err(Error::ShearInstability(degs.len()));
    }
    Ok(Mult::Finite(degs[0] as usize))
}

/// (I(g, h; f), I(g, h; 𝒜∖f)) for g, h without common factor.
pub fn split_totals(g: &BPoly<Q>, h: &BPoly<Q>, f: &BPoly<Q>) -> Result<(usize, usize)> {
    let (mut on, mut off) = (0, 0);
    for fam in common_points(g, h)? {
        if fam.lies_on(f) {
            on += fam.mult * fam.count;
        } else {
            off += fam.mult * fam.count;
        }
    }
    Ok((on, off))
}

/// Full per-point profile of (g, h) relative to f.
pub fn intersection_profile(g: &BPoly<Q>, h: &BPoly<Q>, f: &BPoly<Q>) -> Result<IntersectionProfile> {
    let total = affine_total(g, h)?;
    if total.is_infinite() {
        return Ok(IntersectionProfile {
            records: vec![],
            total,
            on_curve: Mult::Infinite,
            off_curve: Mult::Infinite,
        });
    }
    let mut records = Vec::new();
    let (mut on, mut off) = (0, 0);
    for fam in common_points(g, h)? {
        let on_curve = fam.lies_on(f);
        if on_curve {
            on += fam.mult * fam.count;
        } else {
            off += fam.mult * fam.count;
        }
        records.push(ProfileRecord {
            point: format!("{} where {} = 0", fam.point().render(), fam.field.modulus.render("t")),
            conjugates: fam.count,
            multiplicity: fam.mult,
            on_curve,
        });
    }
    if Mult::Finite(on + off) != total {
        return Err(Error::Internal(format!("point sum {} differs from total {}", on + off, total)));
    }
    Ok(IntersectionProfile { records, total, on_curve: Mult::Finite(on), off_curve: Mult::Finite(off) })
}
