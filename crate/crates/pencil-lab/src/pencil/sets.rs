//! singset, multset, redset with refined fibers, primset/uniset,
//! compositeness, refset comparison and the places-at-infinity bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::absfactor::{
    critical_generators, generic_factor_count, pencil_reducibility_candidates, pencil_system_size,
    rational_factor_count,
};
use crate::arith::factor::factor_q;
use crate::arith::modular::primitive_q;
use crate::arith::nf::Nf;
use crate::arith::residue::{shear_i, y_monic_shear};
use crate::arith::resultant::{resultant_param, t_content};
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, Field, UPoly, Q};
use crate::error::{Error, Result};
use crate::intersect::{common_points, tau_places_at_infinity};

use super::binary;
use super::fiber::{refine_fiber, FiberValue, RefinedFiber};
use super::{normalize, Pencil};

/// Above this system size the pivot-minor candidates of special pencils are
/// skipped; the bifurcation-set superset alone is used.
const MINOR_LIMIT: usize = 60;

// ---------------------------------------------------------------------------
// Shared helpers.

/// Distinct irreducible (primitive) factors of a univariate polynomial.
fn irreducibles(p: &UPoly<Q>) -> Vec<UPoly<Q>> {
    if p.deg() < 1 {
        return vec![];
    }
    factor_q(p).factors.into_iter().map(|(f, _)| f).collect()
}

/// T-content of Res_Y(g, f − T·w): its roots are the constant values of
/// f/w along components of g (components inside w = 0 do not contribute).
fn constant_values(g: &BPoly<Q>, f: &BPoly<Q>, w: &BPoly<Q>) -> UPoly<Q> {
    if g.is_constant() {
        return UPoly::one(&());
    }
    let l = y_monic_shear(&[g]);
    t_content(&resultant_param(&shear_i(g, l), &shear_i(f, l), &shear_i(w, l)))
}

/// Σ φ_k f^k w^{d−k}: up to a constant, the product of f − c·w over the
/// roots c of φ.
fn orbit_product(phi: &UPoly<Q>, f: &BPoly<Q>, w: &BPoly<Q>) -> BPoly<Q> {
    let d = phi.deg() as usize;
    let mut acc = BPoly::zero(&());
    for (k, a) in phi.c.iter().enumerate() {
        if !a.is_zero() {
            acc = &acc + &(&f.pow(k as u32) * &w.pow((d - k) as u32)).scale(a);
        }
    }
    acc
}

/// The largest divisor of g whose irreducible factors all divide the
/// squarefree `support`.
fn supported_part(g: &BPoly<Q>, support: &BPoly<Q>) -> BPoly<Q> {
    let mut acc = BPoly::one(&());
    let mut rest = g.clone();
    loop {
        let d = rest.gcd(support);
        if d.is_constant() {
            return acc.normalize();
        }
        acc = &acc * &d;
        rest = rest.div_exact(&d).expect("gcd divides");
    }
}

fn same_up_to_constant(a: &BPoly<Q>, b: &BPoly<Q>) -> bool {
    a.normalize() == b.normalize()
}

/// The common divisor of the critical generators.
fn critical_gcd(p: &Pencil) -> Result<(BPoly<Q>, BPoly<Q>, BPoly<Q>)> {
    let (g1, g2) = critical_generators(&p.f, &p.w);
    if g1.is_zero() && g2.is_zero() {
        return Err(Error::Degenerate);
    }
    let g = g1.gcd(&g2);
    Ok((g1, g2, g))
}

// ---------------------------------------------------------------------------
// singset

/// Parameters whose fiber has a singular affine point (base points excluded).
#[derive(Clone, Debug)]
pub struct Singset {
    pub set: AlgebraicSet,
    /// The fiber w = 0 is singular away from the base points.
    pub infinity: bool,
    /// Values carried by curves of critical points.
    pub curve_values: AlgebraicSet,
    /// Values at isolated critical points.
    pub point_values: AlgebraicSet,
    /// Conjugate families of critical points that are base points.
    pub base_points_dropped: usize,
    pub notes: Vec<String>,
}

pub fn singset(p: &Pencil) -> Result<Singset> {
    if p.binary {
        return binary::singset(p);
    }
    let (g1, g2, g) = critical_gcd(p)?;
    let mut notes = Vec::new();
    let mut infinity = false;
    let mut curve = Vec::new();
    if !g.is_constant() {
        let gr = g.radical()?;
        curve = irreducibles(&constant_values(&gr, &p.f, &p.w));
        if !p.special && !gr.gcd(&p.w).is_constant() {
            infinity = true;
            notes.push("a multiple component of w = 0".into());
        }
    }
    let a = g1.div_exact(&g).expect("gcd divides");
    let b = g2.div_exact(&g).expect("gcd divides");
    let mut points = Vec::new();
    let mut dropped = 0;
    if !a.is_constant() && !b.is_constant() {
        for fam in common_points(&a, &b)? {
            let k = fam.field.clone();
            let fv = p.f.map(&k, |c| Nf::from_q(c, &k)).eval(&fam.x, &fam.y);
            let wv = p.w.map(&k, |c| Nf::from_q(c, &k)).eval(&fam.x, &fam.y);
            match (fv.is_zero(), wv.is_zero()) {
                (true, true) => dropped += 1,
                (false, true) => infinity = true,
                _ => points.push(fv.times(&wv.inverse().expect("nonzero")).minpoly()),
            }
        }
    }
    if dropped > 0 {
        notes.push(format!("{dropped} conjugate families of base points excluded"));
    }
    let curve_values = AlgebraicSet::from_irreducibles(curve);
    let point_values = AlgebraicSet::from_irreducibles(points);
    Ok(Singset {
        set: curve_values.union(&point_values),
        infinity,
        curve_values,
        point_values,
        base_points_dropped: dropped,
        notes,
    })
}

// ---------------------------------------------------------------------------
// multset

/// A parameter orbit whose fiber has a multiple component.
#[derive(Clone, Debug)]
pub struct MultMember {
    pub value: FiberValue,
    /// Product over the orbit of the multiple components (squarefree, over Q).
    pub witness: BPoly<Q>,
    /// The part of the critical gcd supported on the witness.
    pub part: BPoly<Q>,
}

#[derive(Clone, Debug)]
pub struct Multset {
    pub set: AlgebraicSet,
    pub members: Vec<MultMember>,
    /// w = 0 has a multiple component.
    pub infinity: Option<MultMember>,
    /// gcd of the critical generators (gcd(f_X, f_Y) for special pencils).
    pub h_hat: BPoly<Q>,
    /// Special pencils: ĥ equals, up to a constant, the product over the
    /// members of gcd(ĥ, f − c).
    pub product_identity: Option<bool>,
}

pub fn multset(p: &Pencil) -> Result<Multset> {
    if p.binary {
        return binary::multset(p);
    }
    let (_, _, g) = critical_gcd(p)?;
    let mut members = Vec::new();
    let mut infinity = None;
    if !g.is_constant() {
        let gr = g.radical()?;
        for phi in irreducibles(&constant_values(&gr, &p.f, &p.w)) {
            let witness = gr.gcd(&orbit_product(&phi, &p.f, &p.w));
            let part = supported_part(&g, &witness);
            members.push(MultMember { value: FiberValue::Finite(primitive_q(&phi)), witness, part });
        }
        if !p.special {
            let wit = gr.gcd(&p.w);
            if !wit.is_constant() {
                let part = supported_part(&g, &wit);
                infinity = Some(MultMember { value: FiberValue::Infinity, witness: wit, part });
            }
        }
    }
    let product_identity = p.special.then(|| {
        let prod = members.iter().fold(BPoly::one(&()), |acc, m| &acc * &m.part);
        same_up_to_constant(&prod, &g)
    });
    let set = AlgebraicSet::from_irreducibles(
        members
            .iter()
            .filter_map(|m| match &m.value {
                FiberValue::Finite(q) => Some(q.clone()),
                FiberValue::Infinity => None,
            })
            .collect(),
    );
    Ok(Multset { set, members, infinity, h_hat: g, product_identity })
}

// ---------------------------------------------------------------------------
// compositeness

#[derive(Clone, Debug, Serialize)]
pub struct Composite {
    pub composite: bool,
    /// Number of absolutely irreducible factors of the generic fiber.
    pub generic_count: usize,
    /// Special pencils: an empty multset forces a noncomposite pencil.
    pub multset_empty: Option<bool>,
    pub consistent: bool,
}

pub fn is_composite(p: &Pencil) -> Result<Composite> {
    let generic_count = if p.binary {
        binary::generic_count(p)
    } else {
        generic_factor_count(&p.to_input_coordinates(&p.f), &p.to_input_coordinates(&p.w))
    };
    let composite = generic_count > 1;
    let multset_empty = if p.special { Some(multset(p)?.set.is_empty()) } else { None };
    let consistent = !(composite && multset_empty == Some(true));
    Ok(Composite { composite, generic_count, multset_empty, consistent })
}

// ---------------------------------------------------------------------------
// redset

#[derive(Clone, Debug, Serialize)]
pub struct RedMember {
    pub fiber: RefinedFiber,
    /// For rational parameters: the fiber is reducible over Q as well.
    pub rational_reducible: Option<bool>,
}

impl RedMember {
    fn new(fiber: RefinedFiber) -> Self {
        let rational_reducible = fiber.rational_weighted_count.map(|n| n > 1);
        RedMember { fiber, rational_reducible }
    }
}

/// Parameters with a fiber reducible over Q̄ (counting multiplicity), with
/// their refined structure; or the composite state.
#[derive(Clone, Debug)]
pub struct Redset {
    pub composite: Option<Composite>,
    pub set: AlgebraicSet,
    /// One entry per parameter orbit.
    pub members: Vec<RedMember>,
    /// The fiber w = 0 is reducible.
    pub infinity: Option<RedMember>,
    /// The candidate superset that was examined.
    pub candidates: AlgebraicSet,
    pub notes: Vec<String>,
}

impl Redset {
    /// refset: exponent sequences, one per parameter (conjugates repeated).
    pub fn refset(&self) -> Vec<(String, Vec<u32>)> {
        let mut out = Vec::new();
        for m in &self.members {
            let e = m.fiber.exponents();
            match &m.fiber.value {
                FiberValue::Finite(phi) => {
                    for a in crate::arith::roots::AlgebraicNumber::conjugates(phi) {
                        out.push((a.render(), e.clone()));
                    }
                }
                FiberValue::Infinity => out.push(("∞".into(), e)),
            }
        }
        out
    }
}

/// Roots of the leading X-coefficient of Res_Y(f_Y/ĥ, f − T): together with
/// the critical values these contain every parameter whose fiber differs
/// topologically from the generic one.
pub(crate) fn projection_drop_values(f: &BPoly<Q>, h_hat: &BPoly<Q>) -> UPoly<Q> {
    let fy = f.dy();
    let fprime = if h_hat.is_constant() { fy } else { fy.div_exact(h_hat).expect("ĥ divides f_Y") };
    let r2 = resultant_param(&fprime, f, &BPoly::one(&()));
    let top = r2.deg_x().max(0) as usize;
    r2.column(top)
}

pub fn redset_refined(p: &Pencil) -> Result<Redset> {
    let comp = is_composite(p)?;
    if comp.composite {
        let note = format!("generic fiber has {} absolutely irreducible factors: every fiber is reducible", comp.generic_count);
        return Ok(Redset {
            composite: Some(comp),
            set: AlgebraicSet::empty(),
            members: vec![],
            infinity: None,
            candidates: AlgebraicSet::empty(),
            notes: vec![note],
        });
    }
    let mut notes = Vec::new();
    let mult = multset(p)?;
    let (fi, wi) = (p.to_input_coordinates(&p.f), p.to_input_coordinates(&p.w));
    let candidates = if p.special {
        // Reducible fibers of a noncomposite special pencil are atypical
        // values of the map f: a smooth reducible fiber is disconnected
        // while the generic fiber is connected.
        let sing = singset(p)?;
        let bif = sing.set.union(&AlgebraicSet::from_polys(&[projection_drop_values(&p.f, &mult.h_hat)]));
        if pencil_system_size(&fi, &wi) <= MINOR_LIMIT {
            let rc = pencil_reducibility_candidates(&fi, &wi)?;
            notes.extend(rc.notes);
            rc.set.union(&mult.set).intersect(&bif)
        } else {
            notes.push("large system: candidates are the critical and projection-drop values".into());
            bif
        }
    } else {
        let rc = pencil_reducibility_candidates(&fi, &wi)?;
        notes.extend(rc.notes);
        rc.set.union(&mult.set)
    };
    let mut members = Vec::new();
    for phi in &candidates.factors {
        let fib = refine_fiber(&p.f, &p.w, &FiberValue::Finite(phi.clone()))?;
        if fib.is_reducible() {
            members.push(RedMember::new(fib));
        }
    }
    let infinity = if p.special {
        None
    } else {
        let fib = refine_fiber(&p.f, &p.w, &FiberValue::Infinity)?;
        fib.is_reducible().then(|| RedMember::new(fib))
    };
    let set = AlgebraicSet::from_irreducibles(
        members
            .iter()
            .filter_map(|m| match &m.fiber.value {
                FiberValue::Finite(q) => Some(q.clone()),
                FiberValue::Infinity => None,
            })
            .collect(),
    );
    Ok(Redset { composite: Some(comp), set, members, infinity, candidates, notes })
}

// ---------------------------------------------------------------------------
// primset / uniset

#[derive(Clone, Debug, Serialize)]
pub struct PrimMember {
    pub value: FiberValue,
    /// The fiber is a constant times a μ-th power of a squarefree polynomial.
    pub mu: u32,
    /// Absolutely irreducible factors of that polynomial (1 for uni members).
    pub count: usize,
}

#[derive(Clone, Debug)]
pub struct Primset {
    /// Finite prim members followed by ∞ when w qualifies.
    pub members: Vec<PrimMember>,
    pub set: AlgebraicSet,
    pub infinity: bool,
    pub uniset: AlgebraicSet,
    pub uni_infinity: bool,
}

impl Primset {
    /// |primset_+| counted over Q̄.
    pub fn plus_size(&self) -> usize {
        self.set.len() + self.infinity as usize
    }
    pub fn uni_plus_size(&self) -> usize {
        self.uniset.len() + self.uni_infinity as usize
    }
    /// μ per member over Q̄ (conjugates repeated).
    pub fn mu_pattern(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.members.iter().flat_map(|m| std::iter::repeat_n(m.mu, m.value.conjugates())).collect();
        v.sort_unstable();
        v
    }
}

pub fn primset(p: &Pencil) -> Result<Primset> {
    if p.binary {
        return binary::primset(p);
    }
    let mult = multset(p)?;
    let mut members = Vec::new();
    let mut values: Vec<FiberValue> = mult.members.iter().map(|m| m.value.clone()).collect();
    if !p.special {
        values.push(FiberValue::Infinity);
    }
    for v in values {
        let fib = refine_fiber(&p.f, &p.w, &v)?;
        if let Some(mu) = fib.prim_exponent() {
            members.push(PrimMember { value: v, mu, count: fib.layers[0].count });
        }
    }
    Ok(assemble_primset(members))
}

pub(crate) fn assemble_primset(members: Vec<PrimMember>) -> Primset {
    let finite = |uni: bool| -> Vec<UPoly<Q>> {
        members
            .iter()
            .filter(|m| !uni || m.count == 1)
            .filter_map(|m| match &m.value {
                FiberValue::Finite(q) => Some(q.clone()),
                FiberValue::Infinity => None,
            })
            .collect()
    };
    let inf = members.iter().find(|m| m.value == FiberValue::Infinity);
    Primset {
        set: AlgebraicSet::from_irreducibles(finite(false)),
        uniset: AlgebraicSet::from_irreducibles(finite(true)),
        infinity: inf.is_some(),
        uni_infinity: inf.is_some_and(|m| m.count == 1),
        members,
    }
}

// ---------------------------------------------------------------------------
// refset comparison

#[derive(Clone, Debug, Serialize)]
pub struct RefsetComparison {
    pub equal: bool,
    pub left: Vec<(String, Vec<u32>)>,
    pub right: Vec<(String, Vec<u32>)>,
    /// Matching of parameters with equal exponent sequences (when equal).
    pub bijection: Vec<(String, String)>,
}

/// Whether two special pencils of Q-irreducible polynomials have refsets
/// related by a multiplicity-preserving bijection.
pub fn refset_equal(f: &BPoly<Q>, g: &BPoly<Q>) -> Result<RefsetComparison> {
    let mut sides = Vec::new();
    for h in [f, g] {
        if h.is_constant() || rational_factor_count(h)? != 1 {
            return Err(Error::Reducible);
        }
        let r = redset_refined(&normalize(h, None)?)?;
        if r.composite.as_ref().is_some_and(|c| c.composite) {
            return Err(Error::Precondition("composite pencil".into()));
        }
        let mut rs = r.refset();
        rs.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
        sides.push(rs);
    }
    let (left, right) = (sides[0].clone(), sides[1].clone());
    let equal = left.len() == right.len() && left.iter().zip(&right).all(|(a, b)| a.1 == b.1);
    let bijection =
        if equal { left.iter().zip(&right).map(|(a, b)| (a.0.clone(), b.0.clone())).collect() } else { vec![] };
    Ok(RefsetComparison { equal, left, right, bijection })
}

// ---------------------------------------------------------------------------
// |redset| ≤ τ − 1

#[derive(Clone, Debug, Serialize)]
pub struct PlacesBoundCheck {
    pub redset_size: usize,
    /// (c₀, τ(f − c₀)) at parameters outside every candidate set.
    pub samples: Vec<(String, usize)>,
    pub holds: bool,
}

/// |redset(f)| ≤ τ(f − c₀) − 1 for a special pencil, at two random rational
/// c₀ avoiding the candidate, critical and projection-drop values.
pub fn places_bound_check(p: &Pencil, red: &Redset, seed: u64) -> Result<PlacesBoundCheck> {
    if !p.special {
        return Err(Error::Precondition("the places bound concerns special pencils".into()));
    }
    let mult = multset(p)?;
    let avoid = [
        red.candidates.defining(),
        singset(p)?.set.defining(),
        projection_drop_values(&p.f, &mult.h_hat),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::new();
    let mut holds = true;
    while samples.len() < 2 {
        let c0 = Q::new(rng.gen_range(-97i64..=97).into(), rng.gen_range(1i64..=7).into());
        if avoid.iter().any(|a| a.deg() >= 0 && a.eval(&c0).is_zero()) {
            continue;
        }
        let tau = tau_places_at_infinity(&p.fiber(&c0))?;
        holds &= red.set.len() < tau;
        samples.push((c0.to_string(), tau));
    }
    Ok(PlacesBoundCheck { redset_size: red.set.len(), samples, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }
    fn special(terms: &[(usize, usize, i64)]) -> Pencil {
        normalize(&bq(terms), None).unwrap()
    }
    fn qs(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q_int(x)).collect()
    }

    #[test]
    fn singsets() {
        assert_eq!(singset(&special(&[(0, 3, 1), (0, 1, -3)])).unwrap().set.rationals(), qs(&[-2, 2]));
        assert_eq!(singset(&special(&[(1, 1, 1), (0, 0, 1)])).unwrap().set.rationals(), qs(&[1]));
        assert_eq!(singset(&special(&[(0, 2, 1), (3, 0, -1)])).unwrap().set.rationals(), qs(&[0]));
        let p = normalize(&bq(&[(0, 2, 1)]), Some(&bq(&[(1, 0, 1)]))).unwrap();
        let s = singset(&p).unwrap();
        assert_eq!(s.set.rationals(), qs(&[0]));
        assert!(!s.infinity);
        assert_eq!(s.base_points_dropped, 1);
    }

    #[test]
    fn irrational_critical_values() {
        // f = Y³ − 3Y + X², critical points (0, ±1) with values ∓2, plus
        // f = X³ − 3X + Y³ − 3Y with values in {−4, 0, 4}.
        let s = singset(&special(&[(3, 0, 1), (1, 0, -3), (0, 3, 1), (0, 1, -3)])).unwrap();
        assert_eq!(s.set.rationals(), qs(&[-4, 0, 4]));
        // f = Y² + X⁴ − 2X²... values 0 and −1; and Y² − X³ + X·2: values ±(4/3)√(2/3)·...
        let s = singset(&special(&[(0, 2, 1), (3, 0, -1), (1, 0, 2)])).unwrap();
        assert_eq!(s.set.len(), 2);
        assert_eq!(s.set.factors.len(), 1);
        assert_eq!(s.set.factors[0].deg(), 2);
    }

    #[test]
    fn multsets() {
        let m = multset(&special(&[(0, 3, 1), (0, 1, -3)])).unwrap();
        assert_eq!(m.set.rationals(), qs(&[-2, 2]));
        assert_eq!(m.product_identity, Some(true));
        assert_eq!(m.h_hat, bq(&[(0, 2, 1), (0, 0, -1)]));
        let m = multset(&special(&[(0, 2, 1)])).unwrap();
        assert_eq!(m.set.rationals(), qs(&[0]));
        assert_eq!(m.members[0].witness, bq(&[(0, 1, 1)]));
        let m = multset(&special(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert!(m.set.is_empty());
        assert_eq!(m.product_identity, Some(true));
    }

    #[test]
    fn redsets() {
        // Hyperbola: the fiber at 1 of XY + 1... f = XY + 1 − c is XY at c = 1.
        let r = redset_refined(&special(&[(1, 1, 1), (0, 0, 1)])).unwrap();
        assert_eq!(r.set.rationals(), qs(&[1]));
        assert_eq!(r.members[0].fiber.exponents(), vec![1, 1]);
        assert_eq!(r.members[0].rational_reducible, Some(true));
        // Cusp: no reducible fiber.
        let r = redset_refined(&special(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert!(r.set.is_empty());
        // X(X − 1)Y + X − 2.
        let r = redset_refined(&special(&[(2, 1, 1), (1, 1, -1), (1, 0, 1), (0, 0, -2)])).unwrap();
        assert_eq!(r.set.rationals(), qs(&[-2, -1]));
    }

    #[test]
    fn composite_pencils() {
        let c = is_composite(&special(&[(2, 2, 1), (1, 1, 1)])).unwrap();
        assert!(c.composite && c.generic_count == 2 && c.consistent);
        let c = is_composite(&special(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert!(!c.composite);
        let cube = special(&[(3, 0, 1), (2, 1, 3), (1, 2, 3), (0, 3, 1), (0, 0, 5)]);
        let c = is_composite(&cube).unwrap();
        assert_eq!(c.generic_count, 3);
        let r = redset_refined(&cube).unwrap();
        assert!(r.composite.unwrap().composite && r.members.is_empty());
        let pr = primset(&cube).unwrap();
        assert_eq!(pr.set.rationals(), qs(&[5]));
        assert_eq!(pr.members[0].mu, 3);
        assert!(primset(&special(&[(0, 2, 1), (3, 0, -1)])).unwrap().members.is_empty());
    }

    #[test]
    fn refset_comparisons() {
        let a = bq(&[(1, 2, 1), (0, 0, -1)]);
        let b = bq(&[(1, 3, 1), (0, 0, -1)]);
        let r = refset_equal(&a, &b).unwrap();
        assert!(!r.equal);
        assert_eq!(r.left, vec![("-1".to_string(), vec![1, 2])]);
        assert_eq!(r.right, vec![("-1".to_string(), vec![1, 3])]);
        let r = refset_equal(&a, &a).unwrap();
        assert!(r.equal);
        assert_eq!(r.bijection, vec![("-1".to_string(), "-1".to_string())]);
        assert_eq!(refset_equal(&bq(&[(1, 1, 1)]), &a).unwrap_err(), Error::Reducible);
    }

    #[test]
    fn places_bound() {
        let p = special(&[(1, 1, 1), (0, 0, 1)]);
        let r = redset_refined(&p).unwrap();
        let chk = places_bound_check(&p, &r, 1).unwrap();
        assert!(chk.holds);
        assert!(chk.samples.iter().all(|(_, t)| *t == 2));
    }

    #[test]
    fn general_pencil_sets() {
        // f = Y² − X, w = Y: fibers Y² − cY − X are smooth parabolas; the
        // fiber at ∞ (Y) is a line.
        let p = normalize(&bq(&[(0, 2, 1), (1, 0, -1)]), Some(&bq(&[(0, 1, 1)]))).unwrap();
        let r = redset_refined(&p).unwrap();
        assert!(r.set.is_empty() && r.infinity.is_none());
        // f = X² − Y², w = 1 + X: the fiber at 0 is two lines.
        let p = normalize(&bq(&[(2, 0, 1), (0, 2, -1)]), Some(&bq(&[(1, 0, 1), (0, 0, 1)]))).unwrap();
        let r = redset_refined(&p).unwrap();
        assert!(r.set.contains_rational(&q_int(0)));
    }
}
