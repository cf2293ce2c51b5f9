//! Ranks of a special pencil f − c under (*) (f Y-monic of Y-degree N equal
//! to its total degree): ρ_a of individual fibers, the generic value ρ_π,
//! the finite deviation set defset, the Zeuthen–Segre number ζ and the
//! cardinality bounds relating them.
//!
//! Notation: ĥ = gcd(f_X, f_Y), f′ = f_Y/ĥ, [g] = gcd(g, g_X, g_Y) and
//!
//!   ρ_a(g) = (1 − N) + deg_Y[g] + I(g, f′; 𝒜) − I(g_X, f′; g)
//!
//! for every fiber g = f − c (all fibers share the partials).  With
//! R(X, T) = Res_Y(f′, f − T) one has I(f − c, f′; 𝒜) = deg_X R(X, c), so
//! ρ_π = (1 − N) + deg_X R and a fiber can only deviate at roots of the
//! leading X-coefficient of R or at critical values.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::factor::multiplicity_of;
use crate::arith::modular::primitive_q;
use crate::arith::nf::Nf;
use crate::arith::resultant::{resultant_param, t_content};
use crate::arith::residue::{shear_i, y_monic_shear};
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, UPoly, Q};
use crate::error::{Error, Result};
use crate::intersect::{affine_total, common_points, points_at_infinity, split_totals, Mult};
use crate::pencil::{multset, normalize, singset, FiberValue, Pencil};

/// Checks condition (*).
fn check_star(f: &BPoly<Q>) -> Result<()> {
    if f.is_constant() || f.lc_y().deg() != 0 || f.deg_y() != f.total_deg() {
        return Err(Error::Precondition("f must be Y-monic of Y-degree equal to its total degree".into()));
    }
    Ok(())
}

fn finite(m: Mult) -> Result<i64> {
    m.finite().map(|v| v as i64).ok_or(Error::Infinite)
}

/// I(g, h; f): the sum of I(g, h; P) over the points P of f = 0.
fn on_curve_total(g: &BPoly<Q>, h: &BPoly<Q>, f: &BPoly<Q>) -> Result<Mult> {
    if g.is_zero() || h.is_zero() {
        if g.is_zero() && h.is_zero() {
            return Ok(Mult::Infinite);
        }
        // Every common zero of the nonzero one with f has infinite multiplicity.
        let other = if g.is_zero() { h } else { g };
        if other.is_constant() {
            return Ok(Mult::Finite(0));
        }
        let meets = !other.gcd(f).is_constant() || !common_points(&other.radical()?, f)?.is_empty();
        return Ok(if meets { Mult::Infinite } else { Mult::Finite(0) });
    }
    if g.is_constant() || h.is_constant() {
        return Ok(Mult::Finite(0));
    }
    let d = g.gcd(h);
    if !d.is_constant() {
        let dr = d.radical()?;
        if !dr.gcd(f).is_constant() || !common_points(&dr, f)?.is_empty() {
            return Ok(Mult::Infinite);
        }
        let (g, h) = (g.div_exact(&d).unwrap(), h.div_exact(&d).unwrap());
        if g.is_constant() || h.is_constant() {
            return Ok(Mult::Finite(0));
        }
        return Ok(Mult::Finite(split_totals(&g, &h, f)?.0));
    }
    Ok(Mult::Finite(split_totals(g, h, f)?.0))
}

/// The shear X ↦ X + λ·Y bringing f into (*); ρ_a and the affine
/// intersection numbers are invariant under it.
fn star_form(f: &BPoly<Q>) -> Result<BPoly<Q>> {
    if f.is_constant() {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    let g = shear_i(f, y_monic_shear(&[f]));
    check_star(&g)?;
    Ok(g)
}

/// ρ_a(f) by the four-term formula above (after the normalizing shear).
pub fn rho_a(f: &BPoly<Q>) -> Result<i64> {
    let f = &star_form(f)?;
    let n = f.deg_y() as i64;
    let (fx, fy) = (f.dx(), f.dy());
    let bracket = f.gcd(&fx).gcd(&fy);
    let h_hat = fx.gcd(&fy);
    let fprime = fy.div_exact(&h_hat).expect("gcd divides");
    let i_aff = finite(affine_total(f, &fprime)?)?;
    let i_on = finite(on_curve_total(&fx, &fprime, f)?)?;
    Ok((1 - n) + bracket.deg_y() as i64 + i_aff - i_on)
}

/// ρ_a(f) for squarefree f by the three-term formula
/// (1 − N) + I(f, f_Y; 𝒜) − I(f_X, f_Y; f) (after the normalizing shear).
pub fn rho_a_radical(f: &BPoly<Q>) -> Result<i64> {
    let f = &star_form(f)?;
    if f.squarefree()?.iter().any(|(_, e)| *e > 1) {
        return Err(Error::NotSquarefree);
    }
    let n = f.deg_y() as i64;
    let i_aff = finite(affine_total(f, &f.dy())?)?;
    let i_on = finite(on_curve_total(&f.dx(), &f.dy(), f)?)?;
    Ok((1 - n) + i_aff - i_on)
}

/// Precomputed data of a special pencil for evaluating ρ_a(f − c) at
/// algebraic parameters.
#[derive(Clone, Debug)]
pub struct RankData {
    pub pencil: Pencil,
    pub n: usize,
    pub h_hat: BPoly<Q>,
    pub f_prime: BPoly<Q>,
    /// Res_Y(f′, f − T) as a polynomial in (X, T).
    pub r: BPoly<Q>,
    /// Res_Y(ĥ, f − T) (a polynomial in T alone): its root c has
    /// multiplicity deg_Y[f − c].
    pub bracket_poly: UPoly<Q>,
    /// Per value orbit φ: Σ over the common points of f_X and f′ with
    /// f(P) a root of φ of their multiplicities.
    pub critical: Vec<(UPoly<Q>, usize)>,
}

impl RankData {
    pub fn new(f: &BPoly<Q>) -> Result<RankData> {
        let pencil = normalize(f, None)?;
        let f = &pencil.f;
        check_star(f)?;
        let (fx, fy) = (f.dx(), f.dy());
        let h_hat = fx.gcd(&fy);
        let f_prime = fy.div_exact(&h_hat).expect("gcd divides");
        let r = resultant_param(&f_prime, f, &BPoly::one(&()));
        if t_content(&r).deg() > 0 {
            return Err(Error::Infinite);
        }
        let bracket_poly = if h_hat.is_constant() {
            UPoly::one(&())
        } else {
            let rr = resultant_param(&h_hat, f, &BPoly::one(&()));
            if rr.deg_x() > 0 {
                return Err(Error::Internal("ĥ has a component on which f is not constant".into()));
            }
            rr.column(0)
        };
        let mut critical: Vec<(UPoly<Q>, usize)> = Vec::new();
        if !fx.is_constant() && !f_prime.is_constant() {
            for fam in common_points(&fx, &f_prime)? {
                let k = fam.field.clone();
                let v = f.map(&k, |c| Nf::from_q(c, &k)).eval(&fam.x, &fam.y);
                let phi = primitive_q(&v.minpoly());
                match critical.iter_mut().find(|(q, _)| *q == phi) {
                    Some((_, m)) => *m += fam.mult * fam.count,
                    None => critical.push((phi, fam.mult * fam.count)),
                }
            }
        }
        Ok(RankData { n: f.deg_y() as usize, pencil, h_hat, f_prime, r, bracket_poly, critical })
    }

    pub fn rho_pi(&self) -> i64 {
        1 - self.n as i64 + self.r.deg_x().max(0) as i64
    }

    /// ρ_a(f − c) for the roots c of the irreducible φ.
    pub fn rho_a_at(&self, phi: &UPoly<Q>) -> i64 {
        let phi = primitive_q(phi);
        let d = phi.deg() as usize;
        let bracket = multiplicity_of(&phi, &self.bracket_poly) as i64;
        let top = self.r.deg_x().max(0) as usize;
        let i_aff = (0..=top).rev().find(|&i| !phi.divides(&self.r.column(i))).unwrap_or(0);
        let crit = self.critical.iter().find(|(q, _)| *q == phi).map_or(0, |(_, m)| *m);
        debug_assert_eq!(crit % d, 0);
        1 - self.n as i64 + bracket + i_aff as i64 - (crit / d) as i64
    }

    /// Candidate parameters for deviation: roots of the leading
    /// X-coefficient of R and the critical values.
    pub fn defset_candidates(&self) -> Result<AlgebraicSet> {
        let top = self.r.column(self.r.deg_x().max(0) as usize);
        Ok(AlgebraicSet::from_polys(&[top]).union(&singset(&self.pencil)?.set))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DefMember {
    pub value: FiberValue,
    pub rho_a: i64,
}

/// Measured sides of the cardinality statements relating singset, multset
/// and defset.
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub singset_size: usize,
    pub multset_size: usize,
    pub defset_size: usize,
    pub rho_a: i64,
    pub deg_h_hat: usize,
    pub v_infinity: usize,
    /// singset ∖ multset ⊆ defset.
    pub inclusion: bool,
    /// |singset| ≤ 1 + ρ_a(f) + 2·deg_Y ĥ.
    pub singset_bound: i64,
    pub singset_bound_holds: bool,
    /// |defset| ≤ 1 + ρ_a(f) + deg_Y ĥ.
    pub defset_bound: i64,
    pub defset_bound_holds: bool,
    /// |defset ∖ multset ∖ {0}| ≤ ρ_a(f) + |𝒱_∞| − 1 + deg_Y ĥ, which
    /// follows from ζ = −1.
    pub corrected_defset_size: usize,
    pub corrected_defset_bound: i64,
    pub corrected_defset_bound_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankReport {
    pub n: usize,
    pub h_hat: String,
    pub f_prime: String,
    pub rho_a: i64,
    /// The three-term formula, for squarefree f.
    pub rho_a_radical: Option<i64>,
    pub rho_pi: i64,
    #[serde(skip)]
    pub defset: AlgebraicSet,
    pub defset_members: Vec<DefMember>,
    pub v_infinity: usize,
    /// The degree form is a power of one linear form, i.e. some linear
    /// change of coordinates makes f − f₀·Y^N of degree < N.  The jungian
    /// formula and ζ are evaluated only in this case; otherwise the
    /// several points at infinity break the Euler-characteristic count
    /// they rest on (for XY − 1 one gets ρ_π = Σ instead).
    pub single_point_at_infinity: bool,
    pub zeta: Option<i64>,
    /// ρ_π − (1 − |𝒱_∞| + Σ_{c ∈ defset} (ρ_π − ρ_a(f − c))).
    pub jungian_residual: Option<i64>,
    pub bounds: BoundCheck,
}

/// Full rank analysis of the special pencil of f.
pub fn rank_report(f: &BPoly<Q>) -> Result<RankReport> {
    let data = RankData::new(f)?;
    let g = &data.pencil.f;
    let rho_pi = data.rho_pi();
    let mut members = Vec::new();
    let mut def_factors = Vec::new();
    let mut sum = 0i64;
    for phi in &data.defset_candidates()?.factors {
        let ra = data.rho_a_at(phi);
        if ra != rho_pi {
            sum += (rho_pi - ra) * phi.deg() as i64;
            members.push(DefMember { value: FiberValue::Finite(phi.clone()), rho_a: ra });
            def_factors.push(phi.clone());
        }
    }
    let defset = AlgebraicSet::from_irreducibles(def_factors);
    let v_infinity: usize = points_at_infinity(g)?.iter().map(|p| p.count).sum();
    let single = v_infinity == 1;
    let zeta = single.then(|| -(v_infinity as i64) - rho_pi + sum);
    let jungian_residual = single.then(|| rho_pi - (1 - v_infinity as i64 + sum));
    let rho_a_f = rho_a(g)?;
    let radical = g.squarefree()?.iter().all(|(_, e)| *e == 1);
    let rho_a_radical = if radical { Some(rho_a_radical(g)?) } else { None };

    let sing = singset(&data.pencil)?.set;
    let mult = multset(&data.pencil)?.set;
    let deg_h = data.h_hat.deg_y().max(0) as usize;
    let singset_bound = 1 + rho_a_f + 2 * deg_h as i64;
    let defset_bound = 1 + rho_a_f + deg_h as i64;
    let zero = AlgebraicSet::from_rationals(&[Q::from_integer(0.into())]);
    let corrected = defset.minus(&mult).minus(&zero).len();
    let corrected_bound = rho_a_f + v_infinity as i64 - 1 + deg_h as i64;
    let bounds = BoundCheck {
        singset_size: sing.len(),
        multset_size: mult.len(),
        defset_size: defset.len(),
        rho_a: rho_a_f,
        deg_h_hat: deg_h,
        v_infinity,
        inclusion: sing.minus(&mult).is_subset(&defset),
        singset_bound,
        singset_bound_holds: sing.len() as i64 <= singset_bound,
        defset_bound,
        defset_bound_holds: defset.len() as i64 <= defset_bound,
        corrected_defset_size: corrected,
        corrected_defset_bound: corrected_bound,
        corrected_defset_bound_holds: corrected as i64 <= corrected_bound,
    };
    Ok(RankReport {
        n: data.n,
        h_hat: data.h_hat.render("X", "Y"),
        f_prime: data.f_prime.render("X", "Y"),
        rho_a: rho_a_f,
        rho_a_radical,
        rho_pi,
        defset,
        defset_members: members,
        v_infinity,
        single_point_at_infinity: single,
        zeta,
        jungian_residual,
        bounds,
    })
}

/// Outcome of the randomized rank consistency checks.
#[derive(Clone, Debug, Serialize)]
pub struct RankChecks {
    /// (c₀, ρ_a(f − c₀)) at parameters outside every candidate set; each must
    /// equal ρ_π.
    pub generic: Vec<(String, i64)>,
    /// (c, ρ_a(f − c)) at random parameters outside multset; each ≤ ρ_π.
    pub upper: Vec<(String, i64)>,
    pub rho_pi: i64,
    pub generic_ok: bool,
    pub upper_ok: bool,
}

/// ρ_π = ρ_a(f − c₀) at `n_generic` random c₀ and ρ_π ≥ ρ_a(f − c) at
/// `n_upper` random c, with ρ_a evaluated by the direct formula.
pub fn rank_checks(f: &BPoly<Q>, seed: u64, n_generic: usize, n_upper: usize) -> Result<RankChecks> {
    let data = RankData::new(f)?;
    let g = &data.pencil.f;
    let rho_pi = data.rho_pi();
    let cand = data.defset_candidates()?;
    let mult = multset(&data.pencil)?.set;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |avoid: &AlgebraicSet| loop {
        let c = Q::new(rng.gen_range(-60i64..=60).into(), rng.gen_range(1i64..=5).into());
        if !avoid.contains_rational(&c) {
            return c;
        }
    };
    let mut generic = Vec::new();
    for _ in 0..n_generic {
        let c = draw(&cand);
        generic.push((c.to_string(), rho_a(&(g - &BPoly::constant(c.clone())))?));
    }
    let mut upper = Vec::new();
    for _ in 0..n_upper {
        let c = draw(&mult);
        upper.push((c.to_string(), rho_a(&(g - &BPoly::constant(c.clone())))?));
    }
    Ok(RankChecks {
        generic_ok: generic.iter().all(|(_, r)| *r == rho_pi),
        upper_ok: upper.iter().all(|(_, r)| *r <= rho_pi),
        generic,
        upper,
        rho_pi,
    })
}

/// defset recomputed after the extra shear X ↦ X + s·Y equals the original.
pub fn defset_shear_stable(f: &BPoly<Q>, s: i64) -> Result<bool> {
    let a = rank_report(f)?.defset;
    let b = rank_report(&shear_i(f, s))?.defset;
    Ok(a == b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;
    use crate::intersect::i_hat;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn rho_a_values() {
        assert_eq!(rho_a(&bq(&[(0, 2, 1), (3, 0, -1)])).unwrap(), 0);
        assert_eq!(rho_a(&bq(&[(0, 2, 1)])).unwrap(), 0);
        assert_eq!(rho_a(&bq(&[(0, 2, 1), (0, 0, -5)])).unwrap(), -1);
        assert_eq!(rho_a(&bq(&[(0, 3, 1), (0, 1, -3)])).unwrap(), -2);
        assert_eq!(rho_a_radical(&bq(&[(0, 2, 1), (3, 0, -1)])).unwrap(), 0);
        assert_eq!(rho_a(&bq(&[(1, 1, 1), (0, 0, -1)])).unwrap(), 1);
        assert_eq!(rho_a(&bq(&[(1, 1, 1)])).unwrap(), 0);
        assert!(rho_a(&bq(&[(0, 0, 3)])).is_err());
    }

    #[test]
    fn rho_pi_values() {
        for (f, want) in [
            (bq(&[(0, 2, 1), (3, 0, -1)]), 2),
            (bq(&[(0, 3, 1), (0, 1, -3)]), -2),
            (bq(&[(0, 2, 1)]), -1),
        ] {
            let d = RankData::new(&f).unwrap();
            assert_eq!(d.rho_pi(), want);
            let ih = i_hat(&d.f_prime, &d.pencil.f).unwrap().value.finite().unwrap() as i64;
            assert_eq!(1 - d.n as i64 + ih, want);
        }
    }

    #[test]
    fn fast_and_direct_agree() {
        let f = bq(&[(0, 3, 1), (0, 1, -3), (2, 0, 1)]);
        let d = RankData::new(&f).unwrap();
        for c in [-2i64, 0, 2, 3] {
            let phi = UPoly::linear_root(&q_int(c));
            let direct = rho_a(&(&d.pencil.f - &BPoly::constant(q_int(c)))).unwrap();
            assert_eq!(d.rho_a_at(&phi), direct, "c = {c}");
        }
    }

    #[test]
    fn reports() {
        let r = rank_report(&bq(&[(0, 3, 1), (0, 1, -3)])).unwrap();
        assert_eq!((r.rho_pi, r.v_infinity, r.zeta, r.jungian_residual), (-2, 1, Some(-1), Some(0)));
        assert_eq!(r.defset.rationals(), vec![q_int(-2), q_int(2)]);
        assert!(r.defset_members.iter().all(|m| m.rho_a == -1));
        // The cardinality statement with 1 + ρ_a(f) + deg ĥ = 1 fails here
        // (|defset| = 2); the version carrying |𝒱_∞| − 1 holds.
        assert!(!r.bounds.defset_bound_holds);
        assert!(r.bounds.corrected_defset_bound_holds && r.bounds.singset_bound_holds && r.bounds.inclusion);

        let r = rank_report(&bq(&[(0, 2, 1), (3, 0, -1)])).unwrap();
        assert_eq!((r.rho_pi, r.zeta, r.jungian_residual), (2, Some(-1), Some(0)));
        assert_eq!(r.defset.rationals(), vec![q_int(0)]);
        assert_eq!(r.defset_members[0].rho_a, 0);
        assert_eq!(r.rho_a_radical, Some(0));

        let r = rank_report(&bq(&[(0, 2, 1)])).unwrap();
        assert_eq!((r.rho_pi, r.zeta, r.jungian_residual), (-1, Some(-1), Some(0)));
        assert_eq!(r.defset.rationals(), vec![q_int(0)]);

        // Two points at infinity: ranks and defset are still defined.
        let r = rank_report(&bq(&[(1, 1, 1), (0, 0, -1)])).unwrap();
        assert_eq!((r.rho_pi, r.v_infinity, r.zeta), (1, 2, None));
        assert_eq!(r.defset.rationals(), vec![q_int(-1)]);
        assert_eq!(r.defset_members[0].rho_a, 0);
    }

    #[test]
    fn multiple_fibers() {
        // Degree form Y^N with a nontrivial ĥ.
        let yx = bq(&[(0, 2, 1), (1, 0, 1)]);
        for f in [
            &yx.pow(2) * &bq(&[(0, 1, 1), (0, 0, 1)]),
            &bq(&[(0, 2, 1)]) * &yx,
            &yx.pow(3) + &bq(&[(0, 1, 1)]),
            yx.pow(2),
        ] {
            let r = rank_report(&f).unwrap();
            assert_eq!((r.zeta, r.jungian_residual), (Some(-1), Some(0)), "{}: {r:?}", f.render("X", "Y"));
            assert!(r.bounds.inclusion && r.bounds.corrected_defset_bound_holds, "{r:?}");
        }
    }

    #[test]
    fn randomized_checks() {
        let f = bq(&[(0, 3, 1), (1, 1, 2), (2, 0, -1), (0, 0, 1)]);
        let c = rank_checks(&f, 3, 2, 5).unwrap();
        assert!(c.generic_ok && c.upper_ok, "{c:?}");
        assert!(defset_shear_stable(&f, 2).unwrap());
    }
}
