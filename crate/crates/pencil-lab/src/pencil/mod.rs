//! The finite sets attached to a pencil f − c·w: singular, multiple,
//! reducible (with refined multiplicity structure), prim and uni members,
//! compositeness and the refined-redset comparison.
//!
//! Every set is invariant under the linear automorphism applied by
//! [`normalize`], so values computed on the normalized pair are reported
//! unchanged for the input pencil.

mod binary;
mod fiber;
mod primefield;
mod sets;

use serde::Serialize;

use crate::arith::residue::{shear_i, y_monic_shear};
use crate::arith::{BPoly, Field, Q};
use crate::error::{Error, Result};

pub use binary::is_binary_pencil;
pub use fiber::{refine_fiber, FiberValue, Layer, RefinedFiber};
pub use primefield::{singset_prime_field, PrimeFieldSingset};
pub use sets::{
    is_composite, multset, primset, redset_refined, refset_equal, places_bound_check, singset, Composite, MultMember,
    Multset, PrimMember, Primset, RedMember, Redset, RefsetComparison, PlacesBoundCheck, Singset,
};

/// A normalized pencil together with the map back to the input.
#[derive(Clone, Debug)]
pub struct Pencil {
    /// Input pair (w = 1 for a special pencil given without w).
    pub original_f: BPoly<Q>,
    pub original_w: BPoly<Q>,
    /// Working pair in normalized coordinates.  For a special pencil `w` is
    /// the constant 1 and `f` is the input f divided by the input constant.
    pub f: BPoly<Q>,
    pub w: BPoly<Q>,
    /// w is constant.
    pub special: bool,
    /// f and w are binary forms of one degree (every fiber is a union of
    /// lines through the origin); such pencils skip the shear.
    pub binary: bool,
    /// The normalizing shear X ↦ X + λ·Y; its inverse is X ↦ X − λ·Y.
    pub shear: i64,
    /// Y-degree of the normalized f (equal to its total degree).
    pub n: usize,
    /// When deg f = deg w with proportional degree forms, the pair
    /// (w, f − κ·w) of distinct degrees and the constant κ: the fiber
    /// f − c·w equals (f − κ·w) − (c − κ)·w.
    pub mobius: Option<(BPoly<Q>, BPoly<Q>, Q)>,
    pub notes: Vec<String>,
}

/// Serializable summary of a normalization.
#[derive(Clone, Debug, Serialize)]
pub struct NormalizationInfo {
    pub special: bool,
    pub binary: bool,
    pub shear: i64,
    pub inverse_shear: i64,
    pub n: usize,
    pub f: String,
    pub w: String,
    pub notes: Vec<String>,
}

impl Pencil {
    /// The fiber f − c·w in normalized coordinates.
    pub fn fiber(&self, c: &Q) -> BPoly<Q> {
        &self.f - &self.w.scale(c)
    }

    /// Undo the normalizing shear on a polynomial in normalized coordinates.
    pub fn to_input_coordinates(&self, g: &BPoly<Q>) -> BPoly<Q> {
        shear_i(g, -self.shear)
    }

    pub fn info(&self, vx: &str, vy: &str) -> NormalizationInfo {
        NormalizationInfo {
            special: self.special,
            binary: self.binary,
            shear: self.shear,
            inverse_shear: -self.shear,
            n: self.n,
            f: self.f.render(vx, vy),
            w: self.w.render(vx, vy),
            notes: self.notes.clone(),
        }
    }
}

/// Bring a pencil into normal position.
///
/// * w absent or constant w0: the special pencil of f/w0 (same parameters c).
/// * Otherwise gcd(f, w) = 1 and deg f ≥ deg w are required.
/// * The shear X ↦ X + λ·Y with the smallest λ ≥ 0 making both degree
///   forms nonzero at (0, 1) is applied, so f and w have constant leading
///   Y-coefficients and Y-degrees equal to their total degrees.
/// * Pairs of binary forms of one degree are kept as they are.
pub fn normalize(f: &BPoly<Q>, w: Option<&BPoly<Q>>) -> Result<Pencil> {
    if f.is_constant() {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    let one = BPoly::one(&());
    let w_in = w.cloned().unwrap_or_else(|| one.clone());
    if w_in.is_zero() {
        return Err(Error::Precondition("w must be nonzero".into()));
    }
    let mut notes = Vec::new();
    if let Some(w0) = w_in.as_constant() {
        let fs = f.scale(&w0.inverse().expect("nonzero constant"));
        if !w0.is_one() {
            notes.push(format!("constant w = {w0}: special pencil of f/{w0} with the same parameters"));
        }
        let lambda = y_monic_shear(&[&fs]);
        let fs = shear_i(&fs, lambda);
        return Ok(Pencil {
            n: fs.deg_y() as usize,
            original_f: f.clone(),
            original_w: w_in,
            f: fs,
            w: one,
            special: true,
            binary: false,
            shear: lambda,
            mobius: None,
            notes,
        });
    }
    if !f.gcd(&w_in).is_constant() {
        return Err(Error::CommonFactor);
    }
    if f.total_deg() < w_in.total_deg() {
        return Err(Error::Precondition("deg f must be at least deg w".into()));
    }
    if let Some(a) = dependence_ratio(f, &w_in) {
        notes.push(format!(
            "f, w, 1 are linearly dependent (w − ({a})·f is constant): every fiber is a fiber of the special pencil of f"
        ));
    }
    if is_binary_pencil(f, &w_in) {
        notes.push("f and w are binary forms of one degree: fibers are unions of lines through the base point (0, 0)".into());
        return Ok(Pencil {
            n: f.total_deg() as usize,
            original_f: f.clone(),
            original_w: w_in.clone(),
            f: f.clone(),
            w: w_in,
            special: false,
            binary: true,
            shear: 0,
            mobius: None,
            notes,
        });
    }
    let lambda = y_monic_shear(&[f, &w_in]);
    let fs = shear_i(f, lambda);
    let ws = shear_i(&w_in, lambda);
    let mut mobius = None;
    if fs.total_deg() == ws.total_deg() {
        let (ff, wf) = (fs.degree_form(), ws.degree_form());
        let kappa = ff.lc_y().lc() / wf.lc_y().lc();
        if (&ff - &wf.scale(&kappa)).is_zero() {
            let lower = &fs - &ws.scale(&kappa);
            notes.push(format!(
                "equal degrees with proportional degree forms: the pair (w, f − ({kappa})·w) has distinct degrees"
            ));
            mobius = Some((ws.clone(), lower, kappa));
        } else {
            notes.push("equal degrees with independent degree forms: no pair of the pencil has distinct degrees".into());
        }
    }
    Ok(Pencil {
        n: fs.deg_y() as usize,
        original_f: f.clone(),
        original_w: w_in,
        f: fs,
        w: ws,
        special: false,
        binary: false,
        shear: lambda,
        mobius,
        notes,
    })
}

/// a with w − a·f constant, if any.
fn dependence_ratio(f: &BPoly<Q>, w: &BPoly<Q>) -> Option<Q> {
    let terms = f.terms();
    let (&(i, j), fc) = terms.iter().rev().find(|((i, j), _)| i + j > 0)?;
    let a = w.coeff(i, j) / fc;
    (w - &f.scale(&a)).is_constant().then_some(a)
}
