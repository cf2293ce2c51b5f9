//! Refined structure of one fiber: squarefree layers with their absolute
//! factor counts.

use serde::{Serialize, Serializer};

use crate::absfactor::{absolute_factor_count_nf, absolute_factor_count_q, rational_factor_count};
use crate::arith::modular::primitive_q;
use crate::arith::nf::{Nf, NumberField};
use crate::arith::roots::AlgebraicNumber;
use crate::arith::{BPoly, UPoly, Q};
use crate::error::Result;

/// A pencil parameter: a Galois orbit of algebraic numbers given by its
/// minimal polynomial, or ∞ (the fiber w = 0).
#[derive(Clone, Debug, PartialEq)]
pub enum FiberValue {
    Finite(UPoly<Q>),
    Infinity,
}

impl FiberValue {
    pub fn rational(c: &Q) -> Self {
        FiberValue::Finite(primitive_q(&UPoly::linear_root(c)))
    }
    /// Number of conjugate parameters in the orbit.
    pub fn conjugates(&self) -> usize {
        match self {
            FiberValue::Finite(p) => p.deg() as usize,
            FiberValue::Infinity => 1,
        }
    }
    pub fn as_rational(&self) -> Option<Q> {
        match self {
            FiberValue::Finite(p) if p.deg() == 1 => Some(-(p.c[0].clone() / &p.c[1])),
            _ => None,
        }
    }
    pub fn render(&self) -> String {
        match self {
            FiberValue::Infinity => "∞".into(),
            FiberValue::Finite(p) => match self.as_rational() {
                Some(q) => q.to_string(),
                None => AlgebraicNumber::conjugates(p)
                    .iter()
                    .map(|a| a.render())
                    .collect::<Vec<_>>()
                    .join(", "),
            },
        }
    }
}

impl Serialize for FiberValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

/// Factors of one multiplicity in a fiber.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Layer {
    /// Multiplicity e of every factor in the layer.
    pub multiplicity: u32,
    /// Number of absolutely irreducible factors of the layer.
    pub count: usize,
    /// Y-degree of the layer.
    pub deg_y: usize,
}

/// Squarefree layers of the fiber at one parameter (of one conjugate in an
/// orbit: all conjugates share the structure).
#[derive(Clone, Debug, Serialize)]
pub struct RefinedFiber {
    pub value: FiberValue,
    pub layers: Vec<Layer>,
    /// Σ e·(number of Q-irreducible factors) for rational parameters.
    pub rational_weighted_count: Option<usize>,
}

impl RefinedFiber {
    /// The exponent sequence: each layer's multiplicity repeated `count`
    /// times, nondecreasing.
    pub fn exponents(&self) -> Vec<u32> {
        let mut e: Vec<u32> = self.layers.iter().flat_map(|l| std::iter::repeat_n(l.multiplicity, l.count)).collect();
        e.sort_unstable();
        e
    }
    /// Σ count·e over the layers.
    pub fn weighted_count(&self) -> usize {
        self.layers.iter().map(|l| l.count * l.multiplicity as usize).sum()
    }
    /// Reducible over the algebraic closure (as a polynomial, counting
    /// multiplicity).
    pub fn is_reducible(&self) -> bool {
        self.weighted_count() > 1
    }
    /// A single layer of multiplicity μ > 1: the fiber is a constant times
    /// a μ-th power.
    pub fn prim_exponent(&self) -> Option<u32> {
        match self.layers.as_slice() {
            [l] if l.multiplicity > 1 => Some(l.multiplicity),
            _ => None,
        }
    }
    pub fn deg_y(&self) -> usize {
        self.layers.iter().map(|l| l.deg_y * l.multiplicity as usize).sum()
    }
}

/// Refined structure of f − c·w for one parameter orbit (w itself at ∞),
/// computed over Q(c).
pub fn refine_fiber(f: &BPoly<Q>, w: &BPoly<Q>, value: &FiberValue) -> Result<RefinedFiber> {
    match value {
        FiberValue::Infinity => refine_rational(w, value),
        FiberValue::Finite(phi) if phi.deg() == 1 => {
            let c = value.as_rational().expect("linear");
            refine_rational(&(f - &w.scale(&c)), value)
        }
        FiberValue::Finite(phi) => {
            let k = NumberField::new(phi);
            let theta = Nf::generator(&k);
            let fk: BPoly<Nf> = f.map(&k, |c| Nf::from_q(c, &k));
            let wk: BPoly<Nf> = w.map(&k, |c| Nf::from_q(c, &k));
            let fiber = &fk - &wk.scale(&theta);
            let mut layers = Vec::new();
            for (g, e) in fiber.squarefree()? {
                layers.push(Layer { multiplicity: e, count: absolute_factor_count_nf(&g)?, deg_y: g.deg_y() as usize });
            }
            layers.sort_by_key(|l| l.multiplicity);
            Ok(RefinedFiber { value: value.clone(), layers, rational_weighted_count: None })
        }
    }
}

fn refine_rational(fiber: &BPoly<Q>, value: &FiberValue) -> Result<RefinedFiber> {
    let mut layers = Vec::new();
    let mut rational = 0;
    for (g, e) in fiber.squarefree()? {
        layers.push(Layer { multiplicity: e, count: absolute_factor_count_q(&g)?, deg_y: g.deg_y() as usize });
        rational += e as usize * rational_factor_count(&g)?;
    }
    layers.sort_by_key(|l| l.multiplicity);
    let rational_weighted_count = if matches!(value, FiberValue::Infinity) || value.as_rational().is_some() {
        Some(rational)
    } else {
        None
    };
    Ok(RefinedFiber { value: value.clone(), layers, rational_weighted_count })
}
