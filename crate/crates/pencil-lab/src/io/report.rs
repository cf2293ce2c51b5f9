//! The `pencil-lab/1` report document: assembly from the pipelines, JSON
//! serialization and the plain-text rendering.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use crate::arith::modular::primitive_int;
use crate::arith::roots::{AlgebraicNumber, AlgebraicSet};
use crate::arith::{BPoly, UPoly, Q};
use crate::error::{Error, Result};
use crate::pencil::{
    is_composite, multset, normalize, primset, redset_refined, places_bound_check, singset, Composite, FiberValue,
    NormalizationInfo, Pencil, Primset, Redset, PlacesBoundCheck,
};
use crate::rank::{rank_report, BoundCheck, RankReport};

use super::parse::{to_json_terms, unparse};

pub const SCHEMA: &str = "pencil-lab/1";

/// The sets a report can carry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SetKind {
    Singset,
    Multset,
    Redset,
    Primset,
    Uniset,
    Composite,
}

impl SetKind {
    pub const ALL: [SetKind; 6] =
        [SetKind::Singset, SetKind::Multset, SetKind::Redset, SetKind::Primset, SetKind::Uniset, SetKind::Composite];

    pub fn name(self) -> &'static str {
        match self {
            SetKind::Singset => "singset",
            SetKind::Multset => "multset",
            SetKind::Redset => "redset",
            SetKind::Primset => "primset",
            SetKind::Uniset => "uniset",
            SetKind::Composite => "composite",
        }
    }

    /// `all` or a comma-separated list of set names (`refset` is an alias
    /// of `redset`, whose members carry their exponent sequences).
    pub fn parse_list(s: &str) -> Result<Vec<SetKind>> {
        let mut out = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let name = part.trim();
            match name {
                "all" => out.extend(SetKind::ALL),
                "refset" => out.push(SetKind::Redset),
                _ => match SetKind::ALL.iter().find(|k| k.name() == name) {
                    Some(k) => out.push(*k),
                    None => {
                        return Err(Error::Parse { offset, msg: format!("unknown set '{name}'") });
                    }
                },
            }
            offset += part.len() + 1;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub vars: [String; 2],
    pub sets: Vec<SetKind>,
    pub rank: bool,
    pub seed: u64,
    /// Include wall-clock timings (makes the document nondeterministic).
    pub timing: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            vars: ["X".into(), "Y".into()],
            sets: SetKind::ALL.to_vec(),
            rank: false,
            seed: 0,
            timing: false,
        }
    }
}

/// One algebraic number of a set.
#[derive(Clone, Debug, Serialize)]
pub struct MemberJson {
    pub value: String,
    /// Primitive integer minimal polynomial, constant term first.
    pub minpoly: Vec<String>,
    /// Isolating rectangle [re_lo, re_hi, im_lo, im_hi].
    #[serde(rename = "box")]
    pub isolating_box: [String; 4],
    pub rational: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_reducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_a: Option<i64>,
}

/// Extra per-member data keyed by the minimal polynomial.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MemberExtra {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_reducible: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rho_a: Option<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SetBlock {
    /// Primitive integer defining polynomial of the finite part, constant
    /// term first.
    pub defining: Vec<String>,
    pub members: Vec<MemberJson>,
    /// ∞ belongs to the projectivized set.
    pub infinity: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub infinity_detail: Option<MemberExtra>,
    pub annotations: Vec<String>,
}

fn int_coeffs(p: &UPoly<Q>) -> Vec<String> {
    if p.deg() < 0 {
        return vec![];
    }
    primitive_int(p).iter().map(|c| c.to_string()).collect()
}

fn member_json(m: &AlgebraicNumber, extra: &MemberExtra) -> MemberJson {
    let r = &m.rect;
    MemberJson {
        value: m.render(),
        minpoly: int_coeffs(&m.minpoly),
        isolating_box: [r.re_lo.to_string(), r.re_hi.to_string(), r.im_lo.to_string(), r.im_hi.to_string()],
        rational: m.as_rational().is_some(),
        mu: extra.mu,
        exponents: extra.exponents.clone(),
        rational_reducible: extra.rational_reducible,
        rho_a: extra.rho_a,
    }
}

fn set_block(
    set: &AlgebraicSet,
    extras: &[(FiberValue, MemberExtra)],
    annotations: Vec<String>,
) -> SetBlock {
    let mut members: Vec<&AlgebraicNumber> = set.members.iter().collect();
    members.sort_by(|a, b| a.report_cmp(b));
    let lookup = |m: &AlgebraicNumber| {
        extras
            .iter()
            .find(|(v, _)| matches!(v, FiberValue::Finite(q) if *q == m.minpoly))
            .map(|(_, e)| e.clone())
            .unwrap_or_default()
    };
    let infinity_detail = extras.iter().find(|(v, _)| *v == FiberValue::Infinity).map(|(_, e)| e.clone());
    SetBlock {
        defining: int_coeffs(&set.defining()),
        members: members.iter().map(|m| member_json(m, &lookup(m))).collect(),
        infinity: infinity_detail.is_some(),
        infinity_detail,
        annotations,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InputEcho {
    pub vars: [String; 2],
    pub f: String,
    pub w: Option<String>,
    pub f_terms: Vec<((usize, usize), String)>,
    pub w_terms: Option<Vec<((usize, usize), String)>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RankBlock {
    #[serde(flatten)]
    pub report: RankReport,
    pub defset: SetBlock,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BoundsBlock {
    /// |redset| ≤ τ(generic fiber) − 1 for noncomposite special pencils.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub redset_places: Option<PlacesBoundCheck>,
    /// singset/defset inclusion and cardinality statements.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defset: Option<BoundCheck>,
    /// |primset₊| ≤ 4 for general pencils.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub primset_plus: Option<PrimsetPlusBound>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimsetPlusBound {
    pub size: usize,
    pub mu_pattern: Vec<u32>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub input: InputEcho,
    pub normalization: NormalizationInfo,
    pub sets: BTreeMap<&'static str, SetBlock>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composite: Option<Composite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<RankBlock>,
    pub bounds: BoundsBlock,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, f64>>,
}

struct Timer {
    on: bool,
    laps: BTreeMap<&'static str, f64>,
}

impl Timer {
    fn run<T>(&mut self, name: &'static str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            self.laps.insert(name, t.elapsed().as_secs_f64() * 1e3);
        }
        out
    }
}

fn redset_extras(r: &Redset) -> Vec<(FiberValue, MemberExtra)> {
    r.members
        .iter()
        .chain(r.infinity.iter())
        .map(|m| {
            (
                m.fiber.value.clone(),
                MemberExtra {
                    exponents: Some(m.fiber.exponents()),
                    rational_reducible: m.rational_reducible,
                    ..Default::default()
                },
            )
        })
        .collect()
}

fn prim_extras(p: &Primset, uni: bool) -> Vec<(FiberValue, MemberExtra)> {
    p.members
        .iter()
        .filter(|m| match &m.value {
            FiberValue::Infinity => !uni || p.uni_infinity,
            FiberValue::Finite(q) => !uni || p.uniset.contains_factor(q),
        })
        .map(|m| (m.value.clone(), MemberExtra { mu: Some(m.mu), ..Default::default() }))
        .collect()
}

/// Run the requested pipelines on f (and w) and assemble the report.
pub fn analyze(f: &BPoly<Q>, w: Option<&BPoly<Q>>, opts: &AnalyzeOptions) -> Result<Report> {
    let vars = [opts.vars[0].as_str(), opts.vars[1].as_str()];
    let mut timer = Timer { on: opts.timing, laps: BTreeMap::new() };
    let pencil: Pencil = timer.run("normalize", || normalize(f, w))?;
    let want = |k: SetKind| opts.sets.contains(&k);
    let mut sets = BTreeMap::new();
    let mut notes = Vec::new();
    let mut bounds = BoundsBlock::default();

    let composite = if want(SetKind::Composite) || want(SetKind::Redset) {
        Some(timer.run("composite", || is_composite(&pencil))?)
    } else {
        None
    };
    if want(SetKind::Singset) {
        let s = timer.run("singset", || singset(&pencil))?;
        let mut ann = s.notes.clone();
        ann.push(format!("values from curve components: {}", s.curve_values.render()));
        ann.push(format!("values from isolated critical points: {}", s.point_values.render()));
        let extras: Vec<_> = s.infinity.then(|| (FiberValue::Infinity, MemberExtra::default())).into_iter().collect();
        sets.insert("singset", set_block(&s.set, &extras, ann));
    }
    if want(SetKind::Multset) {
        let m = timer.run("multset", || multset(&pencil))?;
        let mut ann = Vec::new();
        if let Some(b) = m.product_identity {
            ann.push(format!("gcd of the partials equals the product of the multiple parts: {b}"));
        }
        let extras: Vec<_> =
            m.infinity.as_ref().map(|_| (FiberValue::Infinity, MemberExtra::default())).into_iter().collect();
        sets.insert("multset", set_block(&m.set, &extras, ann));
    }
    let mut red: Option<Redset> = None;
    if want(SetKind::Redset) {
        let r = timer.run("redset", || redset_refined(&pencil))?;
        let mut ann = r.notes.clone();
        if r.composite.as_ref().is_some_and(|c| c.composite) {
            ann.push("composite pencil: every fiber is reducible".into());
        }
        ann.push(format!("candidates examined: {}", r.candidates.render()));
        sets.insert("redset", set_block(&r.set, &redset_extras(&r), ann));
        red = Some(r);
    }
    if want(SetKind::Primset) || want(SetKind::Uniset) {
        let p = timer.run("primset", || primset(&pencil))?;
        if want(SetKind::Primset) {
            sets.insert("primset", set_block(&p.set, &prim_extras(&p, false), vec![]));
        }
        if want(SetKind::Uniset) {
            sets.insert(
                "uniset",
                set_block(&p.uniset, &prim_extras(&p, true), vec!["members whose fiber is a power of one irreducible polynomial over Q".into()]),
            );
        }
        if !pencil.special {
            let size = p.plus_size();
            bounds.primset_plus = Some(PrimsetPlusBound { size, mu_pattern: p.mu_pattern(), holds: size <= 4 });
        }
    }
    let is_comp = composite.as_ref().is_some_and(|c| c.composite);
    if let Some(r) = &red {
        if pencil.special && !is_comp {
            bounds.redset_places = Some(timer.run("redset_places", || places_bound_check(&pencil, r, opts.seed))?);
        }
    }
    let mut rank = None;
    if opts.rank {
        if !pencil.special {
            return Err(Error::Precondition("ranks are defined for special pencils (constant w) only".into()));
        }
        let r = timer.run("rank", || rank_report(&pencil.f))?;
        if r.zeta.is_some_and(|z| z != -1) || r.jungian_residual.is_some_and(|j| j != 0) {
            return Err(Error::Internal(format!(
                "rank consistency check failed: zeta = {:?}, jungian residual = {:?}",
                r.zeta, r.jungian_residual
            )));
        }
        if !r.single_point_at_infinity {
            notes.push(format!(
                "the degree form has {} distinct linear factors: zeta and the jungian identity are not evaluated",
                r.v_infinity
            ));
        }
        let extras: Vec<_> = r
            .defset_members
            .iter()
            .map(|m| (m.value.clone(), MemberExtra { rho_a: Some(m.rho_a), ..Default::default() }))
            .collect();
        let defset = set_block(&r.defset, &extras, vec![format!("rho_a elsewhere equals rho_pi = {}", r.rho_pi)]);
        bounds.defset = Some(r.bounds.clone());
        rank = Some(RankBlock { report: r, defset });
    }
    notes.extend(pencil.notes.iter().cloned());
    Ok(Report {
        schema: SCHEMA,
        input: InputEcho {
            vars: opts.vars.clone(),
            f: unparse(&pencil.original_f, vars),
            w: w.map(|w| unparse(w, vars)),
            f_terms: to_json_terms(&pencil.original_f),
            w_terms: w.map(to_json_terms),
        },
        normalization: pencil.info(vars[0], vars[1]),
        sets,
        composite: if want(SetKind::Composite) { composite } else { None },
        rank,
        bounds,
        notes,
        timing_ms: opts.timing.then_some(timer.laps),
    })
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain text with sets written as `redset(f) = {-2, -1}`.
    pub fn to_text(&self) -> String {
        let general = self.input.w.is_some();
        let args = if general { "f,w" } else { "f" };
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("f = {}", self.input.f));
        if let Some(w) = &self.input.w {
            line(format!("w = {w}"));
        }
        let n = &self.normalization;
        if n.shear != 0 {
            let [vx, vy] = &self.input.vars;
            let step = if n.shear == 1 { vy.clone() } else { format!("{}*{vy}", n.shear) };
            line(format!("normalized by {vx} -> {vx} + {step}: f = {}", n.f));
        }
        for note in &self.notes {
            line(format!("note: {note}"));
        }
        let render = |b: &SetBlock, with: &dyn Fn(&MemberJson) -> String| {
            let mut items: Vec<String> = b.members.iter().map(|m| format!("{}{}", m.value, with(m))).collect();
            if b.infinity {
                let mu = b.infinity_detail.as_ref().and_then(|d| d.mu).map(|m| format!(" (mu = {m})")).unwrap_or_default();
                items.push(format!("∞{mu}"));
            }
            format!("{{{}}}", items.join(", "))
        };
        for kind in SetKind::ALL {
            let name = kind.name();
            let Some(b) = self.sets.get(name) else { continue };
            let plus = if b.infinity { "_+" } else { "" };
            let body = match name {
                "redset" => render(b, &|m| {
                    m.exponents.as_ref().map(|e| format!(" {e:?}")).unwrap_or_default()
                }),
                "primset" | "uniset" => render(b, &|m| m.mu.map(|u| format!(" (mu = {u})")).unwrap_or_default()),
                _ => render(b, &|_| String::new()),
            };
            line(format!("{name}({args}){plus} = {body}"));
        }
        if let Some(c) = &self.composite {
            line(format!("composite: {} (absolute factors of the generic fiber: {})", c.composite, c.generic_count));
        }
        if let Some(r) = &self.rank {
            let q = &r.report;
            line(format!("N = {}, rho_a(f) = {}, rho_pi(f) = {}", q.n, q.rho_a, q.rho_pi));
            line(format!(
                "defset(f) = {}",
                render(&r.defset, &|m| m.rho_a.map(|v| format!(" (rho_a = {v})")).unwrap_or_default())
            ));
            let opt = |v: Option<i64>| v.map_or("not evaluated".to_string(), |v| v.to_string());
            line(format!(
                "|V_inf(f)| = {}, zeta(f) = {}, jungian residual = {}",
                q.v_infinity,
                opt(q.zeta),
                opt(q.jungian_residual)
            ));
        }
        if let Some(b) = &self.bounds.redset_places {
            line(format!("|redset(f)| = {} <= places at infinity - 1: {}", b.redset_size, b.holds));
        }
        if let Some(b) = &self.bounds.defset {
            line(format!("singset \\ multset ⊆ defset: {}", b.inclusion));
            line(format!(
                "|singset| = {} <= 1 + rho_a + 2*deg h = {}: {}",
                b.singset_size, b.singset_bound, b.singset_bound_holds
            ));
            line(format!("|defset| = {} <= 1 + rho_a + deg h = {}: {}", b.defset_size, b.defset_bound, b.defset_bound_holds));
            line(format!(
                "|defset \\ multset \\ {{0}}| = {} <= rho_a + |V_inf| - 1 + deg h = {}: {}",
                b.corrected_defset_size, b.corrected_defset_bound, b.corrected_defset_bound_holds
            ));
        }
        if let Some(b) = &self.bounds.primset_plus {
            line(format!("|primset(f,w)_+| = {} <= 4: {} (mu pattern {:?})", b.size, b.holds, b.mu_pattern));
        }
        if let Some(t) = &self.timing_ms {
            for (k, v) in t {
                line(format!("time {k}: {v:.1} ms"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse::parse_polynomial;
    use super::*;

    const XY: [&str; 2] = ["X", "Y"];

    #[test]
    fn set_lists() {
        assert_eq!(SetKind::parse_list("all").unwrap(), SetKind::ALL.to_vec());
        assert_eq!(SetKind::parse_list("uniset, primset").unwrap(), vec![SetKind::Primset, SetKind::Uniset]);
        assert!(matches!(SetKind::parse_list("singset,bogus"), Err(Error::Parse { offset: 8, .. })));
    }

    #[test]
    fn cubic_report() {
        // Composite, yet the rank invariants are defined.
        let f = parse_polynomial("Y^3-3*Y", XY).unwrap();
        let opts = AnalyzeOptions { rank: true, ..Default::default() };
        let r = analyze(&f, None, &opts).unwrap();
        assert!(r.composite.as_ref().unwrap().composite);
        let rank = r.rank.as_ref().unwrap();
        assert_eq!((rank.report.rho_pi, rank.report.zeta), (-2, Some(-1)));
        // Canonical member order: x - 2 precedes x + 2.
        assert_eq!(rank.defset.members.iter().map(|m| m.value.as_str()).collect::<Vec<_>>(), vec!["2", "-2"]);
        let text = r.to_text();
        assert!(text.contains("singset(f) = {2, -2}"), "{text}");
        assert!(text.contains("defset(f) = {2 (rho_a = -1), -2 (rho_a = -1)}"), "{text}");
    }

    #[test]
    fn cusp_report() {
        let f = parse_polynomial("Y^2-X^3", XY).unwrap();
        let opts = AnalyzeOptions { rank: true, ..Default::default() };
        let r = analyze(&f, None, &opts).unwrap();
        let vals = |k: &str| r.sets[k].members.iter().map(|m| m.value.clone()).collect::<Vec<_>>();
        assert_eq!(vals("singset"), vec!["0"]);
        let rank = r.rank.as_ref().unwrap();
        assert_eq!((rank.report.rho_pi, rank.report.zeta), (2, Some(-1)));
        assert_eq!(rank.defset.members.iter().map(|m| m.value.as_str()).collect::<Vec<_>>(), vec!["0"]);
        let text = r.to_text();
        assert!(text.contains("singset(f) = {0}"), "{text}");
        assert!(text.contains("zeta(f) = -1"), "{text}");
        // Deterministic output.
        assert_eq!(r.to_json(), analyze(&f, None, &opts).unwrap().to_json());
        // The input echo parses back to the same polynomial.
        assert_eq!(parse_polynomial(&r.input.f, XY).unwrap(), f);
    }

    #[test]
    fn hyperbola_report() {
        let f = parse_polynomial("X*Y+1", XY).unwrap();
        let r = analyze(&f, None, &AnalyzeOptions::default()).unwrap();
        let red = &r.sets["redset"];
        assert_eq!(red.members.len(), 1);
        assert_eq!(red.members[0].value, "1");
        assert_eq!(red.members[0].minpoly, vec!["-1", "1"]);
        assert_eq!(red.members[0].exponents, Some(vec![1, 1]));
        assert_eq!(r.sets["singset"].members[0].value, "1");
        assert!(r.bounds.redset_places.as_ref().unwrap().holds);
    }

    #[test]
    fn rank_preconditions() {
        let f = parse_polynomial("Y^2-X^3", XY).unwrap();
        let w = parse_polynomial("X", XY).unwrap();
        let opts = AnalyzeOptions { rank: true, ..Default::default() };
        assert!(matches!(analyze(&f, Some(&w), &opts), Err(Error::Precondition(_))));
        let f = parse_polynomial("X", XY).unwrap();
        let w = parse_polynomial("X*Y", XY).unwrap();
        assert_eq!(analyze(&f, Some(&w), &AnalyzeOptions::default()).unwrap_err(), Error::CommonFactor);
    }
}
