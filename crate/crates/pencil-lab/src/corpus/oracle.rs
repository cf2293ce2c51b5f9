//! Brute-force oracles, independent of the main pipelines, for
//! differential testing.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::field::{is_prime_u64, Fp};
use crate::arith::linalg::rank;
use crate::arith::modular::{primitive_q, reduce_bq, reduce_q};
use crate::arith::resultant::{resultant_y, resultant_y_q};
use crate::arith::{BPoly, Field, Q};
use crate::error::{Error, Result};
use crate::pencil::{normalize, singset};

use super::random_bpoly;

/// Largest cap accepted by [`oracle_local_dimension`].
pub const LOCAL_DIMENSION_CAP: usize = 40;

/// Result of the local-quotient computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalDim {
    Finite(usize),
    /// The dimension exceeds the cap (possibly infinite).
    ExceedsCap,
}

/// dim_k of the local ring of the plane at (u, v) modulo (g, h), by linear
/// algebra on monomials: d(D) = dim k[X, Y]/((g, h) + 𝔪^D) is
/// nondecreasing in D, and d(D) = d(D + 1) forces 𝔪^D ⊂ (g, h) locally
/// (Nakayama), so the first repeated value is the answer.
pub fn oracle_local_dimension<F: Field>(g: &BPoly<F>, h: &BPoly<F>, u: &F, v: &F, cap: usize) -> Result<LocalDim> {
    if cap > LOCAL_DIMENSION_CAP {
        return Err(Error::Precondition(format!("cap must be at most {LOCAL_DIMENSION_CAP}")));
    }
    let g = g.translate(u, v);
    let h = h.translate(u, v);
    let ctx = g.ctx.clone();
    let (gt, ht) = (g.terms(), h.terms());
    let mut prev: Option<usize> = None;
    for d in 1.. {
        // Monomials X^i Y^j with i + j < d.
        let mut index = HashMap::new();
        for s in 0..d {
            for i in 0..=s {
                let n = index.len();
                index.insert((i, s - i), n);
            }
        }
        let ncols = index.len();
        let mut rows = Vec::new();
        for poly in [&gt, &ht] {
            for s in 0..d {
                for a in 0..=s {
                    let b = s - a;
                    let mut row = vec![F::zero(&ctx); ncols];
                    let mut any = false;
                    for ((i, j), c) in poly.iter() {
                        if let Some(&k) = index.get(&(i + a, j + b)) {
                            row[k] = c.clone();
                            any = true;
                        }
                    }
                    if any {
                        rows.push(row);
                    }
                }
            }
        }
        let dim = ncols - rank(&rows, ncols);
        if prev == Some(dim) {
            return Ok(LocalDim::Finite(dim));
        }
        if dim > cap {
            return Ok(LocalDim::ExceedsCap);
        }
        prev = Some(dim);
    }
    unreachable!()
}

/// Exhaustive results over F_p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeScan {
    pub p: u64,
    /// c with a point of f = c where both partials vanish (sorted).
    pub singular: Vec<u64>,
    /// Every c ∈ F_p is singular.
    pub all_singular: bool,
    /// c with gcd(f − c, f_X, f_Y) nonconstant (sorted).
    pub non_squarefree: Vec<u64>,
}

/// Scan all p² points of F_p² and all p fibers of f mod p (p ≤ 101).
pub fn oracle_primefield_scan(f: &BPoly<Q>, p: u64) -> Result<PrimeScan> {
    if !is_prime_u64(p) || p > 101 {
        return Err(Error::Precondition(format!("p = {p} must be a prime ≤ 101")));
    }
    let fp: BPoly<Fp> =
        reduce_bq(f, p).ok_or_else(|| Error::Precondition(format!("bad prime {p}: a denominator vanishes")))?;
    if fp.total_deg() != f.total_deg() {
        return Err(Error::Precondition(format!("bad prime {p}: the leading form vanishes")));
    }
    let (fx, fy) = (fp.dx(), fp.dy());
    let mut singular = BTreeSet::new();
    for a in 0..p {
        for b in 0..p {
            let (xa, yb) = (Fp::new(a, p), Fp::new(b, p));
            if fx.eval(&xa, &yb).is_zero() && fy.eval(&xa, &yb).is_zero() {
                singular.insert(fp.eval(&xa, &yb).v);
            }
        }
    }
    let mut non_squarefree = Vec::new();
    for c in 0..p {
        let g = &fp - &BPoly::constant(Fp::new(c, p));
        if !g.gcd(&fx).gcd(&fy).is_constant() {
            non_squarefree.push(c);
        }
    }
    Ok(PrimeScan { p, all_singular: singular.len() as u64 == p, singular: singular.into_iter().collect(), non_squarefree })
}

/// Whether p is good for comparing singset(f) reduced mod p with the scan:
/// p exceeds deg f, every reduction below keeps its degrees, and the
/// critical-point elimination commutes with reduction.
pub fn good_prime(f: &BPoly<Q>, p: u64) -> Result<bool> {
    if !is_prime_u64(p) || p <= f.total_deg().max(0) as u64 {
        return Ok(false);
    }
    let same_shape = |a: &BPoly<Q>| match reduce_bq(a, p) {
        Some(r) => r.deg_x() == a.deg_x() && r.deg_y() == a.deg_y() && r.total_deg() == a.total_deg(),
        None => false,
    };
    let pencil = normalize(f, None)?;
    let g = &pencil.f;
    let (fx, fy) = (g.dx(), g.dy());
    if !same_shape(g) || !same_shape(&fx) || !same_shape(&fy) {
        return Ok(false);
    }
    let common = fx.gcd(&fy);
    let (gp, fxp, fyp) = (reduce_bq(&common, p), reduce_bq(&fx, p).unwrap(), reduce_bq(&fy, p).unwrap());
    match gp {
        Some(gp) if gp.total_deg() == fxp.gcd(&fyp).total_deg() && gp.total_deg() == common.total_deg() => {}
        _ => return Ok(false),
    }
    let (a, b) = (fx.div_exact(&common).unwrap(), fy.div_exact(&common).unwrap());
    if !a.is_constant() && !b.is_constant() {
        if !same_shape(&a) || !same_shape(&b) {
            return Ok(false);
        }
        let r = resultant_y_q(&a, &b);
        let rp = resultant_y(&reduce_bq(&a, p).unwrap(), &reduce_bq(&b, p).unwrap());
        match reduce_q(&r, p) {
            Some(rr) if !rr.is_zero() && rr.deg() == r.deg() && rr == rp => {}
            _ => return Ok(false),
        }
    }
    let s = singset(&pencil)?.set.defining();
    Ok(reduce_q(&primitive_q(&s), p).is_some_and(|sp| sp.deg() == s.deg()))
}

/// Agreement of kernel operations over Q with their prime-field reductions.
#[derive(Clone, Debug, Serialize)]
pub struct KernelCheck {
    pub p: u64,
    /// Res_Y(g, h) mod p = Res_Y(g mod p, h mod p).
    pub resultant_agree: bool,
    /// gcd(d·g, d·h) mod p is proportional to the gcd of the reductions.
    pub gcd_agree: bool,
}

/// One seeded instance of the kernel differential check.
pub fn kernel_modp_check(seed: u64) -> KernelCheck {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [1009u64, 7919, 10007, 65521];
    let p = primes[rng.gen_range(0..primes.len())];
    let mut draw = |deg: usize| loop {
        let a = random_bpoly(&mut rng, deg, 0.6, 9);
        let keeps = reduce_bq(&a, p).is_some_and(|r| r.deg_y() == a.deg_y() && r.total_deg() == a.total_deg());
        if a.deg_y() > 0 && keeps {
            return a;
        }
    };
    let (g, h, d) = (draw(4), draw(4), draw(2));
    let (gp, hp) = (reduce_bq(&g, p).unwrap(), reduce_bq(&h, p).unwrap());
    let r = resultant_y_q(&g, &h);
    let resultant_agree = reduce_q(&r, p).is_some_and(|rr| rr == resultant_y(&gp, &hp));
    let (a, b) = (&d * &g, &d * &h);
    let gq = a.gcd(&b);
    let gcd_agree = match reduce_bq(&gq, p) {
        Some(gqp) => {
            let gmod = reduce_bq(&a, p).unwrap().gcd(&reduce_bq(&b, p).unwrap());
            gqp.total_deg() == gmod.total_deg() && gmod.divides(&gqp) && gq.divides(&d) && d.divides(&gq)
        }
        None => false,
    };
    KernelCheck { p, resultant_agree, gcd_agree }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::q_int;
    use crate::arith::field::qzero;
    use crate::intersect::{fulton, Mult};

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, c)| (i, j, q_int(c))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn local_dimensions() {
        let (o, z) = (qzero(), qzero());
        let dim = |g: BPoly<Q>, h: BPoly<Q>| oracle_local_dimension(&g, &h, &o, &z, 40).unwrap();
        assert_eq!(dim(bq(&[(1, 0, 1)]), bq(&[(0, 1, 1)])), LocalDim::Finite(1));
        assert_eq!(dim(bq(&[(0, 1, 1), (2, 0, -1)]), bq(&[(0, 1, 1)])), LocalDim::Finite(2));
        assert_eq!(dim(bq(&[(2, 0, -3)]), bq(&[(0, 1, 2)])), LocalDim::Finite(2));
        assert_eq!(dim(bq(&[(1, 0, 1), (0, 0, 1)]), bq(&[(0, 1, 1)])), LocalDim::Finite(0));
        // Common component through the point.
        assert_eq!(dim(bq(&[(1, 1, 1)]), bq(&[(1, 0, 1)])), LocalDim::ExceedsCap);
        // Y² − X³ against Y² − X⁵... cusp tangency: fulton agrees.
        let (g, h) = (bq(&[(0, 2, 1), (3, 0, -1)]), bq(&[(0, 2, 1), (5, 0, -1)]));
        let Mult::Finite(m) = fulton(&g, &h).unwrap() else { panic!() };
        assert_eq!(dim(g, h), LocalDim::Finite(m));
        assert!(oracle_local_dimension(&bq(&[(1, 0, 1)]), &bq(&[(0, 1, 1)]), &o, &z, 41).is_err());
    }

    #[test]
    fn translated_point() {
        // Circle and tangent line at (1, 0): multiplicity 2.
        let g = bq(&[(2, 0, 1), (0, 2, 1), (0, 0, -1)]);
        let h = bq(&[(1, 0, 1), (0, 0, -1)]);
        assert_eq!(oracle_local_dimension(&g, &h, &q_int(1), &qzero(), 40).unwrap(), LocalDim::Finite(2));
    }

    #[test]
    fn prime_scans() {
        let s = oracle_primefield_scan(&bq(&[(0, 3, 1), (0, 1, -3)]), 7).unwrap();
        assert_eq!(s.singular, vec![2, 5]);
        let s = oracle_primefield_scan(&bq(&[(1, 1, 1), (0, 0, 1)]), 5).unwrap();
        assert_eq!(s.singular, vec![1]);
        for p in [2u64, 3, 5, 7] {
            let s = oracle_primefield_scan(&bq(&[(p as usize, 0, 1), (0, p as usize, 1)]), p).unwrap();
            assert!(s.all_singular);
            assert_eq!(s.non_squarefree.len() as u64, p);
        }
        assert!(oracle_primefield_scan(&bq(&[(0, 2, 7), (1, 0, 1)]), 7).is_err());
        assert!(oracle_primefield_scan(&bq(&[(1, 0, 1)]), 103).is_err());
    }

    #[test]
    fn good_primes_and_kernel() {
        let f = bq(&[(0, 3, 1), (0, 1, -3)]);
        assert!(!good_prime(&f, 3).unwrap());
        assert!(good_prime(&f, 7).unwrap());
        for seed in 0..5 {
            let k = kernel_modp_check(seed);
            assert!(k.resultant_agree && k.gcd_agree, "{k:?}");
        }
    }
}
