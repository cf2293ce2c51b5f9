//! Absolute irreducibility and factor counts via the closed-differential
//! linear system, and the finite set of pencil parameters where a fiber can
//! become reducible over Q̄.
//!
//! For a squarefree f with m = deg_X f ≥ 1 and n = deg_Y f ≥ 1 the unknowns
//! are the coefficients of (g, h) with deg_X g ≤ m−1, deg_Y g ≤ n,
//! deg_X h ≤ m, deg_Y h ≤ n−1, subject to f·g_Y − g·f_Y = f·h_X − h·f_X.
//! The solution space has dimension equal to the number of absolutely
//! irreducible factors of f; (f_X, f_Y) is always a solution.

use std::collections::BTreeMap;

use num::bigint::BigInt;
use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::factor::{edf, factor_q, powmod_poly, squarefree_q};
use crate::arith::field::{big_primes, invmod, mulmod, Field, Fp, Q};
use crate::arith::linalg::{nullspace, rank, rref};
use crate::arith::modular::{denominator_lcm, gcd_q, int_to_q, reduce_bq, reduce_q, Crt};
use crate::arith::nf::{Nf, RatFunc};
use crate::arith::residue::{residue_content, shear_i};
use crate::arith::resultant::resultant_y_q;
use crate::arith::roots::AlgebraicSet;
use crate::arith::{BPoly, UPoly};
use crate::error::{Error, Result};

type Column<F> = Vec<((usize, usize), F)>;

/// Columns of the linear system for the given degree bounds, one per
/// unknown, as sparse lists of (monomial, coefficient).  The first
/// m·(n+1) columns belong to g, the rest to h.
fn system_columns<F: Field>(f: &BPoly<F>, m: usize, n: usize) -> Vec<Column<F>> {
    let ctx = &f.ctx;
    let ft = f.terms();
    let fx = f.dx().terms();
    let fy = f.dy().terms();
    let mut cols = Vec::with_capacity(m * (n + 1) + (m + 1) * n);
    let add = |acc: &mut BTreeMap<(usize, usize), F>, terms: &BTreeMap<(usize, usize), F>, a: usize, b: usize, s: &F| {
        for (&(i, j), c) in terms {
            let e = acc.entry((i + a, j + b)).or_insert_with(|| F::zero(ctx));
            *e = e.plus(&c.times(s));
        }
    };
    for a in 0..m {
        for b in 0..=n {
            // f·∂_Y(X^a Y^b) − X^a Y^b·f_Y
            let mut acc = BTreeMap::new();
            if b > 0 {
                add(&mut acc, &ft, a, b - 1, &F::from_i64(ctx, b as i64));
            }
            add(&mut acc, &fy, a, b, &F::from_i64(ctx, -1));
            cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    for a in 0..=m {
        for b in 0..n {
            // −f·∂_X(X^a Y^b) + X^a Y^b·f_X
            let mut acc = BTreeMap::new();
            if a > 0 {
                add(&mut acc, &ft, a - 1, b, &F::from_i64(ctx, -(a as i64)));
            }
            add(&mut acc, &fx, a, b, &F::one(ctx));
            cols.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
    }
    cols
}

/// Dense row-major matrix from sparse columns over a shared monomial index.
fn dense<F: Field>(cols: &[Column<F>], index: &BTreeMap<(usize, usize), usize>, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut rows = vec![vec![F::zero(ctx); cols.len()]; index.len()];
    for (j, col) in cols.iter().enumerate() {
        for (mono, c) in col {
            rows[index[mono]][j] = c.clone();
        }
    }
    rows
}

fn monomial_index<F: Field>(cols: &[&[Column<F>]]) -> BTreeMap<(usize, usize), usize> {
    let mut idx = BTreeMap::new();
    for cs in cols {
        for col in cs.iter() {
            for (mono, _) in col {
                let k = idx.len();
                idx.entry(*mono).or_insert(k);
            }
        }
    }
    // renumber in sorted order for determinism
    let keys: Vec<_> = idx.keys().cloned().collect();
    keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
}

/// The linear system of `f` as a dense matrix together with its number of
/// unknowns.
pub fn system_matrix<F: Field>(f: &BPoly<F>) -> (Vec<Vec<F>>, usize) {
    let m = f.deg_x().max(0) as usize;
    let n = f.deg_y().max(0) as usize;
    let cols = system_columns(f, m, n);
    let idx = monomial_index(&[&cols]);
    (dense(&cols, &idx, &f.ctx), cols.len())
}

/// Dimension of the solution space, computed exactly over the field of `f`.
pub fn system_nullity<F: Field>(f: &BPoly<F>) -> usize {
    let (rows, nc) = system_matrix(f);
    nc - rank(&rows, nc)
}

/// Bring a polynomial with a vanishing partial degree into general position
/// (X := X + Y when deg_Y = 0, Y := Y + X when deg_X = 0).
fn ensure_both_degrees<F: Field>(f: &BPoly<F>) -> BPoly<F> {
    let ctx = &f.ctx;
    let (z, o) = (F::zero(ctx), F::one(ctx));
    if f.deg_y() == 0 {
        f.shear(&o)
    } else if f.deg_x() == 0 {
        f.affine(&o, &z, &z, &o, &o, &z)
    } else {
        f.clone()
    }
}

fn check_input<F: Field>(f: &BPoly<F>) -> Result<BPoly<F>> {
    if f.is_constant() {
        return Err(Error::Precondition("absolute factor count of a constant".into()));
    }
    let p = F::characteristic(&f.ctx);
    let d = f.total_deg() as u64;
    if p != 0 && p <= 2 * d * d {
        return Err(Error::CharacteristicTooSmall { p, bound: 2 * d * d });
    }
    if f.squarefree()?.iter().any(|(_, m)| *m > 1) {
        return Err(Error::NotSquarefree);
    }
    Ok(ensure_both_degrees(f))
}

/// Number of absolutely irreducible factors of a squarefree polynomial,
/// by exact linear algebra over its coefficient field.
pub fn absolute_factor_count<F: Field>(f: &BPoly<F>) -> Result<usize> {
    let g = check_input(f)?;
    Ok(system_nullity(&g))
}

/// Reduction of the system modulo a prime can only increase the nullity, so
/// a modular nullity of 1 certifies absolute irreducibility.
fn nullity_mod_p(f: &BPoly<Fp>) -> usize {
    system_nullity(f)
}

/// [`absolute_factor_count`] over Q with a modular shortcut.
pub fn absolute_factor_count_q(f: &BPoly<Q>) -> Result<usize> {
    let g = check_input(f)?;
    for p in big_primes().take(2) {
        if let Some(gp) = reduce_bq(&g, p) {
            if gp.deg_x() == g.deg_x() && gp.deg_y() == g.deg_y() && nullity_mod_p(&gp) == 1 {
                return Ok(1);
            }
        }
    }
    Ok(system_nullity(&g))
}

/// A prime p together with a root of the number field's modulus mod p, giving
/// a degree-one reduction map.
pub fn split_prime(modulus: &UPoly<Q>, skip: usize) -> Option<(u64, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut found = 0;
    for p in big_primes().take(400) {
        let Some(mp) = reduce_q(modulus, p) else { continue };
        if mp.deg() != modulus.deg() || mp.gcd(&mp.derivative()).deg() > 0 {
            continue;
        }
        let x = UPoly::x(&p);
        let xp = powmod_poly(&x, &BigInt::from(p), &mp);
        let lin = (&xp - &x).gcd(&mp);
        if lin.deg() < 1 {
            continue;
        }
        if found < skip {
            found += 1;
            continue;
        }
        let root = edf(&lin, 1, &mut rng)[0].clone();
        return Some((p, root.c[0].negate().v));
    }
    None
}

fn reduce_nf(f: &BPoly<Nf>, p: u64, r: u64) -> Option<BPoly<Fp>> {
    let rf = Fp::new(r, p);
    let mut rows = Vec::new();
    for row in &f.rows {
        let mut c = Vec::new();
        for a in &row.c {
            let ap = reduce_q(&a.p, p)?;
            c.push(ap.eval(&rf));
        }
        rows.push(UPoly::new(c, p));
    }
    Some(BPoly::new(rows, p))
}

/// [`absolute_factor_count`] over a number field, with a modular shortcut
/// through a degree-one prime.
pub fn absolute_factor_count_nf(f: &BPoly<Nf>) -> Result<usize> {
    let g = check_input(f)?;
    for skip in 0..2 {
        if let Some((p, r)) = split_prime(&g.ctx.modulus, skip) {
            if let Some(gp) = reduce_nf(&g, p, r) {
                if gp.deg_x() == g.deg_x() && gp.deg_y() == g.deg_y() && nullity_mod_p(&gp) == 1 {
                    return Ok(1);
                }
            }
        }
    }
    Ok(system_nullity(&g))
}

/// Absolute factor count of X² + Y^u (irreducible exactly for odd u).
pub fn absolute_irreducibility_parity_demo(u: u32) -> usize {
    let f = BPoly::from_terms(&[(2, 0, Q::from_integer(1.into())), (0, u as usize, Q::from_integer(1.into()))], &());
    absolute_factor_count_q(&f).expect("X^2 + Y^u is squarefree")
}

/// Number of irreducible factors over Q of a squarefree polynomial.
///
/// A generic solution g of the system satisfies g ≡ λ_i·f_X on the i-th
/// absolute factor, so E(λ) = Res_X(f(X, y0), g(X, y0) − λ f_X(X, y0)) is a
/// product of powers of (λ − λ_i); Galois orbits of the λ_i correspond to
/// the rational factors.  Several random solutions are tried and the
/// largest count is kept (a coincidence can only merge orbits).
pub fn rational_factor_count(f: &BPoly<Q>) -> Result<usize> {
    if f.is_constant() {
        return Err(Error::Precondition("rational factor count of a constant".into()));
    }
    if f.squarefree()?.iter().any(|(_, m)| *m > 1) {
        return Err(Error::NotSquarefree);
    }
    if let Some(p) = f.as_x_poly() {
        return Ok(factor_q(&p).factors.len());
    }
    if f.deg_x() == 0 {
        return Ok(factor_q(&f.swap_xy().as_x_poly().unwrap()).factors.len());
    }
    // Make every factor have positive X-degree (constant leading X-coefficient).
    let l = crate::arith::residue::y_monic_shear(&[f]);
    let f = &shear_i(f, l).swap_xy();
    let m = f.deg_x() as usize;
    let n = f.deg_y() as usize;
    let (rows, nc) = system_matrix(f);
    let basis = nullspace(&rows, nc, &());
    if basis.len() == 1 {
        return Ok(1);
    }
    // y0 with f(X, y0) of full degree m and squarefree.
    let mut y0 = 0i64;
    let f0 = loop {
        let v = Q::from_integer(y0.into());
        let col: UPoly<Q> = UPoly::new((0..=m).map(|i| f.column(i).eval(&v)).collect(), ());
        if col.deg() == m as isize && gcd_q(&col, &col.derivative()).deg() == 0 {
            break (v, col);
        }
        y0 = if y0 <= 0 { 1 - y0 } else { -y0 };
    };
    let (yv, fcol) = f0;
    let fx_col = fcol.derivative();
    let mut rng = ChaCha8Rng::seed_from_u64(0xfac7);
    let mut best = 0;
    for _ in 0..3 {
        let mut gcoef = vec![Q::from_integer(0.into()); m * (n + 1)];
        for v in &basis {
            let r = Q::from_integer(rng.gen_range(-50i64..=50).into());
            for k in 0..m * (n + 1) {
                gcoef[k] = &gcoef[k] + &(&r * &v[k]);
            }
        }
        // g(X, y0): unknown index a*(n+1)+b is the coefficient of X^a Y^b.
        let mut gx = vec![Q::from_integer(0.into()); m];
        let mut ypow = vec![Q::from_integer(1.into())];
        for b in 1..=n {
            let t = &ypow[b - 1] * &yv;
            ypow.push(t);
        }
        for a in 0..m {
            for b in 0..=n {
                gx[a] = &gx[a] + &(&gcoef[a * (n + 1) + b] * &ypow[b]);
            }
        }
        let gx = UPoly::new(gx, ());
        // Variables: X slot = λ, Y slot = x.
        let a_poly = BPoly::from_y(&fcol);
        let b_poly = &BPoly::from_y(&gx) - &(&BPoly::x(&()) * &BPoly::from_y(&fx_col));
        let e = resultant_y_q(&a_poly, &b_poly);
        let cnt = squarefree_q(&e).iter().map(|(s, _)| factor_q(s).factors.len()).sum::<usize>();
        best = best.max(cnt);
    }
    Ok(best)
}

// ---------------------------------------------------------------------------
// Reducibility candidates for a pencil f − T·w.

/// Superset of the parameters c at which f − c·w is reducible over Q̄ or not
/// squarefree.
#[derive(Clone, Debug)]
pub struct ReducibilityCandidates {
    pub set: AlgebraicSet,
    /// Defining polynomial of `set` (squarefree, primitive).
    pub poly: UPoly<Q>,
    /// Provenance, one line per contributing source.
    pub notes: Vec<String>,
    /// The generic fiber is already reducible (composite pencil); the set is
    /// then meaningless.
    pub degenerate: bool,
    /// Dimension of the solution space at a generic parameter.
    pub generic_count: usize,
}

fn to_int_poly(f: &BPoly<Q>, d: &BigInt) -> BPoly<Q> {
    f.scale(&Q::from_integer(d.clone()))
}

fn q_to_int(q: &Q) -> BigInt {
    debug_assert!(q.is_integer());
    q.to_integer()
}

/// Integer matrices A0, A1 with M(f − T·w) = A0 + T·A1, shared degree bounds.
fn pencil_matrices(f: &BPoly<Q>, w: &BPoly<Q>) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, usize) {
    let m = f.deg_x().max(w.deg_x()).max(0) as usize;
    let n = f.deg_y().max(w.deg_y()).max(0) as usize;
    let d = denominator_lcm(f.rows.iter().chain(w.rows.iter()).flat_map(|r| r.c.iter()));
    let fi = to_int_poly(f, &d);
    let wi = to_int_poly(&w.scale(&Q::from_integer((-1).into())), &d);
    let c0 = system_columns(&fi, m, n);
    let c1 = system_columns(&wi, m, n);
    let idx = monomial_index(&[&c0, &c1]);
    let a0 = dense(&c0, &idx, &());
    let a1 = dense(&c1, &idx, &());
    let conv = |a: Vec<Vec<Q>>| a.into_iter().map(|r| r.iter().map(q_to_int).collect()).collect();
    (conv(a0), conv(a1), c0.len())
}

fn eval_mod(a0: &[Vec<u64>], a1: &[Vec<u64>], t: u64, p: u64) -> Vec<Vec<Fp>> {
    a0.iter()
        .zip(a1)
        .map(|(r0, r1)| r0.iter().zip(r1).map(|(&x, &y)| Fp::new((x + mulmod(y, t, p)) % p, p)).collect())
        .collect()
}

fn reduce_mat(a: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    a.iter().map(|r| r.iter().map(|x| Fp::from_big(x, p).v).collect()).collect()
}

fn det_mod(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if piv != c {
            m.swap(piv, c);
            det = (p - det) % p;
        }
        det = mulmod(det, m[c][c], p);
        let inv = invmod(m[c][c], p).expect("nonzero pivot");
        for r in c + 1..n {
            if m[r][c] != 0 {
                let f = mulmod(m[r][c], inv, p);
                for k in c..n {
                    let s = mulmod(f, m[c][k], p);
                    m[r][k] = (m[r][k] + p - s) % p;
                }
            }
        }
    }
    det
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return vec![];
    }
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect()
}

/// det(A0[R][C] + T·A1[R][C]) over Z, by evaluation/interpolation modulo
/// enough primes to exceed the Hadamard-type bound.
fn minor_determinant(a0: &[Vec<BigInt>], a1: &[Vec<BigInt>], rows: &[usize], cols: &[usize]) -> UPoly<Q> {
    let r = rows.len();
    let sub = |a: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect()
    };
    let s0 = sub(a0);
    let s1 = sub(a1);
    let mut bound = BigInt::from(1);
    for i in 0..r {
        let rs: BigInt = (0..r).map(|j| s0[i][j].abs() + s1[i][j].abs()).sum();
        bound *= rs.max(BigInt::from(1));
    }
    let target = bound * 2 + 1;
    let mut crt = Crt::new();
    let mut modulus = BigInt::from(1);
    for p in big_primes() {
        if modulus > target {
            break;
        }
        let m0 = reduce_mat(&s0, p);
        let m1 = reduce_mat(&s1, p);
        let xs: Vec<Fp> = (0..=r as u64).map(|t| Fp::new(t, p)).collect();
        let ys: Vec<Fp> = xs
            .iter()
            .map(|t| {
                let m = eval_mod(&m0, &m1, t.v, p);
                Fp::new(det_mod(m.into_iter().map(|row| row.into_iter().map(|e| e.v).collect()).collect(), p), p)
            })
            .collect();
        let poly = crate::arith::upoly::interpolate(&xs, &ys, &p);
        let mut coeffs: Vec<u64> = poly.c.iter().map(|c| c.v).collect();
        coeffs.resize(r + 1, 0);
        crt.add(&coeffs, p);
        modulus *= BigInt::from(p);
    }
    int_to_q(&crt.symmetric())
}

fn pivots_mod(m: &[Vec<Fp>], ncols: usize) -> Vec<usize> {
    let mut a = m.to_vec();
    rref(&mut a, ncols)
}

/// Generic solution dimension of the system for f − T·w, computed exactly
/// over Q(T).
pub fn generic_count_exact(f: &BPoly<Q>, w: &BPoly<Q>) -> usize {
    let t = RatFunc::parameter();
    let fr: BPoly<RatFunc> = f.map(&(), |c| RatFunc::from_poly(UPoly::constant(c.clone())));
    let wr: BPoly<RatFunc> = w.map(&(), |c| RatFunc::from_poly(UPoly::constant(c.clone())));
    let g = &fr - &wr.scale(&t);
    let g = ensure_both_degrees(&g);
    system_nullity(&g)
}

/// Number of absolutely irreducible factors of a generic fiber f − T·w
/// (more than one exactly for composite pencils): the best of several
/// modular specializations, confirmed exactly when it exceeds one.
pub fn generic_factor_count(f: &BPoly<Q>, w: &BPoly<Q>) -> usize {
    let (f, w) = (ensure_both_degrees(f), ensure_both_degrees(w));
    let (a0, a1, ncols) = pencil_matrices(&f, &w);
    let mut rng = ChaCha8Rng::seed_from_u64(0x6e71);
    let p0 = big_primes().next().unwrap();
    let (r0, r1) = (reduce_mat(&a0, p0), reduce_mat(&a1, p0));
    let best = (0..3).map(|_| rank(&eval_mod(&r0, &r1, rng.gen_range(1..p0), p0), ncols)).max().unwrap();
    let generic = ncols - best;
    if generic <= 1 {
        return generic;
    }
    if ncols <= 48 {
        generic_count_exact(&f, &w)
    } else {
        let c0 = Q::from_integer(rng.gen_range(2..1000).into());
        system_nullity(&ensure_both_degrees(&(&f - &w.scale(&c0))))
    }
}

/// Size of the linear system behind [`pencil_reducibility_candidates`].
pub fn pencil_system_size(f: &BPoly<Q>, w: &BPoly<Q>) -> usize {
    let m = f.deg_x().max(w.deg_x()).max(1) as usize;
    let n = f.deg_y().max(w.deg_y()).max(1) as usize;
    m * (n + 1) + (m + 1) * n
}

/// Candidate parameters where the fiber f − c·w may be reducible over Q̄ or
/// non-squarefree.  See [`ReducibilityCandidates`].
pub fn pencil_reducibility_candidates(f: &BPoly<Q>, w: &BPoly<Q>) -> Result<ReducibilityCandidates> {
    if !f.gcd(w).is_constant() {
        return Err(Error::CommonFactor);
    }
    // Keep both partial degrees positive for the generic fiber.
    let (f, w) = if f.deg_x().max(w.deg_x()) == 0 || f.deg_y().max(w.deg_y()) == 0 {
        (ensure_both_degrees(f), ensure_both_degrees(w))
    } else {
        (f.clone(), w.clone())
    };
    let mut notes = Vec::new();
    let (a0, a1, ncols) = pencil_matrices(&f, &w);
    let mut rng = ChaCha8Rng::seed_from_u64(0xca4d);
    let p0 = big_primes().next().unwrap();
    let r0 = reduce_mat(&a0, p0);
    let r1 = reduce_mat(&a1, p0);
    // Generic rank: best of a few random specializations mod p0.
    let mut best: Option<(usize, u64)> = None;
    for _ in 0..3 {
        let t = rng.gen_range(1..p0);
        let rk = rank(&eval_mod(&r0, &r1, t, p0), ncols);
        if best.is_none_or(|(b, _)| rk > b) {
            best = Some((rk, t));
        }
    }
    let (rk, t0) = best.unwrap();
    let mut generic = ncols - rk;
    if generic > 1 {
        // The modular estimate is an upper bound; confirm exactly.
        generic = if ncols <= 48 {
            generic_count_exact(&f, &w)
        } else {
            let c0 = Q::from_integer(rng.gen_range(2..1000).into());
            system_nullity(&ensure_both_degrees(&(&f - &w.scale(&c0))))
        };
    }
    if generic > 1 {
        notes.push(format!("generic fiber has {generic} absolute factors: composite pencil"));
        return Ok(ReducibilityCandidates {
            set: AlgebraicSet::empty(),
            poly: UPoly::one(&()),
            notes,
            degenerate: true,
            generic_count: generic,
        });
    }
    // Two independent nonsingular maximal minors; the rank can only drop
    // where both determinants vanish.
    let mut dets = Vec::new();
    for attempt in 0..2 {
        let t = if attempt == 0 { t0 } else { rng.gen_range(1..p0) };
        let m = eval_mod(&r0, &r1, t, p0);
        // Random column order gives a different pivot choice.
        let mut perm: Vec<usize> = (0..ncols).collect();
        if attempt > 0 {
            for i in (1..ncols).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
        }
        let mp: Vec<Vec<Fp>> = m.iter().map(|row| perm.iter().map(|&j| row[j]).collect()).collect();
        let piv_cols: Vec<usize> = pivots_mod(&mp, ncols).into_iter().map(|j| perm[j]).collect();
        let sub_t: Vec<Vec<Fp>> = transpose(&m.iter().map(|row| piv_cols.iter().map(|&j| row[j]).collect()).collect::<Vec<Vec<Fp>>>());
        let piv_rows = pivots_mod(&sub_t, m.len());
        if piv_rows.len() != piv_cols.len() || piv_cols.len() != rk {
            continue;
        }
        let d = minor_determinant(&a0, &a1, &piv_rows, &piv_cols);
        notes.push(format!("pivot minor #{} of size {} has determinant of degree {}", attempt + 1, rk, d.deg()));
        dets.push(d);
    }
    let mut cand = match dets.len() {
        0 => return Err(Error::Internal("no nonsingular minor found".into())),
        1 => dets[0].clone(),
        _ => gcd_q(&dets[0], &dets[1]),
    };
    // Parameters where a partial degree of the fiber drops.
    let m = f.deg_x().max(w.deg_x()) as usize;
    let n = f.deg_y().max(w.deg_y()) as usize;
    let mut drop_x = UPoly::zero(&());
    for j in 0..=n {
        drop_x = gcd_q(&drop_x, &UPoly::new(vec![f.coeff(m, j), -w.coeff(m, j)], ()));
    }
    let mut drop_y = UPoly::zero(&());
    for i in 0..=m {
        drop_y = gcd_q(&drop_y, &UPoly::new(vec![f.coeff(i, n), -w.coeff(i, n)], ()));
    }
    for (d, name) in [(drop_x, "X"), (drop_y, "Y")] {
        if d.deg() > 0 {
            notes.push(format!("deg_{name} of the fiber drops at roots of {}", d.render("T")));
            cand = &cand * &d;
        }
    }
    // Non-squarefree fibers: constant values of f/w along the common
    // factor of the critical generators.
    let mc = multiple_fiber_content(&f, &w);
    if mc.deg() > 0 {
        notes.push(format!("non-squarefree fibers at roots of {}", mc.render("T")));
        cand = &cand * &mc;
    }
    let set = AlgebraicSet::from_polys(&[cand]);
    let poly = set.defining();
    Ok(ReducibilityCandidates { set, poly, notes, degenerate: false, generic_count: generic })
}

/// Critical generators of the pencil: f·w_X − w·f_X and f·w_Y − w·f_Y (for
/// w = 1 these are −f_X and −f_Y).
pub fn critical_generators(f: &BPoly<Q>, w: &BPoly<Q>) -> (BPoly<Q>, BPoly<Q>) {
    let g1 = &(f * &w.dx()) - &(w * &f.dx());
    let g2 = &(f * &w.dy()) - &(w * &f.dy());
    (g1, g2)
}

/// Product of minimal polynomials of the values c at which f − c·w has a
/// multiple factor (the T-content of Res_Y(G, f − T·w), G the gcd of the
/// critical generators).
pub fn multiple_fiber_content(f: &BPoly<Q>, w: &BPoly<Q>) -> UPoly<Q> {
    let (g1, g2) = critical_generators(f, w);
    let g = g1.gcd(&g2);
    if g.is_constant() {
        return UPoly::one(&());
    }
    if w.is_constant() {
        let wv = w.as_constant().unwrap();
        let c = residue_content(f, &g);
        // f − c·w0 fibers: values of f/w0.
        return scale_roots(&c, &wv);
    }
    let l = crate::arith::residue::y_monic_shear(&[&g]);
    let r = crate::arith::resultant::resultant_param(&shear_i(&g, l), &shear_i(f, l), &shear_i(w, l));
    crate::arith::resultant::t_content(&r)
}

/// Polynomial whose roots are those of `c` divided by `s`.
fn scale_roots(c: &UPoly<Q>, s: &Q) -> UPoly<Q> {
    // roots r/s of c(s·T)
    let mut pw = Q::from_integer(1.into());
    let mut out = Vec::new();
    for a in &c.c {
        out.push(a * &pw);
        pw = &pw * s;
    }
    UPoly::new(out, ()).monic()
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
    fn spec_counts() {
        assert_eq!(absolute_factor_count_q(&bq(&[(2, 0, 1), (0, 2, 1)])).unwrap(), 2);
        assert_eq!(absolute_factor_count_q(&bq(&[(0, 2, 1), (3, 0, -1)])).unwrap(), 1);
        assert_eq!(absolute_factor_count_q(&bq(&[(1, 1, 1)])).unwrap(), 2);
        assert_eq!(absolute_factor_count(&bq(&[(2, 0, 1), (0, 2, 1)])).unwrap(), 2);
    }

    #[test]
    fn self_solution_is_in_kernel() {
        let f = bq(&[(2, 1, 3), (0, 3, 1), (1, 0, -2), (0, 0, 5)]);
        let m = f.deg_x() as usize;
        let n = f.deg_y() as usize;
        let cols = system_columns(&f, m, n);
        assert_eq!(cols.len(), m * (n + 1) + (m + 1) * n);
        let idx = monomial_index(&[&cols]);
        let rows = dense(&cols, &idx, &());
        // g = f_X, h = f_Y as coefficient vectors.
        let fx = f.dx();
        let fy = f.dy();
        let mut v = Vec::new();
        for a in 0..m {
            for b in 0..=n {
                v.push(fx.coeff(a, b));
            }
        }
        for a in 0..=m {
            for b in 0..n {
                v.push(fy.coeff(a, b));
            }
        }
        for r in &rows {
            let s = r.iter().zip(&v).fold(q_int(0), |acc, (x, y)| acc + x * y);
            assert_eq!(s, q_int(0));
        }
    }

    #[test]
    fn parity() {
        for u in [1, 3, 5, 7] {
            assert_eq!(absolute_irreducibility_parity_demo(u), 1, "u = {u}");
        }
        for u in [2, 4, 6] {
            assert_eq!(absolute_irreducibility_parity_demo(u), 2, "u = {u}");
        }
    }

    #[test]
    fn rational_counts() {
        // X^2 + Y^2: two absolute factors, one rational factor.
        assert_eq!(rational_factor_count(&bq(&[(2, 0, 1), (0, 2, 1)])).unwrap(), 1);
        // (X − Y)(X + Y − 1)(X^2 − 2Y^2)
        let f = &(&bq(&[(1, 0, 1), (0, 1, -1)]) * &bq(&[(1, 0, 1), (0, 1, 1), (0, 0, -1)])) * &bq(&[(2, 0, 1), (0, 2, -2)]);
        assert_eq!(rational_factor_count(&f).unwrap(), 3);
        assert_eq!(absolute_factor_count_q(&f).unwrap(), 4);
    }

    #[test]
    fn prime_field_guard() {
        let f: BPoly<Fp> = BPoly::from_terms(&[(2, 0, Fp::new(1, 7)), (0, 2, Fp::new(1, 7))], &7);
        assert!(matches!(absolute_factor_count(&f), Err(Error::CharacteristicTooSmall { .. })));
        let f: BPoly<Fp> = BPoly::from_terms(&[(2, 0, Fp::new(1, 101)), (0, 3, Fp::new(1, 101))], &101);
        assert_eq!(absolute_factor_count(&f).unwrap(), 1);
    }

    #[test]
    fn not_squarefree_rejected() {
        assert_eq!(absolute_factor_count_q(&bq(&[(0, 2, 1)])), Err(Error::NotSquarefree));
    }

    #[test]
    fn example1_candidates() {
        // f = XY + X − 1 (a = X, z = 1): −1 is a member since f + 1 = X(Y + 1).
        let f = bq(&[(1, 1, 1), (1, 0, 1), (0, 0, -1)]);
        let c = pencil_reducibility_candidates(&f, &BPoly::one(&())).unwrap();
        assert!(!c.degenerate);
        assert!(c.set.contains_rational(&q_int(-1)));
        let g = &f + &BPoly::one(&());
        assert_eq!(absolute_factor_count_q(&g).unwrap(), 2);
    }

    #[test]
    fn cusp_candidates_rejected() {
        let f = bq(&[(0, 2, 1), (3, 0, -1)]);
        let c = pencil_reducibility_candidates(&f, &BPoly::one(&())).unwrap();
        assert!(!c.degenerate);
        for m in &c.set.members {
            let k = m.field();
            let fk: BPoly<Nf> = f.map(&k, |a| Nf::from_q(a, &k));
            let g = &fk - &BPoly::constant(Nf::generator(&k));
            if let Ok(n) = absolute_factor_count_nf(&g) {
                assert_eq!(n, 1);
            }
        }
        // Oracle: random rational parameters never factor.
        for c0 in [2, 5, -3, 7, 11] {
            let g = &f - &BPoly::constant(q_int(c0));
            assert_eq!(absolute_factor_count_q(&g).unwrap(), 1);
        }
    }

    #[test]
    fn composite_is_degenerate() {
        // (XY)^2 + XY
        let f = bq(&[(2, 2, 1), (1, 1, 1)]);
        let c = pencil_reducibility_candidates(&f, &BPoly::one(&())).unwrap();
        assert!(c.degenerate);
        assert_eq!(c.generic_count, 2);
    }
}
