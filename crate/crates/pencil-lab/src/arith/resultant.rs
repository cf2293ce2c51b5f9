//! Resultants with respect to Y.
//!
//! Sign convention: `Res_Y(g, h) = lc_Y(g)^{deg_Y h} · ∏ h(X, β)` over the
//! roots β of g in Y, i.e. the Sylvester determinant with the g-block above
//! the h-block.

use num::bigint::BigInt;
use num::Signed;

use super::bpoly::BPoly;
use super::field::{big_primes, Field, Fp, Q};
use super::modular::{denominator_lcm, int_to_q, reduce_bq, Crt};
use super::upoly::{interpolate, UPoly};

/// Upper bound on deg_X Res_Y(g, h).
fn degree_bound<F: Field>(g: &BPoly<F>, h: &BPoly<F>) -> usize {
    let ng = g.deg_y().max(0) as usize;
    let nh = h.deg_y().max(0) as usize;
    nh * g.deg_x().max(0) as usize + ng * h.deg_x().max(0) as usize
}

/// Res_Y(g, h) over any field with enough elements, by evaluation at
/// X = 0, 1, 2, ... (skipping points where a leading coefficient vanishes)
/// and Newton interpolation.
pub fn resultant_y<F: Field>(g: &BPoly<F>, h: &BPoly<F>) -> UPoly<F> {
    let ctx = g.ctx.clone();
    if g.is_zero() || h.is_zero() {
        return UPoly::zero(&ctx);
    }
    if g.deg_y() == 0 && h.deg_y() == 0 {
        return UPoly::one(&ctx);
    }
    if g.deg_y() == 0 {
        return g.row(0).pow(h.deg_y() as u32);
    }
    if h.deg_y() == 0 {
        return h.row(0).pow(g.deg_y() as u32);
    }
    let need = degree_bound(g, h) + 1;
    let lg = g.lc_y();
    let lh = h.lc_y();
    let mut xs = Vec::with_capacity(need);
    let mut ys = Vec::with_capacity(need);
    let p = F::characteristic(&ctx);
    let mut k: i64 = 0;
    while xs.len() < need {
        if p > 0 && k as u64 >= p {
            // The prime field has too few usable points.
            return resultant_y_sylvester(g, h);
        }
        let x = F::from_i64(&ctx, k);
        k += 1;
        if lg.eval(&x).is_zero() || lh.eval(&x).is_zero() {
            continue;
        }
        ys.push(g.eval_x(&x).resultant(&h.eval_x(&x)));
        xs.push(x);
    }
    interpolate(&xs, &ys, &ctx)
}

/// Res_Y(g, h) as the Sylvester determinant over F[X], by fraction-free
/// (Bareiss) elimination; used over prime fields too small for evaluation.
pub fn resultant_y_sylvester<F: Field>(g: &BPoly<F>, h: &BPoly<F>) -> UPoly<F> {
    let ctx = g.ctx.clone();
    let (m, n) = (g.deg_y() as usize, h.deg_y() as usize);
    let size = m + n;
    let mut a = vec![vec![UPoly::zero(&ctx); size]; size];
    for i in 0..n {
        for j in 0..=m {
            a[i][i + j] = g.row(m - j);
        }
    }
    for i in 0..m {
        for j in 0..=n {
            a[n + i][i + j] = h.row(n - j);
        }
    }
    let mut negate = false;
    let mut prev = UPoly::one(&ctx);
    for k in 0..size {
        let Some(piv) = (k..size).find(|&r| !a[r][k].is_zero()) else {
            return UPoly::zero(&ctx);
        };
        if piv != k {
            a.swap(piv, k);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = UPoly::zero(&ctx);
        }
        prev = a[k][k].clone();
    }
    let det = a[size - 1][size - 1].clone();
    if negate {
        -&det
    } else {
        det
    }
}

/// Res_Y(g, h) where h is regarded as having formal Y-degree `dh` ≥ its
/// actual degree (the missing top coefficients being zero).  The product
/// formula is a polynomial identity in h's coefficients, so the formal value
/// is lc_Y(g)^(dh − deg h) times the actual one.
pub fn resultant_y_formal<F: Field>(g: &BPoly<F>, h: &BPoly<F>, dh: usize) -> UPoly<F> {
    let r = resultant_y(g, h);
    let actual = h.deg_y().max(0) as usize;
    if dh <= actual || h.is_zero() {
        return r;
    }
    &r * &g.lc_y().pow((dh - actual) as u32)
}

fn int_rows(f: &BPoly<Q>) -> (BPoly<Q>, BigInt) {
    let d = denominator_lcm(f.rows.iter().flat_map(|r| r.c.iter()));
    (f.scale(&Q::from_integer(d.clone())), d)
}

fn norm1_b(f: &BPoly<Q>) -> BigInt {
    f.rows.iter().flat_map(|r| r.c.iter()).map(|a| a.numer().abs()).sum()
}

/// Res_Y(g, h) over Q by Chinese remaindering of prime-field resultants.
pub fn resultant_y_q(g: &BPoly<Q>, h: &BPoly<Q>) -> UPoly<Q> {
    if g.is_zero() || h.is_zero() {
        return UPoly::zero(&());
    }
    if g.deg_y() <= 0 || h.deg_y() <= 0 {
        return resultant_y(g, h);
    }
    let ng = g.deg_y() as u32;
    let nh = h.deg_y() as u32;
    let (gi, dg) = int_rows(g);
    let (hi, dh) = int_rows(h);
    let bound = num::pow(norm1_b(&gi), nh as usize) * num::pow(norm1_b(&hi), ng as usize);
    let target = bound * 2 + 1;
    let mut crt = Crt::new();
    for p in big_primes() {
        if crt.modulus > target {
            break;
        }
        let (Some(gp), Some(hp)) = (reduce_bq(&gi, p), reduce_bq(&hi, p)) else { continue };
        if gp.deg_y() != g.deg_y() || hp.deg_y() != h.deg_y() {
            continue;
        }
        let r = resultant_y(&gp, &hp);
        let res: Vec<u64> = r.c.iter().map(|a: &Fp| a.v).collect();
        crt.add(&res, p);
    }
    let r = int_to_q(&crt.symmetric());
    let scale = Q::from_integer(num::pow(dg, nh as usize) * num::pow(dh, ng as usize));
    r.scale(&scale.recip())
}

/// Res_Y(g, f − T·w) as a polynomial in (X, T), returned as a [`BPoly`]
/// whose second variable is T.  Requires g to have constant leading
/// Y-coefficient; `w` may be constant.
pub fn resultant_param(g: &BPoly<Q>, f: &BPoly<Q>, w: &BPoly<Q>) -> BPoly<Q> {
    let dt = g.deg_y().max(0) as usize;
    let formal = f.deg_y().max(w.deg_y()).max(0) as usize;
    let mut ts = Vec::new();
    let mut vals: Vec<UPoly<Q>> = Vec::new();
    let mut k = 0i64;
    while ts.len() < dt + 1 {
        let t = Q::from_integer(BigInt::from(k));
        k += 1;
        let h = f - &w.scale(&t);
        let r = resultant_y_formal_q(g, &h, formal);
        ts.push(t);
        vals.push(r);
    }
    let xdeg = vals.iter().map(|v| v.deg()).max().unwrap_or(-1);
    let mut rows_by_x: Vec<UPoly<Q>> = Vec::new();
    for i in 0..=xdeg.max(-1) {
        let ys: Vec<Q> = vals.iter().map(|v| v.coeff(i as usize)).collect();
        rows_by_x.push(UPoly::interpolate(&ts, &ys));
    }
    // rows_by_x[i] is the T-polynomial coefficient of X^i; transpose.
    BPoly::new(rows_by_x, ()).swap_xy()
}

fn resultant_y_formal_q(g: &BPoly<Q>, h: &BPoly<Q>, dh: usize) -> UPoly<Q> {
    let r = resultant_y_q(g, h);
    let actual = h.deg_y().max(0) as usize;
    if dh <= actual || h.is_zero() {
        return r;
    }
    &r * &g.lc_y().pow((dh - actual) as u32)
}

/// Content of a (X, T) polynomial with respect to X: gcd over Q[T] of its
/// X-coefficients, monic.  Input layout as produced by [`resultant_param`].
pub fn t_content(r: &BPoly<Q>) -> UPoly<Q> {
    let mut g = UPoly::zero(&());
    let nx = (r.deg_x() + 1).max(0) as usize;
    for i in 0..nx {
        g = super::modular::gcd_q(&g, &r.column(i));
        if g.deg() == 0 {
            break;
        }
    }
    if g.is_zero() {
        UPoly::zero(&())
    } else {
        g.monic()
    }
}

#[cfg(test)]
mod tests {
    use super::super::field::q_int;
    use super::super::modular::reduce_q;
    use super::*;

    fn bq(terms: &[(usize, usize, i64)]) -> BPoly<Q> {
        let t: Vec<_> = terms.iter().map(|&(i, j, a)| (i, j, q_int(a))).collect();
        BPoly::from_terms(&t, &())
    }

    #[test]
    fn spec_examples() {
        // Res_Y(Y - X^2, Y) = X^2
        let r = resultant_y_q(&bq(&[(0, 1, 1), (2, 0, -1)]), &bq(&[(0, 1, 1)]));
        assert_eq!(r, UPoly::from_i64s(&[0, 0, 1], &()));
        // Res_Y(Y - 1, Y + 1) = 2
        let r = resultant_y_q(&bq(&[(0, 1, 1), (0, 0, -1)]), &bq(&[(0, 1, 1), (0, 0, 1)]));
        assert_eq!(r, UPoly::from_i64s(&[2], &()));
        // Res_Y(XY - 1, X) = X
        let r = resultant_y_q(&bq(&[(1, 1, 1), (0, 0, -1)]), &bq(&[(1, 0, 1)]));
        assert_eq!(r, UPoly::from_i64s(&[0, 1], &()));
    }

    #[test]
    fn modular_matches_direct_evaluation() {
        let g = bq(&[(0, 3, 2), (2, 1, -5), (1, 0, 7), (0, 0, 1)]);
        let h = bq(&[(1, 2, 3), (0, 1, -1), (3, 0, 4)]);
        assert_eq!(resultant_y_q(&g, &h), resultant_y(&g, &h));
        assert_eq!(resultant_y_sylvester(&g, &h), resultant_y(&g, &h));
        assert_eq!(resultant_y_sylvester(&h, &g), resultant_y(&h, &g));
    }

    #[test]
    fn small_prime_field() {
        // Degree bound 9 exceeds the 3 points of F_3.
        let g = bq(&[(0, 3, 2), (2, 1, -5), (1, 0, 7), (0, 0, 1)]);
        let h = bq(&[(1, 2, 2), (0, 1, -1), (3, 0, 4)]);
        let want = reduce_q(&resultant_y_q(&g, &h), 3).unwrap();
        let (gp, hp) = (reduce_bq(&g, 3).unwrap(), reduce_bq(&h, 3).unwrap());
        assert_eq!(resultant_y(&gp, &hp), want);
    }

    #[test]
    fn parametric_resultant_content() {
        // G = Y^2 - 1, f = Y^3 - 3Y: Res_Y(G, f - T) = (-2 - T)(2 - T)
        let g = bq(&[(0, 2, 1), (0, 0, -1)]);
        let f = bq(&[(0, 3, 1), (0, 1, -3)]);
        let r = resultant_param(&g, &f, &BPoly::one(&()));
        assert_eq!(r.deg_x(), 0);
        assert_eq!(t_content(&r), UPoly::from_i64s(&[-4, 0, 1], &()));
    }
}
