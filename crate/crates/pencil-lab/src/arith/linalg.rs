//! Dense linear algebra over an arbitrary field.

use super::field::Field;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut [Vec<F>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inverse().unwrap();
        for j in c..ncols {
            m[r][j] = m[r][j].times(&inv);
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..ncols {
                    let t = f.times(&m[r][j]);
                    m[i][j] = m[i][j].minus(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the right kernel {v : M v = 0}.
pub fn nullspace<F: Field>(rows: &[Vec<F>], ncols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(ctx); ncols];
            v[fc] = F::one(ctx);
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m[r][fc].negate();
            }
            v
        })
        .collect()
}

pub fn rank<F: Field>(rows: &[Vec<F>], ncols: usize) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    rref(&mut m, ncols).len()
}

#[cfg(test)]
mod tests {
    use super::super::field::{q_int, Fp, Q};
    use super::*;

    #[test]
    fn kernel_of_rank_one_matrix() {
        let rows = vec![vec![q_int(1), q_int(2), q_int(3)], vec![q_int(2), q_int(4), q_int(6)]];
        let ker = nullspace::<Q>(&rows, 3, &());
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for r in &rows {
                let s = r.iter().zip(v).fold(q_int(0), |a, (x, y)| a + x * y);
                assert_eq!(s, q_int(0));
            }
        }
        assert_eq!(rank::<Q>(&rows, 3), 1);
    }

    #[test]
    fn prime_field_rank() {
        let p = 5;
        let rows: Vec<Vec<Fp>> = vec![vec![Fp::new(1, p), Fp::new(2, p)], vec![Fp::new(3, p), Fp::new(1, p)]];
        // det = 1 - 6 = -5 = 0 mod 5
        assert_eq!(rank(&rows, 2), 1);
    }
}
