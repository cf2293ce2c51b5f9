//! Special pencils over a prime field F_p.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::factor::factor_fp_squarefree;
use crate::arith::field::{is_prime_u64, Fp};
use crate::arith::modular::reduce_bq;
use crate::arith::{BPoly, Field, Q};
use crate::error::{Error, Result};

use super::normalize;
use super::sets::singset;

/// singset of f mod p.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum PrimeFieldSingset {
    /// f_X ≡ f_Y ≡ 0 mod p: every fiber is singular everywhere, so the
    /// singular parameters form the whole field.
    AllOfField { p: u64 },
    /// Reductions of the characteristic-zero critical values that lie in
    /// F_p (sorted): a superset of the singular parameters in F_p for good
    /// primes.
    Values { p: u64, values: Vec<u64> },
}

/// The singular parameters of f over F_p.
pub fn singset_prime_field(f: &BPoly<Q>, p: u64) -> Result<PrimeFieldSingset> {
    if !is_prime_u64(p) {
        return Err(Error::Precondition(format!("{p} is not prime")));
    }
    let fp: BPoly<Fp> = reduce_bq(f, p).ok_or(Error::DivisionByZero)?;
    if fp.is_constant() {
        return Err(Error::Precondition("f is constant modulo p".into()));
    }
    if fp.dx().is_zero() && fp.dy().is_zero() {
        return Ok(PrimeFieldSingset::AllOfField { p });
    }
    let s = singset(&normalize(f, None)?)?;
    let mut values = Vec::new();
    for phi in &s.set.factors {
        let Some(ph) = crate::arith::modular::reduce_q(phi, p) else { continue };
        if ph.deg() < 1 {
            continue;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        let sq = ph.squarefree_part();
        for fac in factor_fp_squarefree(&sq.monic(), &mut rng) {
            if fac.deg() == 1 {
                values.push(fac.c[0].negate().times(&fac.c[1].inverse().unwrap()).v);
            }
        }
    }
    values.sort_unstable();
    values.dedup();
    Ok(PrimeFieldSingset::Values { p, values })
}
