//! The cross-ratio test for d = 4: some four distinct points of U_n keep
//! their cross-ratio under `t -> t^k`, `k = 2h + 1`.

use rayon::prelude::*;

use super::BchSpec;
use crate::error::{Error, Result};
use crate::gf::{Fq2Elem, Tower};

/// `CR(x,y;z,w) == CR(X,Y;Z,W)`, compared by cross-multiplication.
fn same_cross_ratio(k: &Tower, p: [Fq2Elem; 4], img: [Fq2Elem; 4]) -> bool {
    let half = |[x, y, z, w]: [Fq2Elem; 4]| {
        (
            k.mul(k.sub(x, z), k.sub(y, w)),
            k.mul(k.sub(x, w), k.sub(y, z)),
        )
    };
    let (num, den) = half(p);
    let (num_k, den_k) = half(img);
    k.mul(num, den_k) == k.mul(num_k, den)
}

/// First 4-subset `{i < j < l < s}` of exponents (points `β^i, ...`) and
/// pairing for which the cross-ratio is preserved, as the ordered tuple
/// `(x, y, z, w)` of exponents.
pub fn xu_d4_witness(k: &Tower, spec: &BchSpec) -> Result<Option<[u32; 4]>> {
    if spec.gcd_flag() != 1 {
        return Err(Error::OutOfHypothesis(format!(
            "gcd(2h + 1, n) = {} for h = {}",
            spec.gcd_flag(),
            spec.h()
        )));
    }
    let n = spec.n() as usize;
    let e = spec.k_exponent() as i64;
    let pts = spec.beta().elements();
    let pow_k: Vec<Fq2Elem> = (0..n as i64).map(|j| spec.beta().power(j * e)).collect();
    Ok((0..n).into_par_iter().find_map_first(|i| {
        for j in i + 1..n {
            for l in j + 1..n {
                for s in l + 1..n {
                    for t in [[i, j, l, s], [i, l, j, s], [i, s, j, l]] {
                        if same_cross_ratio(k, t.map(|x| pts[x]), t.map(|x| pow_k[x])) {
                            return Some(t.map(|x| x as u32));
                        }
                    }
                }
            }
        }
        None
    }))
}

pub fn xu_d4_criterion(k: &Tower, spec: &BchSpec) -> Result<bool> {
    Ok(xu_d4_witness(k, spec)?.is_some())
}
