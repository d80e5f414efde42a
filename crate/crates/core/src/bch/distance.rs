//! Exact minimum distance, by column-dependency search and by codeword
//! enumeration.

use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{generator_poly, BchSpec};
use crate::error::{Error, Result};
use crate::gf::{BaseField, FqElem, Tower};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(u32),
    /// No dependency of weight `<= cap`, and the cap was too small to
    /// conclude.
    AboveCap(u32),
}

impl Distance {
    pub fn exact(self) -> Option<u32> {
        match self {
            Distance::Exact(d) => Some(d),
            Distance::AboveCap(_) => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AboveCap(cap) => write!(f, ">{cap}"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Distance::Exact(d) => s.serialize_u32(*d),
            Distance::AboveCap(_) => s.serialize_str(&self.to_string()),
        }
    }
}

type Col = [FqElem; 4];

/// Parity columns `(β^{jh}, β^{j(h+1)})` written over GF(q) in the basis
/// `{1, y}`. The conjugate rows are implied for words over GF(q).
fn expanded_columns(spec: &BchSpec) -> Vec<Col> {
    let h = i64::from(spec.h());
    (0..i64::from(spec.n()))
        .map(|j| {
            let a = spec.beta().power(j * h);
            let b = spec.beta().power(j * (h + 1));
            [a.a0, a.a1, b.a0, b.a1]
        })
        .collect()
}

fn minor2(f: &BaseField, a: &Col, b: &Col, r: usize, s: usize) -> FqElem {
    f.add(f.mul(a[r], b[s]), f.mul(a[s], b[r]))
}

fn pair_dependent(f: &BaseField, a: &Col, b: &Col) -> bool {
    (0..4).all(|r| (r + 1..4).all(|s| minor2(f, a, b, r, s).is_zero()))
}

/// Normal of the span of three columns; zero iff they are dependent.
fn normal(f: &BaseField, a: &Col, b: &Col, c: &Col) -> Col {
    let minor3 = |rows: [usize; 3]| {
        let [r0, r1, r2] = rows;
        let t0 = f.mul(a[r0], minor2(f, b, c, r1, r2));
        let t1 = f.mul(a[r1], minor2(f, b, c, r0, r2));
        let t2 = f.mul(a[r2], minor2(f, b, c, r0, r1));
        f.add(f.add(t0, t1), t2)
    };
    [
        minor3([1, 2, 3]),
        minor3([0, 2, 3]),
        minor3([0, 1, 3]),
        minor3([0, 1, 2]),
    ]
}

fn dot(f: &BaseField, a: &Col, b: &Col) -> FqElem {
    (0..4).fold(FqElem::ZERO, |acc, r| f.add(acc, f.mul(a[r], b[r])))
}

/// Lexicographically first set of `w <= 4` parity columns that is linearly
/// dependent over GF(q). Only meaningful once all smaller weights have been
/// ruled out (the search for `w` assumes every `(w-1)`-subset independent).
pub fn find_dependency(k: &Tower, spec: &BchSpec, w: u32) -> Option<Vec<usize>> {
    let f = k.base();
    let cols = expanded_columns(spec);
    let n = cols.len();
    match w {
        1 => cols
            .iter()
            .position(|c| c.iter().all(|x| x.is_zero()))
            .map(|i| vec![i]),
        2 => (0..n).find_map(|i| {
            (i + 1..n)
                .find(|&j| pair_dependent(f, &cols[i], &cols[j]))
                .map(|j| vec![i, j])
        }),
        3 => (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for l in j + 1..n {
                    if normal(f, &cols[i], &cols[j], &cols[l])
                        .iter()
                        .all(|x| x.is_zero())
                    {
                        return Some(vec![i, j, l]);
                    }
                }
            }
            None
        }),
        4 => (0..n).into_par_iter().find_map_first(|i| {
            for j in i + 1..n {
                for l in j + 1..n {
                    let nv = normal(f, &cols[i], &cols[j], &cols[l]);
                    if let Some(s) = (l + 1..n).find(|&s| dot(f, &nv, &cols[s]).is_zero()) {
                        return Some(vec![i, j, l, s]);
                    }
                }
            }
            None
        }),
        _ => None,
    }
}

/// Least weight of a nonzero codeword, searching dependencies of up to
/// `min(cap, deg g)` columns. If none exists and `cap >= deg g`, the
/// distance is `deg g + 1` (any `deg g + 1` columns are dependent).
pub fn min_distance(k: &Tower, spec: &BchSpec, cap: u32) -> Result<Distance> {
    if cap < 2 {
        return Err(Error::InvalidCap(cap));
    }
    let r = generator_poly(k, spec).degree() as u32;
    for w in 1..=cap.min(r) {
        if find_dependency(k, spec, w).is_some() {
            return Ok(Distance::Exact(w));
        }
    }
    Ok(if cap >= r {
        Distance::Exact(r + 1)
    } else {
        Distance::AboveCap(cap)
    })
}

/// Minimum weight over every nonzero multiple of `g` of degree `< n`.
/// Only feasible at m = 3.
pub fn min_distance_codeword_oracle(k: &Tower, spec: &BchSpec) -> Result<u32> {
    if k.m() != 3 {
        return Err(Error::OracleTooLarge(k.m()));
    }
    let f = k.base();
    let g = generator_poly(k, spec).poly;
    let n = spec.n() as usize;
    let dim = n - g.degree().expect("g is nonzero");
    let q = f.size();
    let rows: Vec<Vec<FqElem>> = (0..dim)
        .map(|i| {
            let mut row = vec![FqElem::ZERO; n];
            row[i..i + g.coeffs().len()].copy_from_slice(g.coeffs());
            row
        })
        .collect();
    // Split on the leading message digit; inner digits run as a counter and
    // the codeword is updated by the change in the digit that moved.
    let best = (0..q)
        .into_par_iter()
        .map(|top| {
            let top = FqElem(top as u16);
            let mut word: Vec<FqElem> = rows[dim - 1].iter().map(|&x| f.mul(top, x)).collect();
            let mut digits = vec![0u16; dim - 1];
            let mut best = if top.is_zero() {
                u32::MAX
            } else {
                weight(&word)
            };
            loop {
                let mut i = 0;
                while i < dim - 1 {
                    let old = digits[i];
                    let new = if u32::from(old) + 1 == q { 0 } else { old + 1 };
                    digits[i] = new;
                    let delta = FqElem(old ^ new);
                    for (w, &x) in word.iter_mut().zip(&rows[i]) {
                        *w = f.add(*w, f.mul(delta, x));
                    }
                    if new != 0 {
                        break;
                    }
                    i += 1;
                }
                if i == dim - 1 {
                    break;
                }
                best = best.min(weight(&word));
            }
            best
        })
        .min()
        .expect("q > 0");
    Ok(best)
}

fn weight(word: &[FqElem]) -> u32 {
    word.iter().filter(|x| !x.is_zero()).count() as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cap_below_two_is_rejected() {
        let k = Tower::with_degree(3).unwrap();
        let spec = BchSpec::with_default_beta(&k, 2);
        assert_eq!(min_distance(&k, &spec, 1), Err(Error::InvalidCap(1)));
    }

    #[test]
    fn small_cap_reports_lower_bound() {
        let k = Tower::with_degree(3).unwrap();
        let spec = BchSpec::with_default_beta(&k, 2);
        assert_eq!(min_distance(&k, &spec, 3).unwrap(), Distance::AboveCap(3));
        assert_eq!(Distance::AboveCap(3).to_string(), ">3");
    }

    #[test]
    fn oracle_refuses_large_fields() {
        let k = Tower::with_degree(4).unwrap();
        let spec = BchSpec::with_default_beta(&k, 1);
        assert_eq!(
            min_distance_codeword_oracle(&k, &spec),
            Err(Error::OracleTooLarge(4))
        );
    }
}
