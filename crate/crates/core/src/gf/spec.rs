//! Field specifications for the tower GF(2) ⊂ GF(2^m) ⊂ GF(2^{2m}).
//!
//! Polynomials over GF(2) are bit-vectors with bit `i` holding the
//! coefficient of `x^i`. The base modulus is always the numerically least
//! irreducible polynomial of degree `m`; the extension is
//! `GF(2^m)[y] / (y^2 + y + c)` with `c` the least element of absolute
//! trace 1.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_DEGREE: u32 = 3;
pub const MAX_DEGREE: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    m: u32,
    base_modulus: u32,
    ext_param: u16,
}

impl FieldSpec {
    /// The canonical specification for `GF(2^m)`, `3 <= m <= 12`.
    pub fn new(m: u32) -> Result<Self> {
        check_degree(m)?;
        let base_modulus = least_irreducible(m);
        let ext_param = (1..1u32 << m)
            .find(|&c| absolute_trace(c, base_modulus, m) == 1)
            .expect("the trace map onto GF(2) is surjective") as u16;
        Ok(FieldSpec {
            m,
            base_modulus,
            ext_param,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `q = 2^m`.
    pub fn q(&self) -> u32 {
        1 << self.m
    }

    /// `n = q + 1`, the order of the norm-one subgroup.
    pub fn n(&self) -> u32 {
        self.q() + 1
    }

    pub fn base_modulus(&self) -> u32 {
        self.base_modulus
    }

    pub fn ext_param(&self) -> u16 {
        self.ext_param
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "m={};mod={:x};c={:x}",
            self.m, self.base_modulus, self.ext_param
        )
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidFieldSpec(format!("cannot parse {s:?}"));
        let mut m = None;
        let mut modulus = None;
        let mut c = None;
        for part in s.trim().split(';') {
            let (key, value) = part.split_once('=').ok_or_else(bad)?;
            match key {
                "m" => m = Some(value.parse::<u32>().map_err(|_| bad())?),
                "mod" => modulus = Some(u32::from_str_radix(value, 16).map_err(|_| bad())?),
                "c" => c = Some(u16::from_str_radix(value, 16).map_err(|_| bad())?),
                _ => return Err(bad()),
            }
        }
        let (m, modulus, c) = (
            m.ok_or_else(bad)?,
            modulus.ok_or_else(bad)?,
            c.ok_or_else(bad)?,
        );
        check_degree(m)?;
        if degree(modulus) != Some(m) || !is_irreducible(modulus) {
            return Err(Error::InvalidFieldSpec(format!(
                "{modulus:x} is not an irreducible polynomial of degree {m}"
            )));
        }
        if u32::from(c) >> m != 0 || absolute_trace(u32::from(c), modulus, m) != 1 {
            return Err(Error::InvalidFieldSpec(format!(
                "y^2 + y + {c:x} is reducible over GF(2^{m})"
            )));
        }
        let canonical = FieldSpec::new(m)?;
        if canonical.base_modulus != modulus || canonical.ext_param != c {
            return Err(Error::InvalidFieldSpec(format!(
                "{s} is not the canonical model {canonical}"
            )));
        }
        Ok(canonical)
    }
}

fn check_degree(m: u32) -> Result<()> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        Ok(())
    } else {
        Err(Error::InvalidFieldSpec(format!(
            "m must lie in {MIN_DEGREE}..={MAX_DEGREE}, got {m}"
        )))
    }
}

pub(crate) fn degree(p: u32) -> Option<u32> {
    (p != 0).then(|| 31 - p.leading_zeros())
}

/// Remainder of `a` modulo `b` in GF(2)[x].
pub(crate) fn gf2_rem(mut a: u32, b: u32) -> u32 {
    let db = degree(b).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

/// Carry-less product of two residues reduced by `modulus` of degree `m`.
pub(crate) fn clmul_mod(a: u32, b: u32, modulus: u32, m: u32) -> u32 {
    let mut acc = 0;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> m & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most half of `p`'s.
pub(crate) fn is_irreducible(p: u32) -> bool {
    let Some(d) = degree(p) else { return false };
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|k| (1u32 << k..1u32 << (k + 1)).all(|f| gf2_rem(p, f) != 0))
}

pub(crate) fn least_irreducible(m: u32) -> u32 {
    (1u32 << m..1u32 << (m + 1))
        .find(|&p| is_irreducible(p))
        .expect("irreducible polynomials exist in every degree")
}

/// `Tr(c) = c + c^2 + ... + c^{2^{m-1}}`, always 0 or 1.
pub(crate) fn absolute_trace(c: u32, modulus: u32, m: u32) -> u32 {
    let mut acc = 0;
    let mut x = c;
    for _ in 0..m {
        acc ^= x;
        x = clmul_mod(x, x, modulus, m);
    }
    debug_assert!(acc <= 1);
    acc
}
