use std::fmt;

use serde::Serialize;

use super::spec::{clmul_mod, FieldSpec};
use crate::error::{Error, Result};

/// An element of GF(2^m) as its coefficient vector in the power basis.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FqElem(pub u16);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

/// Arithmetic in GF(2^m). Multiplication goes through exp/log tables
/// taken with respect to the least primitive element.
#[derive(Clone, Debug)]
pub struct BaseField {
    m: u32,
    modulus: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl BaseField {
    pub fn new(spec: &FieldSpec) -> Self {
        let m = spec.m();
        let modulus = spec.base_modulus();
        let order = (1u32 << m) - 1;
        let generator = (2..=order)
            .find(|&g| multiplicative_order(g, modulus, m) == order)
            .unwrap_or(1);
        let mut exp = vec![0u16; 2 * order as usize];
        let mut log = vec![0u16; order as usize + 1];
        let mut x = 1u32;
        for i in 0..order {
            exp[i as usize] = x as u16;
            exp[(i + order) as usize] = x as u16;
            log[x as usize] = i as u16;
            x = clmul_mod(x, generator, modulus, m);
        }
        BaseField {
            m,
            modulus,
            exp,
            log,
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn size(&self) -> u32 {
        1 << self.m
    }

    fn unit_order(&self) -> u32 {
        self.size() - 1
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.size()).map(|v| FqElem(v as u16))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        FqElem(self.exp[i])
    }

    /// Shift-and-XOR product, independent of the tables.
    pub fn mul_shift_xor(&self, a: FqElem, b: FqElem) -> FqElem {
        FqElem(clmul_mod(a.0 as u32, b.0 as u32, self.modulus, self.m) as u16)
    }

    pub fn square(&self, a: FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.unit_order() as usize;
        let l = self.log[a.0 as usize] as usize;
        Ok(FqElem(self.exp[(order - l) % order]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut base = a;
        let mut acc = FqElem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: FqElem) -> FqElem {
        let mut acc = FqElem::ZERO;
        let mut x = a;
        for _ in 0..self.m {
            acc = self.add(acc, x);
            x = self.square(x);
        }
        acc
    }

    /// The unique square root (squaring is a bijection in characteristic 2).
    pub fn sqrt(&self, a: FqElem) -> FqElem {
        self.pow(a, 1u64 << (self.m - 1))
    }
}

fn multiplicative_order(g: u32, modulus: u32, m: u32) -> u32 {
    let mut x = g;
    let mut k = 1;
    while x != 1 {
        x = clmul_mod(x, g, modulus, m);
        k += 1;
    }
    k
}
