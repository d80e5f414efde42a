//! Dense polynomials over GF(2^m), lowest coefficient first.

use serde::Serialize;

use super::base::{BaseField, FqElem};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Poly {
    coeffs: Vec<FqElem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::new(vec![FqElem::ONE])
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![FqElem::ZERO; n + 1];
        coeffs[0] = FqElem::ONE;
        coeffs[n] = FqElem::ONE;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElem::ONE
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn add(&self, other: &Poly, f: &BaseField) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or_default();
                let b = other.coeffs.get(i).copied().unwrap_or_default();
                f.add(a, b)
            })
            .collect();
        Poly::new(coeffs)
    }

    pub fn mul(&self, other: &Poly, f: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FqElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(coeffs)
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly, f: &BaseField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f
            .inv(divisor.leading())
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let Some(dr) = self.degree().filter(|&d| d >= dd) else {
            return (Poly::zero(), self.clone());
        };
        let mut quot = vec![FqElem::ZERO; dr - dd + 1];
        for i in (0..=dr - dd).rev() {
            let coef = f.mul(rem[i + dd], lead_inv);
            if coef.is_zero() {
                continue;
            }
            quot[i] = coef;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = f.add(rem[i + j], f.mul(coef, d));
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, divisor: &Poly, f: &BaseField) -> Poly {
        self.div_rem(divisor, f).1
    }

    pub fn monic(&self, f: &BaseField) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = f.inv(self.leading()).expect("nonzero leading coefficient");
        Poly::new(self.coeffs.iter().map(|&c| f.mul(c, inv)).collect())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly, f: &BaseField) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Poly, f: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other, f);
        let (q, _) = self.mul(other, f).div_rem(&g, f);
        q.monic(f)
    }

    pub fn eval(&self, x: FqElem, f: &BaseField) -> FqElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }
}
