//! The quadratic extension K = GF(2^m)[y] / (y^2 + y + c).

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::base::{BaseField, FqElem};
use super::poly::Poly;
use super::spec::FieldSpec;
use crate::error::{Error, Result};

/// `a0 + a1·y` with `a0, a1 ∈ GF(2^m)`.
///
/// Elements are ordered by their packed integer `a0 + a1·2^m`, which is
/// also the value used for hex encoding.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Fq2Elem {
    pub a0: FqElem,
    pub a1: FqElem,
}

impl Fq2Elem {
    pub const ZERO: Fq2Elem = Fq2Elem {
        a0: FqElem::ZERO,
        a1: FqElem::ZERO,
    };
    pub const ONE: Fq2Elem = Fq2Elem {
        a0: FqElem::ONE,
        a1: FqElem::ZERO,
    };

    pub fn new(a0: FqElem, a1: FqElem) -> Self {
        Fq2Elem { a0, a1 }
    }

    pub fn from_base(a: FqElem) -> Self {
        Fq2Elem {
            a0: a,
            a1: FqElem::ZERO,
        }
    }

    pub fn is_zero(self) -> bool {
        self.a0.is_zero() && self.a1.is_zero()
    }

    /// True when the element lies in the subfield GF(2^m).
    pub fn in_base(self) -> bool {
        self.a1.is_zero()
    }

    pub fn packed(self, m: u32) -> u32 {
        u32::from(self.a0.0) | u32::from(self.a1.0) << m
    }

    pub fn from_packed(v: u32, m: u32) -> Self {
        let mask = (1u32 << m) - 1;
        Fq2Elem {
            a0: FqElem((v & mask) as u16),
            a1: FqElem((v >> m) as u16),
        }
    }
}

impl Ord for Fq2Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a1, self.a0).cmp(&(other.a1, other.a0))
    }
}

impl PartialOrd for Fq2Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fq2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}y)", self.a0, self.a1)
    }
}

/// The arithmetic suite for GF(2^m) and K = GF(2^{2m}).
#[derive(Clone, Debug)]
pub struct Tower {
    spec: FieldSpec,
    base: BaseField,
    c: FqElem,
    y_to_q: Fq2Elem,
    unit_order_primes: Vec<u64>,
    // sum_{j>i} tau^{2^j} for the trace-one element tau = c·y
    trace_suffix: Vec<Fq2Elem>,
}

impl Tower {
    pub fn new(spec: FieldSpec) -> Self {
        let base = BaseField::new(&spec);
        let mut tower = Tower {
            spec,
            base,
            c: FqElem(spec.ext_param()),
            y_to_q: Fq2Elem::ZERO,
            unit_order_primes: prime_factors(unit_order(&spec)),
            trace_suffix: Vec::new(),
        };
        let y = Fq2Elem::new(FqElem::ZERO, FqElem::ONE);
        tower.y_to_q = tower.pow(y, spec.q() as u64);
        // Tr_K(c·y) = Tr_q(c·(y + y^q)) = Tr_q(c) = 1
        let tau = Fq2Elem::new(FqElem::ZERO, tower.c);
        let degree = 2 * spec.m() as usize;
        let tau_pows: Vec<Fq2Elem> = std::iter::successors(Some(tau), |&t| Some(tower.square(t)))
            .take(degree)
            .collect();
        let mut suffix = vec![Fq2Elem::ZERO; degree];
        for i in (0..degree - 1).rev() {
            suffix[i] = tower.add(suffix[i + 1], tau_pows[i + 1]);
        }
        tower.trace_suffix = suffix;
        tower
    }

    pub fn with_degree(m: u32) -> Result<Self> {
        Ok(Tower::new(FieldSpec::new(m)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }

    pub fn m(&self) -> u32 {
        self.spec.m()
    }

    pub fn q(&self) -> u32 {
        self.spec.q()
    }

    pub fn n(&self) -> u32 {
        self.spec.n()
    }

    /// Order of K^×, `q^2 - 1`.
    pub fn unit_order(&self) -> u64 {
        unit_order(&self.spec)
    }

    /// All elements of K in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = Fq2Elem> {
        let m = self.m();
        (0..1u32 << (2 * m)).map(move |v| Fq2Elem::from_packed(v, m))
    }

    pub fn base_elements(&self) -> impl Iterator<Item = Fq2Elem> + '_ {
        self.base.elements().map(Fq2Elem::from_base)
    }

    pub fn add(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        Fq2Elem {
            a0: self.base.add(x.a0, y.a0),
            a1: self.base.add(x.a1, y.a1),
        }
    }

    /// Subtraction coincides with addition in characteristic 2.
    pub fn sub(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        self.add(x, y)
    }

    pub fn mul(&self, x: Fq2Elem, y: Fq2Elem) -> Fq2Elem {
        let f = &self.base;
        // y^2 = y + c
        let lo = f.mul(x.a0, y.a0);
        let hi = f.mul(x.a1, y.a1);
        let cross = f.mul(f.add(x.a0, x.a1), f.add(y.a0, y.a1));
        Fq2Elem {
            a0: f.add(lo, f.mul(self.c, hi)),
            a1: f.add(cross, lo),
        }
    }

    pub fn square(&self, x: Fq2Elem) -> Fq2Elem {
        self.mul(x, x)
    }

    pub fn scale(&self, s: FqElem, x: Fq2Elem) -> Fq2Elem {
        Fq2Elem {
            a0: self.base.mul(s, x.a0),
            a1: self.base.mul(s, x.a1),
        }
    }

    pub fn frobenius_q(&self, x: Fq2Elem) -> Fq2Elem {
        self.add(Fq2Elem::from_base(x.a0), self.scale(x.a1, self.y_to_q))
    }

    /// `x · x^q`, an element of GF(2^m).
    pub fn norm(&self, x: Fq2Elem) -> FqElem {
        let n = self.mul(x, self.frobenius_q(x));
        debug_assert!(n.in_base());
        n.a0
    }

    pub fn inv(&self, x: Fq2Elem) -> Result<Fq2Elem> {
        let n = self.base.inv(self.norm(x))?;
        Ok(self.scale(n, self.frobenius_q(x)))
    }

    pub fn div(&self, x: Fq2Elem, y: Fq2Elem) -> Result<Fq2Elem> {
        Ok(self.mul(x, self.inv(y)?))
    }

    pub fn pow(&self, x: Fq2Elem, mut e: u64) -> Fq2Elem {
        let mut base = x;
        let mut acc = Fq2Elem::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            e >>= 1;
        }
        acc
    }

    /// `x^k` for a possibly negative exponent, reduced modulo `|K^×|`.
    pub fn pow_signed(&self, x: Fq2Elem, k: i64) -> Result<Fq2Elem> {
        if k >= 0 {
            return Ok(self.pow(x, k as u64));
        }
        let inv = self.inv(x)?;
        Ok(self.pow(inv, k.unsigned_abs()))
    }

    /// `x^{2^e}`, the e-th power of absolute Frobenius.
    pub fn frobenius_2(&self, x: Fq2Elem, e: u32) -> Fq2Elem {
        (0..e).fold(x, |acc, _| self.square(acc))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Fq2Elem) -> Result<u64> {
        if x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut order = self.unit_order();
        for &p in &self.unit_order_primes {
            while order % p == 0 && self.pow(x, order / p) == Fq2Elem::ONE {
                order /= p;
            }
        }
        Ok(order)
    }

    /// The absolute trace `K -> GF(2)`.
    pub fn absolute_trace(&self, x: Fq2Elem) -> Fq2Elem {
        let mut acc = Fq2Elem::ZERO;
        let mut t = x;
        for _ in 0..2 * self.m() {
            acc = self.add(acc, t);
            t = self.square(t);
        }
        acc
    }

    /// Element of order exactly `n = q + 1`: `g^{q-1}` with `g` the least
    /// primitive element of K^×.
    pub fn find_beta(&self) -> UnitRoot {
        let full = self.unit_order();
        let g = self
            .elements()
            .skip(1)
            .find(|&x| self.order(x) == Ok(full))
            .expect("K^× is cyclic");
        UnitRoot::new(self, self.pow(g, u64::from(self.q() - 1)))
            .expect("g^(q-1) has order q+1 for primitive g")
    }

    /// Monic minimal polynomial of `x` over GF(2^m).
    pub fn minimal_poly_fq(&self, x: Fq2Elem) -> Poly {
        if x.in_base() {
            return Poly::new(vec![x.a0, FqElem::ONE]);
        }
        let conj = self.frobenius_q(x);
        let sum = self.add(x, conj);
        debug_assert!(sum.in_base());
        Poly::new(vec![self.norm(x), sum.a0, FqElem::ONE])
    }

    /// Roots in K of `a t^2 + b t + c`, sorted ascending.
    pub fn solve_quadratic(&self, a: Fq2Elem, b: Fq2Elem, c: Fq2Elem) -> Result<Vec<Fq2Elem>> {
        if a.is_zero() {
            return Err(Error::NotQuadratic);
        }
        if self.m() <= 6 {
            Ok(self.solve_quadratic_by_scan(a, b, c))
        } else {
            self.solve_quadratic_by_trace(a, b, c)
        }
    }

    pub fn solve_quadratic_by_scan(&self, a: Fq2Elem, b: Fq2Elem, c: Fq2Elem) -> Vec<Fq2Elem> {
        self.elements()
            .filter(|&t| {
                let v = self.add(self.mul(self.add(self.mul(a, t), b), t), c);
                v.is_zero()
            })
            .collect()
    }

    /// Closed-form roots. With `b != 0` the substitution `t = (b/a) z`
    /// reduces to `z^2 + z = δ`, solved through a fixed trace-one element
    /// since K has even degree over GF(2).
    pub fn solve_quadratic_by_trace(
        &self,
        a: Fq2Elem,
        b: Fq2Elem,
        c: Fq2Elem,
    ) -> Result<Vec<Fq2Elem>> {
        if a.is_zero() {
            return Err(Error::NotQuadratic);
        }
        if b.is_zero() {
            // t^2 = c/a has exactly one root
            let r = self.div(c, a)?;
            return Ok(vec![self.frobenius_2(r, 2 * self.m() - 1)]);
        }
        let ratio = self.div(b, a)?;
        let delta = self.div(self.mul(a, c), self.square(b))?;
        if !self.absolute_trace(delta).is_zero() {
            return Ok(Vec::new());
        }
        let z = self.artin_schreier_root(delta);
        let mut roots = vec![
            self.mul(ratio, z),
            self.mul(ratio, self.add(z, Fq2Elem::ONE)),
        ];
        roots.sort();
        Ok(roots)
    }

    fn artin_schreier_root(&self, delta: Fq2Elem) -> Fq2Elem {
        let mut z = Fq2Elem::ZERO;
        let mut delta_pow = delta;
        for &inner in &self.trace_suffix[..self.trace_suffix.len() - 1] {
            z = self.add(z, self.mul(delta_pow, inner));
            delta_pow = self.square(delta_pow);
        }
        z
    }

    /// Evaluate a polynomial over GF(2^m) at a point of K.
    pub fn eval(&self, p: &Poly, x: Fq2Elem) -> Fq2Elem {
        p.coeffs().iter().rev().fold(Fq2Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, x), Fq2Elem::from_base(c))
        })
    }
}

fn unit_order(spec: &FieldSpec) -> u64 {
    let q = u64::from(spec.q());
    q * q - 1
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            primes.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// A generator of the cyclic group U_n of (q+1)-th roots of unity.
#[derive(Clone, Debug)]
pub struct UnitRoot {
    beta: Fq2Elem,
    n: u32,
    powers: Vec<Fq2Elem>,
}

impl UnitRoot {
    /// Wrap `beta`, checking that it has order exactly `q + 1`.
    pub fn new(tower: &Tower, beta: Fq2Elem) -> Result<Self> {
        let n = tower.n();
        if tower.order(beta)? != u64::from(n) {
            return Err(Error::InvalidExponent(format!(
                "{beta:?} does not have order {n}"
            )));
        }
        let powers: Vec<Fq2Elem> =
            std::iter::successors(Some(Fq2Elem::ONE), |&x| Some(tower.mul(x, beta)))
                .take(n as usize)
                .collect();
        Ok(UnitRoot { beta, n, powers })
    }

    pub fn beta(&self) -> Fq2Elem {
        self.beta
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `beta^j` for `j` reduced modulo `n`.
    pub fn power(&self, j: i64) -> Fq2Elem {
        self.powers[j.rem_euclid(i64::from(self.n)) as usize]
    }

    /// U_n listed as `beta^0, beta^1, ..., beta^{n-1}`.
    pub fn elements(&self) -> &[Fq2Elem] {
        &self.powers
    }

    /// Discrete logarithm base `beta`, if `x ∈ U_n`.
    pub fn log(&self, x: Fq2Elem) -> Option<u32> {
        self.powers.iter().position(|&p| p == x).map(|j| j as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower(m: u32) -> Tower {
        Tower::with_degree(m).unwrap()
    }

    #[test]
    fn y_to_the_q_is_the_other_root() {
        for m in 3..=8 {
            let k = tower(m);
            let y = Fq2Elem::new(FqElem::ZERO, FqElem::ONE);
            assert_eq!(k.frobenius_q(y), k.add(y, Fq2Elem::ONE));
        }
    }

    #[test]
    fn frobenius_is_an_involution_fixing_the_base() {
        let k = tower(4);
        for x in k.elements() {
            let fx = k.frobenius_q(x);
            assert_eq!(fx, k.pow(x, 16));
            assert_eq!(k.frobenius_q(fx), x);
            assert_eq!(fx == x, x.in_base());
        }
    }

    #[test]
    fn inverse_is_two_sided() {
        let k = tower(3);
        for x in k.elements().skip(1) {
            assert_eq!(k.mul(k.inv(x).unwrap(), x), Fq2Elem::ONE);
        }
        assert_eq!(k.inv(Fq2Elem::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn beta_has_order_n() {
        for m in 3..=6 {
            let k = tower(m);
            let beta = k.find_beta();
            assert_eq!(k.order(beta.beta()).unwrap(), u64::from(k.n()));
            assert_eq!(k.pow(beta.beta(), u64::from(k.n())), Fq2Elem::ONE);
            assert_eq!(beta.log(beta.power(5)), Some(5));
        }
    }

    #[test]
    fn quadratic_with_zero_b_has_a_double_root() {
        let k = tower(3);
        let c = Fq2Elem::from_packed(0b101101, 3);
        let roots = k.solve_quadratic(Fq2Elem::ONE, Fq2Elem::ZERO, c).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(k.square(roots[0]), c);
        assert_eq!(
            k.solve_quadratic_by_trace(Fq2Elem::ONE, Fq2Elem::ZERO, c)
                .unwrap(),
            roots
        );
    }

    #[test]
    fn quadratic_requires_nonzero_leading_coefficient() {
        let k = tower(3);
        assert_eq!(
            k.solve_quadratic(Fq2Elem::ZERO, Fq2Elem::ONE, Fq2Elem::ONE),
            Err(Error::NotQuadratic)
        );
    }
}
