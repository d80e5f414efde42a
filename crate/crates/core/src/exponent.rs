//! Affine equivalence of exponent multisets modulo n, the four-point
//! classification, Frobenius exponents and descent classes.
//!
//! Everything here is plain integer arithmetic. The geometric meaning: a
//! diagonal cyclic orbit `M_E` in PG(r, K) is determined by its exponent
//! multiset `E`, and conjugate aligned orbits have exponent multisets that
//! differ by an affine map `x -> v + u x` with `u` a unit mod n.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let (mut old_r, mut r) = (i128::from(a % n), i128::from(n));
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    (old_r == 1 || n == 1).then(|| old_s.rem_euclid(i128::from(n)) as u64)
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Reduce a signed residue into `[0, n)`.
pub fn reduce(a: i64, n: u32) -> u32 {
    a.rem_euclid(i64::from(n)) as u32
}

/// A multiset of residues modulo an odd `n >= 9`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentSet {
    n: u32,
    elems: Vec<u32>,
}

impl ExponentSet {
    pub fn new(n: u32, elems: impl IntoIterator<Item = i64>) -> Result<Self> {
        if n < 9 || n % 2 == 0 {
            return Err(Error::InvalidShape(format!(
                "modulus must be odd and >= 9, got {n}"
            )));
        }
        let mut elems: Vec<u32> = elems.into_iter().map(|e| reduce(e, n)).collect();
        if elems.len() < 2 {
            return Err(Error::InvalidShape("need at least two exponents".into()));
        }
        elems.sort_unstable();
        Ok(ExponentSet { n, elems })
    }

    /// `{0, 1, x, x + 1}`.
    pub fn four_point(n: u32, x: i64) -> Result<Self> {
        ExponentSet::new(n, [0, 1, x, x + 1])
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn elems(&self) -> &[u32] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn is_set(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] != w[1])
    }

    /// `v + u·self`.
    pub fn affine_image(&self, w: AffineWitness) -> ExponentSet {
        let n = u64::from(self.n);
        let mut elems: Vec<u32> = self
            .elems
            .iter()
            .map(|&e| ((u64::from(w.v) + u64::from(w.u) * u64::from(e)) % n) as u32)
            .collect();
        elems.sort_unstable();
        ExponentSet { n: self.n, elems }
    }
}

impl fmt::Display for ExponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elems.iter().map(u32::to_string).collect();
        write!(f, "{{{}}} mod {}", parts.join(","), self.n)
    }
}

/// `(u, v)` with `E = v + u·F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AffineWitness {
    pub u: u32,
    pub v: u32,
}

impl AffineWitness {
    /// The witness for the reverse direction: `F = v' + u'·E`.
    pub fn inverse(self, n: u32) -> AffineWitness {
        let u_inv = mod_inv(u64::from(self.u), u64::from(n)).expect("u is a unit") as u32;
        let v =
            ((u64::from(n - self.v % n) % u64::from(n)) * u64::from(u_inv) % u64::from(n)) as u32;
        AffineWitness { u: u_inv, v }
    }
}

impl fmt::Display for AffineWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

/// True iff the differences `e_i - e_0` generate Z/nZ.
pub fn is_regular(e: &ExponentSet) -> bool {
    let e0 = e.elems[0];
    let g = e.elems[1..].iter().fold(u64::from(e.n), |acc, &x| {
        gcd(acc, u64::from((x + e.n - e0) % e.n))
    });
    g == 1
}

/// Least `(u, v)` (by `u`, then `v`) with `E = v + u·F` as multisets.
pub fn affine_equivalent(e: &ExponentSet, f: &ExponentSet) -> Result<Option<AffineWitness>> {
    if e.n != f.n || e.len() != f.len() {
        return Err(Error::IncompatibleInputs(format!("{e} vs {f}")));
    }
    let n = e.n;
    for u in (1..n).filter(|&u| gcd(u64::from(u), u64::from(n)) == 1) {
        for v in 0..n {
            let w = AffineWitness { u, v };
            if f.affine_image(w) == *e {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Recover `x` from `E = {0, 1, x, x + 1}` with `x ≢ 0, ±1`.
fn four_point_parameter(e: &ExponentSet) -> Result<u32> {
    let n = e.n;
    let shape_err = || Error::InvalidShape(format!("{e} is not of the form {{0,1,x,x+1}}"));
    if e.len() != 4 || !e.is_set() {
        return Err(shape_err());
    }
    e.elems
        .iter()
        .copied()
        .filter(|&x| x != 0 && x != 1 && x != n - 1)
        .find(|&x| ExponentSet::four_point(n, i64::from(x)).as_ref() == Ok(e))
        .ok_or_else(shape_err)
}

/// Differences that occur more than once among ordered pairs of distinct
/// elements of `{0, 1, x, x + 1}`; always `{±1, ±x}`.
pub fn repeated_differences(e: &ExponentSet) -> Result<Vec<u32>> {
    four_point_parameter(e)?;
    let n = e.n;
    let mut counts = vec![0u32; n as usize];
    for (i, &a) in e.elems.iter().enumerate() {
        for (j, &b) in e.elems.iter().enumerate() {
            if i != j {
                counts[((a + n - b) % n) as usize] += 1;
            }
        }
    }
    Ok((0..n).filter(|&d| counts[d as usize] > 1).collect())
}

/// True iff `a ∈ {b, -b, b^{-1}, -b^{-1}}` modulo `n`.
pub fn four_point_classify(n: u32, a: i64, b: i64) -> Result<bool> {
    if n < 9 || n % 2 == 0 {
        return Err(Error::OutOfHypothesis(format!(
            "n = {n} must be odd and >= 9"
        )));
    }
    let (a, b) = (reduce(a, n), reduce(b, n));
    for x in [a, b] {
        if x == 0 || x == 1 || x == n - 1 || gcd(u64::from(x), u64::from(n)) != 1 {
            return Err(Error::OutOfHypothesis(format!(
                "{x} must be a unit other than 0, ±1 mod {n}"
            )));
        }
    }
    let b_inv = mod_inv(u64::from(b), u64::from(n)).expect("unit") as u32;
    Ok([b, n - b, b_inv, n - b_inv].contains(&a))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// `a ≡ sign·2^e (mod 2^m + 1)` with `gcd(e, m) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusExponent {
    pub sign: Sign,
    pub e: u32,
}

impl fmt::Display for FrobeniusExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.sign {
            Sign::Plus => '+',
            Sign::Minus => '-',
        };
        write!(f, "{s}2^{}", self.e)
    }
}

/// The least `e ∈ [1, m-1]` coprime to `m` with `a ≡ ±2^e (mod 2^m + 1)`,
/// trying `+` before `-`.
pub fn is_frobenius_exponent(a: i64, m: u32) -> Option<FrobeniusExponent> {
    let n = (1u32 << m) + 1;
    let a = reduce(a, n);
    (1..m)
        .filter(|&e| gcd(u64::from(e), u64::from(m)) == 1)
        .find_map(|e| {
            let p = 1u32 << e;
            if a == p {
                Some(FrobeniusExponent {
                    sign: Sign::Plus,
                    e,
                })
            } else if a == n - p {
                Some(FrobeniusExponent {
                    sign: Sign::Minus,
                    e,
                })
            } else {
                None
            }
        })
}

/// The set `{±2^e mod n : 1 <= e <= m-1, gcd(e, m) = 1}`, sorted.
pub fn frobenius_exponents(m: u32) -> Vec<u32> {
    let n = (1u32 << m) + 1;
    let mut out: Vec<u32> = (0..n)
        .filter(|&a| is_frobenius_exponent(i64::from(a), m).is_some())
        .collect();
    out.dedup();
    out
}

/// One orbit `{e, m - e}` of the involution on exponents coprime to `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DescentClass {
    pub index: usize,
    pub e_low: u32,
    pub e_high: u32,
}

impl DescentClass {
    /// `m,class_index,e_low,e_high`.
    pub fn csv_row(&self, m: u32) -> String {
        format!("{m},{},{},{}", self.index, self.e_low, self.e_high)
    }
}

pub const DESCENT_CLASS_CSV_HEADER: &str = "m,class_index,e_low,e_high";

/// Orbits of `e -> m - e` on `{1 <= e <= m-1 : gcd(e, m) = 1}`, each
/// represented by its smaller element.
pub fn descent_classes(m: u32) -> Vec<DescentClass> {
    (1..m)
        .filter(|&e| gcd(u64::from(e), u64::from(m)) == 1 && e <= m - e)
        .enumerate()
        .map(|(index, e)| DescentClass {
            index,
            e_low: e,
            e_high: m - e,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_helpers() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(mod_inv(2, 9), Some(5));
        assert_eq!(mod_inv(8, 17), Some(15));
        assert_eq!(mod_inv(3, 9), None);
        assert_eq!(euler_phi(9), 6);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(reduce(-2, 9), 7);
    }

    #[test]
    fn regularity() {
        for a in [2, 4, 5, 7] {
            assert!(is_regular(&ExponentSet::four_point(9, a).unwrap()));
        }
        assert!(!is_regular(&ExponentSet::new(9, [0, 3, 6]).unwrap()));
    }

    #[test]
    fn identity_witness() {
        let e = ExponentSet::four_point(17, 5).unwrap();
        assert_eq!(
            affine_equivalent(&e, &e).unwrap(),
            Some(AffineWitness { u: 1, v: 0 })
        );
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let e = ExponentSet::four_point(17, 5).unwrap();
        let f = ExponentSet::four_point(33, 5).unwrap();
        let g = ExponentSet::new(17, [0, 1, 2]).unwrap();
        assert!(matches!(
            affine_equivalent(&e, &f),
            Err(Error::IncompatibleInputs(_))
        ));
        assert!(matches!(
            affine_equivalent(&e, &g),
            Err(Error::IncompatibleInputs(_))
        ));
    }

    #[test]
    fn repeated_differences_of_known_shapes() {
        let e = ExponentSet::four_point(9, 2).unwrap();
        assert_eq!(repeated_differences(&e).unwrap(), vec![1, 2, 7, 8]);
        let e = ExponentSet::four_point(17, 8).unwrap();
        assert_eq!(repeated_differences(&e).unwrap(), vec![1, 8, 9, 16]);
    }

    #[test]
    fn wrong_shapes_are_rejected() {
        for elems in [vec![0, 1, 2], vec![0, 2, 4, 6], vec![0, 1, 1, 2]] {
            let e = ExponentSet::new(9, elems).unwrap();
            assert!(matches!(
                repeated_differences(&e),
                Err(Error::InvalidShape(_))
            ));
        }
    }

    #[test]
    fn classify_hypotheses() {
        assert!(matches!(
            four_point_classify(7, 2, 3),
            Err(Error::OutOfHypothesis(_))
        ));
        assert!(matches!(
            four_point_classify(10, 3, 3),
            Err(Error::OutOfHypothesis(_))
        ));
        assert!(matches!(
            four_point_classify(9, 1, 2),
            Err(Error::OutOfHypothesis(_))
        ));
        assert!(four_point_classify(9, 4, 4).unwrap());
        assert!(four_point_classify(17, 2, 8).unwrap());
    }

    #[test]
    fn frobenius_exponents_small_cases() {
        assert_eq!(frobenius_exponents(3), vec![2, 4, 5, 7]);
        assert_eq!(frobenius_exponents(4), vec![2, 8, 9, 15]);
        assert_eq!(is_frobenius_exponent(8, 3), None);
        assert_eq!(
            is_frobenius_exponent(7, 3),
            Some(FrobeniusExponent {
                sign: Sign::Minus,
                e: 1
            })
        );
    }

    #[test]
    fn descent_class_listing() {
        let classes = descent_classes(5);
        assert_eq!(classes.len(), 2);
        assert_eq!((classes[0].e_low, classes[0].e_high), (1, 4));
        assert_eq!((classes[1].e_low, classes[1].e_high), (2, 3));
        assert_eq!(classes[1].csv_row(5), "5,1,2,3");
    }
}
