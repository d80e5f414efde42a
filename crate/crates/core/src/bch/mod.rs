//! The BCH family C(q, q+1, 3, h): cyclic codes of length n = q + 1 over
//! GF(q) with defining zeros β^h and β^{h+1}.
//!
//! Besides the code itself this module computes the exact minimum distance
//! by brute force, the two closed-form tests for d = 3 and d = 4, the
//! congruence prediction for d = 5, and a census over all h.

mod census;
mod distance;
mod xu;

pub use census::{
    census, census_row, census_streaming, summarize, CensusRow, CensusSummary, CENSUS_CSV_HEADER,
};
pub use distance::{find_dependency, min_distance, min_distance_codeword_oracle, Distance};
pub use xu::{xu_d4_criterion, xu_d4_witness};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{gcd, is_frobenius_exponent};
use crate::gf::{FieldSpec, Fq2Elem, FqElem, Poly, Tower, UnitRoot};
use crate::proj3::{monomial_points, Point, PointSet};

/// One member of the family, tied to a chosen generator β of U_n.
#[derive(Clone, Debug)]
pub struct BchSpec {
    field: FieldSpec,
    h: u32,
    beta: UnitRoot,
}

impl BchSpec {
    pub fn new(k: &Tower, beta: UnitRoot, h: i64) -> Self {
        let h = crate::exponent::reduce(h, k.n());
        BchSpec {
            field: *k.spec(),
            h,
            beta,
        }
    }

    /// Uses the default generator from [`Tower::find_beta`].
    pub fn with_default_beta(k: &Tower, h: i64) -> Self {
        BchSpec::new(k, k.find_beta(), h)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn beta(&self) -> &UnitRoot {
        &self.beta
    }

    pub fn n(&self) -> u32 {
        self.beta.n()
    }

    pub fn q(&self) -> u32 {
        self.n() - 1
    }

    /// `k = 2h + 1 mod n`, the exponent of the matching monomial model.
    pub fn k_exponent(&self) -> u32 {
        (2 * self.h + 1) % self.n()
    }

    /// `h ∈ {0, q/2, q}`: the two defining cosets collapse or meet.
    pub fn degenerate(&self) -> bool {
        let q = self.q();
        self.h == 0 || self.h == q / 2 || self.h == q
    }

    /// `gcd(2h + 1, n)`.
    pub fn gcd_flag(&self) -> u32 {
        gcd(u64::from(2 * self.h + 1), u64::from(self.n())) as u32
    }
}

/// `{s q^i mod n}`, sorted. Since `q ≡ -1 (mod n)` this is `{s, -s}`.
pub fn cyclotomic_coset(s: u32, q: u32, n: u32) -> Vec<u32> {
    let mut out = vec![s % n];
    let mut x = (u64::from(s) * u64::from(q) % u64::from(n)) as u32;
    while x != s % n {
        out.push(x);
        x = (u64::from(x) * u64::from(q) % u64::from(n)) as u32;
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorPoly {
    pub poly: Poly,
    pub cosets: [Vec<u32>; 2],
}

impl GeneratorPoly {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

/// `lcm` of the minimal polynomials of β^h and β^{h+1} over GF(q).
pub fn generator_poly(k: &Tower, spec: &BchSpec) -> GeneratorPoly {
    let (h, q, n) = (spec.h, spec.q(), spec.n());
    let g_h = k.minimal_poly_fq(spec.beta.power(i64::from(h)));
    let g_h1 = k.minimal_poly_fq(spec.beta.power(i64::from(h) + 1));
    GeneratorPoly {
        poly: g_h.lcm(&g_h1, k.base()),
        cosets: [
            cyclotomic_coset(h, q, n),
            cyclotomic_coset((h + 1) % n, q, n),
        ],
    }
}

/// Columns `(β^{jh}, β^{j(h+1)}, β^{-jh}, β^{-j(h+1)})` for `j = 0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityMatrix {
    pub columns: Vec<[Fq2Elem; 4]>,
}

impl ParityMatrix {
    /// Scale column `t = β^j` by `t^{h+1}` and reorder to
    /// `[1 : t : t^k : t^{k+1}]`, then collect the projective points.
    pub fn column_point_set(&self, k: &Tower, spec: &BchSpec) -> PointSet {
        PointSet::new(self.columns.iter().enumerate().map(|(j, col)| {
            let s = spec.beta.power(j as i64 * (i64::from(spec.h) + 1));
            let [a, b, c, d] = col.map(|x| k.mul(s, x));
            Point::new(k, [d, c, a, b]).expect("units are nonzero")
        }))
    }

    /// `H c`, with `c` read as a vector over GF(q) ⊂ K.
    pub fn syndrome(&self, k: &Tower, word: &[FqElem]) -> [Fq2Elem; 4] {
        let mut s = [Fq2Elem::ZERO; 4];
        for (col, &c) in self.columns.iter().zip(word) {
            for (acc, &x) in s.iter_mut().zip(col) {
                *acc = k.add(*acc, k.scale(c, x));
            }
        }
        s
    }
}

pub fn parity_matrix(spec: &BchSpec) -> ParityMatrix {
    let h = i64::from(spec.h);
    let beta = &spec.beta;
    let columns = (0..i64::from(spec.n()))
        .map(|j| {
            [
                beta.power(j * h),
                beta.power(j * (h + 1)),
                beta.power(-j * h),
                beta.power(-j * (h + 1)),
            ]
        })
        .collect();
    ParityMatrix { columns }
}

/// True iff the normalized parity columns form `M_{2h+1}`.
pub fn parity_matches_monomial_model(k: &Tower, spec: &BchSpec) -> bool {
    parity_matrix(spec).column_point_set(k, spec)
        == monomial_points(k, &spec.beta, spec.k_exponent())
}

pub fn is_codeword_by_syndrome(k: &Tower, spec: &BchSpec, word: &[FqElem]) -> bool {
    parity_matrix(spec)
        .syndrome(k, word)
        .iter()
        .all(|s| s.is_zero())
}

pub fn is_codeword_by_division(k: &Tower, spec: &BchSpec, word: &[FqElem]) -> bool {
    let g = generator_poly(k, spec).poly;
    Poly::new(word.to_vec()).rem(&g, k.base()).is_zero()
}

/// True iff `2h + 1 ≡ ±2^e (mod n)` for some `e` coprime to `m`. Always
/// false when `gcd(2h + 1, n) > 1`.
pub fn mds_predicted(spec: &BchSpec) -> Result<bool> {
    if spec.degenerate() {
        return Err(Error::OutOfHypothesis(format!(
            "h = {} is degenerate",
            spec.h
        )));
    }
    Ok(is_frobenius_exponent(i64::from(spec.k_exponent()), spec.field.m()).is_some())
}
