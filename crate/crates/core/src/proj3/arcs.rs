//! Arcs, Casse–Glynn arcs, cyclic monomial models and the lifted PGL(2)
//! action.

use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{Mobius2, Point, PointSet, ProjMatrix, ProjPoint};
use crate::error::{Error, Result};
use crate::exponent::{gcd, mod_inv};
use crate::gf::{Fq2Elem, Tower, UnitRoot};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArcReport {
    pub is_arc: bool,
    /// Fewer than four points: the arc condition holds vacuously.
    pub degenerate: bool,
    /// Lexicographically first coplanar quadruple, by index into the input.
    pub dependent: Option<[usize; 4]>,
}

/// Sum over the six permutations of a 3×3 minor; signs vanish in
/// characteristic 2.
fn minor3(
    k: &Tower,
    a: &[Fq2Elem; 4],
    b: &[Fq2Elem; 4],
    c: &[Fq2Elem; 4],
    rows: [usize; 3],
) -> Fq2Elem {
    let [r0, r1, r2] = rows;
    let terms = [
        (a[r0], b[r1], c[r2]),
        (a[r0], b[r2], c[r1]),
        (a[r1], b[r0], c[r2]),
        (a[r1], b[r2], c[r0]),
        (a[r2], b[r0], c[r1]),
        (a[r2], b[r1], c[r0]),
    ];
    terms.iter().fold(Fq2Elem::ZERO, |acc, &(x, y, z)| {
        k.add(acc, k.mul(k.mul(x, y), z))
    })
}

/// Coefficients of the plane through three points: `det(a, b, c, v)` equals
/// the dot product of the result with `v`.
fn plane_through(k: &Tower, a: &[Fq2Elem; 4], b: &[Fq2Elem; 4], c: &[Fq2Elem; 4]) -> [Fq2Elem; 4] {
    [
        minor3(k, a, b, c, [1, 2, 3]),
        minor3(k, a, b, c, [0, 2, 3]),
        minor3(k, a, b, c, [0, 1, 3]),
        minor3(k, a, b, c, [0, 1, 2]),
    ]
}

/// True iff no four of the points are coplanar.
pub fn is_arc(k: &Tower, points: &[ProjPoint]) -> ArcReport {
    let n = points.len();
    if n < 4 {
        return ArcReport {
            is_arc: true,
            degenerate: true,
            dependent: None,
        };
    }
    let dependent = (0..n).into_par_iter().find_map_first(|i| {
        let a = points[i].coords();
        for j in i + 1..n {
            let b = points[j].coords();
            for l in j + 1..n {
                let plane = plane_through(k, a, b, points[l].coords());
                for s in l + 1..n {
                    let v = points[s].coords();
                    let det =
                        (0..4).fold(Fq2Elem::ZERO, |acc, r| k.add(acc, k.mul(plane[r], v[r])));
                    if det.is_zero() {
                        return Some([i, j, l, s]);
                    }
                }
            }
        }
        None
    });
    ArcReport {
        is_arc: dependent.is_none(),
        degenerate: false,
        dependent,
    }
}

pub(crate) fn check_frobenius_twist(k: &Tower, e: u32) -> Result<()> {
    let m = k.m();
    if e == 0 || e >= m || gcd(u64::from(e), u64::from(m)) != 1 {
        return Err(Error::InvalidExponent(format!(
            "e = {e} must satisfy 1 <= e <= {} and gcd(e, {m}) = 1",
            m - 1
        )));
    }
    Ok(())
}

fn check_sigma(sigma: u64) -> Result<()> {
    if sigma.is_power_of_two() {
        Ok(())
    } else {
        Err(Error::InvalidExponent(format!(
            "sigma = {sigma} is not a power of 2"
        )))
    }
}

/// `A_e = {[1 : t : t^σ : t^{σ+1}] : t ∈ GF(q)} ∪ {[0:0:0:1]}`, `σ = 2^e`.
pub fn casse_glynn(k: &Tower, e: u32) -> Result<PointSet> {
    check_frobenius_twist(k, e)?;
    let affine = k.base_elements().map(|t| {
        let ts = k.frobenius_2(t, e);
        Point::new(k, [Fq2Elem::ONE, t, ts, k.mul(t, ts)]).expect("first coordinate is 1")
    });
    let infinity = Point::new(
        k,
        [Fq2Elem::ZERO, Fq2Elem::ZERO, Fq2Elem::ZERO, Fq2Elem::ONE],
    )?;
    Ok(PointSet::new(affine.chain(std::iter::once(infinity))))
}

/// The orbit `{[t^{e_0} : ... : t^{e_3}] : t ∈ U_n}`.
pub fn diagonal_orbit(k: &Tower, beta: &UnitRoot, exps: [u32; 4]) -> PointSet {
    let n = i64::from(beta.n());
    PointSet::new((0..n).map(|j| {
        let coords = exps.map(|e| beta.power(j * i64::from(e)));
        Point::new(k, coords).expect("units are nonzero")
    }))
}

/// The cyclic monomial model `M_a = {[1 : t : t^a : t^{a+1}] : t ∈ U_n}`.
pub fn monomial_model(k: &Tower, beta: &UnitRoot, a: u32) -> Result<PointSet> {
    let n = beta.n();
    let a = a % n;
    if gcd(u64::from(a), u64::from(n)) != 1 {
        return Err(Error::InvalidExponent(format!("gcd({a}, {n}) != 1")));
    }
    Ok(monomial_points(k, beta, a))
}

/// `{[1 : t : t^a : t^{a+1}]}` without the unit check; used for parity
/// columns whose exponent need not be a unit.
pub(crate) fn monomial_points(k: &Tower, beta: &UnitRoot, a: u32) -> PointSet {
    let n = beta.n();
    diagonal_orbit(k, beta, [0, 1, a % n, (a + 1) % n])
}

/// `diag(β^{e_0}, ..., β^{e_3})`.
pub fn diagonal_element(beta: &UnitRoot, exps: [u32; 4]) -> ProjMatrix {
    ProjMatrix::diag(exps.map(|e| beta.power(i64::from(e))))
}

/// `S_a = diag(1, β, β^a, β^{a+1})`.
pub fn monomial_stabilizer(beta: &UnitRoot, a: u32) -> ProjMatrix {
    diagonal_element(beta, [0, 1, a, a + 1])
}

/// Exponents (base β) of a diagonal matrix whose entries lie in U_n, as a
/// sorted multiset.
pub fn spectral_exponents(beta: &UnitRoot, matrix: &ProjMatrix) -> Option<Vec<u32>> {
    let rows = matrix.rows();
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if i != j && !c.is_zero() {
                return None;
            }
        }
    }
    let mut exps: Vec<u32> = (0..4)
        .map(|i| beta.log(rows[i][i]))
        .collect::<Option<_>>()?;
    exps.sort_unstable();
    Some(exps)
}

/// `ψ([x:y]) = [x^{σ+1} : x^σ y : x y^σ : y^{σ+1}]`.
pub fn psi(k: &Tower, x: Fq2Elem, y: Fq2Elem, sigma: u64) -> Result<ProjPoint> {
    check_sigma(sigma)?;
    if x.is_zero() && y.is_zero() {
        return Err(Error::InvalidPoint);
    }
    let xs = k.pow(x, sigma);
    let ys = k.pow(y, sigma);
    Point::new(k, [k.mul(xs, x), k.mul(xs, y), k.mul(x, ys), k.mul(ys, y)])
}

/// The 4×4 lift of `[[a, b], [c, d]]` that makes ψ equivariant.
pub fn lift(k: &Tower, m: &Mobius2, sigma: u64) -> Result<ProjMatrix> {
    check_sigma(sigma)?;
    if m.det(k).is_zero() {
        return Err(Error::SingularInput);
    }
    let [a, b, c, d] = m.abcd();
    let [as_, bs, cs, ds] = [a, b, c, d].map(|x| k.pow(x, sigma));
    let mul = |x, y| k.mul(x, y);
    Ok(ProjMatrix::from_rows([
        [mul(as_, a), mul(as_, b), mul(a, bs), mul(bs, b)],
        [mul(as_, c), mul(as_, d), mul(bs, c), mul(bs, d)],
        [mul(a, cs), mul(b, cs), mul(a, ds), mul(b, ds)],
        [mul(cs, c), mul(cs, d), mul(c, ds), mul(ds, d)],
    ]))
}

/// `CR(x, y; z, w) = ((x - z)(y - w)) / ((x - w)(y - z))`.
pub fn cross_ratio(k: &Tower, x: Fq2Elem, y: Fq2Elem, z: Fq2Elem, w: Fq2Elem) -> Result<Fq2Elem> {
    if x == w || y == z {
        return Err(Error::DegenerateTuple);
    }
    let num = k.mul(k.sub(x, z), k.sub(y, w));
    let den = k.mul(k.sub(x, w), k.sub(y, z));
    k.div(num, den)
}

/// Swaps the middle coordinates: `[x0:x1:x2:x3] -> [x0:x2:x1:x3]`.
pub fn swap_middle() -> ProjMatrix {
    ProjMatrix::permutation([0, 2, 1, 3])
}

/// Swaps coordinate pairs: `[x0:x1:x2:x3] -> [x1:x0:x3:x2]`.
pub fn swap_pairs() -> ProjMatrix {
    ProjMatrix::permutation([1, 0, 3, 2])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermutationReport {
    pub a: u32,
    pub a_inv: u32,
    pub neg_a: u32,
    /// `Π12(M_a) = M_{a^{-1}}`.
    pub swap_middle_maps_model: bool,
    /// `Π01,23(M_a) = M_{-a}`.
    pub swap_pairs_maps_model: bool,
    /// `j` with `Π12 S_a Π12^{-1} = S_{a^{-1}}^j`, `gcd(j, n) = 1`.
    pub swap_middle_power: Option<u32>,
    /// `j` with `Π01,23 S_a Π01,23^{-1} = S_{-a}^j`, `gcd(j, n) = 1`.
    pub swap_pairs_power: Option<u32>,
}

impl PermutationReport {
    pub fn holds(&self) -> bool {
        self.swap_middle_maps_model
            && self.swap_pairs_maps_model
            && self.swap_middle_power.is_some()
            && self.swap_pairs_power.is_some()
    }
}

/// Exponent `j`, coprime to n, with `conj = S_b^j` projectively.
fn generator_power(k: &Tower, beta: &UnitRoot, conj: &ProjMatrix, b: u32) -> Option<u32> {
    let n = beta.n();
    (1..n)
        .filter(|&j| gcd(u64::from(j), u64::from(n)) == 1)
        .find(|&j| {
            let exps = [0, j, (u64::from(j) * u64::from(b) % u64::from(n)) as u32, {
                (u64::from(j) * u64::from(b + 1) % u64::from(n)) as u32
            }];
            conj.projectively_eq(&diagonal_element(beta, exps), k)
                .is_some()
        })
}

pub fn coordinate_permutations(k: &Tower, beta: &UnitRoot, a: u32) -> Result<PermutationReport> {
    let n = beta.n();
    let a = a % n;
    let model = monomial_model(k, beta, a)?;
    let a_inv = mod_inv(u64::from(a), u64::from(n)).expect("unit") as u32;
    let neg_a = (n - a) % n;
    let image = |p: &ProjMatrix| -> Result<PointSet> {
        model
            .points()
            .iter()
            .map(|pt| p.apply(pt, k))
            .collect::<Result<Vec<_>>>()
            .map(PointSet::new)
    };
    let s_a = monomial_stabilizer(beta, a);
    let conj = |p: &ProjMatrix| -> Result<ProjMatrix> { Ok(p.mul(&s_a, k).mul(&p.inverse(k)?, k)) };
    let (pi12, pi0123) = (swap_middle(), swap_pairs());
    Ok(PermutationReport {
        a,
        a_inv,
        neg_a,
        swap_middle_maps_model: image(&pi12)? == monomial_model(k, beta, a_inv)?,
        swap_pairs_maps_model: image(&pi0123)? == monomial_model(k, beta, neg_a)?,
        swap_middle_power: generator_power(k, beta, &conj(&pi12)?, a_inv),
        swap_pairs_power: generator_power(k, beta, &conj(&pi0123)?, neg_a),
    })
}
