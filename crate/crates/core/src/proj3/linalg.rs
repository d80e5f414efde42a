//! Homogeneous points and matrices over K, generic in the dimension so the
//! same code serves PG(1, K) and PG(3, K).

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fq2Elem, Tower};

/// A normalized point of PG(N-1, K): the first nonzero coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point<const N: usize> {
    coords: [Fq2Elem; N],
}

/// A point of PG(3, K).
pub type ProjPoint = Point<4>;
/// A point of the projective line PG(1, K).
pub type LinePoint = Point<2>;

impl<const N: usize> Point<N> {
    pub fn new(k: &Tower, coords: [Fq2Elem; N]) -> Result<Self> {
        let lead = coords
            .iter()
            .copied()
            .find(|c| !c.is_zero())
            .ok_or(Error::InvalidPoint)?;
        let inv = k.inv(lead)?;
        Ok(Point {
            coords: coords.map(|c| k.mul(c, inv)),
        })
    }

    pub fn coords(&self) -> &[Fq2Elem; N] {
        &self.coords
    }

    /// True when every coordinate lies in GF(2^m), i.e. the point is
    /// rational over the base field.
    pub fn is_base_rational(&self) -> bool {
        self.coords.iter().all(|c| c.in_base())
    }

    /// Coordinates as fixed-width hex, space separated.
    pub fn to_hex(&self, m: u32) -> String {
        let width = (2 * m as usize).div_ceil(4);
        self.coords
            .iter()
            .map(|c| format!("{:0width$x}", c.packed(m)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl<const N: usize> fmt::Debug for Point<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl LinePoint {
    pub const INFINITY: LinePoint = Point {
        coords: [Fq2Elem::ONE, Fq2Elem::ZERO],
    };

    /// The affine point `[t : 1]`.
    pub fn affine(k: &Tower, t: Fq2Elem) -> Self {
        Point::new(k, [t, Fq2Elem::ONE]).expect("second coordinate is nonzero")
    }

    /// `[x : y]` as given, normalized.
    pub fn from_pair(k: &Tower, x: Fq2Elem, y: Fq2Elem) -> Result<Self> {
        Point::new(k, [x, y])
    }

    /// The q + 1 points of PG(1, q), in the order `[1 : t]` for t ascending,
    /// then `[0 : 1]`.
    pub fn base_line(k: &Tower) -> Vec<LinePoint> {
        k.base_elements()
            .map(|t| Point {
                coords: [Fq2Elem::ONE, t],
            })
            .chain(std::iter::once(Point {
                coords: [Fq2Elem::ZERO, Fq2Elem::ONE],
            }))
            .collect()
    }
}

/// A sorted, duplicate-free set of points of PG(3, K).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
}

impl PointSet {
    pub fn new(points: impl IntoIterator<Item = ProjPoint>) -> Self {
        let mut points: Vec<ProjPoint> = points.into_iter().collect();
        points.sort();
        points.dedup();
        PointSet { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    /// One point per line, lines sorted.
    pub fn to_text(&self, m: u32) -> String {
        let mut lines: Vec<String> = self.points.iter().map(|p| p.to_hex(m)).collect();
        lines.sort();
        lines.iter().map(|l| format!("{l}\n")).collect()
    }
}

/// An N×N matrix over K, acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Matrix<const N: usize> {
    rows: [[Fq2Elem; N]; N],
}

/// A 4×4 projectivity of PG(3, K).
pub type ProjMatrix = Matrix<4>;
/// A 2×2 Möbius transformation of PG(1, K).
pub type Mobius2 = Matrix<2>;

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows.iter()).finish()
    }
}

impl<const N: usize> Matrix<N> {
    pub fn from_rows(rows: [[Fq2Elem; N]; N]) -> Self {
        Matrix { rows }
    }

    pub fn identity() -> Self {
        Self::diag([Fq2Elem::ONE; N])
    }

    pub fn diag(entries: [Fq2Elem; N]) -> Self {
        let mut rows = [[Fq2Elem::ZERO; N]; N];
        for (i, e) in entries.into_iter().enumerate() {
            rows[i][i] = e;
        }
        Matrix { rows }
    }

    /// The permutation matrix sending basis vector `j` to `perm[j]`, so that
    /// `(P x)[perm[j]] = x[j]`.
    pub fn permutation(perm: [usize; N]) -> Self {
        let mut rows = [[Fq2Elem::ZERO; N]; N];
        for (j, &i) in perm.iter().enumerate() {
            rows[i][j] = Fq2Elem::ONE;
        }
        Matrix { rows }
    }

    pub fn rows(&self) -> &[[Fq2Elem; N]; N] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> Fq2Elem {
        self.rows[i][j]
    }

    pub fn mul(&self, other: &Self, k: &Tower) -> Self {
        let mut rows = [[Fq2Elem::ZERO; N]; N];
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..N).fold(Fq2Elem::ZERO, |acc, l| {
                    k.add(acc, k.mul(self.rows[i][l], other.rows[l][j]))
                });
            }
        }
        Matrix { rows }
    }

    pub fn scale(&self, s: Fq2Elem, k: &Tower) -> Self {
        Matrix {
            rows: self.rows.map(|r| r.map(|c| k.mul(s, c))),
        }
    }

    pub fn apply_vec(&self, v: &[Fq2Elem; N], k: &Tower) -> [Fq2Elem; N] {
        std::array::from_fn(|i| {
            (0..N).fold(Fq2Elem::ZERO, |acc, j| {
                k.add(acc, k.mul(self.rows[i][j], v[j]))
            })
        })
    }

    /// Image of a projective point; fails only for singular matrices.
    pub fn apply(&self, p: &Point<N>, k: &Tower) -> Result<Point<N>> {
        Point::new(k, self.apply_vec(p.coords(), k)).map_err(|_| Error::SingularInput)
    }

    pub fn det(&self, k: &Tower) -> Fq2Elem {
        let mut a = self.rows;
        let mut det = Fq2Elem::ONE;
        for col in 0..N {
            let Some(pivot) = (col..N).find(|&r| !a[r][col].is_zero()) else {
                return Fq2Elem::ZERO;
            };
            a.swap(col, pivot);
            let p = a[col][col];
            det = k.mul(det, p);
            let p_inv = k.inv(p).expect("pivot is nonzero");
            for r in col + 1..N {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = k.mul(a[r][col], p_inv);
                for c in col..N {
                    a[r][c] = k.add(a[r][c], k.mul(factor, a[col][c]));
                }
            }
        }
        det
    }

    pub fn inverse(&self, k: &Tower) -> Result<Self> {
        let mut a = self.rows;
        let mut inv = Self::identity().rows;
        for col in 0..N {
            let pivot = (col..N)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::SingularInput)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p_inv = k.inv(a[col][col])?;
            for c in 0..N {
                a[col][c] = k.mul(a[col][c], p_inv);
                inv[col][c] = k.mul(inv[col][c], p_inv);
            }
            for r in 0..N {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col];
                for c in 0..N {
                    a[r][c] = k.add(a[r][c], k.mul(factor, a[col][c]));
                    inv[r][c] = k.add(inv[r][c], k.mul(factor, inv[col][c]));
                }
            }
        }
        Ok(Matrix { rows: inv })
    }

    pub fn pow(&self, mut e: u64, k: &Tower) -> Self {
        let mut base = *self;
        let mut acc = Self::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, k);
            }
            base = base.mul(&base, k);
            e >>= 1;
        }
        acc
    }

    /// `Some(λ)` when the matrix is `λ·I`.
    pub fn scalar_part(&self) -> Option<Fq2Elem> {
        let lambda = self.rows[0][0];
        let is_scalar = (0..N).all(|i| {
            (0..N).all(|j| self.rows[i][j] == if i == j { lambda } else { Fq2Elem::ZERO })
        });
        (is_scalar && !lambda.is_zero()).then_some(lambda)
    }

    /// Projective equality: `Some(λ)` with `self = λ·other`, tested as
    /// `self · other^{-1} = λ·I`.
    pub fn projectively_eq(&self, other: &Self, k: &Tower) -> Option<Fq2Elem> {
        let inv = other.inverse(k).ok()?;
        self.mul(&inv, k).scalar_part()
    }

    /// Least `e >= 1` with `self^e` scalar, searching up to `limit`.
    pub fn projective_order(&self, limit: u64, k: &Tower) -> Option<u64> {
        let mut acc = *self;
        for e in 1..=limit {
            if acc.scalar_part().is_some() {
                return Some(e);
            }
            acc = acc.mul(self, k);
        }
        None
    }

    /// True when every entry lies in GF(2^m).
    pub fn is_base_rational(&self) -> bool {
        self.rows.iter().flatten().all(|c| c.in_base())
    }

    /// Matrix with every entry raised to the q-th power.
    pub fn frobenius_q(&self, k: &Tower) -> Self {
        Matrix {
            rows: self.rows.map(|r| r.map(|c| k.frobenius_q(c))),
        }
    }
}

impl Mobius2 {
    /// `[[a, b], [c, d]]`.
    pub fn new(a: Fq2Elem, b: Fq2Elem, c: Fq2Elem, d: Fq2Elem) -> Self {
        Matrix {
            rows: [[a, b], [c, d]],
        }
    }

    pub fn abcd(&self) -> [Fq2Elem; 4] {
        let [[a, b], [c, d]] = self.rows;
        [a, b, c, d]
    }

    /// Normalized representative: first nonzero entry (row-major) equal to 1.
    pub fn normalized(&self, k: &Tower) -> Self {
        let lead = self
            .abcd()
            .into_iter()
            .find(|c| !c.is_zero())
            .expect("nonzero matrix");
        self.scale(k.inv(lead).expect("nonzero"), k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FqElem;

    fn k3() -> Tower {
        Tower::with_degree(3).unwrap()
    }

    fn e(v: u32) -> Fq2Elem {
        Fq2Elem::from_packed(v, 3)
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let k = k3();
        let p = Point::new(&k, [e(0), e(5), e(17), e(40)]).unwrap();
        assert_eq!(p.coords()[0], Fq2Elem::ZERO);
        assert_eq!(p.coords()[1], Fq2Elem::ONE);
        for lambda in k.elements().skip(1) {
            let scaled = p.coords().map(|c| k.mul(lambda, c));
            assert_eq!(Point::new(&k, scaled).unwrap(), p);
        }
    }

    #[test]
    fn zero_vector_is_rejected() {
        let k = k3();
        assert_eq!(
            Point::<4>::new(&k, [Fq2Elem::ZERO; 4]),
            Err(Error::InvalidPoint)
        );
    }

    #[test]
    fn inverse_and_determinant() {
        let k = k3();
        let m = ProjMatrix::from_rows([
            [e(1), e(2), e(3), e(4)],
            [e(5), e(6), e(7), e(8)],
            [e(9), e(10), e(11), e(12)],
            [e(13), e(14), e(15), e(17)],
        ]);
        if m.det(&k).is_zero() {
            assert_eq!(m.inverse(&k), Err(Error::SingularInput));
        } else {
            let inv = m.inverse(&k).unwrap();
            assert_eq!(m.mul(&inv, &k), ProjMatrix::identity());
        }
        let singular = ProjMatrix::from_rows([[e(1), e(2), e(3), e(4)]; 4]);
        assert!(singular.det(&k).is_zero());
        assert_eq!(singular.inverse(&k), Err(Error::SingularInput));
    }

    #[test]
    fn projective_equality_detects_scalars() {
        let k = k3();
        let m = Mobius2::new(e(1), e(9), e(3), e(22));
        let lambda = e(33);
        assert_eq!(m.scale(lambda, &k).projectively_eq(&m, &k), Some(lambda));
        let other = Mobius2::new(e(1), e(9), e(3), e(23));
        assert_eq!(other.projectively_eq(&m, &k), None);
    }

    #[test]
    fn base_line_has_q_plus_one_points() {
        let k = k3();
        let line = LinePoint::base_line(&k);
        assert_eq!(line.len(), 9);
        assert!(line.contains(&LinePoint::affine(&k, Fq2Elem::ZERO)));
        assert!(line.contains(&LinePoint::INFINITY));
        let one = Fq2Elem::from_base(FqElem::ONE);
        assert!(line.contains(&LinePoint::affine(&k, one)));
    }

    #[test]
    fn permutation_matrix_moves_coordinates() {
        let k = k3();
        let p = ProjMatrix::permutation([1, 0, 3, 2]);
        let v = [e(1), e(2), e(3), e(4)];
        assert_eq!(p.apply_vec(&v, &k), [e(2), e(1), e(4), e(3)]);
    }
}
