//! Singer elements of PGL(2, q), their diagonalization over K, and the
//! explicit projectivity carrying `A_e` onto the monomial model `M_{2^e}`.

use serde::Serialize;

use super::arcs::{casse_glynn, check_frobenius_twist, lift, monomial_points, monomial_stabilizer};
use super::linalg::{LinePoint, Mobius2, PointSet, ProjMatrix};
use crate::error::{Error, Result};
use crate::exponent::gcd;
use crate::gf::{Fq2Elem, Tower, UnitRoot};

/// Normalized representatives of PGL(2, q): `q (q^2 - 1)` matrices.
pub fn pgl2_base_elements(k: &Tower) -> Vec<Mobius2> {
    let base: Vec<Fq2Elem> = k.base_elements().collect();
    let mut out = Vec::with_capacity(base.len() * (base.len() * base.len() - 1));
    let one = Fq2Elem::ONE;
    for &b in &base {
        for &c in &base {
            for &d in &base {
                if k.add(d, k.mul(b, c)) != Fq2Elem::ZERO {
                    out.push(Mobius2::new(one, b, c, d));
                }
            }
        }
    }
    for &c in base.iter().filter(|c| !c.is_zero()) {
        for &d in &base {
            out.push(Mobius2::new(Fq2Elem::ZERO, one, c, d));
        }
    }
    out
}

/// True iff `m` has entries in GF(q) and projective order `q + 1`.
pub fn is_singer(k: &Tower, m: &Mobius2) -> bool {
    m.is_base_rational()
        && !m.det(k).is_zero()
        && m.projective_order(u64::from(k.n()), k) == Some(u64::from(k.n()))
}

/// All Singer elements of PGL(2, q), as normalized representatives.
pub fn singer_elements(k: &Tower) -> Vec<Mobius2> {
    pgl2_base_elements(k)
        .into_iter()
        .filter(|m| is_singer(k, m))
        .collect()
}

/// Companion matrix `[[0, 1], [c0, c1]]` of the least irreducible
/// `X^2 + c1 X + c0` over GF(q), ordered by `(c1, c0)`, whose projective
/// order is `q + 1`.
pub fn find_singer(k: &Tower) -> Mobius2 {
    let f = k.base();
    for c1 in f.elements().skip(1) {
        for c0 in f.elements().skip(1) {
            let has_root = f
                .elements()
                .any(|t| f.add(f.add(f.square(t), f.mul(c1, t)), c0).is_zero());
            if has_root {
                continue;
            }
            let m = Mobius2::new(
                Fq2Elem::ZERO,
                Fq2Elem::ONE,
                Fq2Elem::from_base(c0),
                Fq2Elem::from_base(c1),
            );
            if is_singer(k, &m) {
                return m;
            }
        }
    }
    unreachable!("PGL(2, q) always contains Singer elements")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingerData {
    #[serde(skip)]
    pub matrix: Mobius2,
    /// The smaller fixed point in K; the other is `gamma^q`.
    pub gamma: Fq2Elem,
    pub gamma_q: Fq2Elem,
    /// Multiplier: `φ(M·τ) = β φ(τ)`.
    pub beta: Fq2Elem,
}

impl SingerData {
    /// `φ(t) = (t - γ) / (t - γ^q)` as a Möbius matrix (so `φ(∞) = 1`).
    pub fn phi_matrix(&self) -> Mobius2 {
        Mobius2::new(Fq2Elem::ONE, self.gamma, Fq2Elem::ONE, self.gamma_q)
    }

    /// Affine value of `φ(τ)`; `None` only at `τ = γ^q`.
    pub fn phi(&self, k: &Tower, tau: &LinePoint) -> Option<Fq2Elem> {
        let [x, y] = *tau.coords();
        let num = k.add(x, k.mul(self.gamma, y));
        let den = k.add(x, k.mul(self.gamma_q, y));
        k.div(num, den).ok()
    }

    /// β as a generator of U_n.
    pub fn unit_root(&self, k: &Tower) -> UnitRoot {
        UnitRoot::new(k, self.beta).expect("multiplier has order q + 1")
    }
}

pub fn singer_diagonalize(k: &Tower, m: &Mobius2) -> Result<SingerData> {
    if !m.is_base_rational() {
        return Err(Error::NotSinger("entries are not in GF(q)".into()));
    }
    let [a, b, c, d] = m.abcd();
    if c.is_zero() {
        return Err(Error::NotSinger(
            "infinity is a rational fixed point".into(),
        ));
    }
    // fixed points of t -> (a t + b) / (c t + d): c t^2 + (d - a) t - b = 0
    let roots = k.solve_quadratic(c, k.sub(d, a), b)?;
    let [gamma, gamma_q] = roots[..] else {
        return Err(Error::NotSinger(format!(
            "{} fixed points in K",
            roots.len()
        )));
    };
    if gamma.in_base() || gamma_q.in_base() {
        return Err(Error::NotSinger("has a fixed point in PG(1, q)".into()));
    }
    if k.frobenius_q(gamma) != gamma_q {
        return Err(Error::NotSinger(
            "fixed points are not Frobenius conjugate".into(),
        ));
    }
    let n = u64::from(k.n());
    if m.projective_order(n, k) != Some(n) {
        return Err(Error::NotSinger(format!("projective order is not {n}")));
    }
    let beta = k.div(k.sub(a, k.mul(c, gamma)), k.sub(a, k.mul(c, gamma_q)))?;
    if k.order(beta)? != n {
        return Err(Error::NotSinger(
            "multiplier does not have order q + 1".into(),
        ));
    }
    Ok(SingerData {
        matrix: *m,
        gamma,
        gamma_q,
        beta,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SingerAlignment {
    /// `R ∈ PGL(2, q)` with `R M1 R^{-1} = M0^u`.
    pub r: Mobius2,
    pub u: u32,
}

impl SingerAlignment {
    pub fn verify(&self, k: &Tower, m1: &Mobius2, m0: &Mobius2) -> bool {
        let Ok(r_inv) = self.r.inverse(k) else {
            return false;
        };
        let lhs = self.r.mul(m1, k).mul(&r_inv, k);
        self.r.is_base_rational()
            && gcd(u64::from(self.u), u64::from(k.n())) == 1
            && lhs
                .projectively_eq(&m0.pow(u64::from(self.u), k), k)
                .is_some()
    }
}

/// Conjugate `m1` into the cyclic group generated by `m0`. `R` is the
/// affine map `t -> α t + δ` over GF(q) sending `γ1` to `γ0`; `u` is the
/// discrete log of `R M1 R^{-1}` in `<M0>`.
pub fn singer_align(k: &Tower, m1: &Mobius2, m0: &Mobius2) -> Result<SingerAlignment> {
    let s1 = singer_diagonalize(k, m1)?;
    let s0 = singer_diagonalize(k, m0)?;
    let f = k.base();
    let alpha = f.div(s0.gamma.a1, s1.gamma.a1)?;
    let delta = f.add(s0.gamma.a0, f.mul(alpha, s1.gamma.a0));
    let r = Mobius2::new(
        Fq2Elem::from_base(alpha),
        Fq2Elem::from_base(delta),
        Fq2Elem::ZERO,
        Fq2Elem::ONE,
    );
    let target = r.mul(m1, k).mul(&r.inverse(k)?, k);
    let mut power = *m0;
    for u in 1..k.n() {
        if target.projectively_eq(&power, k).is_some() {
            return Ok(SingerAlignment { r, u });
        }
        power = power.mul(m0, k);
    }
    Err(Error::NotSinger("conjugate does not lie in <M0>".into()))
}

/// Search PGL(2, q) exhaustively for some `R` and unit `u` with
/// `R M1 R^{-1} = M0^u`.
pub fn singer_align_exhaustive(k: &Tower, m1: &Mobius2, m0: &Mobius2) -> Option<SingerAlignment> {
    let n = k.n();
    let powers: Vec<(u32, Mobius2)> = (1..n)
        .filter(|&u| gcd(u64::from(u), u64::from(n)) == 1)
        .map(|u| (u, m0.pow(u64::from(u), k)))
        .collect();
    pgl2_base_elements(k).into_iter().find_map(|r| {
        let conj = r.mul(m1, k).mul(&r.inverse(k).ok()?, k);
        powers
            .iter()
            .find(|(_, p)| conj.projectively_eq(p, k).is_some())
            .map(|&(u, _)| SingerAlignment { r, u })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentWitness {
    pub e: u32,
    pub sigma: u64,
    pub singer: SingerData,
    #[serde(skip)]
    pub p: ProjMatrix,
    /// `P(A_e) = M_{2^e}` as point sets.
    pub image_matches: bool,
    /// `λ` with `P · lift(M) · P^{-1} = λ · S_{2^e}`.
    pub conjugation_scalar: Option<Fq2Elem>,
}

impl DescentWitness {
    pub fn holds(&self) -> bool {
        self.image_matches && self.conjugation_scalar.is_some()
    }
}

/// Build `P = lift_K(ι ∘ φ0)` for the canonical Singer element and check
/// that it carries `A_e` onto `M_{2^e}` and `lift(M)` onto `S_{2^e}`.
pub fn descent_witness(k: &Tower, e: u32) -> Result<DescentWitness> {
    check_frobenius_twist(k, e)?;
    let sigma = 1u64 << e;
    let singer = singer_diagonalize(k, &find_singer(k))?;
    // ι ∘ φ0 = [[1, γ^q], [1, γ]] (rows of φ0 swapped)
    let phi = Mobius2::new(Fq2Elem::ONE, singer.gamma_q, Fq2Elem::ONE, singer.gamma);
    let p = lift(k, &phi, sigma)?;
    let arc = casse_glynn(k, e)?;
    let image = PointSet::new(
        arc.points()
            .iter()
            .map(|pt| p.apply(pt, k))
            .collect::<Result<Vec<_>>>()?,
    );
    let beta = singer.unit_root(k);
    let sigma_mod_n = (sigma % u64::from(k.n())) as u32;
    let image_matches = image == monomial_points(k, &beta, sigma_mod_n);
    let g = lift(k, &singer.matrix, sigma)?;
    let conj = p.mul(&g, k).mul(&p.inverse(k)?, k);
    let conjugation_scalar = conj.projectively_eq(&monomial_stabilizer(&beta, sigma_mod_n), k);
    Ok(DescentWitness {
        e,
        sigma,
        singer,
        p,
        image_matches,
        conjugation_scalar,
    })
}
