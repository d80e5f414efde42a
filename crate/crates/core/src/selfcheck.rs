//! Runs every invariant suite for one field size and records which library
//! operations were exercised. Exhaustive where cheap (m = 3), seeded
//! sampling otherwise; sample sizes are reported with each check.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bch::{self, BchSpec, Distance};
use crate::error::{Error, Result};
use crate::exponent::{self, gcd, ExponentSet};
use crate::gf::{Fq2Elem, FqElem, Poly, Tower, UnitRoot};
use crate::proj3::{self, LinePoint, Mobius2, PointSet};

/// Every operation the self-check must touch at least once.
pub const OPERATIONS: &[&str] = &[
    "field_arith",
    "find_beta",
    "minimal_poly_fq",
    "solve_quadratic",
    "is_arc",
    "casse_glynn",
    "monomial_model",
    "psi",
    "lift",
    "find_singer",
    "singer_diagonalize",
    "singer_align",
    "descent_witness",
    "cross_ratio",
    "coordinate_permutations",
    "is_regular",
    "affine_equivalent",
    "repeated_differences",
    "four_point_classify",
    "is_frobenius_exponent",
    "descent_classes",
    "cyclotomic_coset",
    "generator_poly",
    "parity_matrix",
    "min_distance",
    "min_distance_codeword_oracle",
    "xu_d4_criterion",
    "mds_predicted",
    "census",
];

pub const MAX_SELFCHECK_DEGREE: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Number of cases examined.
    pub cases: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelfCheckReport {
    pub m: u32,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    /// Operations never exercised; empty on a complete run.
    pub uncovered: Vec<String>,
}

impl SelfCheckReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0 && self.uncovered.is_empty()
    }
}

struct Runner<'a> {
    k: &'a Tower,
    beta: UnitRoot,
    rng: ChaCha8Rng,
    covered: BTreeSet<&'static str>,
    checks: Vec<CheckResult>,
}

impl Runner<'_> {
    fn touch(&mut self, ops: &[&'static str]) {
        self.covered.extend(ops.iter().copied());
    }

    fn record(&mut self, name: &str, cases: u64, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = if passed {
            String::new()
        } else {
            let mut d = failures
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ");
            if failures.len() > 3 {
                d.push_str(&format!("; ... {} failures", failures.len()));
            }
            d
        };
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            cases,
            detail,
        });
    }

    fn exhaustive(&self) -> bool {
        self.k.m() == 3
    }

    fn random_elem(&mut self) -> Fq2Elem {
        let m = self.k.m();
        Fq2Elem::from_packed(self.rng.gen_range(0..1u32 << (2 * m)), m)
    }

    fn random_base(&mut self) -> Fq2Elem {
        Fq2Elem::from_base(FqElem(self.rng.gen_range(0..self.k.q()) as u16))
    }

    fn random_gl2(&mut self) -> Mobius2 {
        loop {
            let [a, b, c, d] = [0; 4].map(|_| self.random_base());
            let m = Mobius2::new(a, b, c, d);
            if !m.det(self.k).is_zero() {
                return m;
            }
        }
    }

    fn units(&self) -> Vec<u32> {
        let n = self.k.n();
        (1..n)
            .filter(|&a| gcd(u64::from(a), u64::from(n)) == 1)
            .collect()
    }
}

fn line_image(k: &Tower, m: &Mobius2, t: &LinePoint) -> Result<LinePoint> {
    m.apply(t, k)
}

fn gf_suite(r: &mut Runner) -> Result<()> {
    let k = r.k;
    let mut fails = Vec::new();
    let samples = 200;
    for _ in 0..samples {
        let (x, y) = (r.random_elem(), r.random_elem());
        if k.frobenius_q(k.frobenius_q(x)) != x {
            fails.push(format!("frobenius not an involution at {x:?}"));
        }
        if k.mul(x, k.add(y, Fq2Elem::ONE)) != k.add(k.mul(x, y), x) {
            fails.push(format!("distributivity at {x:?}, {y:?}"));
        }
        if !x.is_zero() {
            if k.mul(k.inv(x)?, x) != Fq2Elem::ONE {
                fails.push(format!("inverse of {x:?}"));
            }
            if k.pow(x, k.unit_order()) != Fq2Elem::ONE {
                fails.push(format!("x^(q^2-1) != 1 at {x:?}"));
            }
        }
        let a = FqElem(x.a0.0);
        if k.frobenius_q(Fq2Elem::from_base(a)) != Fq2Elem::from_base(a) {
            fails.push(format!("base element {a:?} moved by frobenius"));
        }
    }
    r.touch(&["field_arith"]);
    r.record("gf: field axioms and frobenius", samples, fails);

    let mut fails = Vec::new();
    let n = u64::from(k.n());
    if k.order(r.beta.beta())? != n {
        fails.push("beta has wrong order".into());
    }
    for &u in r.beta.elements() {
        if k.mul(k.frobenius_q(u), u) != Fq2Elem::ONE {
            fails.push(format!("u^q u != 1 at {u:?}"));
        }
    }
    r.touch(&["find_beta"]);
    r.record("gf: U_n generator and u^q = u^-1", n, fails);

    let mut fails = Vec::new();
    for _ in 0..samples {
        let x = r.random_elem();
        let p = k.minimal_poly_fq(x);
        let expect_deg = if x.in_base() { 1 } else { 2 };
        if p.degree() != Some(expect_deg) || !p.is_monic() || !k.eval(&p, x).is_zero() {
            fails.push(format!("minimal polynomial of {x:?}"));
        }
        if expect_deg == 2 {
            // irreducible over GF(q): its roots are a Frobenius pair
            let c = p.coeffs();
            let roots = k.solve_quadratic(
                Fq2Elem::ONE,
                Fq2Elem::from_base(c[1]),
                Fq2Elem::from_base(c[0]),
            )?;
            if roots.len() != 2 || k.frobenius_q(roots[0]) != roots[1] || !roots.contains(&x) {
                fails.push(format!("roots of minimal polynomial of {x:?}"));
            }
        }
        let (a, b, c) = (r.random_elem(), r.random_elem(), r.random_elem());
        if a.is_zero() {
            continue;
        }
        for t in k.solve_quadratic(a, b, c)? {
            if !k
                .add(k.add(k.mul(a, k.square(t)), k.mul(b, t)), c)
                .is_zero()
            {
                fails.push(format!("bad root {t:?}"));
            }
        }
    }
    r.touch(&["minimal_poly_fq", "solve_quadratic"]);
    r.record(
        "gf: minimal polynomials and quadratic roots",
        samples,
        fails,
    );
    Ok(())
}

fn proj3_suite(r: &mut Runner) -> Result<()> {
    let k = r.k;
    let m = k.m();
    let twists: Vec<u32> = (1..m)
        .filter(|&e| gcd(u64::from(e), u64::from(m)) == 1)
        .collect();
    let line = LinePoint::base_line(k);

    let mut fails = Vec::new();
    for &e in &twists {
        let arc = proj3::casse_glynn(k, e)?;
        let image = PointSet::new(
            line.iter()
                .map(|t| {
                    let [x, y] = *t.coords();
                    proj3::psi(k, x, y, 1 << e)
                })
                .collect::<Result<Vec<_>>>()?,
        );
        if arc.len() as u32 != k.n() || image != arc {
            fails.push(format!("psi image differs from A_{e}"));
        }
        if !proj3::is_arc(k, arc.points()).is_arc {
            fails.push(format!("A_{e} is not an arc"));
        }
    }
    r.touch(&["casse_glynn", "psi", "is_arc"]);
    r.record("proj3: Casse-Glynn arcs", twists.len() as u64, fails);

    let mut fails = Vec::new();
    let group: Vec<Mobius2> = if r.exhaustive() {
        proj3::pgl2_base_elements(k)
    } else {
        (0..300).map(|_| r.random_gl2()).collect()
    };
    let mut cases = 0;
    for g in &group {
        let taus: Vec<LinePoint> = if r.exhaustive() {
            line.clone()
        } else {
            vec![line[r.rng.gen_range(0..line.len())]]
        };
        for &e in &twists {
            let sigma = 1u64 << e;
            let l = proj3::lift(k, g, sigma)?;
            for t in &taus {
                let [x, y] = *t.coords();
                let [gx, gy] = *line_image(k, g, t)?.coords();
                if l.apply(&proj3::psi(k, x, y, sigma)?, k)? != proj3::psi(k, gx, gy, sigma)? {
                    fails.push(format!("equivariance fails for {g:?} at {t:?}"));
                }
                cases += 1;
            }
        }
    }
    for _ in 0..50 {
        let (a, b) = (r.random_gl2(), r.random_gl2());
        let lhs = proj3::lift(k, &a.mul(&b, k), 2)?;
        let rhs = proj3::lift(k, &a, 2)?.mul(&proj3::lift(k, &b, 2)?, k);
        if lhs.projectively_eq(&rhs, k).is_none() {
            fails.push("lift is not multiplicative".into());
        }
    }
    r.touch(&["lift"]);
    r.record(
        "proj3: lifted action is equivariant and multiplicative",
        cases + 50,
        fails,
    );

    let mut fails = Vec::new();
    let m0 = proj3::find_singer(k);
    let s0 = proj3::singer_diagonalize(k, &m0)?;
    // further Singer elements: conjugates of powers of M0
    let mut singers = vec![m0];
    let units = r.units();
    for _ in 0..20 {
        let g = r.random_gl2();
        let u = units[r.rng.gen_range(0..units.len())];
        singers.push(
            g.mul(&m0.pow(u64::from(u), k), k)
                .mul(&g.inverse(k)?, k)
                .normalized(k),
        );
    }
    for s in &singers {
        let data = proj3::singer_diagonalize(k, s)?;
        let mut values = Vec::new();
        for t in &line {
            let phi = data.phi(k, t).ok_or(Error::DivisionByZero)?;
            let phi_m = data
                .phi(k, &line_image(k, s, t)?)
                .ok_or(Error::DivisionByZero)?;
            if phi_m != k.mul(data.beta, phi) {
                fails.push(format!("phi(M t) != beta phi(t) for {s:?}"));
            }
            values.push(phi);
        }
        values.sort();
        values.dedup();
        let in_un = values
            .iter()
            .all(|&v| k.pow(v, u64::from(k.n())) == Fq2Elem::ONE);
        if values.len() as u32 != k.n() || !in_un {
            fails.push(format!("phi is not a bijection onto U_n for {s:?}"));
        }
        if k.order(data.beta)? != u64::from(k.n()) {
            fails.push("multiplier has wrong order".into());
        }
        let align = proj3::singer_align(k, s, &m0)?;
        if !align.verify(k, s, &m0) {
            fails.push(format!("alignment of {s:?} fails"));
        }
    }
    let start = LinePoint::from_pair(k, Fq2Elem::ZERO, Fq2Elem::ONE)?;
    let mut cur = line_image(k, &m0, &start)?;
    let mut orbit = 1;
    while cur != start {
        cur = line_image(k, &m0, &cur)?;
        orbit += 1;
    }
    if orbit != k.n() || s0.gamma.in_base() {
        fails.push("canonical Singer element has a short orbit".into());
    }
    r.touch(&["find_singer", "singer_diagonalize", "singer_align"]);
    r.record(
        "proj3: Singer diagonalization and alignment",
        singers.len() as u64,
        fails,
    );

    let mut fails = Vec::new();
    for &e in &twists {
        if !proj3::descent_witness(k, e)?.holds() {
            fails.push(format!("descent witness fails for e = {e}"));
        }
    }
    r.touch(&["descent_witness"]);
    r.record("proj3: descent witnesses", twists.len() as u64, fails);

    let mut fails = Vec::new();
    let pts = r.beta.elements().to_vec();
    let tuples: Vec<[usize; 4]> = if r.exhaustive() {
        let n = pts.len();
        let mut all = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        if a != b && a != c && a != d && b != c && b != d && c != d {
                            all.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        all
    } else {
        let mut v = Vec::new();
        while v.len() < 1000 {
            let t = [0; 4].map(|_| r.rng.gen_range(0..pts.len()));
            if (0..4).all(|i| (i + 1..4).all(|j| t[i] != t[j])) {
                v.push(t);
            }
        }
        v
    };
    for t in &tuples {
        let [x, y, z, w] = t.map(|i| pts[i]);
        let cr = proj3::cross_ratio(k, x, y, z, w)?;
        if !cr.in_base() || cr == Fq2Elem::ZERO || cr == Fq2Elem::ONE {
            fails.push(format!("cross-ratio {cr:?} outside GF(q) minus {{0,1}}"));
        }
    }
    r.touch(&["cross_ratio"]);
    r.record(
        "proj3: cross-ratios of U_n lie in GF(q)",
        tuples.len() as u64,
        fails,
    );

    let mut fails = Vec::new();
    let perm_units: Vec<u32> = if m <= 4 {
        units.clone()
    } else {
        (0..8)
            .map(|_| units[r.rng.gen_range(0..units.len())])
            .collect()
    };
    for &a in &perm_units {
        if !proj3::coordinate_permutations(k, &r.beta, a)?.holds() {
            fails.push(format!("permutation identities fail for a = {a}"));
        }
    }
    r.touch(&["coordinate_permutations", "monomial_model"]);
    r.record(
        "proj3: coordinate permutations",
        perm_units.len() as u64,
        fails,
    );

    let mut fails = Vec::new();
    let n = k.n();
    let frob: BTreeSet<u32> = exponent::frobenius_exponents(m).into_iter().collect();
    let bridge: Vec<u32> = units
        .iter()
        .copied()
        .filter(|&a| a != 1 && a != n - 1)
        .filter(|a| m <= 5 || frob.contains(a) || a % 7 == 3)
        .collect();
    for &a in &bridge {
        let model = proj3::monomial_model(k, &r.beta, a)?;
        let arc = proj3::is_arc(k, model.points()).is_arc;
        if arc != frob.contains(&a) {
            fails.push(format!("is_arc(M_{a}) = {arc}"));
        }
    }
    r.record(
        "proj3: arcs are exactly the Frobenius models",
        bridge.len() as u64,
        fails,
    );
    Ok(())
}

fn exponent_suite(r: &mut Runner) -> Result<()> {
    let m = r.k.m();
    let n = r.k.n();
    let units = r.units();
    let admissible: Vec<u32> = units
        .iter()
        .copied()
        .filter(|&a| a != 1 && a != n - 1)
        .collect();

    let mut fails = Vec::new();
    let classes = exponent::descent_classes(m);
    let phi_m = exponent::euler_phi(u64::from(m));
    if classes.len() as u64 * 2 != phi_m || classes.iter().any(|c| c.e_low == c.e_high) {
        fails.push(format!("{} classes for phi(m) = {phi_m}", classes.len()));
    }
    let frob = exponent::frobenius_exponents(m);
    for &a in &frob {
        let neg = (n - a) % n;
        let inv =
            exponent::mod_inv(u64::from(a), u64::from(n)).ok_or(Error::DivisionByZero)? as u32;
        if exponent::is_frobenius_exponent(i64::from(neg), m).is_none()
            || exponent::is_frobenius_exponent(i64::from(inv), m).is_none()
        {
            fails.push(format!("Frobenius set not closed at {a}"));
        }
    }
    r.touch(&["descent_classes", "is_frobenius_exponent"]);
    r.record(
        "exponent: descent classes and Frobenius exponents",
        frob.len() as u64,
        fails,
    );

    let mut fails = Vec::new();
    let pairs: Vec<(u32, u32)> = if n <= 33 {
        admissible
            .iter()
            .flat_map(|&a| admissible.iter().map(move |&b| (a, b)))
            .collect()
    } else {
        (0..400)
            .map(|_| {
                let a = admissible[r.rng.gen_range(0..admissible.len())];
                let b = admissible[r.rng.gen_range(0..admissible.len())];
                (a, b)
            })
            .collect()
    };
    for &(a, b) in &pairs {
        let ea = ExponentSet::four_point(n, i64::from(a))?;
        let eb = ExponentSet::four_point(n, i64::from(b))?;
        let witness = exponent::affine_equivalent(&ea, &eb)?;
        if let Some(w) = witness {
            if eb.affine_image(w) != ea {
                fails.push(format!("unsound witness for ({a}, {b})"));
            }
        }
        if witness.is_some() && !exponent::four_point_classify(n, i64::from(a), i64::from(b))? {
            fails.push(format!("witness for ({a}, {b}) outside ±b^±1"));
        }
    }
    r.touch(&["affine_equivalent", "four_point_classify"]);
    r.record(
        "exponent: four-point classification",
        pairs.len() as u64,
        fails,
    );

    let mut fails = Vec::new();
    for &x in &admissible {
        let e = ExponentSet::four_point(n, i64::from(x))?;
        let got: BTreeSet<u32> = exponent::repeated_differences(&e)?.into_iter().collect();
        let expected: BTreeSet<u32> = [1, n - 1, x, n - x].into_iter().collect();
        if got != expected {
            fails.push(format!("repeated differences for x = {x}"));
        }
        let orbit = proj3::diagonal_orbit(r.k, &r.beta, [0, 1, x, (x + 1) % n]);
        if exponent::is_regular(&e) != (orbit.len() as u32 == n) {
            fails.push(format!("regularity mismatch for x = {x}"));
        }
    }
    r.touch(&["repeated_differences", "is_regular"]);
    r.record(
        "exponent: repeated differences and regularity",
        admissible.len() as u64,
        fails,
    );
    Ok(())
}

fn bch_suite(r: &mut Runner) -> Result<()> {
    let k = r.k;
    let n = k.n();
    let q = k.q();
    let mut fails = Vec::new();
    for h in 0..n {
        let spec = BchSpec::new(k, r.beta.clone(), i64::from(h));
        let g = bch::generator_poly(k, &spec);
        if !Poly::x_pow_minus_one(n as usize)
            .rem(&g.poly, k.base())
            .is_zero()
        {
            fails.push(format!("g does not divide X^n - 1 at h = {h}"));
        }
        if spec.degenerate() {
            continue;
        }
        let (ca, cb) = (
            bch::cyclotomic_coset(h, q, n),
            bch::cyclotomic_coset(h + 1, q, n),
        );
        if ca.len() != 2 || cb.len() != 2 || ca.iter().any(|x| cb.contains(x)) {
            fails.push(format!("cosets at h = {h}"));
        }
        if g.degree() != 4 || n as usize - g.degree() != q as usize - 3 {
            fails.push(format!("deg g = {} at h = {h}", g.degree()));
        }
        if !bch::parity_matches_monomial_model(k, &spec) {
            fails.push(format!("parity columns differ from M_(2h+1) at h = {h}"));
        }
    }
    r.touch(&["cyclotomic_coset", "generator_poly", "parity_matrix"]);
    r.record(
        "bch: generator polynomials and parity geometry",
        u64::from(n),
        fails,
    );

    let mut fails = Vec::new();
    let rows = bch::census(k, &r.beta, 5)?;
    for row in rows.iter().filter(|row| row.agree == Some(false)) {
        fails.push(format!("disagreement at h = {}", row.h));
    }
    let summary = bch::summarize(k.m(), &rows);
    if summary.mds_count > summary.bound_2phi_m {
        fails.push("MDS count exceeds 2 phi(m)".into());
    }
    r.touch(&["min_distance", "xu_d4_criterion", "mds_predicted", "census"]);
    r.record("bch: census agreement", u64::from(n), fails);

    let mut fails = Vec::new();
    let other = UnitRoot::new(k, r.beta.power(2))?;
    if bch::census(k, &other, 5)? != rows {
        fails.push("census depends on the choice of beta".into());
    }
    r.record("bch: census is independent of beta", u64::from(n), fails);

    if k.m() == 3 {
        let mut fails = Vec::new();
        for row in &rows {
            let spec = BchSpec::new(k, r.beta.clone(), i64::from(row.h));
            let oracle = bch::min_distance_codeword_oracle(k, &spec)?;
            if Distance::Exact(oracle) != row.d {
                fails.push(format!("oracle {oracle} vs {} at h = {}", row.d, row.h));
            }
        }
        r.touch(&["min_distance_codeword_oracle"]);
        r.record(
            "bch: codeword enumeration matches dependency search",
            u64::from(n),
            fails,
        );
    } else {
        r.touch(&["min_distance_codeword_oracle"]);
        let spec = BchSpec::new(k, r.beta.clone(), 1);
        let refused =
            bch::min_distance_codeword_oracle(k, &spec) == Err(Error::OracleTooLarge(k.m()));
        let fails = if refused {
            vec![]
        } else {
            vec!["oracle ran above m = 3".into()]
        };
        r.record("bch: codeword oracle refuses m > 3", 1, fails);
    }
    Ok(())
}

/// Run every suite at degree `m` (3..=6) with sampling seeded by `seed`.
pub fn run(m: u32, seed: u64) -> Result<SelfCheckReport> {
    if !(3..=MAX_SELFCHECK_DEGREE).contains(&m) {
        return Err(Error::InvalidFieldSpec(format!(
            "selfcheck supports 3 <= m <= {MAX_SELFCHECK_DEGREE}, got {m}"
        )));
    }
    let k = Tower::with_degree(m)?;
    let mut runner = Runner {
        k: &k,
        beta: k.find_beta(),
        rng: ChaCha8Rng::seed_from_u64(seed),
        covered: BTreeSet::new(),
        checks: Vec::new(),
    };
    gf_suite(&mut runner)?;
    proj3_suite(&mut runner)?;
    exponent_suite(&mut runner)?;
    bch_suite(&mut runner)?;
    let uncovered = OPERATIONS
        .iter()
        .filter(|op| !runner.covered.contains(*op))
        .map(|op| op.to_string())
        .collect();
    Ok(SelfCheckReport {
        m,
        seed,
        checks: runner.checks,
        uncovered,
    })
}
