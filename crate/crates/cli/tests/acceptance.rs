//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line. Run with `-- --nocapture` to see them.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use cyclic_arcs::bch::{self, BchSpec, Distance};
use cyclic_arcs::exponent::{self, ExponentSet};
use cyclic_arcs::gf::{Fq2Elem, FqElem, Tower};
use cyclic_arcs::proj3::{self, LinePoint, Mobius2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(id: u32, failures: &[String], detail: &str) {
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id}: {status} {detail}");
    for f in failures.iter().take(5) {
        println!("  {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn tower(m: u32) -> Tower {
    Tower::with_degree(m).unwrap()
}

/// `±2^e mod n` for `1 <= e <= m-1`, `gcd(e, m) = 1`.
fn frobenius_set(m: u32) -> BTreeSet<u32> {
    let n = (1u32 << m) + 1;
    (1..m)
        .filter(|&e| gcd(e, m) == 1)
        .flat_map(|e| [1 << e, n - (1 << e)])
        .collect()
}

struct Row {
    h: u32,
    degenerate: bool,
    d: String,
    d4_xu: String,
    agree: String,
}

/// Run `census --m <m>` through the binary, returning rows and wall time.
fn cli_census(m: u32, single_thread: bool) -> (Vec<Row>, Duration, Option<i32>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cyclic-arcs"));
    cmd.args(["census", "--m", &m.to_string(), "--format", "csv"]);
    if single_thread {
        cmd.env("RAYON_NUM_THREADS", "1");
    }
    let start = Instant::now();
    let out = cmd.output().expect("binary runs");
    let elapsed = start.elapsed();
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("m,"))
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            Row {
                h: f[1].parse().unwrap(),
                degenerate: f[3] == "true",
                d: f[6].to_string(),
                d4_xu: f[8].to_string(),
                agree: f[10].to_string(),
            }
        })
        .collect();
    (rows, elapsed, out.status.code())
}

fn valid_rows(rows: &[Row]) -> impl Iterator<Item = &Row> {
    rows.iter().filter(|r| !r.degenerate)
}

fn h_with_d(rows: &[Row], d: &str) -> Vec<u32> {
    valid_rows(rows).filter(|r| r.d == d).map(|r| r.h).collect()
}

#[test]
fn criterion_01_gf8_golden_table() {
    let (rows, elapsed, code) = cli_census(3, false);
    let mut fails = Vec::new();
    if code != Some(0) {
        fails.push(format!("exit code {code:?}"));
    }
    if rows.len() != 9 {
        fails.push(format!("{} rows", rows.len()));
    }
    if h_with_d(&rows, "5") != [2, 3, 5, 6] {
        fails.push(format!("MDS rows {:?}", h_with_d(&rows, "5")));
    }
    if h_with_d(&rows, "3") != [1, 7] {
        fails.push(format!("d=3 rows {:?}", h_with_d(&rows, "3")));
    }
    if !h_with_d(&rows, "4").is_empty() {
        fails.push(format!("d=4 rows {:?}", h_with_d(&rows, "4")));
    }
    if valid_rows(&rows).any(|r| r.agree != "true") {
        fails.push("disagreeing row".into());
    }
    if elapsed >= Duration::from_secs(1) {
        fails.push(format!("runtime {elapsed:?}"));
    }
    report(1, &fails, &format!("census --m 3 in {elapsed:?}"));
}

#[test]
fn criterion_02_gf16_table() {
    let (rows, elapsed, code) = cli_census(4, false);
    let mut fails = Vec::new();
    if code != Some(0) {
        fails.push(format!("exit code {code:?}"));
    }
    // h ≡ 9(k - 1) mod 17 for k ∈ {2, 8, 9, 15}
    let mut expected: Vec<u32> = [2u32, 8, 9, 15].iter().map(|k| 9 * (k - 1) % 17).collect();
    expected.sort();
    if h_with_d(&rows, "5") != expected {
        fails.push(format!(
            "MDS rows {:?} vs {expected:?}",
            h_with_d(&rows, "5")
        ));
    }
    let d4 = h_with_d(&rows, "4");
    let rest: Vec<u32> = valid_rows(&rows)
        .map(|r| r.h)
        .filter(|h| !expected.contains(h))
        .collect();
    if d4 != rest || d4.len() != 10 {
        fails.push(format!("d=4 rows {d4:?}"));
    }
    if valid_rows(&rows).any(|r| r.agree != "true") {
        fails.push("disagreeing row".into());
    }
    if elapsed >= Duration::from_secs(5) {
        fails.push(format!("runtime {elapsed:?}"));
    }
    report(2, &fails, &format!("census --m 4 in {elapsed:?}"));
}

#[test]
fn criterion_03_gf32_census() {
    let (rows, elapsed, code) = cli_census(5, true);
    let mut fails = Vec::new();
    if code != Some(0) {
        fails.push(format!("exit code {code:?}"));
    }
    let frob = frobenius_set(5);
    let mut checked = 0;
    for r in valid_rows(&rows) {
        let k = (2 * r.h + 1) % 33;
        let d3 = gcd(2 * r.h + 1, 33) > 1;
        let d5 = frob.contains(&k);
        if (r.d == "3") != d3 || (r.d == "5") != d5 || (r.d == "4") != (r.d4_xu == "true") {
            fails.push(format!("h={} d={} xu={}", r.h, r.d, r.d4_xu));
        }
        checked += 1;
    }
    if checked != 30 {
        fails.push(format!("{checked} valid rows"));
    }
    if elapsed >= Duration::from_secs(120) {
        fails.push(format!("runtime {elapsed:?}"));
    }
    report(
        3,
        &fails,
        &format!("census --m 5, one thread, {checked} rows in {elapsed:?}"),
    );
}

#[test]
fn criterion_04_codeword_oracle_at_gf8() {
    let k = tower(3);
    let mut fails = Vec::new();
    let mut codewords = 0u64;
    for h in 0..9 {
        let spec = BchSpec::with_default_beta(&k, h);
        let dim = 9 - bch::generator_poly(&k, &spec).degree() as u32;
        codewords += 8u64.pow(dim);
        let oracle = bch::min_distance_codeword_oracle(&k, &spec).unwrap();
        let search = bch::min_distance(&k, &spec, 5).unwrap();
        if search != Distance::Exact(oracle) {
            fails.push(format!("h={h}: oracle {oracle}, search {search}"));
        }
    }
    report(
        4,
        &fails,
        &format!("9 values of h, {codewords} codewords enumerated"),
    );
}

#[test]
fn criterion_05_descent_class_counts() {
    let mut fails = Vec::new();
    for m in 3..=12u32 {
        let phi = (1..=m).filter(|&e| gcd(e, m) == 1).count();
        let classes = exponent::descent_classes(m);
        if classes.len() * 2 != phi {
            fails.push(format!("m={m}: {} classes, phi={phi}", classes.len()));
        }
        for e in (1..m).filter(|&e| gcd(e, m) == 1) {
            if m - e == e {
                fails.push(format!("m={m}: fixed point {e}"));
            }
        }
    }
    report(5, &fails, "m = 3..12");
}

#[test]
fn criterion_06_four_point_classification() {
    let mut fails = Vec::new();
    let mut pairs = 0;
    for n in [9u32, 17, 33] {
        let units: Vec<u32> = (2..n - 1).filter(|&a| gcd(a, n) == 1).collect();
        for &a in &units {
            for &b in &units {
                pairs += 1;
                let ea = ExponentSet::four_point(n, i64::from(a)).unwrap();
                let eb = ExponentSet::four_point(n, i64::from(b)).unwrap();
                if exponent::affine_equivalent(&ea, &eb).unwrap().is_some() {
                    let b_inv = (1..n).find(|&x| x * b % n == 1).unwrap();
                    if ![b, n - b, b_inv, n - b_inv].contains(&a) {
                        fails.push(format!("n={n} a={a} b={b}"));
                    }
                }
            }
        }
    }
    report(6, &fails, &format!("{pairs} pairs, n in {{9, 17, 33}}"));
}

fn random_gl2(k: &Tower, rng: &mut ChaCha8Rng) -> Mobius2 {
    loop {
        let [a, b, c, d] =
            [0; 4].map(|_| Fq2Elem::from_base(FqElem(rng.gen_range(0..k.q()) as u16)));
        let m = Mobius2::new(a, b, c, d);
        if !m.det(k).is_zero() {
            return m;
        }
    }
}

fn equivariant(k: &Tower, g: &Mobius2, t: &LinePoint, sigma: u64) -> bool {
    let [x, y] = *t.coords();
    let [gx, gy] = *g.apply(t, k).unwrap().coords();
    let lhs = proj3::lift(k, g, sigma)
        .unwrap()
        .apply(&proj3::psi(k, x, y, sigma).unwrap(), k)
        .unwrap();
    lhs == proj3::psi(k, gx, gy, sigma).unwrap()
}

#[test]
fn criterion_07_equivariance() {
    let mut fails = Vec::new();
    let k = tower(3);
    let line = LinePoint::base_line(&k);
    let group = proj3::pgl2_base_elements(&k);
    let mut exhaustive = 0;
    for sigma in [2, 4] {
        for g in &group {
            for t in &line {
                exhaustive += 1;
                if !equivariant(&k, g, t, sigma) {
                    fails.push(format!("m=3 sigma={sigma} {g:?} {t:?}"));
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for m in [4, 5] {
        let k = tower(m);
        let line = LinePoint::base_line(&k);
        let twists: Vec<u32> = (1..m).filter(|&e| gcd(e, m) == 1).collect();
        for _ in 0..10_000 {
            let g = random_gl2(&k, &mut rng);
            let t = line[rng.gen_range(0..line.len())];
            let sigma = 1u64 << twists[rng.gen_range(0..twists.len())];
            if !equivariant(&k, &g, &t, sigma) {
                fails.push(format!("m={m} sigma={sigma} {g:?} {t:?}"));
            }
        }
    }
    report(
        7,
        &fails,
        &format!(
            "{} x {} x 2 twists exhaustive at m=3 ({exhaustive}), 10^4 samples at m=4,5",
            group.len(),
            line.len()
        ),
    );
}

#[test]
fn criterion_08_singer_diagonalization() {
    let mut fails = Vec::new();
    let mut total = 0;
    for m in [3, 4, 5] {
        let k = tower(m);
        let n = k.n();
        let line = LinePoint::base_line(&k);
        for s in proj3::singer_elements(&k) {
            total += 1;
            let data = proj3::singer_diagonalize(&k, &s).unwrap();
            let mut ord = 1;
            let mut acc = data.beta;
            while acc != Fq2Elem::ONE {
                acc = k.mul(acc, data.beta);
                ord += 1;
            }
            let mut values = Vec::new();
            for t in &line {
                let phi = data.phi(&k, t).unwrap();
                let phi_m = data.phi(&k, &s.apply(t, &k).unwrap()).unwrap();
                if phi_m != k.mul(data.beta, phi) {
                    fails.push(format!("m={m}: phi(Mt) != beta phi(t) for {s:?}"));
                }
                values.push(phi);
            }
            values.sort();
            values.dedup();
            let onto_units = values
                .iter()
                .all(|&v| k.pow(v, u64::from(n)) == Fq2Elem::ONE);
            if ord != n || values.len() as u32 != n || !onto_units {
                fails.push(format!("m={m}: {s:?} ord(beta)={ord}"));
            }
        }
    }
    report(8, &fails, &format!("{total} Singer elements at m=3,4,5"));
}

#[test]
fn criterion_09_descent_witness() {
    let mut fails = Vec::new();
    let mut count = 0;
    for m in [3, 4, 5] {
        let k = tower(m);
        for e in (1..m).filter(|&e| gcd(e, m) == 1) {
            count += 1;
            let w = proj3::descent_witness(&k, e).unwrap();
            // recheck (ii) independently: P lift(M) P^-1 against S_{2^e}
            let beta = w.singer.unit_root(&k);
            let s = proj3::monomial_stabilizer(&beta, (1 << e) % k.n());
            let lifted = proj3::lift(&k, &w.singer.matrix, 1 << e).unwrap();
            let conj = w.p.mul(&lifted, &k).mul(&w.p.inverse(&k).unwrap(), &k);
            let scalar_ok = conj.projectively_eq(&s, &k).is_some();
            // recheck (i): P maps each P_t to the point of M_{2^e}
            let image: BTreeSet<_> = proj3::casse_glynn(&k, e)
                .unwrap()
                .points()
                .iter()
                .map(|p| w.p.apply(p, &k).unwrap())
                .collect();
            let model: BTreeSet<_> = proj3::monomial_model(&k, &beta, (1 << e) % k.n())
                .unwrap()
                .points()
                .iter()
                .copied()
                .collect();
            if !w.holds() || !scalar_ok || image != model {
                fails.push(format!("m={m} e={e}"));
            }
        }
    }
    report(9, &fails, &format!("{count} pairs (m, e)"));
}

fn cr_ok(k: &Tower, pts: [Fq2Elem; 4]) -> bool {
    let [x, y, z, w] = pts;
    let cr = proj3::cross_ratio(k, x, y, z, w).unwrap();
    cr.in_base() && cr != Fq2Elem::ZERO && cr != Fq2Elem::ONE
}

#[test]
fn criterion_10_cross_ratio_subfield() {
    let mut fails = Vec::new();
    let k = tower(3);
    let u = k.find_beta();
    let e = u.elements();
    let mut exhaustive = 0;
    for a in 0..9 {
        for b in 0..9 {
            for c in 0..9 {
                for d in 0..9 {
                    if [a, b, c, d].iter().collect::<BTreeSet<_>>().len() == 4 {
                        exhaustive += 1;
                        if !cr_ok(&k, [e[a], e[b], e[c], e[d]]) {
                            fails.push(format!("m=3 ({a},{b},{c},{d})"));
                        }
                    }
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for m in [4, 5] {
        let k = tower(m);
        let u = k.find_beta();
        let mut done = 0;
        while done < 5000 {
            let idx = [0; 4].map(|_| rng.gen_range(0..u.n() as usize));
            if idx.iter().collect::<BTreeSet<_>>().len() < 4 {
                continue;
            }
            done += 1;
            if !cr_ok(&k, idx.map(|i| u.elements()[i])) {
                fails.push(format!("m={m} {idx:?}"));
            }
        }
    }
    report(
        10,
        &fails,
        &format!("{exhaustive} tuples at m=3, 5000 samples at m=4,5"),
    );
}

#[test]
fn criterion_11_arc_congruence_bridge() {
    let mut fails = Vec::new();
    let mut count = 0;
    for m in [3, 4, 5] {
        let k = tower(m);
        let beta = k.find_beta();
        let n = k.n();
        let frob = frobenius_set(m);
        for a in (2..n - 1).filter(|&a| gcd(a, n) == 1) {
            count += 1;
            let model = proj3::monomial_model(&k, &beta, a).unwrap();
            let arc = proj3::is_arc(&k, model.points()).is_arc;
            if arc != frob.contains(&a) {
                fails.push(format!("m={m} a={a}: arc={arc}"));
            }
        }
    }
    report(11, &fails, &format!("{count} units at m=3,4,5"));
}

#[test]
fn criterion_12_gf64_census_stretch() {
    let (rows, elapsed, code) = cli_census(6, false);
    let mut fails = Vec::new();
    if code != Some(0) || rows.len() != 65 {
        fails.push(format!("exit {code:?}, {} rows", rows.len()));
    }
    if valid_rows(&rows).any(|r| r.agree != "true") {
        fails.push("disagreeing row".into());
    }
    let frob = frobenius_set(6);
    let expected: Vec<u32> = (0..65u32)
        .filter(|&h| ![0, 32, 64].contains(&h) && frob.contains(&((2 * h + 1) % 65)))
        .collect();
    if h_with_d(&rows, "5") != expected {
        fails.push(format!("MDS rows {:?}", h_with_d(&rows, "5")));
    }
    if elapsed >= Duration::from_secs(15 * 60) {
        fails.push(format!("runtime {elapsed:?}"));
    }
    report(
        12,
        &fails,
        &format!("census --m 6 in {elapsed:?} (optional)"),
    );
}
