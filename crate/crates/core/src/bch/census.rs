//! Per-h census comparing brute-force distance with the closed-form tests.

use std::collections::BTreeMap;
use std::sync::mpsc;

use rayon::prelude::*;
use serde::Serialize;

use super::{generator_poly, mds_predicted, min_distance, xu_d4_criterion, BchSpec, Distance};
use crate::error::Result;
use crate::exponent::euler_phi;
use crate::gf::{Tower, UnitRoot};

pub const CENSUS_CSV_HEADER: &str = "m,h,k,degenerate,gcd,deg_g,d,d3,d4_xu,mds_predicted,agree";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub m: u32,
    pub h: u32,
    pub k: u32,
    pub degenerate: bool,
    pub gcd: u32,
    pub deg_g: u32,
    pub d: Distance,
    /// `gcd(2h + 1, n) > 1`.
    pub d3: bool,
    /// Cross-ratio test; only evaluated on non-degenerate rows with gcd 1.
    pub d4_xu: Option<bool>,
    /// Congruence test; only evaluated on non-degenerate rows.
    pub mds_predicted: Option<bool>,
    /// Whether `d` matches all three tests; `None` on degenerate rows.
    pub agree: Option<bool>,
}

fn flag(v: Option<bool>) -> String {
    v.map_or_else(|| "-".to_string(), |b| b.to_string())
}

impl CensusRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.m,
            self.h,
            self.k,
            self.degenerate,
            self.gcd,
            self.deg_g,
            self.d,
            self.d3,
            flag(self.d4_xu),
            flag(self.mds_predicted),
            flag(self.agree)
        )
    }
}

pub fn census_row(k: &Tower, beta: &UnitRoot, h: u32, cap: u32) -> Result<CensusRow> {
    let spec = BchSpec::new(k, beta.clone(), i64::from(h));
    let d = min_distance(k, &spec, cap)?;
    let degenerate = spec.degenerate();
    let gcd = spec.gcd_flag();
    let d3 = gcd > 1;
    let (d4_xu, mds, agree) = if degenerate {
        (None, None, None)
    } else {
        let d4 = if d3 {
            false
        } else {
            xu_d4_criterion(k, &spec)?
        };
        let mds = mds_predicted(&spec)?;
        let exact = d.exact();
        let agree =
            (exact == Some(3)) == d3 && (exact == Some(4)) == d4 && (exact == Some(5)) == mds;
        ((!d3).then_some(d4), Some(mds), Some(agree))
    };
    Ok(CensusRow {
        m: k.m(),
        h,
        k: spec.k_exponent(),
        degenerate,
        gcd,
        deg_g: generator_poly(k, &spec).degree() as u32,
        d,
        d3,
        d4_xu,
        mds_predicted: mds,
        agree,
    })
}

/// Compute rows in parallel and hand them to `sink` in order of `h` as soon
/// as each prefix is complete.
pub fn census_streaming(
    k: &Tower,
    beta: &UnitRoot,
    cap: u32,
    mut sink: impl FnMut(&CensusRow),
) -> Result<Vec<CensusRow>> {
    let n = k.n();
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        scope.spawn(move || {
            (0..n).into_par_iter().for_each_with(tx, |tx, h| {
                let _ = tx.send((h, census_row(k, beta, h, cap)));
            });
        });
        let mut pending = BTreeMap::new();
        let mut rows = Vec::with_capacity(n as usize);
        let mut first_err = None;
        for (h, row) in rx {
            pending.insert(h, row);
            while let Some(row) = pending.remove(&(rows.len() as u32)) {
                match row {
                    Ok(row) => {
                        sink(&row);
                        rows.push(row);
                    }
                    Err(e) => {
                        first_err.get_or_insert(e);
                        break;
                    }
                }
            }
            if first_err.is_some() {
                break;
            }
        }
        match first_err {
            Some(e) => Err(e),
            None => Ok(rows),
        }
    })
}

pub fn census(k: &Tower, beta: &UnitRoot, cap: u32) -> Result<Vec<CensusRow>> {
    census_streaming(k, beta, cap, |_| {})
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CensusSummary {
    pub mds_count: u32,
    pub bound_2phi_m: u32,
    pub all_agree: bool,
}

/// MDS rows are counted from the brute-force distance on non-degenerate h.
pub fn summarize(m: u32, rows: &[CensusRow]) -> CensusSummary {
    CensusSummary {
        mds_count: rows
            .iter()
            .filter(|r| !r.degenerate && r.d == Distance::Exact(5))
            .count() as u32,
        bound_2phi_m: 2 * euler_phi(u64::from(m)) as u32,
        all_agree: rows.iter().all(|r| r.agree != Some(false)),
    }
}
