//! CSV sweeps for plotting.

use std::io::Write;

use serde::Serialize;

use super::bounds::{epsilon_condition, holevo_bound_ie, i_bound, psi_info_bound, search_code_shape};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsiRow {
    pub n: usize,
    pub d: usize,
    pub t: usize,
    pub threshold_ok: bool,
    pub i_bound: f64,
    /// Empty when the bound is undefined at this `n`.
    pub psi_info_bound: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakRow {
    pub a: f64,
    pub t: usize,
    pub tight: f64,
    pub loose: f64,
}

pub fn psi_rows(epsilon_p: f64, ns: impl IntoIterator<Item = usize>) -> Result<Vec<PsiRow>> {
    ns.into_iter()
        .map(|n| {
            let (d, t) = search_code_shape(n);
            Ok(PsiRow {
                n,
                d,
                t,
                threshold_ok: t >= 1 && epsilon_condition(epsilon_p, t),
                i_bound: i_bound(epsilon_p, t)?,
                psi_info_bound: if t >= 1 { psi_info_bound(n, t, epsilon_p).ok() } else { None },
            })
        })
        .collect()
}

/// `a` on a uniform grid of `steps + 1` points in `[0, 1]`.
pub fn leak_rows(t: usize, steps: usize) -> Result<Vec<LeakRow>> {
    if steps == 0 {
        return Err(Error::InvalidParameters("steps must be positive".into()));
    }
    (0..=steps)
        .map(|i| {
            let a = i as f64 / steps as f64;
            let b = holevo_bound_ie(a, t)?;
            Ok(LeakRow { a, t, tight: b.tight, loose: b.loose })
        })
        .collect()
}

/// Write rows with a header line.
pub fn write_csv<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialization(e.to_string()))?;
    }
    w.flush().map_err(|e| Error::Serialization(e.to_string()))
}
