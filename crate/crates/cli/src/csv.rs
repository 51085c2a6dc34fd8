//! CSV emission. Floats use 17 significant digits in scientific notation,
//! which round-trips every `f64` and does not depend on the locale.

use std::fmt::Write;

use pnc_tas::{Scheme, SerEstimate};

pub const SIMULATE_HEADER: &str = "snr_db,scheme,mod,na,nb,trials,errors,ser,ci_low,ci_high";
pub const BOUND_HEADER: &str = "snr_db,bound,scheme,mod,na,nb";
pub const BOUND_TAS2_HEADER: &str = "snr_db,bound,scheme,mod,na,nb,lambda_star";

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy)]
pub struct RunLabel<'a> {
    pub scheme: Scheme,
    pub modulation: &'a str,
    pub na: usize,
    pub nb: usize,
}

pub fn simulate_csv(label: RunLabel<'_>, rows: &[SerEstimate]) -> String {
    let mut out = String::with_capacity(128 * (rows.len() + 1));
    out.push_str(SIMULATE_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            float(r.snr_db),
            label.scheme,
            label.modulation,
            label.na,
            label.nb,
            r.trials,
            r.errors,
            float(r.ser),
            float(r.ci_low),
            float(r.ci_high)
        )
        .expect("writing to a String cannot fail");
    }
    out
}

/// `(snr_db, bound)` rows; `lambda_star` adds the TAS2 column.
pub fn bound_csv(label: RunLabel<'_>, rows: &[(f64, f64)], lambda_star: Option<f64>) -> String {
    let mut out = String::new();
    out.push_str(if lambda_star.is_some() { BOUND_TAS2_HEADER } else { BOUND_HEADER });
    out.push('\n');
    for &(snr, b) in rows {
        write!(out, "{},{},{},{},{},{}", float(snr), float(b), label.scheme, label.modulation, label.na, label.nb)
            .expect("writing to a String cannot fail");
        if let Some(l) = lambda_star {
            write!(out, ",{}", float(l)).expect("writing to a String cannot fail");
        }
        out.push('\n');
    }
    out
}

/// Parsed simulate row, for tests and tooling that read results back.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulateRow {
    pub snr_db: f64,
    pub scheme: String,
    pub modulation: String,
    pub na: usize,
    pub nb: usize,
    pub trials: u64,
    pub errors: u64,
    pub ser: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

pub fn parse_simulate_csv(text: &str) -> Result<Vec<SimulateRow>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == SIMULATE_HEADER => {}
        other => return Err(format!("unexpected header {other:?}")),
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 10 {
                return Err(format!("line {}: expected 10 fields", i + 2));
            }
            let bad = |what: &str| format!("line {}: bad {what}", i + 2);
            Ok(SimulateRow {
                snr_db: f[0].parse().map_err(|_| bad("snr_db"))?,
                scheme: f[1].to_owned(),
                modulation: f[2].to_owned(),
                na: f[3].parse().map_err(|_| bad("na"))?,
                nb: f[4].parse().map_err(|_| bad("nb"))?,
                trials: f[5].parse().map_err(|_| bad("trials"))?,
                errors: f[6].parse().map_err(|_| bad("errors"))?,
                ser: f[7].parse().map_err(|_| bad("ser"))?,
                ci_low: f[8].parse().map_err(|_| bad("ci_low"))?,
                ci_high: f[9].parse().map_err(|_| bad("ci_high"))?,
            })
        })
        .collect()
}
