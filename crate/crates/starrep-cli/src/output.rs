//! Deterministic serialization: fixed 17-significant-digit float formatting,
//! hand-assembled JSON with stable key order, and matching CSV rows.

use num_complex::Complex64;
use starrep::StarSet;
use std::f64::consts::PI;

/// Fixed scientific formatting with 17 significant digits; `-0` is folded
/// into `0` so reruns are byte-identical.
pub fn fmt_f64(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{:.16e}", x)
}

/// A complex number as a `[re, im]` JSON array, matching the amplitude-file
/// convention.
pub fn fmt_complex(z: Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn json_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out
}

/// `"stars":[...],"south_pole_count":N,"residual_max":R` — shared between the
/// single-record and trajectory payloads.
pub fn star_set_fields(set: &StarSet) -> String {
    let stars: Vec<String> = set
        .stars
        .iter()
        .map(|s| {
            format!(
                "{{\"theta\":{},\"phi\":{},\"multiplicity\":{}}}",
                fmt_f64(s.theta),
                fmt_f64(s.phi),
                s.multiplicity
            )
        })
        .collect();
    format!(
        "\"stars\":[{}],\"south_pole_count\":{},\"residual_max\":{}",
        stars.join(","),
        set.south_pole_count,
        fmt_f64(set.residual_max)
    )
}

/// Full single-run record.
pub fn run_record_json(spec_json: &str, set: &StarSet, version: &str) -> String {
    format!(
        "{{\"spec\":{},{},\"version\":\"{}\"}}",
        spec_json,
        star_set_fields(set),
        version
    )
}

/// CSV rows for one star set, one row per finite star plus an aggregated
/// south-pole row (theta = pi, phi = 0) when roots at infinity exist.
/// `prefix` carries already-formatted leading columns (may be empty).
pub fn star_set_csv_rows(set: &StarSet, prefix: &str, out: &mut String) {
    for (index, star) in set.stars.iter().enumerate() {
        out.push_str(&format!(
            "{prefix}{index},{},{},{},{}\n",
            fmt_f64(star.theta),
            fmt_f64(star.phi),
            star.multiplicity,
            fmt_f64(set.residual_max)
        ));
    }
    if set.south_pole_count > 0 {
        out.push_str(&format!(
            "{prefix}{},{},{},{},{}\n",
            set.stars.len(),
            fmt_f64(PI),
            fmt_f64(0.0),
            set.south_pole_count,
            fmt_f64(set.residual_max)
        ));
    }
}

pub const STARS_CSV_HEADER: &str = "star_index,theta,phi,multiplicity,residual_max\n";
pub const SWEEP_CSV_HEADER: &str = "param,value,star_index,theta,phi,multiplicity,residual_max\n";
pub const EVOLVE_CSV_HEADER: &str = "t,star_index,theta,phi,multiplicity,residual_max\n";
