//! Text and JSON renderings of assessment reports.
//!
//! JSON carries full-precision numbers. Text rounds to two decimals, half up.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::assessment::{AssessmentReport, Standing};
use crate::grey::GreyNumber;
use crate::tfn::EquivalenceReport;

/// Rounds half up to `places` decimals.
pub fn round_half_up(x: f64, places: i32) -> f64 {
    let f = 10f64.powi(places);
    // nudge by one part in 1e12 so ties stored a hair below .5 still round up
    let scaled = x * f;
    let nudged = scaled + scaled.abs() * 1e-12;
    (nudged + 0.5).floor() / f
}

/// `x` rounded half up and printed with exactly two decimals.
pub fn fmt2(x: f64) -> String {
    let r = round_half_up(x, 2);
    let s = format!("{r:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

pub fn fmt_gn2(g: GreyNumber) -> String {
    format!("[{}, {}]", fmt2(g.lower()), fmt2(g.upper()))
}

/// The JSON shape of one report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub group: String,
    pub n: u64,
    pub mean_gn: GreyNumber,
    pub whitened: f64,
    pub grade: String,
    pub t: f64,
    pub distribution: BTreeMap<String, u64>,
}

impl From<&AssessmentReport> for ReportJson {
    fn from(r: &AssessmentReport) -> Self {
        ReportJson {
            group: r.group_id.clone(),
            n: r.n,
            mean_gn: r.mean_gn,
            whitened: r.whitened,
            grade: r.grade.clone(),
            t: r.t_used.value(),
            distribution: r
                .distribution
                .in_scale_order(&r.scale)
                .map(|(l, c)| (l.to_string(), c))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub group: String,
    pub gn_whitened: f64,
    pub tfn_defuzzified: f64,
    pub tfn_peak: f64,
    pub difference: f64,
    pub pass: bool,
}

impl EquivalenceJson {
    pub fn new(group: &str, e: &EquivalenceReport) -> Self {
        EquivalenceJson {
            group: group.to_string(),
            gn_whitened: e.gn_whitened,
            tfn_defuzzified: e.tfn_defuzzified,
            tfn_peak: e.tfn_peak,
            difference: e.difference,
            pass: e.pass,
        }
    }
}

/// ```plain
/// G1: n=60 M=[62.42, 79.33] w=70.88 grade=C
///   distribution: A=20 B=15 C=7 D=10 F=8
/// ```
pub fn render_text(r: &AssessmentReport) -> String {
    let mut out = String::new();
    let t = r.t_used.value();
    let w = if t == 0.5 {
        "w".to_string()
    } else {
        format!("w(t={t})")
    };
    let _ = writeln!(
        out,
        "{}: n={} M={} {}={} grade={}",
        r.group_id,
        r.n,
        fmt_gn2(r.mean_gn),
        w,
        fmt2(r.whitened),
        r.grade
    );
    let dist: Vec<String> = r
        .distribution
        .in_scale_order(&r.scale)
        .map(|(l, c)| format!("{l}={c}"))
        .collect();
    let _ = writeln!(out, "  distribution: {}", dist.join(" "));
    out
}

pub fn render_equivalence_text(group: &str, e: &EquivalenceReport) -> String {
    format!(
        "{group}: TFN check {} (GN w={}, TFN defuzzified={}, peak={}, |diff|={:.3e})\n",
        if e.pass { "pass" } else { "FAIL" },
        fmt2(e.gn_whitened),
        fmt2(e.tfn_defuzzified),
        fmt2(e.tfn_peak),
        e.difference
    )
}

pub fn render_standings_text(standings: &[Standing]) -> String {
    let mut out = String::new();
    for s in standings {
        let _ = writeln!(
            out,
            "{}. {} w={} grade={}{}",
            s.rank,
            s.report.group_id,
            fmt2(s.report.whitened),
            s.report.grade,
            if s.tied { " (tied)" } else { "" }
        );
    }
    out
}
