//! Flat CSV rows for analysis results.

use serde::Serialize;

use super::decay::DecayFit;
use super::probes::{GammaProbe, LiminfWindow};
use super::tau::TauBracket;

/// One CSV line: `family,param,value,bound,margin`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub family: String,
    pub param: String,
    pub value: f64,
    pub bound: f64,
    pub margin: f64,
}

pub const CSV_HEADER: &str = "family,param,value,bound,margin";

/// Header plus one line per row; fields containing commas are quoted.
pub fn to_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for r in rows {
        w.write_record([&r.family, &r.param, &r.value.to_string(), &r.bound.to_string(), &r.margin.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

pub fn tau_rows(family: &str, b: &TauBracket) -> Vec<ReportRow> {
    let p = format!("p={}", b.p);
    vec![
        ReportRow { family: family.into(), param: format!("{p};lower"), value: b.lower, bound: b.bound_ref, margin: b.lower - b.bound_ref },
        ReportRow { family: family.into(), param: format!("{p};upper"), value: b.upper, bound: b.bound_ref, margin: b.upper - b.bound_ref },
    ]
}

pub fn decay_rows(family: &str, fit: &DecayFit) -> Vec<ReportRow> {
    let w = format!("{}-{}", fit.window.0, fit.window.1);
    vec![
        ReportRow { family: family.into(), param: format!("{w};C_hat"), value: fit.c_hat, bound: 0.5, margin: fit.c_hat - 0.5 },
        ReportRow { family: family.into(), param: format!("{w};alpha_hat"), value: fit.alpha_hat, bound: -0.5, margin: fit.alpha_hat + 0.5 },
        ReportRow { family: family.into(), param: format!("{w};residual"), value: fit.residual, bound: 0.0, margin: fit.residual },
    ]
}

pub fn liminf_rows(family: &str, windows: &[LiminfWindow]) -> Vec<ReportRow> {
    windows
        .iter()
        .map(|w| ReportRow {
            family: family.into(),
            param: format!("{}-{}", w.window.0, w.window.1),
            value: w.inf,
            bound: 0.5,
            margin: w.inf - 0.5,
        })
        .collect()
}

pub fn gamma_rows(probe: &GammaProbe) -> Vec<ReportRow> {
    let mut rows: Vec<ReportRow> = probe
        .values
        .iter()
        .map(|&(p, v)| ReportRow { family: "-".into(), param: format!("p={p}"), value: v, bound: probe.target, margin: v - probe.target })
        .collect();
    rows.push(ReportRow {
        family: "-".into(),
        param: "extrapolated".into(),
        value: probe.extrapolated,
        bound: probe.target,
        margin: probe.extrapolated - probe.target,
    });
    rows
}
