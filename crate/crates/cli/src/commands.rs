use oddpart::analysis::report::{decay_rows, gamma_rows, liminf_rows, tau_rows, to_csv};
use oddpart::analysis::{
    decay_fit, default_gamma_exponents, dyadic_points, fit_samples, gamma_limit_probe, liminf_probe, tau_brackets,
};
use oddpart::families::{BuildOptions, FamilySpec};
use oddpart::np_spectrum::{
    nystrom_oracle, solve_xi0, weyl_coefficient, weyl_report_with_fit, NystromMesh, SolveOutcome, SpectrumTable,
    SpheroidShape,
};
use oddpart::partition::{c_sequence, DecreasingStream, Length, PartitionFamily};
use oddpart::specfun::PrecisionMode;
use oddpart::{with_family, Execution};
use serde::Serialize;
use serde_json::json;

use crate::args::{Command, Format, GlobalArgs, NpCommand, Window};
use crate::svg::Plot;
use crate::verify;

/// What a command produced, before it is rendered in the requested format.
pub enum Artifact {
    Table { csv: String, json: serde_json::Value, plot: Option<Plot> },
    /// Verification results, rendered like a table but with a verdict.
    Verdict { csv: String, json: serde_json::Value, failed: usize },
}

pub struct Context {
    pub options: BuildOptions,
    pub format: Format,
    pub seed: u64,
}

impl Context {
    pub fn new(global: &GlobalArgs) -> Self {
        let exec = if global.sequential { Execution::Sequential } else { Execution::Parallel };
        Context {
            options: BuildOptions { precision: global.precision.into(), tail: global.tail.into(), exec },
            format: global.format,
            seed: global.seed,
        }
    }

    fn wants_plot(&self) -> bool {
        self.format == Format::Svg
    }

    fn shape(&self, xi0: f64) -> oddpart::Result<SpheroidShape> {
        SpheroidShape::new(xi0, self.options.precision)
    }
}

fn precision_name(mode: PrecisionMode) -> &'static str {
    match mode {
        PrecisionMode::Double => "double",
        PrecisionMode::Extended => "extended",
    }
}

pub fn csv_of<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Like [`csv_of`] but with the header written even when there are no rows.
fn csv_with_header<T: Serialize>(header: &[&str], rows: &[T]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.serialize(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[derive(Serialize)]
struct EnumRow<'a, V> {
    j: usize,
    a_j: &'a V,
    c_j: f64,
    #[serde(rename = "origin_N")]
    origin_n: usize,
    origin_k: usize,
}

/// Log-spaced subset of `1..=count`, at most about 400 indices.
fn plot_indices(count: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..=400).map(|i| (count as f64).powf(i as f64 / 400.0).round() as usize).collect();
    out.dedup();
    out
}

fn enumerate_family<F: PartitionFamily + ?Sized>(family: &F, count: usize, ctx: &Context) -> oddpart::Result<Artifact> {
    let label = family.meta().label();
    let emitted: Vec<_> = DecreasingStream::new(family).take(count).collect::<oddpart::Result<_>>()?;
    let rows: Vec<EnumRow<F::Value>> = emitted
        .iter()
        .map(|e| EnumRow {
            j: e.index,
            a_j: &e.value,
            c_j: (e.index as f64).sqrt() * e.value.to_f64(),
            origin_n: e.order,
            origin_k: e.position,
        })
        .collect();
    let plot = ctx.wants_plot().then(|| {
        let points: Vec<(f64, f64)> =
            plot_indices(count).into_iter().map(|j| (j as f64, emitted[j - 1].value.to_f64())).collect();
        let samples: Vec<(usize, f64)> = points.iter().map(|&(j, a)| (j as usize, a)).collect();
        let fit = fit_samples((1, count), &samples).ok().map(|f| (f.c_hat, f.alpha_hat));
        Plot { title: format!("{label}: first {count} terms"), x_label: "j".into(), y_label: "a_j".into(), points, fit }
    });
    Ok(Artifact::Table {
        csv: csv_with_header(&["j", "a_j", "c_j", "origin_N", "origin_k"], &rows),
        json: json!({ "family": label, "rows": rows }),
        plot,
    })
}

fn decay_family<F: PartitionFamily + ?Sized>(family: &F, window: Window, ctx: &Context) -> oddpart::Result<Artifact> {
    let label = family.meta().label();
    let fit = decay_fit(family, (window.0, window.1))?;
    let plot = if ctx.wants_plot() {
        let probes = c_sequence(family, &dyadic_points(window.0, window.1))?;
        let points = probes.into_iter().map(|(j, c)| (j as f64, c / (j as f64).sqrt())).collect();
        Some(Plot {
            title: format!("{label}: window {}..{}", window.0, window.1),
            x_label: "j".into(),
            y_label: "a_j".into(),
            points,
            fit: Some((fit.c_hat, fit.alpha_hat)),
        })
    } else {
        None
    };
    Ok(Artifact::Table { csv: to_csv(&decay_rows(&label, &fit)), json: json!({ "family": label, "fit": fit }), plot })
}

fn tau_family<F: PartitionFamily + ?Sized>(family: &F, ps: &[f64], rows: usize) -> oddpart::Result<Artifact> {
    let label = family.meta().label();
    let brackets = tau_brackets(family, ps, rows)?;
    let report: Vec<_> = brackets.iter().flat_map(|b| tau_rows(&label, b)).collect();
    Ok(Artifact::Table { csv: to_csv(&report), json: json!({ "family": label, "brackets": brackets }), plot: None })
}

fn liminf_family<F: PartitionFamily + ?Sized>(family: &F, windows: &[Window]) -> oddpart::Result<Artifact> {
    let label = family.meta().label();
    let windows: Vec<(usize, usize)> = windows.iter().map(|w| (w.0, w.1)).collect();
    let result = liminf_probe(family, &windows)?;
    Ok(Artifact::Table {
        csv: to_csv(&liminf_rows(&label, &result)),
        json: json!({ "family": label, "windows": result }),
        plot: None,
    })
}

fn build(spec: &FamilySpec, ctx: &Context) -> oddpart::Result<oddpart::families::BuiltFamily> {
    spec.build(ctx.options)
}

pub fn run(command: &Command, ctx: &Context) -> oddpart::Result<Artifact> {
    match command {
        Command::Enumerate { family, count } => {
            let fam = build(family, ctx)?;
            with_family!(&fam, f => enumerate_family(f.as_ref(), *count as usize, ctx))
        }
        Command::Decay { family, window } => {
            let fam = build(family, ctx)?;
            with_family!(&fam, f => decay_family(f.as_ref(), *window, ctx))
        }
        Command::Tau { family, p, rows } => {
            let fam = build(family, ctx)?;
            with_family!(&fam, f => tau_family(f.as_ref(), p, *rows as usize))
        }
        Command::GammaProbe { p } => {
            let ps = if p.is_empty() { default_gamma_exponents() } else { p.clone() };
            let probe = gamma_limit_probe(&ps)?;
            Ok(Artifact::Table { csv: to_csv(&gamma_rows(&probe)), json: json!(probe), plot: None })
        }
        Command::Liminf { family, window } => {
            let fam = build(family, ctx)?;
            with_family!(&fam, f => liminf_family(f.as_ref(), window))
        }
        Command::Np { command } => run_np(command, ctx),
        Command::Verify => {
            let results = verify::run_all(ctx.seed);
            let failed = results.iter().filter(|r| !r.passed).count();
            Ok(Artifact::Verdict { csv: csv_of(&results), json: json!({ "checks": results, "failed": failed }), failed })
        }
    }
}

#[derive(Serialize)]
struct WeylRow {
    xi0: f64,
    willmore: f64,
    chi: i32,
    coeff: f64,
    coeff_doubled: f64,
    fit_c_hat: Option<f64>,
    fit_alpha_hat: Option<f64>,
}

#[derive(Serialize)]
struct SolveRow {
    target: f64,
    kind: &'static str,
    xi0: Option<f64>,
    achieved: Option<f64>,
    iterations: Option<usize>,
}

#[derive(Serialize)]
struct OracleRow {
    rank: usize,
    oracle: f64,
    formula: f64,
    abs_diff: f64,
}

fn run_np(command: &NpCommand, ctx: &Context) -> oddpart::Result<Artifact> {
    let exec = ctx.options.exec;
    let precision = precision_name(ctx.options.precision);
    match command {
        NpCommand::Eigen { xi0, n_max } => {
            let shape = ctx.shape(*xi0)?;
            let table = SpectrumTable::compute(shape, *n_max, exec)?;
            let modes: Vec<_> = (0..=*n_max).flat_map(|n| table.degree(n).expect("in range")).collect();
            let (worst_n, deviation) = table.max_trace_deviation();
            Ok(Artifact::Table {
                csv: csv_with_header(&["n", "m", "lambda"], &modes),
                json: json!({
                    "xi0": xi0,
                    "precision": precision,
                    "n_max": n_max,
                    "trace_deviation": { "n": worst_n, "deviation": deviation },
                    "modes": modes,
                }),
                plot: None,
            })
        }
        NpCommand::Weyl { xi0, fit_window, n_max } => {
            let shape = ctx.shape(*xi0)?;
            let report = match fit_window {
                Some(w) => weyl_report_with_fit(&shape, (w.0, w.1), *n_max)?,
                None => weyl_coefficient(&shape)?,
            };
            let row = WeylRow {
                xi0: report.xi0,
                willmore: report.willmore,
                chi: report.chi,
                coeff: report.coeff,
                coeff_doubled: report.coeff_doubled,
                fit_c_hat: report.fit.as_ref().map(|f| f.c_hat),
                fit_alpha_hat: report.fit.as_ref().map(|f| f.alpha_hat),
            };
            Ok(Artifact::Table { csv: csv_of(&[row]), json: json!(report), plot: None })
        }
        NpCommand::SolveC { target } => {
            let outcome = solve_xi0(*target, ctx.options.precision)?;
            let row = match &outcome {
                SolveOutcome::SphereLimit => {
                    SolveRow { target: *target, kind: "sphere_limit", xi0: None, achieved: None, iterations: None }
                }
                SolveOutcome::Shape { xi0, achieved, iterations } => SolveRow {
                    target: *target,
                    kind: "shape",
                    xi0: Some(*xi0),
                    achieved: Some(*achieved),
                    iterations: Some(*iterations),
                },
            };
            Ok(Artifact::Table {
                csv: csv_of(&[row]),
                json: json!({ "target": target, "precision": precision, "outcome": outcome }),
                plot: None,
            })
        }
        NpCommand::Oracle { xi0, nodes, k, n_max } => {
            let shape = ctx.shape(*xi0)?;
            let mesh = NystromMesh::with_nodes(*nodes);
            let oracle = nystrom_oracle(&shape, mesh, *k, exec)?;
            let table = SpectrumTable::compute(shape, *n_max, exec)?;
            let mut formula: Vec<f64> = (0..=*n_max).flat_map(|n| table.sorted_row(n).expect("in range")).collect();
            formula.sort_by(|a, b| b.total_cmp(a));
            let rows: Vec<OracleRow> = oracle
                .eigenvalues
                .iter()
                .zip(&formula)
                .enumerate()
                .map(|(i, (&o, &f))| OracleRow { rank: i + 1, oracle: o, formula: f, abs_diff: (o - f).abs() })
                .collect();
            Ok(Artifact::Table {
                csv: csv_with_header(&["rank", "oracle", "formula", "abs_diff"], &rows),
                json: json!({ "xi0": xi0, "precision": precision, "mesh": oracle.mesh, "rows": rows }),
                plot: None,
            })
        }
    }
}
