use std::fmt::Write as _;

use dtm_core::report::{self, ConvergenceRow, PdeResidual, ReportJson};
use dtm_core::{solve_model, CatalogModel, InferenceOptions, ModelReport, SolveOptions, Thresholds};
use serde::Serialize;

use crate::config::{ModelChoice, OutputFormat, RunConfig};
use crate::CliError;

/// Slack allowed when checking that errors shrink with order.
const MONOTONE_SLACK: f64 = 1e-13;

/// Rendered output and whether every check passed.
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

fn solve_at(
    model: &ModelChoice,
    order: usize,
    grid: dtm_core::GridSpec,
    inference: &InferenceOptions,
) -> Result<ModelReport, CliError> {
    let (bc, reference) = match model {
        ModelChoice::Catalog(m) => (m.boundary_spec(), Some(m.reference())),
        ModelChoice::Custom(bc) => (bc.clone(), None),
    };
    let opts = SolveOptions {
        inference: inference.clone(),
        grid,
        reference,
        ..SolveOptions::default()
    };
    Ok(solve_model(model.id(), &bc, order, &opts)?)
}

pub fn solve(cfg: &RunConfig, inference: &InferenceOptions) -> Result<Outcome, CliError> {
    let limits = Thresholds::default();
    let main = solve_at(&cfg.model, cfg.order, cfg.grid_spec(), inference)?;
    let rows = match &cfg.convergence_orders {
        Some(orders) => Some(
            orders
                .iter()
                .map(|&n| solve_at(&cfg.model, n, cfg.grid_spec(), inference).map(|r| ConvergenceRow::from_report(&r)))
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let monotone = rows.as_deref().map(|r| report::non_increasing(r, MONOTONE_SLACK));
    let passed = main.passes(&limits) && monotone.unwrap_or(true);

    let text = match cfg.format {
        OutputFormat::Json => {
            let mut json = ReportJson::new(&main, &limits);
            json.convergence = rows;
            json.convergence_monotone = monotone;
            if cfg.emit_spectrum {
                json.spectrum = Some(main.spectrum.to_json());
            }
            to_json_pretty(&json)
        }
        OutputFormat::Csv => match (&rows, cfg.emit_spectrum) {
            (Some(_), true) => {
                return Err(CliError::Config(
                    "emit_spectrum: csv output holds one table; drop --convergence-orders or use --format json".into(),
                ))
            }
            (Some(rows), false) => report::convergence_csv(rows),
            (None, true) => report::spectrum_csv(&main.spectrum),
            (None, false) => report::convergence_csv(&[ConvergenceRow::from_report(&main)]),
        },
        OutputFormat::Pretty => {
            let mut out = report::pretty(&main, &limits);
            if let Some(rows) = &rows {
                out.push_str("\nconvergence\n");
                for row in rows {
                    let err = row.closed_form_err.map_or("-".to_string(), |e| format!("{e:.3e}"));
                    writeln!(
                        out,
                        "  N={:<4} worst edge {:<5} {:.3e}  closed form {err}",
                        row.order,
                        row.edge.to_string(),
                        row.residual
                    )
                    .unwrap();
                }
                writeln!(
                    out,
                    "  non-increasing: {}",
                    if monotone == Some(true) { "yes" } else { "no" }
                )
                .unwrap();
            }
            if cfg.emit_spectrum {
                out.push_str("\nspectrum\n");
                out.push_str(&pretty_spectrum(&main.spectrum));
            }
            out
        }
    };
    Ok(Outcome { text, passed })
}

pub fn spectrum(cfg: &RunConfig, inference: &InferenceOptions) -> Result<Outcome, CliError> {
    let report = solve_at(&cfg.model, cfg.order, cfg.grid_spec(), inference)?;
    let s = &report.spectrum;
    let text = match cfg.format {
        OutputFormat::Json => format!("{}\n", serde_json::to_string(s).expect("spectra serialize")),
        OutputFormat::Csv => report::spectrum_csv(s),
        OutputFormat::Pretty => pretty_spectrum(s),
    };
    Ok(Outcome { text, passed: true })
}

fn pretty_spectrum(s: &dtm_core::Spectrum2D) -> String {
    let mut out = String::new();
    for (m, n, c) in s.iter() {
        writeln!(out, "U({m},{n}) = {c}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct VerifyRow {
    model: CatalogModel,
    order: usize,
    pde_residual: PdeResidual,
    worst_boundary: f64,
    closed_form_max_err: Option<f64>,
    formula_exact: bool,
    convergence_monotone: bool,
    passed: bool,
}

/// All four shipped models at their default orders.
pub fn verify(format: OutputFormat, inference: &InferenceOptions) -> Result<Outcome, CliError> {
    let limits = Thresholds::default();
    let mut rows = Vec::new();
    for model in CatalogModel::ALL {
        let choice = ModelChoice::Catalog(model);
        let grid = dtm_core::GridSpec::default();
        let report = solve_at(&choice, model.default_order(), grid.clone(), inference)?;
        let sweep = model
            .convergence_orders()
            .iter()
            .map(|&n| solve_at(&choice, n, grid.clone(), inference).map(|r| ConvergenceRow::from_report(&r)))
            .collect::<Result<Vec<_>, _>>()?;
        let formula_exact = report.spectrum == model.formula_spectrum(report.order);
        let convergence_monotone = report::non_increasing(&sweep, MONOTONE_SLACK);
        rows.push(VerifyRow {
            model,
            order: report.order,
            pde_residual: report
                .pde_residual_max()
                .map_or(PdeResidual::ExactZero, PdeResidual::MaxAbs),
            worst_boundary: report.worst_edge().map_or(0.0, |(_, r)| r),
            closed_form_max_err: report.closed_form_error,
            formula_exact,
            convergence_monotone,
            passed: report.passes(&limits) && formula_exact && convergence_monotone,
        });
    }
    let passed = rows.iter().all(|r| r.passed);

    let text = match format {
        OutputFormat::Json => to_json_pretty(&rows),
        OutputFormat::Csv => {
            let mut out =
                String::from("model,order,pde_residual,worst_boundary,closed_form_max_err,formula_exact,convergence_monotone,passed\n");
            for r in &rows {
                let pde = match r.pde_residual {
                    PdeResidual::ExactZero => "exact-zero".to_string(),
                    PdeResidual::MaxAbs(v) => format!("{v:e}"),
                };
                let cf = r.closed_form_max_err.map(|e| format!("{e:e}")).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{pde},{:e},{cf},{},{},{}",
                    r.model, r.order, r.worst_boundary, r.formula_exact, r.convergence_monotone, r.passed
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Pretty => {
            let mut out = format!(
                "{:<9} {:>5}  {:<10}  {:>9}  {:>11}  {:<7}  {:<8}  {}\n",
                "model", "order", "pde", "boundary", "closed form", "formula", "converge", "result"
            );
            for r in &rows {
                let pde = match r.pde_residual {
                    PdeResidual::ExactZero => "exact-zero".to_string(),
                    PdeResidual::MaxAbs(v) => format!("{v:.1e}"),
                };
                let cf = r.closed_form_max_err.map_or("-".to_string(), |e| format!("{e:.1e}"));
                writeln!(
                    out,
                    "{:<9} {:>5}  {pde:<10}  {:>9.1e}  {cf:>11}  {:<7}  {:<8}  {}",
                    r.model.id(),
                    r.order,
                    r.worst_boundary,
                    if r.formula_exact { "exact" } else { "differs" },
                    if r.convergence_monotone { "ok" } else { "rises" },
                    if r.passed { "PASS" } else { "FAIL" }
                )
                .unwrap();
            }
            writeln!(
                out,
                "{}",
                if passed {
                    "all checks passed"
                } else {
                    "some checks failed"
                }
            )
            .unwrap();
            out
        }
    };
    Ok(Outcome { text, passed })
}

fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
