//! Wire formats for solved models: JSON reports, CSV tables, and a plain
//! text summary. Output ordering is fixed so identical inputs produce
//! byte-identical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::laplace::{Edge, LayerIndex, MarchAxis, ModelReport, Thresholds};
use crate::spectrum::{Spectrum2D, SpectrumJson};
use crate::taylor::FuncSpec;

/// `"exact-zero"` or the largest residual coefficient.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PdeResidual {
    ExactZero,
    MaxAbs(f64),
}

impl Serialize for PdeResidual {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PdeResidual::ExactZero => serializer.serialize_str("exact-zero"),
            PdeResidual::MaxAbs(v) => serializer.serialize_f64(*v),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GridSummary {
    pub x_points: usize,
    pub y_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeedSummary {
    pub known_layer: LayerIndex,
    pub inferred_layer: LayerIndex,
    pub closure_edge: Edge,
    pub inferred_trace: FuncSpec,
    pub closure_residual: f64,
    pub max_pre_snap_magnitude: f64,
    pub snapped: bool,
    pub warnings: Vec<String>,
}

/// One row of a convergence table.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub order: usize,
    /// Edge with the largest boundary residual at this order.
    pub edge: Edge,
    pub residual: f64,
    pub closed_form_err: Option<f64>,
}

impl ConvergenceRow {
    pub fn from_report(report: &ModelReport) -> Self {
        let (edge, residual) = report.worst_edge().unwrap_or((Edge::YZero, 0.0));
        ConvergenceRow {
            order: report.order,
            edge,
            residual,
            closed_form_err: report.closed_form_error,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportJson {
    pub model: String,
    pub order: usize,
    pub axis: MarchAxis,
    pub reference: Option<&'static str>,
    pub pde_residual: PdeResidual,
    pub edges: BTreeMap<Edge, f64>,
    pub closed_form_max_err: Option<f64>,
    pub grid: GridSummary,
    pub seed: SeedSummary,
    pub nonzero_entries: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence: Option<Vec<ConvergenceRow>>,
    /// Whether the closed-form errors in `convergence` never increase
    /// (within `1e-13`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convergence_monotone: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumJson>,
}

impl ReportJson {
    pub fn new(report: &ModelReport, limits: &Thresholds) -> Self {
        ReportJson {
            model: report.model.clone(),
            order: report.order,
            axis: report.axis,
            reference: report.reference.map(|r| r.name()),
            pde_residual: report
                .pde_residual_max()
                .map_or(PdeResidual::ExactZero, PdeResidual::MaxAbs),
            edges: report.boundary_residuals.clone(),
            closed_form_max_err: report.closed_form_error,
            grid: GridSummary {
                x_points: report.grid.x_points.len(),
                y_points: report.grid.y_points.len(),
            },
            seed: SeedSummary {
                known_layer: report.inferred.index.other(),
                inferred_layer: report.inferred.index,
                closure_edge: report.closure_edge,
                inferred_trace: report.inferred.trace.clone(),
                closure_residual: report.inferred.closure_residual,
                max_pre_snap_magnitude: report.inferred.max_raw_magnitude(),
                snapped: report.inferred.snapped,
                warnings: report.inferred.warnings.clone(),
            },
            nonzero_entries: report.spectrum.len(),
            passed: report.passes(limits),
            convergence: None,
            convergence_monotone: None,
            spectrum: None,
        }
    }
}

/// True when each closed-form error is at most the previous one plus `slack`.
pub fn non_increasing(rows: &[ConvergenceRow], slack: f64) -> bool {
    rows.windows(2)
        .all(|w| match (w[0].closed_form_err, w[1].closed_form_err) {
            (Some(a), Some(b)) => b <= a + slack,
            _ => true,
        })
}

/// `m,n,coefficient` with exact `p/q` strings, sorted by `(m,n)`.
pub fn spectrum_csv(s: &Spectrum2D) -> String {
    let mut out = String::from("m,n,coefficient\n");
    for (m, n, c) in s.iter() {
        writeln!(out, "{m},{n},{c}").unwrap();
    }
    out
}

/// `order,edge,residual,closed_form_err`, one row per order.
pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("order,edge,residual,closed_form_err\n");
    for row in rows {
        let err = row.closed_form_err.map(|e| format!("{e:e}")).unwrap_or_default();
        writeln!(out, "{},{},{:e},{}", row.order, row.edge, row.residual, err).unwrap();
    }
    out
}

pub fn pretty(report: &ModelReport, limits: &Thresholds) -> String {
    let mut out = String::new();
    let verdict = if report.passes(limits) { "PASS" } else { "FAIL" };
    writeln!(out, "model          {}", report.model).unwrap();
    writeln!(out, "order          {}", report.order).unwrap();
    writeln!(out, "axis           {}", report.axis).unwrap();
    writeln!(out, "nonzero        {}", report.spectrum.len()).unwrap();
    match report.pde_residual_max() {
        None => writeln!(out, "pde residual   exact zero").unwrap(),
        Some(v) => writeln!(out, "pde residual   {v:.3e}").unwrap(),
    }
    for (edge, r) in &report.boundary_residuals {
        writeln!(out, "edge {:<9} {r:.3e}", edge.to_string()).unwrap();
    }
    if let (Some(reference), Some(err)) = (report.reference, report.closed_form_error) {
        writeln!(
            out,
            "closed form    {err:.3e} vs {} on {}x{} grid",
            reference.name(),
            report.grid.x_points.len(),
            report.grid.y_points.len()
        )
        .unwrap();
    }
    writeln!(
        out,
        "seed           inferred layer {} from {} (residual {:.3e})",
        report.inferred.index.as_usize(),
        report.closure_edge,
        report.inferred.closure_residual
    )
    .unwrap();
    for w in &report.inferred.warnings {
        writeln!(out, "warning        {w}").unwrap();
    }
    writeln!(out, "result         {verdict}").unwrap();
    out
}
