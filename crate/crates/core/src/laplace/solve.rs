//! End-to-end solution of one boundary-value model.

use std::collections::BTreeMap;

use serde::Serialize;

use super::infer::{infer_missing_seed, InferenceOptions, InferredLayer};
use super::propagate::{propagate, residual_laplacian};
use super::{BcKind, BoundarySpec, CauchySeed, Edge, LayerIndex, MarchAxis};
use crate::error::{DtmError, Result};
use crate::spectrum::Spectrum2D;
use crate::taylor::taylor_coeffs;
use crate::verify::{boundary_residual, compare_closed_form, GridSpec, ReferenceSolution};

#[derive(Clone, Debug, PartialEq)]
pub struct SolveOptions {
    pub inference: InferenceOptions,
    /// Samples per edge for boundary residuals.
    pub edge_samples: usize,
    pub grid: GridSpec,
    pub reference: Option<ReferenceSolution>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            inference: InferenceOptions::default(),
            edge_samples: 41,
            grid: GridSpec::default(),
            reference: None,
        }
    }
}

/// Pass/fail limits applied to a [`ModelReport`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Thresholds {
    pub boundary: f64,
    pub closed_form: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            boundary: 1e-8,
            closed_form: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelReport {
    pub model: String,
    pub order: usize,
    pub axis: MarchAxis,
    pub spectrum: Spectrum2D,
    /// Spectrum of `u_xx + u_yy`; empty for a correctly propagated spectrum.
    pub pde_residual_spectrum: Spectrum2D,
    pub boundary_residuals: BTreeMap<Edge, f64>,
    pub closed_form_error: Option<f64>,
    pub reference: Option<ReferenceSolution>,
    pub inferred: InferredLayer,
    pub closure_edge: Edge,
    pub grid: GridSpec,
}

impl ModelReport {
    /// Largest `|coefficient|` of the Laplacian residual, `None` when it is
    /// exactly zero.
    pub fn pde_residual_max(&self) -> Option<f64> {
        if self.pde_residual_spectrum.is_empty() {
            None
        } else {
            Some(
                self.pde_residual_spectrum
                    .iter()
                    .map(|(_, _, c)| c.to_f64().abs())
                    .fold(0.0, f64::max),
            )
        }
    }

    pub fn worst_edge(&self) -> Option<(Edge, f64)> {
        self.boundary_residuals
            .iter()
            .map(|(&e, &r)| (e, r))
            .fold(None, |best, (e, r)| match best {
                Some((_, b)) if b >= r => best,
                _ => Some((e, r)),
            })
    }

    pub fn passes(&self, limits: &Thresholds) -> bool {
        self.pde_residual_spectrum.is_empty()
            && self.boundary_residuals.values().all(|&r| r < limits.boundary)
            && self.closed_form_error.is_none_or(|e| e < limits.closed_form)
    }
}

/// Chooses the marching axis: the `y = 0` edge seeds rows whenever it
/// carries nonzero data, otherwise the `x = 0` edge seeds columns when it
/// does; all-zero origin edges fall back to rows.
pub fn select_axis(bc: &BoundarySpec) -> MarchAxis {
    if !bc.condition(Edge::YZero).trace.is_zero() {
        MarchAxis::InN
    } else if !bc.condition(Edge::XZero).trace.is_zero() {
        MarchAxis::InM
    } else {
        MarchAxis::InN
    }
}

/// Transforms the model to a spectral Cauchy problem, infers the missing
/// seed layer from the opposite edge, propagates, and measures the result.
pub fn solve_model(model: &str, bc: &BoundarySpec, order: usize, opts: &SolveOptions) -> Result<ModelReport> {
    let axis = select_axis(bc);
    let origin = bc.condition(axis.origin_edge());
    let closure = bc.condition(axis.closure_edge());
    let known_index = match origin.kind {
        BcKind::Dirichlet => LayerIndex::Values,
        BcKind::Neumann => LayerIndex::Slopes,
    };
    if origin.trace.has_symbolic_amplitude() {
        return Err(DtmError::UnsupportedBoundary(format!(
            "seed edge {} carries an irrational amplitude",
            origin.edge
        )));
    }
    let known = taylor_coeffs(&origin.trace, order)?;
    let inferred = infer_missing_seed(&origin.trace, known_index, axis, closure, order, &opts.inference)?;
    let (layer0, layer1) = match known_index {
        LayerIndex::Values => (known, inferred.layer.clone()),
        LayerIndex::Slopes => (inferred.layer.clone(), known),
    };
    let seed = CauchySeed::new(axis, layer0, layer1, order)?;
    let spectrum = propagate(&seed);

    let pde_residual_spectrum = if order >= 2 {
        residual_laplacian(&spectrum)?
    } else {
        // no second derivatives survive truncation below order 2
        Spectrum2D::zero(0)
    };
    let boundary_residuals = boundary_residual(&spectrum, bc, opts.edge_samples);
    let closed_form_error = opts.reference.map(|r| compare_closed_form(&spectrum, r, &opts.grid));

    Ok(ModelReport {
        model: model.to_owned(),
        order,
        axis,
        spectrum,
        pde_residual_spectrum,
        boundary_residuals,
        closed_form_error,
        reference: opts.reference,
        inferred,
        closure_edge: closure.edge,
        grid: opts.grid.clone(),
    })
}
