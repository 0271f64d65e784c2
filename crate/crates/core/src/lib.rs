//! Exact two-dimensional differential transforms and a spectral Laplace
//! solver.
//!
//! The transform of `u(x,y)` about the origin is its table of scaled Taylor
//! coefficients `U(m,n) = (1/m!n!) d^{m+n}u/dx^m dy^n`, the *spectrum*.
//! This crate keeps spectra as exact rationals ([`Spectrum2D`]), implements
//! the transform algebra on them ([`rules`]), and solves Laplace problems on
//! `(0,pi)^2` by marching the transformed equation from two seed layers
//! ([`laplace`]). Floats appear only in [`verify`] and in seed inference.

pub mod catalog;
pub mod coefficient;
pub mod error;
pub mod laplace;
pub mod report;
pub mod rules;
pub mod spectrum;
pub mod taylor;
pub mod verify;

pub use catalog::CatalogModel;
pub use coefficient::Coefficient;
pub use error::{DtmError, Result};
pub use laplace::{
    infer_missing_seed, propagate, propagate_closed_form, residual_laplacian, solve_model, BcKind, BoundarySpec,
    CauchySeed, Edge, EdgeCondition, InferenceOptions, InferredLayer, LayerIndex, MarchAxis, ModelReport, SolveOptions,
    Thresholds,
};
pub use rules::{
    dt_add, dt_derivative, dt_exp, dt_monomial, dt_monomial_exp, dt_product, dt_scale, dt_sub, ExpSpectrum,
};
pub use spectrum::{Spectrum2D, SpectrumJson};
pub use taylor::{outer_product, taylor_coeffs, taylor_coeffs_f64, FuncSpec, LibKind, SymAmp};
pub use verify::{boundary_residual, compare_closed_form, eval2d, spectrum_diff, GridSpec, ReferenceSolution};
