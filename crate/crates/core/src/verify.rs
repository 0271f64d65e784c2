//! Float-side evaluation of truncated spectra and error measurement.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};
use crate::laplace::{BcKind, BoundarySpec, Edge};
use crate::rules::dt_derivative;
use crate::spectrum::Spectrum2D;

/// Evaluates the truncated inverse transform
/// `sum U(m,n) (x - x0)^m (y - y0)^n`.
///
/// Each row `m` is summed by Horner in `y`, then the row values by Horner in
/// `x`, so the result does not depend on how the entries were produced.
pub fn eval2d(s: &Spectrum2D, x: f64, y: f64) -> f64 {
    eval_rows(&s.to_f64_rows(), s.origin(), x, y)
}

/// [`eval2d`] on a dense float copy from [`Spectrum2D::to_f64_rows`].
pub fn eval_rows(rows: &[Vec<f64>], origin: (f64, f64), x: f64, y: f64) -> f64 {
    let (dx, dy) = (x - origin.0, y - origin.1);
    rows.iter().rev().fold(0.0, |acc, row| {
        let row_value = row.iter().rev().fold(0.0, |r, c| r * dy + c);
        acc * dx + row_value
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_points: Vec<f64>,
    pub y_points: Vec<f64>,
}

impl GridSpec {
    /// `k x k` equally spaced points on `[0,pi]^2`, endpoints included.
    pub fn uniform(k: usize) -> Result<Self> {
        GridSpec::rect(k, k)
    }

    /// `kx` points in `x` by `ky` in `y`, equally spaced, endpoints included.
    pub fn rect(kx: usize, ky: usize) -> Result<Self> {
        if kx == 0 || ky == 0 {
            return Err(DtmError::Parse("grid needs at least one point per axis".into()));
        }
        Ok(GridSpec {
            x_points: linspace(kx),
            y_points: linspace(ky),
        })
    }

    pub fn new(x_points: Vec<f64>, y_points: Vec<f64>) -> Result<Self> {
        let inside = |v: &[f64]| !v.is_empty() && v.iter().all(|p| (0.0..=PI).contains(p));
        if !inside(&x_points) || !inside(&y_points) {
            return Err(DtmError::Parse("grid points must be nonempty and inside [0,pi]".into()));
        }
        Ok(GridSpec { x_points, y_points })
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x_points
            .iter()
            .flat_map(move |&x| self.y_points.iter().map(move |&y| (x, y)))
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec::uniform(21).unwrap()
    }
}

fn linspace(k: usize) -> Vec<f64> {
    if k == 1 {
        return vec![0.0];
    }
    (0..k).map(|i| PI * i as f64 / (k - 1) as f64).collect()
}

/// The closed-form solutions of the four shipped models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReferenceSolution {
    #[serde(rename = "sinh(x)cos(y)")]
    SinhXCosY,
    #[serde(rename = "cosh(x)sin(y)")]
    CoshXSinY,
    #[serde(rename = "cos(2x)cosh(2y)")]
    Cos2XCosh2Y,
    #[serde(rename = "cos(x)sinh(y)")]
    CosXSinhY,
}

impl ReferenceSolution {
    pub fn eval(self, x: f64, y: f64) -> f64 {
        match self {
            ReferenceSolution::SinhXCosY => x.sinh() * y.cos(),
            ReferenceSolution::CoshXSinY => x.cosh() * y.sin(),
            ReferenceSolution::Cos2XCosh2Y => (2.0 * x).cos() * (2.0 * y).cosh(),
            ReferenceSolution::CosXSinhY => x.cos() * y.sinh(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ReferenceSolution::SinhXCosY => "sinh(x)cos(y)",
            ReferenceSolution::CoshXSinY => "cosh(x)sin(y)",
            ReferenceSolution::Cos2XCosh2Y => "cos(2x)cosh(2y)",
            ReferenceSolution::CosXSinhY => "cos(x)sinh(y)",
        }
    }
}

/// Max-abs deviation of the truncated series from each edge condition, at
/// `samples` equally spaced points per edge (endpoints included).
///
/// Neumann edges differentiate the spectrum exactly before evaluating.
pub fn boundary_residual(s: &Spectrum2D, bc: &BoundarySpec, samples: usize) -> BTreeMap<Edge, f64> {
    let samples = samples.max(2);
    let ts = linspace(samples);
    let values = s.to_f64_rows();
    let mut derivatives: BTreeMap<(usize, usize), Vec<Vec<f64>>> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for cond in bc.iter() {
        let rows = match cond.kind {
            BcKind::Dirichlet => &values,
            BcKind::Neumann => {
                let (r, q) = cond.edge.normal_derivative();
                derivatives.entry((r, q)).or_insert_with(|| {
                    dt_derivative(s, r, q)
                        .map(|d| d.to_f64_rows())
                        .unwrap_or_else(|_| Vec::new())
                })
            }
        };
        let worst = ts
            .iter()
            .map(|&t| {
                let (x, y) = cond.edge.point(t);
                (eval_rows(rows, s.origin(), x, y) - cond.trace.eval(t)).abs()
            })
            .fold(0.0, f64::max);
        out.insert(cond.edge, worst);
    }
    out
}

/// `max |eval2d(s,x,y) - reference(x,y)|` over the grid.
pub fn compare_closed_form(s: &Spectrum2D, reference: ReferenceSolution, grid: &GridSpec) -> f64 {
    let rows = s.to_f64_rows();
    grid.points()
        .map(|(x, y)| (eval_rows(&rows, s.origin(), x, y) - reference.eval(x, y)).abs())
        .fold(0.0, f64::max)
}

/// Exact entrywise comparison: the largest `|U - V|` and every key where the
/// spectra differ, in `(m,n)` order.
pub fn spectrum_diff(u: &Spectrum2D, v: &Spectrum2D) -> Result<(Coefficient, Vec<(usize, usize)>)> {
    if u.order() != v.order() {
        return Err(DtmError::OrderMismatch {
            left: u.order(),
            right: v.order(),
        });
    }
    let keys: std::collections::BTreeSet<(usize, usize)> = u
        .iter()
        .map(|(m, n, _)| (m, n))
        .chain(v.iter().map(|(m, n, _)| (m, n)))
        .collect();
    let mut max = Coefficient::zero();
    let mut differing = Vec::new();
    for (m, n) in keys {
        let d = (u.get(m, n) - v.get(m, n)).abs();
        if !d.is_zero() {
            differing.push((m, n));
            if d > max {
                max = d;
            }
        }
    }
    Ok((max, differing))
}
