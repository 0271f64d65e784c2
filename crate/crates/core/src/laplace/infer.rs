//! Inferring the unknown seed layer from the edge opposite the marching
//! origin.
//!
//! Write the marching coordinate as `s` and the running one as `t`. With
//! `f(t) = u|_{s=0}` and `g(t) = u_s|_{s=0}`, every harmonic `u` is
//! `u = cos(s D) f + (sin(s D)/D) g` where `D = d/dt`. At `s = pi` the
//! closure condition reads
//!
//! ```text
//! Dirichlet:  cos(pi D) f + (sin(pi D)/D) g = h
//! Neumann:   -D sin(pi D) f + cos(pi D) g   = h
//! ```
//!
//! Library traces of scale `b` are eigenfunctions of `D^2` (eigenvalue
//! `+-b^2`), so on each of them the operators above are scalars and the
//! unknown layer is found mode by mode. Polynomial traces go through the
//! same operators as finite upper-triangular maps solved by back
//! substitution. Modes annihilated by the unknown's operator are set to
//! zero when the data is consistent.
//!
//! The closure involves powers of `pi`, so this step runs in floats. The
//! solved mode amplitudes are snapped to small-denominator rationals and the
//! returned layer is then exact.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use super::{BcKind, EdgeCondition, LayerIndex, MarchAxis};
use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};
use crate::taylor::{taylor_coeffs, taylor_coeffs_f64, FuncSpec, LibKind, SymAmp};

/// `|symbol|` below this marks a mode the unknown layer cannot carry.
const KERNEL_EPS: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct InferenceOptions {
    /// Largest denominator accepted when snapping a solved amplitude.
    pub snap_denominator: u64,
    /// Maximum distance between a float and the rational it snaps to.
    pub snap_tolerance: f64,
    /// Closure residual above this is an error.
    pub error_tolerance: f64,
    /// Closure residual above this attaches a warning.
    pub warn_tolerance: f64,
}

impl Default for InferenceOptions {
    fn default() -> Self {
        InferenceOptions {
            snap_denominator: 1_000_000,
            snap_tolerance: 1e-9,
            error_tolerance: 1e-6,
            warn_tolerance: 1e-9,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InferredLayer {
    pub index: LayerIndex,
    /// Exact layer, `order + 1` entries.
    pub layer: Vec<Coefficient>,
    /// The same layer before snapping.
    pub raw: Vec<f64>,
    /// The layer as a trace over the running variable.
    pub trace: FuncSpec,
    /// Max-abs per-degree mismatch of the closure condition after snapping.
    pub closure_residual: f64,
    /// False when some amplitude kept its raw float value.
    pub snapped: bool,
    pub warnings: Vec<String>,
}

impl InferredLayer {
    pub fn max_raw_magnitude(&self) -> f64 {
        self.raw.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }
}

/// The two operators acting on a seed layer at marching distance `pi`.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Transfer {
    /// `cos(pi D)`
    Cos,
    /// `sin(pi D) / D`
    Sin,
    /// `-D sin(pi D)`
    NegDSin,
}

impl Transfer {
    fn for_layer(closure: BcKind, index: LayerIndex) -> Transfer {
        match (closure, index) {
            (BcKind::Dirichlet, LayerIndex::Values) => Transfer::Cos,
            (BcKind::Dirichlet, LayerIndex::Slopes) => Transfer::Sin,
            (BcKind::Neumann, LayerIndex::Values) => Transfer::NegDSin,
            (BcKind::Neumann, LayerIndex::Slopes) => Transfer::Cos,
        }
    }

    /// Scalar value on an eigenfunction with `D^2 phi = mu phi`.
    fn symbol(self, mu: f64) -> f64 {
        let root = mu.abs().sqrt();
        let (cos_part, sin_over_root) = if mu > 0.0 {
            ((PI * root).cos(), (PI * root).sin() / root)
        } else if mu < 0.0 {
            ((PI * root).cosh(), (PI * root).sinh() / root)
        } else {
            (1.0, PI)
        };
        match self {
            Transfer::Cos => cos_part,
            Transfer::Sin => sin_over_root,
            Transfer::NegDSin => -mu * sin_over_root,
        }
    }

    /// Weight of `p[m + j]` in `(T p)[m]` for a polynomial `p`.
    fn weight(self, m: usize, j: usize) -> f64 {
        let series = |power: usize, k: usize| {
            let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * PI.powi(power as i32) / factorial_f64(power)
        };
        match self {
            Transfer::Cos if j.is_multiple_of(2) => series(j, j / 2) * rising(m, j),
            Transfer::Sin if j.is_multiple_of(2) => series(j + 1, j / 2) * rising(m, j),
            Transfer::NegDSin if j >= 2 && j.is_multiple_of(2) => -series(j - 1, (j - 2) / 2) * rising(m, j),
            _ => 0.0,
        }
    }

    /// Lowest offset `j` with a nonzero weight.
    fn lead(self) -> usize {
        match self {
            Transfer::Cos | Transfer::Sin => 0,
            Transfer::NegDSin => 2,
        }
    }

    fn apply_poly(self, p: &[f64]) -> Vec<f64> {
        (0..p.len())
            .map(|m| (0..p.len() - m).map(|j| self.weight(m, j) * p[m + j]).sum())
            .collect()
    }

    /// Solves `T p = q` by back substitution; the kernel of `-D sin(pi D)`
    /// (constants and linear terms) is fixed at zero.
    fn solve_poly(self, q: &[f64]) -> Vec<f64> {
        let lead = self.lead();
        let mut p = vec![0.0; q.len() + lead];
        for m in (0..q.len()).rev() {
            let tail: f64 = (lead + 1..p.len() - m).map(|j| self.weight(m, j) * p[m + j]).sum();
            p[m + lead] = (q[m] - tail) / self.weight(m, lead);
        }
        p
    }
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// `(m + j)! / m!`
fn rising(m: usize, j: usize) -> f64 {
    (m + 1..=m + j).fold(1.0, |acc, k| acc * k as f64)
}

/// A library mode: `kind(scale * t)` with unit amplitude.
type ModeKey = (LibKind, Coefficient);

#[derive(Default)]
struct Decomposed {
    modes: BTreeMap<ModeKey, f64>,
    poly: Vec<f64>,
}

fn decompose(f: &FuncSpec) -> Decomposed {
    let mut out = Decomposed::default();
    for term in f.terms() {
        match term {
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                sym_amp,
            } => {
                *out.modes.entry((*kind, arg_scale.clone())).or_insert(0.0) += amplitude.to_f64() * sym_amp.value();
            }
            FuncSpec::Polynomial { coeffs, .. } => {
                let c = taylor_coeffs_f64(term, coeffs.len() - 1);
                if out.poly.len() < c.len() {
                    out.poly.resize(c.len(), 0.0);
                }
                for (slot, v) in out.poly.iter_mut().zip(c) {
                    *slot += v;
                }
            }
            _ => unreachable!("terms() yields library and polynomial terms only"),
        }
    }
    out
}

fn mode_mu(key: &ModeKey) -> f64 {
    let b = key.1.to_f64();
    key.0.curvature_sign() as f64 * b * b
}

fn mode_trace(key: &ModeKey, amplitude: Coefficient) -> FuncSpec {
    FuncSpec::Library {
        kind: key.0,
        arg_scale: key.1.clone(),
        amplitude,
        sym_amp: SymAmp::One,
    }
}

/// Solves the closure condition on `closure` for the seed layer that
/// `known` does not supply.
///
/// `known` is the trace of layer `known_index` (the values `u` or the
/// slopes `u_s` on the marching origin edge).
pub fn infer_missing_seed(
    known: &FuncSpec,
    known_index: LayerIndex,
    axis: MarchAxis,
    closure: &EdgeCondition,
    order: usize,
    opts: &InferenceOptions,
) -> Result<InferredLayer> {
    let expected = axis.closure_edge();
    if closure.edge != expected {
        return Err(DtmError::NonOppositeEdge {
            closure: closure.edge,
            expected,
        });
    }
    let unknown_index = known_index.other();
    let known_op = Transfer::for_layer(closure.kind, known_index);
    let unknown_op = Transfer::for_layer(closure.kind, unknown_index);

    let known = decompose(known);
    let target = decompose(&closure.trace);

    let mut warnings = Vec::new();
    let mut snapped_all = true;
    let mut snap =
        |x: f64, what: &dyn Fn() -> String| match Coefficient::snap(x, opts.snap_denominator, opts.snap_tolerance) {
            Some(c) => c,
            None => {
                snapped_all = false;
                warnings.push(format!("{} = {x:e} kept unsnapped", what()));
                Coefficient::from_f64_exact(x).unwrap_or_else(Coefficient::zero)
            }
        };

    // Library modes.
    let keys: std::collections::BTreeSet<ModeKey> = known.modes.keys().chain(target.modes.keys()).cloned().collect();
    let mut raw_modes = Vec::new();
    let mut solved_modes = Vec::new();
    let mut mode_residuals = Vec::new();
    for key in keys {
        let mu = mode_mu(&key);
        let known_amp = known.modes.get(&key).copied().unwrap_or(0.0);
        let target_amp = target.modes.get(&key).copied().unwrap_or(0.0);
        let rhs = target_amp - known_op.symbol(mu) * known_amp;
        let symbol = unknown_op.symbol(mu);
        let raw = if symbol.abs() < KERNEL_EPS {
            let scale = 1.0f64.max(target_amp.abs()).max(known_amp.abs());
            if rhs.abs() > opts.error_tolerance * scale {
                return Err(DtmError::InconsistentClosure {
                    residual: rhs.abs(),
                    detail: format!(
                        "mode {:?}({}t) lies in the kernel of the closure operator",
                        key.0, key.1
                    ),
                });
            }
            0.0
        } else {
            rhs / symbol
        };
        let exact = snap(raw, &|| format!("amplitude of {:?}({} t)", key.0, key.1));
        mode_residuals.push((
            key.clone(),
            known_op.symbol(mu) * known_amp + symbol * exact.to_f64() - target_amp,
        ));
        raw_modes.push((key.clone(), raw));
        solved_modes.push((key, exact));
    }

    // Polynomial part.
    let mut rhs_poly = target.poly.clone();
    let known_image = known_op.apply_poly(&known.poly);
    if rhs_poly.len() < known_image.len() {
        rhs_poly.resize(known_image.len(), 0.0);
    }
    for (slot, v) in rhs_poly.iter_mut().zip(&known_image) {
        *slot -= v;
    }
    let raw_poly = unknown_op.solve_poly(&rhs_poly);
    let exact_poly: Vec<Coefficient> = raw_poly
        .iter()
        .enumerate()
        .map(|(k, &x)| snap(x, &|| format!("polynomial coefficient {k}")))
        .collect();

    // Exact layer as a trace.
    let mut terms: Vec<FuncSpec> = solved_modes
        .iter()
        .filter(|(_, amp)| !amp.is_zero())
        .map(|(key, amp)| mode_trace(key, amp.clone()))
        .collect();
    if exact_poly.iter().any(|c| !c.is_zero()) {
        terms.push(FuncSpec::polynomial(exact_poly.clone())?);
    }
    let trace = match terms.len() {
        0 => FuncSpec::Zero,
        1 => terms.pop().unwrap(),
        _ => FuncSpec::Sum(terms),
    };
    let layer = taylor_coeffs(&trace, order)?;

    let mut raw = vec![0.0; order + 1];
    for (key, amp) in &raw_modes {
        let unit = taylor_coeffs_f64(&mode_trace(key, Coefficient::one()), order);
        for (slot, v) in raw.iter_mut().zip(unit) {
            *slot += amp * v;
        }
    }
    for (slot, v) in raw.iter_mut().zip(&raw_poly) {
        *slot += v;
    }

    // Per-degree closure mismatch with the snapped layer.
    let mut mismatch = vec![0.0; order + 1];
    for (key, r) in &mode_residuals {
        let unit = taylor_coeffs_f64(&mode_trace(key, Coefficient::one()), order);
        for (slot, v) in mismatch.iter_mut().zip(unit) {
            *slot += r * v;
        }
    }
    let snapped_poly: Vec<f64> = exact_poly.iter().map(Coefficient::to_f64).collect();
    let unknown_image = unknown_op.apply_poly(&snapped_poly);
    for (m, slot) in mismatch.iter_mut().enumerate() {
        let get = |v: &[f64]| v.get(m).copied().unwrap_or(0.0);
        *slot += get(&known_image) + get(&unknown_image) - get(&target.poly);
    }
    let closure_residual = mismatch.iter().fold(0.0, |acc: f64, x| acc.max(x.abs()));
    if closure_residual > opts.error_tolerance {
        return Err(DtmError::InconsistentClosure {
            residual: closure_residual,
            detail: format!("closure on {} not satisfied", closure.edge),
        });
    }
    if closure_residual > opts.warn_tolerance {
        warnings.push(format!(
            "closure residual {closure_residual:.3e} above {:.0e}",
            opts.warn_tolerance
        ));
    }

    Ok(InferredLayer {
        index: unknown_index,
        layer,
        raw,
        trace,
        closure_residual,
        snapped: snapped_all,
        warnings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laplace::Edge;

    fn c(n: i64, d: i64) -> Coefficient {
        Coefficient::new(n, d)
    }

    #[test]
    fn symbols_match_closed_forms() {
        // mu = -1 (sin / cos of t): cos(pi D) -> cosh(pi), sin(pi D)/D -> sinh(pi)
        assert!((Transfer::Cos.symbol(-1.0) - PI.cosh()).abs() < 1e-12);
        assert!((Transfer::Sin.symbol(-1.0) - PI.sinh()).abs() < 1e-12);
        // mu = -4 (cos 2t): -D sin(pi D) -> 2 sinh(2 pi)
        assert!((Transfer::NegDSin.symbol(-4.0) - 2.0 * (2.0 * PI).sinh()).abs() < 1e-9);
        // mu = 1 (sinh t): cos(pi) = -1, sin(pi) ~ 0
        assert_eq!(Transfer::Cos.symbol(1.0), -1.0);
        assert!(Transfer::Sin.symbol(1.0).abs() < KERNEL_EPS);
        assert_eq!(Transfer::Sin.symbol(0.0), PI);
    }

    #[test]
    fn polynomial_operators_agree_with_symbols_on_low_degree() {
        // On constants every operator reduces to its mu = 0 symbol.
        for op in [Transfer::Cos, Transfer::Sin, Transfer::NegDSin] {
            assert!((op.apply_poly(&[1.0])[0] - op.symbol(0.0)).abs() < 1e-15);
        }
        // cos(pi D) t^2 = t^2 - pi^2
        let q = Transfer::Cos.apply_poly(&[0.0, 0.0, 1.0]);
        assert!((q[0] + PI * PI).abs() < 1e-12 && q[1] == 0.0 && q[2] == 1.0);
    }

    #[test]
    fn polynomial_solves_invert_application() {
        let p = [0.5, -1.0, 2.0, 0.25, -0.75, 1.5];
        for op in [Transfer::Cos, Transfer::Sin] {
            let q = op.apply_poly(&p);
            let back = op.solve_poly(&q);
            for (a, b) in back.iter().zip(p) {
                assert!((a - b).abs() < 1e-9, "{op:?}");
            }
        }
        // -D sin(pi D) loses constants and linear terms
        let q = Transfer::NegDSin.apply_poly(&p);
        let back = Transfer::NegDSin.solve_poly(&q[..4]);
        assert_eq!(&back[..2], &[0.0, 0.0]);
        for k in 2..6 {
            assert!((back[k] - p[k]).abs() < 1e-9);
        }
    }

    #[test]
    fn homogeneous_problem_gives_zero() {
        let closure = EdgeCondition::dirichlet(Edge::YPi, FuncSpec::Zero);
        let out = infer_missing_seed(
            &FuncSpec::Zero,
            LayerIndex::Values,
            MarchAxis::InN,
            &closure,
            6,
            &Default::default(),
        )
        .unwrap();
        assert!(out.layer.iter().all(Coefficient::is_zero));
        assert_eq!(out.trace, FuncSpec::Zero);
        assert_eq!(out.closure_residual, 0.0);
    }

    #[test]
    fn rejects_non_opposite_edge() {
        let closure = EdgeCondition::dirichlet(Edge::XPi, FuncSpec::Zero);
        let err = infer_missing_seed(
            &FuncSpec::Zero,
            LayerIndex::Values,
            MarchAxis::InN,
            &closure,
            4,
            &Default::default(),
        );
        assert!(matches!(
            err,
            Err(DtmError::NonOppositeEdge {
                closure: Edge::XPi,
                expected: Edge::YPi
            })
        ));
    }

    #[test]
    fn kernel_mode_with_data_is_inconsistent() {
        // u(x,0) = 0 and u(x,pi) = sinh x: sinh x is annihilated by sin(pi D)/D.
        let closure = EdgeCondition::dirichlet(Edge::YPi, FuncSpec::unit(LibKind::Sinh));
        let err = infer_missing_seed(
            &FuncSpec::Zero,
            LayerIndex::Values,
            MarchAxis::InN,
            &closure,
            6,
            &Default::default(),
        );
        assert!(matches!(err, Err(DtmError::InconsistentClosure { .. })));
    }

    #[test]
    fn exponential_closure_recovers_scaled_layer() {
        // u = sin(x/2) sinh(y/2): f = 0, g = sin(x/2)/2, u(x,pi) = sinh(pi/2) sin(x/2)
        let half = c(1, 2);
        let closure_amp = (PI / 2.0).sinh();
        let closure = EdgeCondition::dirichlet(
            Edge::YPi,
            FuncSpec::library(
                LibKind::Sin,
                half.clone(),
                Coefficient::from_f64_exact(closure_amp).unwrap(),
            ),
        );
        let out = infer_missing_seed(
            &FuncSpec::Zero,
            LayerIndex::Values,
            MarchAxis::InN,
            &closure,
            8,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(out.index, LayerIndex::Slopes);
        assert_eq!(out.trace, FuncSpec::library(LibKind::Sin, half.clone(), half));
        assert!(out.snapped);
        assert!(out.closure_residual < 1e-12);
    }

    #[test]
    fn polynomial_neumann_closure() {
        // u = x^2 - y^2: u_y(x,0) = 0, u_y(x,pi) = -2 pi, u(x,0) = x^2.
        let target = FuncSpec::Polynomial {
            coeffs: vec![Coefficient::from_f64_exact(-2.0 * PI).unwrap()],
            arg_scale: Coefficient::one(),
            amplitude: Coefficient::one(),
            sym_amp: SymAmp::One,
        };
        let closure = EdgeCondition::neumann(Edge::YPi, target);
        let out = infer_missing_seed(
            &FuncSpec::Zero,
            LayerIndex::Slopes,
            MarchAxis::InN,
            &closure,
            4,
            &Default::default(),
        )
        .unwrap();
        assert_eq!(out.layer, vec![c(0, 1), c(0, 1), c(1, 1), c(0, 1), c(0, 1)]);
    }
}
