//! Laplace boundary-value problems on `(0,pi) x (0,pi)` as spectral Cauchy
//! problems.
//!
//! Transforming `u_xx + u_yy = 0` gives
//! `(m+1)(m+2) U(m+2,n) + (n+1)(n+2) U(m,n+2) = 0`, so two adjacent rows
//! (or columns) of the spectrum determine all the others. One of the two
//! comes straight from the boundary data on the edge through the origin;
//! the other is inferred from the opposite edge ([`infer`]).

pub mod infer;
pub mod propagate;
pub mod solve;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};
use crate::taylor::FuncSpec;

pub use infer::{infer_missing_seed, InferenceOptions, InferredLayer};
pub use propagate::{propagate, propagate_closed_form, residual_laplacian};
pub use solve::{select_axis, solve_model, ModelReport, SolveOptions, Thresholds};

/// One side of the square domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Edge {
    #[serde(rename = "y=0")]
    YZero,
    #[serde(rename = "y=pi")]
    YPi,
    #[serde(rename = "x=0")]
    XZero,
    #[serde(rename = "x=pi")]
    XPi,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::YZero, Edge::YPi, Edge::XZero, Edge::XPi];

    pub fn opposite(self) -> Edge {
        match self {
            Edge::YZero => Edge::YPi,
            Edge::YPi => Edge::YZero,
            Edge::XZero => Edge::XPi,
            Edge::XPi => Edge::XZero,
        }
    }

    /// Point on the edge at running coordinate `t`.
    pub fn point(self, t: f64) -> (f64, f64) {
        use std::f64::consts::PI;
        match self {
            Edge::YZero => (t, 0.0),
            Edge::YPi => (t, PI),
            Edge::XZero => (0.0, t),
            Edge::XPi => (PI, t),
        }
    }

    /// Derivative orders `(r, s)` of the normal derivative across this edge.
    pub fn normal_derivative(self) -> (usize, usize) {
        match self {
            Edge::YZero | Edge::YPi => (0, 1),
            Edge::XZero | Edge::XPi => (1, 0),
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Edge::YZero => "y=0",
            Edge::YPi => "y=pi",
            Edge::XZero => "x=0",
            Edge::XPi => "x=pi",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BcKind {
    /// Prescribes `u` on the edge.
    Dirichlet,
    /// Prescribes `u_y` on a `y` edge or `u_x` on an `x` edge.
    Neumann,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeCondition {
    pub edge: Edge,
    pub kind: BcKind,
    /// Trace over the edge's running variable (`x` on `y` edges, `y` on `x` edges).
    pub trace: FuncSpec,
}

impl EdgeCondition {
    pub fn dirichlet(edge: Edge, trace: FuncSpec) -> Self {
        EdgeCondition {
            edge,
            kind: BcKind::Dirichlet,
            trace,
        }
    }

    pub fn neumann(edge: Edge, trace: FuncSpec) -> Self {
        EdgeCondition {
            edge,
            kind: BcKind::Neumann,
            trace,
        }
    }
}

/// Exactly one condition per edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundarySpec {
    edges: Vec<EdgeCondition>,
}

impl BoundarySpec {
    pub fn new(conditions: Vec<EdgeCondition>) -> Result<Self> {
        if conditions.len() != 4 {
            return Err(DtmError::UnsupportedBoundary(format!(
                "expected four edge conditions, got {}",
                conditions.len()
            )));
        }
        let mut edges = conditions;
        edges.sort_by_key(|c| c.edge);
        for (cond, edge) in edges
            .iter()
            .zip(Edge::ALL.iter().copied().collect::<std::collections::BTreeSet<_>>())
        {
            if cond.edge != edge {
                return Err(DtmError::UnsupportedBoundary(format!(
                    "missing condition for edge {edge}"
                )));
            }
            cond.trace.validate()?;
        }
        Ok(BoundarySpec { edges })
    }

    pub fn condition(&self, edge: Edge) -> &EdgeCondition {
        self.edges
            .iter()
            .find(|c| c.edge == edge)
            .expect("validated on construction")
    }

    pub fn iter(&self) -> impl Iterator<Item = &EdgeCondition> {
        self.edges.iter()
    }
}

impl<'de> Deserialize<'de> for BoundarySpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            edges: Vec<EdgeCondition>,
        }
        let raw = Raw::deserialize(deserializer)?;
        BoundarySpec::new(raw.edges).map_err(serde::de::Error::custom)
    }
}

/// Which index the recurrence advances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MarchAxis {
    /// Seed rows `n = 0, 1`; solve for `U(m, n+2)`.
    #[serde(rename = "march-in-n")]
    InN,
    /// Seed columns `m = 0, 1`; solve for `U(m+2, n)`.
    #[serde(rename = "march-in-m")]
    InM,
}

impl MarchAxis {
    /// The edge through the origin that supplies seed data.
    pub fn origin_edge(self) -> Edge {
        match self {
            MarchAxis::InN => Edge::YZero,
            MarchAxis::InM => Edge::XZero,
        }
    }

    pub fn closure_edge(self) -> Edge {
        self.origin_edge().opposite()
    }
}

impl fmt::Display for MarchAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarchAxis::InN => "march-in-n",
            MarchAxis::InM => "march-in-m",
        })
    }
}

/// Which of the two seed layers: `0` holds values, `1` holds first derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LayerIndex {
    #[serde(rename = "0")]
    Values,
    #[serde(rename = "1")]
    Slopes,
}

impl LayerIndex {
    pub fn other(self) -> LayerIndex {
        match self {
            LayerIndex::Values => LayerIndex::Slopes,
            LayerIndex::Slopes => LayerIndex::Values,
        }
    }

    pub fn as_usize(self) -> usize {
        match self {
            LayerIndex::Values => 0,
            LayerIndex::Slopes => 1,
        }
    }
}

/// Two adjacent seed layers of a spectrum of order `order`.
///
/// For [`MarchAxis::InN`], `layer0[m] = U(m,0)` and `layer1[m] = U(m,1)`;
/// for [`MarchAxis::InM`], `layer0[n] = U(0,n)` and `layer1[n] = U(1,n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CauchySeed {
    axis: MarchAxis,
    layer0: Vec<Coefficient>,
    layer1: Vec<Coefficient>,
    order: usize,
}

impl CauchySeed {
    pub fn new(axis: MarchAxis, layer0: Vec<Coefficient>, layer1: Vec<Coefficient>, order: usize) -> Result<Self> {
        for (name, layer) in [("layer0", &layer0), ("layer1", &layer1)] {
            if layer.len() != order + 1 {
                return Err(DtmError::MalformedSeed(format!(
                    "{name} has {} entries, order {order} needs {}",
                    layer.len(),
                    order + 1
                )));
            }
        }
        Ok(CauchySeed {
            axis,
            layer0,
            layer1,
            order,
        })
    }

    pub fn zero(axis: MarchAxis, order: usize) -> Self {
        let z = vec![Coefficient::zero(); order + 1];
        CauchySeed::new(axis, z.clone(), z, order).unwrap()
    }

    pub fn axis(&self) -> MarchAxis {
        self.axis
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn layer0(&self) -> &[Coefficient] {
        &self.layer0
    }

    pub fn layer1(&self) -> &[Coefficient] {
        &self.layer1
    }

    pub fn layer(&self, index: LayerIndex) -> &[Coefficient] {
        match index {
            LayerIndex::Values => &self.layer0,
            LayerIndex::Slopes => &self.layer1,
        }
    }

    /// `alpha * self + beta * other`, for seeds on the same axis and order.
    pub fn combine(&self, alpha: &Coefficient, other: &CauchySeed, beta: &Coefficient) -> Result<CauchySeed> {
        if self.axis != other.axis || self.order != other.order {
            return Err(DtmError::MalformedSeed("combining seeds of different shape".into()));
        }
        let mix = |a: &[Coefficient], b: &[Coefficient]| a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect();
        CauchySeed::new(
            self.axis,
            mix(&self.layer0, &other.layer0),
            mix(&self.layer1, &other.layer1),
            self.order,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::taylor::LibKind;

    fn four(kind: BcKind) -> Vec<EdgeCondition> {
        Edge::ALL
            .iter()
            .map(|&edge| EdgeCondition {
                edge,
                kind,
                trace: FuncSpec::Zero,
            })
            .collect()
    }

    #[test]
    fn boundary_spec_needs_each_edge_once() {
        assert!(BoundarySpec::new(four(BcKind::Dirichlet)).is_ok());
        let mut three = four(BcKind::Dirichlet);
        three.pop();
        assert!(BoundarySpec::new(three).is_err());
        let mut dup = four(BcKind::Dirichlet);
        dup[3].edge = Edge::YZero;
        assert!(BoundarySpec::new(dup).is_err());
    }

    #[test]
    fn boundary_spec_json() {
        let text = r#"{"edges":[
            {"edge":"x=pi","kind":"dirichlet","trace":{"kind":"cos","sym_amp":"sinh_pi"}},
            {"edge":"y=0","kind":"dirichlet","trace":{"kind":"sinh"}},
            {"edge":"y=pi","kind":"dirichlet","trace":{"kind":"sinh","amplitude":"-1"}},
            {"edge":"x=0","kind":"dirichlet","trace":{"kind":"zero"}}]}"#;
        let bc: BoundarySpec = serde_json::from_str(text).unwrap();
        assert_eq!(bc.condition(Edge::YZero).trace, FuncSpec::unit(LibKind::Sinh));
        let again: BoundarySpec = serde_json::from_str(&serde_json::to_string(&bc).unwrap()).unwrap();
        assert_eq!(again, bc);
        let missing = r#"{"edges":[{"edge":"y=0","kind":"dirichlet","trace":{"kind":"zero"}}]}"#;
        assert!(serde_json::from_str::<BoundarySpec>(missing).is_err());
    }

    #[test]
    fn seed_shape_is_checked() {
        let ok = CauchySeed::new(
            MarchAxis::InN,
            vec![Coefficient::zero(); 4],
            vec![Coefficient::zero(); 4],
            3,
        );
        assert!(ok.is_ok());
        let short = CauchySeed::new(
            MarchAxis::InN,
            vec![Coefficient::zero(); 3],
            vec![Coefficient::zero(); 4],
            3,
        );
        assert!(matches!(short, Err(DtmError::MalformedSeed(_))));
    }

    #[test]
    fn edges() {
        assert_eq!(MarchAxis::InN.closure_edge(), Edge::YPi);
        assert_eq!(MarchAxis::InM.closure_edge(), Edge::XPi);
        assert_eq!(Edge::XPi.point(0.5), (std::f64::consts::PI, 0.5));
        assert_eq!(serde_json::to_string(&Edge::YPi).unwrap(), "\"y=pi\"");
    }
}
