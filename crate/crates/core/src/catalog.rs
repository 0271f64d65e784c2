//! The four shipped boundary-value models on `(0,pi)^2`.
//!
//! | model    | boundary data                                              | solution          |
//! |----------|------------------------------------------------------------|-------------------|
//! | example1 | `u(x,0)=sinh x`, `u(x,pi)=-sinh x`, `u(0,y)=0`, `u(pi,y)=sinh(pi) cos y` | `sinh x cos y` |
//! | example2 | `u(x,0)=0`, `u(x,pi)=0`, `u(0,y)=sin y`, `u(pi,y)=cosh(pi) sin y` | `cosh x sin y` |
//! | example3 | `u_y(x,0)=0`, `u_y(x,pi)=2 cos 2x sinh 2pi`, `u_x(0,y)=u_x(pi,y)=0` | `cos 2x cosh 2y` |
//! | example4 | `u_y(x,0)=cos x`, `u_y(x,pi)=cosh(pi) cos x`, `u_x(0,y)=u_x(pi,y)=0` | `cos x sinh y` |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};
use crate::laplace::{BoundarySpec, Edge, EdgeCondition, LayerIndex};
use crate::spectrum::Spectrum2D;
use crate::taylor::{FuncSpec, LibKind, SymAmp};
use crate::verify::ReferenceSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogModel {
    Example1,
    Example2,
    Example3,
    Example4,
}

impl CatalogModel {
    pub const ALL: [CatalogModel; 4] = [
        CatalogModel::Example1,
        CatalogModel::Example2,
        CatalogModel::Example3,
        CatalogModel::Example4,
    ];

    pub fn from_number(k: u32) -> Option<Self> {
        match k {
            1 => Some(CatalogModel::Example1),
            2 => Some(CatalogModel::Example2),
            3 => Some(CatalogModel::Example3),
            4 => Some(CatalogModel::Example4),
            _ => None,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            CatalogModel::Example1 => "example1",
            CatalogModel::Example2 => "example2",
            CatalogModel::Example3 => "example3",
            CatalogModel::Example4 => "example4",
        }
    }

    /// Order at which the truncation tail is far below `1e-8` on `[0,pi]^2`.
    /// Example 3's series arguments reach `4 pi`, so it needs more terms.
    pub fn default_order(self) -> usize {
        match self {
            CatalogModel::Example3 => 60,
            _ => 36,
        }
    }

    pub fn convergence_orders(self) -> [usize; 4] {
        match self {
            CatalogModel::Example3 => [24, 36, 48, 60],
            _ => [12, 20, 28, 36],
        }
    }

    pub fn reference(self) -> ReferenceSolution {
        match self {
            CatalogModel::Example1 => ReferenceSolution::SinhXCosY,
            CatalogModel::Example2 => ReferenceSolution::CoshXSinY,
            CatalogModel::Example3 => ReferenceSolution::Cos2XCosh2Y,
            CatalogModel::Example4 => ReferenceSolution::CosXSinhY,
        }
    }

    pub fn boundary_spec(self) -> BoundarySpec {
        let r = |n: i64| Coefficient::from_integer(n);
        let lib = |kind, scale: i64, amp: i64| FuncSpec::library(kind, r(scale), r(amp));
        use Edge::*;
        use LibKind::*;
        let conditions = match self {
            CatalogModel::Example1 => vec![
                EdgeCondition::dirichlet(YZero, lib(Sinh, 1, 1)),
                EdgeCondition::dirichlet(YPi, lib(Sinh, 1, -1)),
                EdgeCondition::dirichlet(XZero, FuncSpec::Zero),
                EdgeCondition::dirichlet(XPi, lib(Cos, 1, 1).with_sym_amp(SymAmp::SinhPi)),
            ],
            CatalogModel::Example2 => vec![
                EdgeCondition::dirichlet(YZero, FuncSpec::Zero),
                EdgeCondition::dirichlet(YPi, FuncSpec::Zero),
                EdgeCondition::dirichlet(XZero, lib(Sin, 1, 1)),
                EdgeCondition::dirichlet(XPi, lib(Sin, 1, 1).with_sym_amp(SymAmp::CoshPi)),
            ],
            CatalogModel::Example3 => vec![
                EdgeCondition::neumann(YZero, FuncSpec::Zero),
                EdgeCondition::neumann(YPi, lib(Cos, 2, 2).with_sym_amp(SymAmp::SinhTwoPi)),
                EdgeCondition::neumann(XZero, FuncSpec::Zero),
                EdgeCondition::neumann(XPi, FuncSpec::Zero),
            ],
            CatalogModel::Example4 => vec![
                EdgeCondition::neumann(YZero, lib(Cos, 1, 1)),
                EdgeCondition::neumann(YPi, lib(Cos, 1, 1).with_sym_amp(SymAmp::CoshPi)),
                EdgeCondition::neumann(XZero, FuncSpec::Zero),
                EdgeCondition::neumann(XPi, FuncSpec::Zero),
            ],
        };
        BoundarySpec::new(conditions).expect("catalog models have four edges")
    }

    /// The closed-form spectrum, enumerated over `m + n <= order`
    /// straight from its formula (independent of any propagation).
    pub fn formula_spectrum(self, order: usize) -> Spectrum2D {
        let sign = |k: usize| Coefficient::from_integer(if k.is_multiple_of(2) { 1 } else { -1 });
        let base = |m: usize, n: usize| Coefficient::inv_factorial(m) * Coefficient::inv_factorial(n);
        Spectrum2D::from_fn(order, |m, n| match self {
            // (-1)^{n/2} / (m! n!), m odd, n even
            CatalogModel::Example1 if m % 2 == 1 && n % 2 == 0 => sign(n / 2) * base(m, n),
            // (-1)^{(n-1)/2} / (m! n!), m even, n odd
            CatalogModel::Example2 if m % 2 == 0 && n % 2 == 1 => sign((n - 1) / 2) * base(m, n),
            // (-1)^{m/2} 2^{m+n} / (m! n!), m and n even
            CatalogModel::Example3 if m % 2 == 0 && n % 2 == 0 => {
                sign(m / 2) * Coefficient::from_integer(2).pow((m + n) as i32) * base(m, n)
            }
            // (-1)^{m/2} / (m! n!), m even, n odd
            CatalogModel::Example4 if m % 2 == 0 && n % 2 == 1 => sign(m / 2) * base(m, n),
            _ => Coefficient::zero(),
        })
    }

    /// The seed layer each model has to infer, and its exact values:
    /// zero for examples 1, 2 and 4, the `cos 2x` row for example 3.
    pub fn expected_missing_layer(self, order: usize) -> (LayerIndex, Vec<Coefficient>) {
        let formula = self.formula_spectrum(order);
        match self {
            CatalogModel::Example1 => (LayerIndex::Slopes, (0..=order).map(|m| formula.get(m, 1)).collect()),
            CatalogModel::Example2 => (LayerIndex::Slopes, (0..=order).map(|n| formula.get(1, n)).collect()),
            CatalogModel::Example3 | CatalogModel::Example4 => {
                (LayerIndex::Values, (0..=order).map(|m| formula.get(m, 0)).collect())
            }
        }
    }
}

impl fmt::Display for CatalogModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for CatalogModel {
    type Err = DtmError;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let number = t.strip_prefix("example").unwrap_or(&t);
        number
            .parse::<u32>()
            .ok()
            .and_then(CatalogModel::from_number)
            .ok_or_else(|| {
                DtmError::Parse(format!(
                    "unknown model {s:?}; valid choices: 1, 2, 3, 4 (example1..example4)"
                ))
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_values() {
        assert_eq!(
            CatalogModel::Example1.formula_spectrum(6).get(1, 2),
            Coefficient::new(-1, 2)
        );
        assert_eq!(
            CatalogModel::Example3.formula_spectrum(8).get(2, 2),
            Coefficient::from_integer(-4)
        );
        assert_eq!(
            CatalogModel::Example4.formula_spectrum(6).get(0, 3),
            Coefficient::new(1, 6)
        );
        assert_eq!(
            CatalogModel::Example2.formula_spectrum(4).get(2, 1),
            Coefficient::new(1, 2)
        );
    }

    #[test]
    fn boundary_traces_match_references() {
        use crate::laplace::BcKind;
        for model in CatalogModel::ALL {
            let bc = model.boundary_spec();
            let r = model.reference();
            for cond in bc.iter() {
                for i in 0..=10 {
                    let t = std::f64::consts::PI * i as f64 / 10.0;
                    let (x, y) = cond.edge.point(t);
                    let h = 1e-5;
                    let value = match cond.kind {
                        BcKind::Dirichlet => r.eval(x, y),
                        BcKind::Neumann => match cond.edge {
                            Edge::YZero | Edge::YPi => (r.eval(x, y + h) - r.eval(x, y - h)) / (2.0 * h),
                            Edge::XZero | Edge::XPi => (r.eval(x + h, y) - r.eval(x - h, y)) / (2.0 * h),
                        },
                    };
                    assert!((value - cond.trace.eval(t)).abs() < 1e-5, "{model} {}", cond.edge);
                }
            }
        }
    }

    #[test]
    fn parse_models() {
        assert_eq!("2".parse::<CatalogModel>().unwrap(), CatalogModel::Example2);
        assert_eq!("example4".parse::<CatalogModel>().unwrap(), CatalogModel::Example4);
        let err = "5".parse::<CatalogModel>().unwrap_err().to_string();
        assert!(err.contains("1, 2, 3, 4"));
    }
}
