//! Boundary-trace descriptors and their Taylor coefficients at zero.
//!
//! The function library is closed: `sin`, `cos`, `sinh`, `cosh`, `exp` of a
//! rationally scaled argument, explicit polynomials, zero, and finite sums of
//! these. Irrational constants such as `sinh(pi)` ride along as a
//! [`SymAmp`] token and are never folded into exact coefficients.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};
use crate::spectrum::Spectrum2D;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LibKind {
    Sin,
    Cos,
    Sinh,
    Cosh,
    Exp,
}

impl LibKind {
    /// Taylor coefficient `k` of the unscaled function at zero.
    fn base_coeff(self, k: usize) -> Coefficient {
        let odd = k % 2 == 1;
        let alternating = |j: usize| if j.is_multiple_of(2) { 1 } else { -1 };
        let sign = match self {
            LibKind::Sin if odd => alternating((k - 1) / 2),
            LibKind::Cos if !odd => alternating(k / 2),
            LibKind::Sinh if odd => 1,
            LibKind::Cosh if !odd => 1,
            LibKind::Exp => 1,
            _ => return Coefficient::zero(),
        };
        Coefficient::from_integer(sign) * Coefficient::inv_factorial(k)
    }

    fn eval(self, t: f64) -> f64 {
        match self {
            LibKind::Sin => t.sin(),
            LibKind::Cos => t.cos(),
            LibKind::Sinh => t.sinh(),
            LibKind::Cosh => t.cosh(),
            LibKind::Exp => t.exp(),
        }
    }

    /// Sign of `f'' = sign * b^2 * f` for this kind at scale `b`.
    pub fn curvature_sign(self) -> i64 {
        match self {
            LibKind::Sin | LibKind::Cos => -1,
            LibKind::Sinh | LibKind::Cosh | LibKind::Exp => 1,
        }
    }

    /// `(kind', factor)` with `d/dt f(bt) = factor * b * kind'(bt)`.
    fn derivative(self) -> (LibKind, i64) {
        match self {
            LibKind::Sin => (LibKind::Cos, 1),
            LibKind::Cos => (LibKind::Sin, -1),
            LibKind::Sinh => (LibKind::Cosh, 1),
            LibKind::Cosh => (LibKind::Sinh, 1),
            LibKind::Exp => (LibKind::Exp, 1),
        }
    }
}

/// Irrational amplitude tokens that appear in boundary data.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SymAmp {
    #[default]
    #[serde(rename = "none", alias = "1")]
    One,
    #[serde(rename = "sinh_pi")]
    SinhPi,
    #[serde(rename = "cosh_pi")]
    CoshPi,
    #[serde(rename = "sinh_2pi")]
    SinhTwoPi,
    #[serde(rename = "cosh_2pi")]
    CoshTwoPi,
}

impl SymAmp {
    pub fn value(self) -> f64 {
        use std::f64::consts::PI;
        match self {
            SymAmp::One => 1.0,
            SymAmp::SinhPi => PI.sinh(),
            SymAmp::CoshPi => PI.cosh(),
            SymAmp::SinhTwoPi => (2.0 * PI).sinh(),
            SymAmp::CoshTwoPi => (2.0 * PI).cosh(),
        }
    }
}

impl fmt::Display for SymAmp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SymAmp::One => "1",
            SymAmp::SinhPi => "sinh(pi)",
            SymAmp::CoshPi => "cosh(pi)",
            SymAmp::SinhTwoPi => "sinh(2pi)",
            SymAmp::CoshTwoPi => "cosh(2pi)",
        })
    }
}

/// A one-dimensional trace `t -> f(t)` from the closed library.
#[derive(Clone, Debug, PartialEq)]
pub enum FuncSpec {
    Zero,
    /// `amplitude * sym_amp * kind(arg_scale * t)`
    Library {
        kind: LibKind,
        arg_scale: Coefficient,
        amplitude: Coefficient,
        sym_amp: SymAmp,
    },
    /// `amplitude * sym_amp * sum_k coeffs[k] (arg_scale * t)^k`
    Polynomial {
        coeffs: Vec<Coefficient>,
        arg_scale: Coefficient,
        amplitude: Coefficient,
        sym_amp: SymAmp,
    },
    Sum(Vec<FuncSpec>),
}

impl FuncSpec {
    pub fn library(kind: LibKind, arg_scale: Coefficient, amplitude: Coefficient) -> Self {
        FuncSpec::Library {
            kind,
            arg_scale,
            amplitude,
            sym_amp: SymAmp::One,
        }
    }

    /// `kind(t)` with unit scale and amplitude.
    pub fn unit(kind: LibKind) -> Self {
        FuncSpec::library(kind, Coefficient::one(), Coefficient::one())
    }

    pub fn polynomial(coeffs: Vec<Coefficient>) -> Result<Self> {
        let f = FuncSpec::Polynomial {
            coeffs,
            arg_scale: Coefficient::one(),
            amplitude: Coefficient::one(),
            sym_amp: SymAmp::One,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn with_sym_amp(mut self, token: SymAmp) -> Self {
        match &mut self {
            FuncSpec::Library { sym_amp, .. } | FuncSpec::Polynomial { sym_amp, .. } => *sym_amp = token,
            FuncSpec::Zero | FuncSpec::Sum(_) => {}
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FuncSpec::Polynomial { coeffs, .. } if coeffs.is_empty() => Err(DtmError::InvalidFuncSpec(
                "polynomial kind needs nonempty poly_coeffs".into(),
            )),
            FuncSpec::Sum(terms) => terms.iter().try_for_each(FuncSpec::validate),
            _ => Ok(()),
        }
    }

    /// True when the trace is identically zero by construction.
    pub fn is_zero(&self) -> bool {
        match self {
            FuncSpec::Zero => true,
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                ..
            } => amplitude.is_zero() || (arg_scale.is_zero() && matches!(kind, LibKind::Sin | LibKind::Sinh)),
            FuncSpec::Polynomial { coeffs, amplitude, .. } => {
                amplitude.is_zero() || coeffs.iter().all(Coefficient::is_zero)
            }
            FuncSpec::Sum(terms) => terms.iter().all(FuncSpec::is_zero),
        }
    }

    /// True when some term carries an irrational amplitude token.
    pub fn has_symbolic_amplitude(&self) -> bool {
        match self {
            FuncSpec::Zero => false,
            FuncSpec::Library { sym_amp, .. } | FuncSpec::Polynomial { sym_amp, .. } => *sym_amp != SymAmp::One,
            FuncSpec::Sum(terms) => terms.iter().any(FuncSpec::has_symbolic_amplitude),
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            FuncSpec::Zero => 0.0,
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                sym_amp,
            } => amplitude.to_f64() * sym_amp.value() * kind.eval(arg_scale.to_f64() * t),
            FuncSpec::Polynomial {
                coeffs,
                arg_scale,
                amplitude,
                sym_amp,
            } => {
                let s = arg_scale.to_f64() * t;
                let p = coeffs.iter().rev().fold(0.0, |acc, c| acc * s + c.to_f64());
                amplitude.to_f64() * sym_amp.value() * p
            }
            FuncSpec::Sum(terms) => terms.iter().map(|f| f.eval(t)).sum(),
        }
    }

    /// The derivative trace `f'`.
    pub fn derivative(&self) -> FuncSpec {
        match self {
            FuncSpec::Zero => FuncSpec::Zero,
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                sym_amp,
            } => {
                let (dkind, sign) = kind.derivative();
                FuncSpec::Library {
                    kind: dkind,
                    arg_scale: arg_scale.clone(),
                    amplitude: amplitude * arg_scale * Coefficient::from_integer(sign),
                    sym_amp: *sym_amp,
                }
            }
            FuncSpec::Polynomial {
                coeffs,
                arg_scale,
                amplitude,
                sym_amp,
            } => {
                if coeffs.len() <= 1 {
                    return FuncSpec::Zero;
                }
                let d = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(k, c)| c * &Coefficient::from(k as i64))
                    .collect();
                FuncSpec::Polynomial {
                    coeffs: d,
                    arg_scale: arg_scale.clone(),
                    amplitude: amplitude * arg_scale,
                    sym_amp: *sym_amp,
                }
            }
            FuncSpec::Sum(terms) => FuncSpec::Sum(terms.iter().map(FuncSpec::derivative).collect()),
        }
    }

    /// Flattens nested sums into library and polynomial terms.
    pub fn terms(&self) -> Vec<&FuncSpec> {
        let mut out = Vec::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut Vec<&'a FuncSpec>) {
        match self {
            FuncSpec::Zero => {}
            FuncSpec::Sum(terms) => terms.iter().for_each(|t| t.collect_terms(out)),
            _ => out.push(self),
        }
    }
}

/// Exact Taylor coefficients `f^(k)(0)/k!` for `k = 0..=order`.
///
/// Fails when a term carries an irrational amplitude token; those traces
/// only enter float-side code through [`taylor_coeffs_f64`].
pub fn taylor_coeffs(f: &FuncSpec, order: usize) -> Result<Vec<Coefficient>> {
    if f.has_symbolic_amplitude() {
        return Err(DtmError::InvalidFuncSpec(
            "trace with an irrational amplitude has no exact Taylor coefficients".into(),
        ));
    }
    f.validate()?;
    let mut out = vec![Coefficient::zero(); order + 1];
    for term in f.terms() {
        accumulate_term(term, order, &mut out);
    }
    Ok(out)
}

fn accumulate_term(term: &FuncSpec, order: usize, out: &mut [Coefficient]) {
    match term {
        FuncSpec::Library {
            kind,
            arg_scale,
            amplitude,
            ..
        } => {
            let mut scale_pow = amplitude.clone();
            for (k, slot) in out.iter_mut().enumerate().take(order + 1) {
                if k > 0 {
                    scale_pow *= arg_scale;
                }
                let base = kind.base_coeff(k);
                if !base.is_zero() {
                    *slot += &scale_pow * &base;
                }
            }
        }
        FuncSpec::Polynomial {
            coeffs,
            arg_scale,
            amplitude,
            ..
        } => {
            let mut scale_pow = amplitude.clone();
            for (k, p) in coeffs.iter().enumerate().take(order + 1) {
                if k > 0 {
                    scale_pow *= arg_scale;
                }
                out[k] += &scale_pow * p;
            }
        }
        FuncSpec::Zero | FuncSpec::Sum(_) => unreachable!("terms() flattens sums"),
    }
}

/// Float Taylor coefficients with amplitude tokens resolved.
pub fn taylor_coeffs_f64(f: &FuncSpec, order: usize) -> Vec<f64> {
    let mut out = vec![0.0; order + 1];
    for term in f.terms() {
        let (unit, token) = match term {
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                sym_amp,
            } => (
                FuncSpec::Library {
                    kind: *kind,
                    arg_scale: arg_scale.clone(),
                    amplitude: amplitude.clone(),
                    sym_amp: SymAmp::One,
                },
                sym_amp.value(),
            ),
            FuncSpec::Polynomial {
                coeffs,
                arg_scale,
                amplitude,
                sym_amp,
            } => (
                FuncSpec::Polynomial {
                    coeffs: coeffs.clone(),
                    arg_scale: arg_scale.clone(),
                    amplitude: amplitude.clone(),
                    sym_amp: SymAmp::One,
                },
                sym_amp.value(),
            ),
            _ => unreachable!(),
        };
        let mut exact = vec![Coefficient::zero(); order + 1];
        accumulate_term(&unit, order, &mut exact);
        for (slot, c) in out.iter_mut().zip(&exact) {
            *slot += token * c.to_f64();
        }
    }
    out
}

/// The separable spectrum `U(m,n) = F(m) G(n)` for `m + n <= order`.
pub fn outer_product(f: &[Coefficient], g: &[Coefficient], order: usize) -> Result<Spectrum2D> {
    for list in [f, g] {
        if list.len() < order + 1 {
            return Err(DtmError::ShortCoefficients {
                needed: order + 1,
                got: list.len(),
            });
        }
    }
    Ok(Spectrum2D::from_fn(order, |m, n| {
        if f[m].is_zero() || g[n].is_zero() {
            Coefficient::zero()
        } else {
            &f[m] * &g[n]
        }
    }))
}

// ---------------------------------------------------------------------------
// JSON form: {"kind":"sin","arg_scale":"2/1","amplitude":"1/1","sym_amp":"none"},
// {"kind":"polynomial","poly_coeffs":[...]}, {"kind":"zero"}, {"terms":[...]}.

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFuncSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    arg_scale: Option<Coefficient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    amplitude: Option<Coefficient>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sym_amp: Option<SymAmp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    poly_coeffs: Option<Vec<Coefficient>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    terms: Option<Vec<FuncSpec>>,
}

impl Serialize for FuncSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = match self {
            FuncSpec::Zero => RawFuncSpec {
                kind: Some("zero".into()),
                arg_scale: None,
                amplitude: None,
                sym_amp: None,
                poly_coeffs: None,
                terms: None,
            },
            FuncSpec::Library {
                kind,
                arg_scale,
                amplitude,
                sym_amp,
            } => RawFuncSpec {
                kind: Some(serde_json::to_value(kind).unwrap().as_str().unwrap().to_owned()),
                arg_scale: Some(arg_scale.clone()),
                amplitude: Some(amplitude.clone()),
                sym_amp: Some(*sym_amp),
                poly_coeffs: None,
                terms: None,
            },
            FuncSpec::Polynomial {
                coeffs,
                arg_scale,
                amplitude,
                sym_amp,
            } => RawFuncSpec {
                kind: Some("polynomial".into()),
                arg_scale: Some(arg_scale.clone()),
                amplitude: Some(amplitude.clone()),
                sym_amp: Some(*sym_amp),
                poly_coeffs: Some(coeffs.clone()),
                terms: None,
            },
            FuncSpec::Sum(terms) => RawFuncSpec {
                kind: None,
                arg_scale: None,
                amplitude: None,
                sym_amp: None,
                poly_coeffs: None,
                terms: Some(terms.clone()),
            },
        };
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FuncSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let raw = RawFuncSpec::deserialize(deserializer)?;
        let scale = raw.arg_scale.unwrap_or_else(Coefficient::one);
        let amplitude = raw.amplitude.unwrap_or_else(Coefficient::one);
        let sym_amp = raw.sym_amp.unwrap_or_default();
        let spec = match (raw.kind.as_deref(), raw.terms) {
            (None, Some(terms)) => FuncSpec::Sum(terms),
            (Some(_), Some(_)) => return Err(D::Error::custom("a sum (\"terms\") takes no \"kind\"")),
            (None, None) => return Err(D::Error::custom("missing field `kind` (or `terms`)")),
            (Some("zero"), None) => FuncSpec::Zero,
            (Some("polynomial"), None) => FuncSpec::Polynomial {
                coeffs: raw
                    .poly_coeffs
                    .ok_or_else(|| D::Error::custom("polynomial kind needs `poly_coeffs`"))?,
                arg_scale: scale,
                amplitude,
                sym_amp,
            },
            (Some(name), None) => {
                if raw.poly_coeffs.is_some() {
                    return Err(D::Error::custom(format!(
                        "`poly_coeffs` is only valid for kind polynomial, not {name}"
                    )));
                }
                let kind: LibKind =
                    serde_json::from_value(serde_json::Value::String(name.to_owned())).map_err(|_| {
                        D::Error::custom(format!(
                            "unknown kind {name:?}; expected one of sin, cos, sinh, cosh, exp, polynomial, zero"
                        ))
                    })?;
                FuncSpec::Library {
                    kind,
                    arg_scale: scale,
                    amplitude,
                    sym_amp,
                }
            }
        };
        spec.validate().map_err(D::Error::custom)?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(n: i64, d: i64) -> Coefficient {
        Coefficient::new(n, d)
    }

    fn scaled(kind: LibKind, b: i64) -> FuncSpec {
        FuncSpec::library(kind, c(b, 1), c(1, 1))
    }

    #[test]
    fn library_series() {
        let sinh = taylor_coeffs(&FuncSpec::unit(LibKind::Sinh), 5).unwrap();
        assert_eq!(sinh, vec![c(0, 1), c(1, 1), c(0, 1), c(1, 6), c(0, 1), c(1, 120)]);
        let sin = taylor_coeffs(&FuncSpec::unit(LibKind::Sin), 5).unwrap();
        assert_eq!(sin, vec![c(0, 1), c(1, 1), c(0, 1), c(-1, 6), c(0, 1), c(1, 120)]);
        let cos2 = taylor_coeffs(&scaled(LibKind::Cos, 2), 4).unwrap();
        assert_eq!(cos2, vec![c(1, 1), c(0, 1), c(-2, 1), c(0, 1), c(2, 3)]);
        let exp = taylor_coeffs(&FuncSpec::unit(LibKind::Exp), 3).unwrap();
        assert_eq!(exp, vec![c(1, 1), c(1, 1), c(1, 2), c(1, 6)]);
        assert_eq!(taylor_coeffs(&FuncSpec::Zero, 2).unwrap(), vec![Coefficient::zero(); 3]);
    }

    #[test]
    fn amplitude_and_polynomials() {
        let f = FuncSpec::library(LibKind::Cosh, c(1, 2), c(3, 1));
        assert_eq!(taylor_coeffs(&f, 2).unwrap(), vec![c(3, 1), c(0, 1), c(3, 8)]);
        let p = FuncSpec::Polynomial {
            coeffs: vec![c(1, 1), c(2, 1), c(0, 1), c(5, 1)],
            arg_scale: c(2, 1),
            amplitude: c(1, 2),
            sym_amp: SymAmp::One,
        };
        // (1/2)(1 + 2(2t) + 5(2t)^3), truncated at t^2
        assert_eq!(taylor_coeffs(&p, 2).unwrap(), vec![c(1, 2), c(2, 1), c(0, 1)]);
        assert_eq!(taylor_coeffs(&p, 4).unwrap()[3], c(20, 1));
    }

    #[test]
    fn symbolic_amplitude_stays_out_of_exact_path() {
        let f = FuncSpec::unit(LibKind::Sin).with_sym_amp(SymAmp::CoshPi);
        assert!(taylor_coeffs(&f, 3).is_err());
        let approx = taylor_coeffs_f64(&f, 3);
        assert!((approx[1] - std::f64::consts::PI.cosh()).abs() < 1e-12);
        assert!((f.eval(0.5) - 0.5f64.sin() * std::f64::consts::PI.cosh()).abs() < 1e-12);
    }

    #[test]
    fn outer_products() {
        let f = taylor_coeffs(&FuncSpec::unit(LibKind::Sinh), 4).unwrap();
        let g = taylor_coeffs(&FuncSpec::unit(LibKind::Cos), 4).unwrap();
        let s = outer_product(&f, &g, 4).unwrap();
        for (m, n, v) in s.iter() {
            assert!(m % 2 == 1 && n % 2 == 0);
            let sign = if (n / 2) % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                v,
                &(Coefficient::from_integer(sign) * Coefficient::inv_factorial(m) * Coefficient::inv_factorial(n))
            );
        }
        assert_eq!(s.len(), 3);

        let unit = vec![c(1, 1), c(0, 1), c(0, 1), c(0, 1)];
        let g = vec![c(1, 1), c(2, 1), c(3, 1), c(4, 1)];
        let col = outer_product(&unit, &g, 3).unwrap();
        for (n, gn) in g.iter().enumerate() {
            assert_eq!(&col.get(0, n), gn);
        }
        assert_eq!(col.len(), 4);

        let f = taylor_coeffs(&scaled(LibKind::Cos, 2), 4).unwrap();
        let g = taylor_coeffs(&scaled(LibKind::Cosh, 2), 4).unwrap();
        assert_eq!(outer_product(&f, &g, 4).unwrap().get(2, 2), c(-4, 1));

        assert!(matches!(
            outer_product(&unit, &g, 5),
            Err(DtmError::ShortCoefficients { needed: 6, got: 4 })
        ));
    }

    #[test]
    fn json_forms() {
        let f: FuncSpec =
            serde_json::from_str(r#"{"kind":"sin","arg_scale":"2/1","amplitude":"1/1","sym_amp":"none"}"#).unwrap();
        assert_eq!(f, scaled(LibKind::Sin, 2));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"sin","arg_scale":"2/1","amplitude":"1/1","sym_amp":"none"}"#
        );

        let sum: FuncSpec = serde_json::from_str(
            r#"{"terms":[{"kind":"cos","sym_amp":"cosh_pi"},{"kind":"polynomial","poly_coeffs":["0","1/2"]},{"kind":"zero"}]}"#,
        )
        .unwrap();
        assert_eq!(sum.terms().len(), 2);
        let back: FuncSpec = serde_json::from_str(&serde_json::to_string(&sum).unwrap()).unwrap();
        assert_eq!(back, sum);

        for bad in [
            r#"{"kind":"tan"}"#,
            r#"{"kind":"polynomial"}"#,
            r#"{"kind":"polynomial","poly_coeffs":[]}"#,
            r#"{"kind":"sin","poly_coeffs":["1"]}"#,
            r#"{"kind":"sin","extra":1}"#,
            r#"{"amplitude":"1"}"#,
        ] {
            assert!(serde_json::from_str::<FuncSpec>(bad).is_err(), "{bad}");
        }
    }

    fn arb_term() -> impl Strategy<Value = FuncSpec> {
        let kind = prop_oneof![
            Just(LibKind::Sin),
            Just(LibKind::Cos),
            Just(LibKind::Sinh),
            Just(LibKind::Cosh),
            Just(LibKind::Exp)
        ];
        let lib = (kind, -3i64..=3, 1i64..=3, -5i64..=5, 1i64..=4)
            .prop_map(|(k, bn, bd, an, ad)| FuncSpec::library(k, c(bn, bd), c(an, ad)));
        let poly = (proptest::collection::vec((-5i64..=5, 1i64..=4), 1..5), -2i64..=2).prop_map(|(cs, b)| {
            FuncSpec::Polynomial {
                coeffs: cs.into_iter().map(|(p, q)| c(p, q)).collect(),
                arg_scale: c(b, 1),
                amplitude: c(1, 1),
                sym_amp: SymAmp::One,
            }
        });
        prop_oneof![3 => lib, 1 => poly]
    }

    proptest! {
        #[test]
        fn coefficients_are_linear(f in arb_term(), g in arb_term(), a in -4i64..4, b in -4i64..4) {
            let order = 8;
            let weighted = |h: &FuncSpec, w: i64| match h.clone() {
                FuncSpec::Library { kind, arg_scale, amplitude, sym_amp } =>
                    FuncSpec::Library { kind, arg_scale, amplitude: amplitude * Coefficient::from(w), sym_amp },
                FuncSpec::Polynomial { coeffs, arg_scale, amplitude, sym_amp } =>
                    FuncSpec::Polynomial { coeffs, arg_scale, amplitude: amplitude * Coefficient::from(w), sym_amp },
                other => other,
            };
            let combined = FuncSpec::Sum(vec![weighted(&f, a), weighted(&g, b)]);
            let lhs = taylor_coeffs(&combined, order).unwrap();
            let cf = taylor_coeffs(&f, order).unwrap();
            let cg = taylor_coeffs(&g, order).unwrap();
            for k in 0..=order {
                prop_assert_eq!(&lhs[k], &(&cf[k] * &Coefficient::from(a) + &cg[k] * &Coefficient::from(b)));
            }
        }

        #[test]
        fn shifted_coefficients_match_derivative(f in arb_term()) {
            let order = 10;
            let cf = taylor_coeffs(&f, order + 1).unwrap();
            let df = taylor_coeffs(&f.derivative(), order).unwrap();
            for k in 0..=order {
                prop_assert_eq!(&df[k], &(&cf[k + 1] * &Coefficient::from((k + 1) as i64)));
            }
        }

        #[test]
        fn outer_product_has_rank_one(fs in proptest::collection::vec((-6i64..6, 1i64..5), 7), gs in proptest::collection::vec((-6i64..6, 1i64..5), 7)) {
            let f: Vec<_> = fs.into_iter().map(|(p, q)| c(p, q)).collect();
            let g: Vec<_> = gs.into_iter().map(|(p, q)| c(p, q)).collect();
            let s = outer_product(&f, &g, 6).unwrap();
            for m in 0..=6 { for n in 0..=6 - m { for m2 in 0..=6 { for n2 in 0..=6 - m2 {
                if m + n2 <= 6 && m2 + n <= 6 {
                    let minor = s.get(m, n) * s.get(m2, n2) - s.get(m, n2) * s.get(m2, n);
                    prop_assert!(minor.is_zero());
                }
            }}}}
        }
    }

    #[test]
    fn truncated_series_match_platform_functions() {
        let cases = [LibKind::Sin, LibKind::Cos, LibKind::Sinh, LibKind::Cosh, LibKind::Exp];
        for kind in cases {
            let f = FuncSpec::unit(kind);
            let coeffs = taylor_coeffs(&f, 20).unwrap();
            for t in [0.1, 0.5, 1.0] {
                let approx = coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64());
                assert!((approx - f.eval(t)).abs() < 1e-12, "{kind:?} at {t}");
            }
        }
    }
}
