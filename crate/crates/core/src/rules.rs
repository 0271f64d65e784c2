//! The differential transform algebra.
//!
//! Each function maps the spectra of its operands to the spectrum of the
//! combined function, at the operands' shared truncation order. Nothing here
//! evaluates a function; everything is exact rational arithmetic on
//! coefficients.

use crate::coefficient::{falling_ratio, Coefficient};
use crate::error::{DtmError, Result};
use crate::spectrum::Spectrum2D;

/// `u = v + w`
pub fn dt_add(v: &Spectrum2D, w: &Spectrum2D) -> Result<Spectrum2D> {
    v.check_compatible(w)?;
    let mut out = v.clone();
    for (m, n, c) in w.iter() {
        out.set(m, n, v.get(m, n) + c);
    }
    Ok(out)
}

/// `u = v - w`
pub fn dt_sub(v: &Spectrum2D, w: &Spectrum2D) -> Result<Spectrum2D> {
    dt_add(v, &dt_scale(&Coefficient::from_integer(-1), w))
}

/// `u = a v`
pub fn dt_scale(a: &Coefficient, v: &Spectrum2D) -> Spectrum2D {
    let mut out = Spectrum2D::zero(v.order()).with_origin(v.origin());
    if a.is_zero() {
        return out;
    }
    for (m, n, c) in v.iter() {
        out.set(m, n, a * c);
    }
    out
}

/// `u = v w`, as `U(m,n) = sum_k sum_l V(k, n-l) W(m-k, l)`.
///
/// Only sparse terms of `v` and `w` are visited; products landing above the
/// shared order are never formed.
pub fn dt_product(v: &Spectrum2D, w: &Spectrum2D) -> Result<Spectrum2D> {
    v.check_compatible(w)?;
    let order = v.order();
    let mut out = Spectrum2D::zero(order).with_origin(v.origin());
    for m in 0..=order {
        for n in 0..=order - m {
            let mut acc = Coefficient::zero();
            for k in 0..=m {
                for l in 0..=n {
                    if let (Some(a), Some(b)) = (v.get_ref(k, n - l), w.get_ref(m - k, l)) {
                        acc += a * b;
                    }
                }
            }
            out.set(m, n, acc);
        }
    }
    Ok(out)
}

/// `u = d^{r+s} v / dx^r dy^s`, at order `v.order - r - s`.
pub fn dt_derivative(v: &Spectrum2D, r: usize, s: usize) -> Result<Spectrum2D> {
    if r + s > v.order() {
        return Err(DtmError::DerivativeOrder { r, s, order: v.order() });
    }
    let order = v.order() - r - s;
    let mut out = Spectrum2D::zero(order).with_origin(v.origin());
    for (m, n, c) in v.iter() {
        if m < r || n < s {
            continue;
        }
        let (mm, nn) = (m - r, n - s);
        let factor = Coefficient::from(falling_ratio(m, mm) * falling_ratio(n, nn));
        out.set(mm, nn, factor * c);
    }
    Ok(out)
}

/// The spectrum of `exp(a v)`.
///
/// `prefactor_exponent` holds `a v(0,0)`: the true spectrum is
/// `exp(prefactor_exponent) * spectrum`, and the prefactor is only projected
/// to a float on request.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpSpectrum {
    pub spectrum: Spectrum2D,
    pub prefactor_exponent: Coefficient,
}

impl ExpSpectrum {
    pub fn is_exact(&self) -> bool {
        self.prefactor_exponent.is_zero()
    }

    pub fn prefactor(&self) -> f64 {
        self.prefactor_exponent.to_f64().exp()
    }
}

/// `u = exp(a v)`.
///
/// With `U(0,0) = 1` (after splitting off `exp(a v(0,0))`), entries with
/// `m >= 1` use
/// `U(m,n) = a sum_{k<m} sum_{l<=n} (m-k)/m V(m-k,l) U(k,n-l)`
/// and the `m = 0` column uses
/// `U(0,n) = a sum_{l<n} (n-l)/n V(0,n-l) U(0,l)`.
pub fn dt_exp(v: &Spectrum2D, a: &Coefficient) -> ExpSpectrum {
    let order = v.order();
    let v00 = v.get(0, 0);
    let mut shifted = v.clone();
    shifted.set(0, 0, Coefficient::zero());

    let mut out = Spectrum2D::zero(order).with_origin(v.origin());
    out.set(0, 0, Coefficient::one());
    // column m = 0 first; every m >= 1 entry reads only columns k < m
    for n in 1..=order {
        out.set(0, n, exp_n_branch(&shifted, &out, a, 0, n));
    }
    for m in 1..=order {
        for n in 0..=order - m {
            out.set(m, n, exp_m_branch(&shifted, &out, a, m, n));
        }
    }
    ExpSpectrum {
        spectrum: out,
        prefactor_exponent: a * &v00,
    }
}

/// The `m >= 1` recurrence of the exponential rule, evaluated against a
/// (partially) filled result `u`.
pub fn exp_m_branch(v: &Spectrum2D, u: &Spectrum2D, a: &Coefficient, m: usize, n: usize) -> Coefficient {
    assert!(m >= 1);
    let mut acc = Coefficient::zero();
    for k in 0..m {
        for l in 0..=n {
            if let (Some(vv), Some(uu)) = (v.get_ref(m - k, l), u.get_ref(k, n - l)) {
                acc += Coefficient::from((m - k) as i64) * vv * uu;
            }
        }
    }
    a * &acc / Coefficient::from(m as i64)
}

/// The `n >= 1` recurrence of the exponential rule.
pub fn exp_n_branch(v: &Spectrum2D, u: &Spectrum2D, a: &Coefficient, m: usize, n: usize) -> Coefficient {
    assert!(n >= 1);
    let mut acc = Coefficient::zero();
    for k in 0..=m {
        for l in 0..n {
            if let (Some(vv), Some(uu)) = (v.get_ref(k, n - l), u.get_ref(m - k, l)) {
                acc += Coefficient::from((n - l) as i64) * vv * uu;
            }
        }
    }
    a * &acc / Coefficient::from(n as i64)
}

/// `u = x^k y^h`
pub fn dt_monomial(k: usize, h: usize, order: usize) -> Result<Spectrum2D> {
    Spectrum2D::new(order, [(k, h, Coefficient::one())])
}

/// `u = x^k exp(a y)`: `U(k,n) = a^n / n!`.
pub fn dt_monomial_exp(k: usize, a: &Coefficient, order: usize) -> Result<Spectrum2D> {
    if k > order {
        return Err(DtmError::DegreeOverflow { m: k, n: 0, order });
    }
    let mut out = Spectrum2D::zero(order);
    let mut term = Coefficient::one();
    for n in 0..=order - k {
        if n > 0 {
            term = term * a / Coefficient::from(n as i64);
        }
        out.set(k, n, term.clone());
    }
    Ok(out)
}
