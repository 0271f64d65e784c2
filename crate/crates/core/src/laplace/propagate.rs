//! Marching the Laplace recurrence from a Cauchy seed.

use num_bigint::BigInt;

use super::{CauchySeed, MarchAxis};
use crate::coefficient::{factorial, falling_ratio, Coefficient};
use crate::error::{DtmError, Result};
use crate::rules::{dt_add, dt_derivative};
use crate::spectrum::Spectrum2D;

/// Fills the full triangular spectrum of order `seed.order()` from its two
/// seed layers.
///
/// Marching in `n`:
/// `U(m,n+2) = -(m+1)(m+2) / ((n+1)(n+2)) * U(m+2,n)`; marching in `m` is
/// the mirror image.
pub fn propagate(seed: &CauchySeed) -> Spectrum2D {
    let order = seed.order();
    // table[i][j]: i is the marched index, j the running one
    let mut table: Vec<Vec<Coefficient>> = Vec::with_capacity(order + 1);
    for (i, layer) in [seed.layer0(), seed.layer1()].into_iter().enumerate().take(order + 1) {
        table.push(layer[..=order - i].to_vec());
    }
    for i in 2..=order {
        let prev = &table[i - 2];
        let row: Vec<Coefficient> = (0..=order - i)
            .map(|j| {
                let src = &prev[j + 2];
                if src.is_zero() {
                    return Coefficient::zero();
                }
                let num = ((j + 1) * (j + 2)) as i64;
                let den = ((i - 1) * i) as i64;
                src * &Coefficient::new(-num, den)
            })
            .collect();
        table.push(row);
    }
    let mut out = Spectrum2D::zero(order);
    for (i, row) in table.into_iter().enumerate() {
        for (j, c) in row.into_iter().enumerate() {
            let (m, n) = match seed.axis() {
                MarchAxis::InN => (j, i),
                MarchAxis::InM => (i, j),
            };
            out.set(m, n, c);
        }
    }
    out
}

/// The single entry `U(m,n)` of `propagate(seed)` via the transfer formula.
///
/// Marching in `n` with `n = 2k + p` (`p` in `{0,1}`):
/// `U(m,n) = (-1)^k (m+2k)! / (m! n!) * layer_p[m+2k]`.
pub fn propagate_closed_form(seed: &CauchySeed, m: usize, n: usize) -> Result<Coefficient> {
    if m + n > seed.order() {
        return Err(DtmError::DegreeOverflow {
            m,
            n,
            order: seed.order(),
        });
    }
    let (marched, running) = match seed.axis() {
        MarchAxis::InN => (n, m),
        MarchAxis::InM => (m, n),
    };
    let k = marched / 2;
    let layer = if marched % 2 == 0 { seed.layer0() } else { seed.layer1() };
    let source = &layer[running + 2 * k];
    if source.is_zero() {
        return Ok(Coefficient::zero());
    }
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let num = BigInt::from(sign) * BigInt::from(falling_ratio(running + 2 * k, running));
    let transfer = Coefficient::from_big(num, factorial(marched).into())?;
    Ok(transfer * source)
}

/// Spectrum of `u_xx + u_yy`, at order `s.order() - 2`.
pub fn residual_laplacian(s: &Spectrum2D) -> Result<Spectrum2D> {
    if s.order() < 2 {
        return Err(DtmError::DerivativeOrder {
            r: 2,
            s: 0,
            order: s.order(),
        });
    }
    dt_add(&dt_derivative(s, 2, 0)?, &dt_derivative(s, 0, 2)?)
}
