//! Independent oracles and generators shared by the integration tests.
//!
//! The oracles treat a spectrum as an ordinary bivariate polynomial
//! `sum c_ij x^i y^j` and compute with it directly, without any of the
//! transform rules.

#![allow(dead_code)]

use std::collections::BTreeMap;

use dtm_core::{CauchySeed, Coefficient, MarchAxis, Spectrum2D};
use proptest::prelude::*;

pub type Poly = BTreeMap<(usize, usize), Coefficient>;

pub fn to_poly(s: &Spectrum2D) -> Poly {
    s.iter().map(|(m, n, c)| ((m, n), c.clone())).collect()
}

fn add_term(p: &mut Poly, key: (usize, usize), c: Coefficient) {
    let slot = p.entry(key).or_insert_with(Coefficient::zero);
    *slot += c;
    if slot.is_zero() {
        p.remove(&key);
    }
}

/// `p q` with every term of total degree above `order` dropped.
pub fn poly_mul(p: &Poly, q: &Poly, order: usize) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), a) in p {
        for (&(k, l), b) in q {
            if i + j + k + l <= order {
                add_term(&mut out, (i + k, j + l), a * b);
            }
        }
    }
    out
}

/// `d^{r+s} p / dx^r dy^s` by the power rule.
pub fn poly_diff(p: &Poly, r: usize, s: usize) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), c) in p {
        if i < r || j < s {
            continue;
        }
        let mut factor = 1i64;
        for t in 0..r {
            factor *= (i - t) as i64;
        }
        for t in 0..s {
            factor *= (j - t) as i64;
        }
        add_term(&mut out, (i - r, j - s), Coefficient::from_integer(factor) * c);
    }
    out
}

pub fn poly_scale(p: &Poly, a: &Coefficient) -> Poly {
    let mut out = Poly::new();
    for (&k, c) in p {
        add_term(&mut out, k, a * c);
    }
    out
}

pub fn poly_add(p: &Poly, q: &Poly) -> Poly {
    let mut out = p.clone();
    for (&k, c) in q {
        add_term(&mut out, k, c.clone());
    }
    out
}

/// `exp(a v)` for `v(0,0) = 0` as `sum_{j <= order} (a v)^j / j!`.
pub fn exp_oracle(v: &Poly, a: &Coefficient, order: usize) -> Poly {
    let av = poly_scale(v, a);
    let mut power = Poly::from([((0, 0), Coefficient::one())]);
    let mut sum = power.clone();
    for j in 1..=order {
        power = poly_scale(&poly_mul(&power, &av, order), &Coefficient::new(1, j as i64));
        sum = poly_add(&sum, &power);
    }
    sum
}

pub fn poly_spectrum(p: &Poly, order: usize) -> Spectrum2D {
    Spectrum2D::from_fn(order, |m, n| p.get(&(m, n)).cloned().unwrap_or_else(Coefficient::zero))
}

pub fn rational() -> impl Strategy<Value = Coefficient> {
    (-9i64..=9, 1i64..=7).prop_map(|(p, q)| Coefficient::new(p, q))
}

pub fn nonzero_rational() -> impl Strategy<Value = Coefficient> {
    rational().prop_filter("nonzero", |c| !c.is_zero())
}

/// A sparse random spectrum of exactly `order`.
pub fn spectrum_of(order: usize) -> impl Strategy<Value = Spectrum2D> {
    proptest::collection::vec((0..=order, 0..=order, rational()), 0..=12).prop_map(move |terms| {
        let mut p = Poly::new();
        for (m, n, c) in terms {
            if m + n <= order {
                add_term(&mut p, (m, n), c);
            }
        }
        poly_spectrum(&p, order)
    })
}

pub fn spectrum(max_order: usize) -> impl Strategy<Value = Spectrum2D> {
    (0..=max_order).prop_flat_map(spectrum_of)
}

pub fn spectrum_pair(max_order: usize) -> impl Strategy<Value = (Spectrum2D, Spectrum2D)> {
    (0..=max_order).prop_flat_map(|n| (spectrum_of(n), spectrum_of(n)))
}

pub fn spectrum_triple(max_order: usize) -> impl Strategy<Value = (Spectrum2D, Spectrum2D, Spectrum2D)> {
    (0..=max_order).prop_flat_map(|n| (spectrum_of(n), spectrum_of(n), spectrum_of(n)))
}

/// Same as [`spectrum_of`] with the constant term removed.
pub fn spectrum_vanishing_at_origin(max_order: usize) -> impl Strategy<Value = Spectrum2D> {
    spectrum(max_order).prop_map(|s| {
        let order = s.order();
        Spectrum2D::from_fn(order, |m, n| {
            if (m, n) == (0, 0) {
                Coefficient::zero()
            } else {
                s.get(m, n)
            }
        })
    })
}

pub fn axis() -> impl Strategy<Value = MarchAxis> {
    prop_oneof![Just(MarchAxis::InN), Just(MarchAxis::InM)]
}

pub fn seed(max_order: usize) -> impl Strategy<Value = CauchySeed> {
    (axis(), 0..=max_order).prop_flat_map(|(axis, order)| {
        let layer = || proptest::collection::vec(rational(), order + 1);
        (layer(), layer()).prop_map(move |(l0, l1)| CauchySeed::new(axis, l0, l1, order).unwrap())
    })
}
