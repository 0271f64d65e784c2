//! Triangular two-dimensional spectra.
//!
//! A [`Spectrum2D`] holds the transformed coefficients `U(m,n)` of a function
//! of two variables for all `m + n <= order`, expanded about `origin`.
//! Storage is sparse: absent keys are zero and zero is never stored, so two
//! spectra are equal exactly when their stored maps are equal.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coefficient::Coefficient;
use crate::error::{DtmError, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum2D {
    order: usize,
    origin: (f64, f64),
    entries: BTreeMap<(usize, usize), Coefficient>,
}

impl Spectrum2D {
    /// The zero spectrum at the given order, expanded at `(0,0)`.
    pub fn zero(order: usize) -> Self {
        Spectrum2D {
            order,
            origin: (0.0, 0.0),
            entries: BTreeMap::new(),
        }
    }

    /// Builds a canonical spectrum; zero entries are dropped.
    pub fn new<I>(order: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Coefficient)>,
    {
        let mut seen = BTreeMap::new();
        for (m, n, c) in entries {
            if m + n > order {
                return Err(DtmError::DegreeOverflow { m, n, order });
            }
            if seen.insert((m, n), c).is_some() {
                return Err(DtmError::DuplicateKey { m, n });
            }
        }
        seen.retain(|_, c| !c.is_zero());
        Ok(Spectrum2D {
            order,
            origin: (0.0, 0.0),
            entries: seen,
        })
    }

    pub fn with_origin(mut self, origin: (f64, f64)) -> Self {
        self.origin = origin;
        self
    }

    /// Builds `U(m,n) = f(m,n)` over the whole triangle.
    pub fn from_fn<F>(order: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> Coefficient,
    {
        let mut s = Spectrum2D::zero(order);
        for m in 0..=order {
            for n in 0..=order - m {
                s.set(m, n, f(m, n));
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn origin(&self) -> (f64, f64) {
        self.origin
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// `U(m,n)`; zero when absent or outside the triangle.
    pub fn get(&self, m: usize, n: usize) -> Coefficient {
        self.entries.get(&(m, n)).cloned().unwrap_or_else(Coefficient::zero)
    }

    pub fn get_ref(&self, m: usize, n: usize) -> Option<&Coefficient> {
        self.entries.get(&(m, n))
    }

    /// Nonzero entries in lexicographic `(m,n)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Coefficient)> {
        self.entries.iter().map(|(&(m, n), c)| (m, n, c))
    }

    pub(crate) fn set(&mut self, m: usize, n: usize, c: Coefficient) {
        debug_assert!(m + n <= self.order);
        if c.is_zero() {
            self.entries.remove(&(m, n));
        } else {
            self.entries.insert((m, n), c);
        }
    }

    pub fn truncate(&self, new_order: usize) -> Result<Self> {
        if new_order > self.order {
            return Err(DtmError::TruncationOrder {
                order: self.order,
                requested: new_order,
            });
        }
        Ok(Spectrum2D {
            order: new_order,
            origin: self.origin,
            entries: self
                .entries
                .iter()
                .filter(|(&(m, n), _)| m + n <= new_order)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        })
    }

    /// Dense float copy: `rows[m][n] = U(m,n)` for `m + n <= order`.
    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        let mut rows: Vec<Vec<f64>> = (0..=self.order).map(|m| vec![0.0; self.order - m + 1]).collect();
        for (m, n, c) in self.iter() {
            rows[m][n] = c.to_f64();
        }
        rows
    }

    pub(crate) fn check_compatible(&self, other: &Spectrum2D) -> Result<()> {
        if self.order != other.order {
            return Err(DtmError::OrderMismatch {
                left: self.order,
                right: other.order,
            });
        }
        if self.origin != other.origin {
            return Err(DtmError::OriginMismatch {
                left: self.origin,
                right: other.origin,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            order: self.order,
            origin: [self.origin.0, self.origin.1],
            entries: self.iter().map(|(m, n, c)| (m, n, c.clone())).collect(),
        }
    }

    pub fn from_json(json: SpectrumJson) -> Result<Self> {
        Ok(Spectrum2D::new(json.order, json.entries)?.with_origin((json.origin[0], json.origin[1])))
    }
}

/// Wire form: `{"order": N, "origin": [x0,y0], "entries": [[m,n,"p/q"], ...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub order: usize,
    pub origin: [f64; 2],
    pub entries: Vec<(usize, usize, Coefficient)>,
}

impl Serialize for Spectrum2D {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Spectrum2D {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = SpectrumJson::deserialize(deserializer)?;
        Spectrum2D::from_json(json).map_err(serde::de::Error::custom)
    }
}
