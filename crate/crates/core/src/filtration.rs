//! Filtration points and the contributions attached to them.
//!
//! A [`Contribution`] records that the Euler characteristic changes by
//! `delta` on the up-cone of a point of `R^n`. Every compute routine in this
//! crate produces a list of them, one per cell.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A point of `R^n` at which cells enter a (multi)filtration.
///
/// Coordinates are finite, and `-0.0` is stored as `0.0` so that equality,
/// hashing and the lexicographic order all agree.
#[derive(Clone, PartialEq)]
pub struct FiltrationVector(SmallVec<[f64; 2]>);

impl FiltrationVector {
    pub fn new(coords: impl IntoIterator<Item = f64>) -> Result<Self> {
        let coords: SmallVec<[f64; 2]> = coords.into_iter().map(|c| c + 0.0).collect();
        if coords.is_empty() {
            return Err(Error::InvalidParameter(
                "a filtration vector needs at least one coordinate".into(),
            ));
        }
        if let Some((axis, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { axis, value });
        }
        Ok(FiltrationVector(coords))
    }

    /// One-parameter point.
    pub fn scalar(value: f64) -> Result<Self> {
        Self::new([value])
    }

    /// Skips validation. Callers guarantee finite, non-empty, `-0.0`-free input.
    pub(crate) fn from_normalized(coords: &[f64]) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        FiltrationVector(coords.iter().map(|c| c + 0.0).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    /// Product order: `self <= other` on every axis.
    pub fn le(&self, other: &Self) -> bool {
        dominated_by(&self.0, &other.0)
    }

    /// Strict product order: `self <= other` and `self != other`.
    pub fn lt(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    pub fn comparable(&self, other: &Self) -> bool {
        self.le(other) || other.le(self)
    }

    /// Coordinatewise maximum.
    pub fn join(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(FiltrationVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a.max(*b)).collect(),
        ))
    }

    /// Total lexicographic order used for canonical storage.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        lex_cmp(&self.0, &other.0)
    }
}

impl fmt::Debug for FiltrationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("FiltrationVector").field(&&self.0[..]).finish()
    }
}

impl fmt::Display for FiltrationVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Eq for FiltrationVector {}

impl std::hash::Hash for FiltrationVector {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        for c in &self.0 {
            c.to_bits().hash(state);
        }
    }
}

pub(crate) fn dominated_by(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub(crate) fn lex_cmp(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// A signed change of the Euler characteristic appearing at `at`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Contribution {
    pub at: FiltrationVector,
    pub delta: i64,
}

impl Contribution {
    pub fn new(at: FiltrationVector, delta: i64) -> Self {
        Contribution { at, delta }
    }

    /// One-parameter contribution. Panics on a non-finite value.
    pub fn scalar(at: f64, delta: i64) -> Self {
        Contribution {
            at: FiltrationVector::scalar(at).expect("finite filtration value"),
            delta,
        }
    }

    /// The contribution of a single cell of the given dimension.
    pub fn of_cell(at: FiltrationVector, dim: usize) -> Self {
        Contribution {
            at,
            delta: cell_sign(dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.at.dim()
    }
}

/// `(-1)^dim`.
#[inline]
pub fn cell_sign(dim: usize) -> i64 {
    if dim % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(c: &[f64]) -> FiltrationVector {
        FiltrationVector::new(c.iter().copied()).unwrap()
    }

    #[test]
    fn rejects_non_finite_and_empty() {
        assert!(matches!(
            FiltrationVector::new([0.0, f64::INFINITY]),
            Err(Error::NonFinite { axis: 1, .. })
        ));
        assert!(FiltrationVector::new([f64::NAN]).is_err());
        assert!(FiltrationVector::new(std::iter::empty()).is_err());
    }

    #[test]
    fn negative_zero_is_normalized() {
        assert_eq!(fv(&[-0.0]), fv(&[0.0]));
        assert_eq!(fv(&[-0.0]).lex_cmp(&fv(&[0.0])), Ordering::Equal);
        assert!(fv(&[-0.0]).coords()[0].is_sign_positive());
    }

    #[test]
    fn product_order() {
        assert!(fv(&[0.0, 0.0]).le(&fv(&[1.0, 1.0])));
        assert!(!fv(&[0.0, 0.0]).le(&fv(&[1.0, -1.0])));
        assert!(!fv(&[1.0, 0.0]).comparable(&fv(&[0.0, 1.0])));
        assert!(fv(&[1.0, 1.0]).le(&fv(&[1.0, 1.0])));
        assert!(!fv(&[1.0, 1.0]).lt(&fv(&[1.0, 1.0])));
    }

    #[test]
    fn join_examples() {
        assert_eq!(fv(&[1.0, 0.0]).join(&fv(&[0.0, 1.0])).unwrap(), fv(&[1.0, 1.0]));
        let u = fv(&[3.0, -2.0, 0.5]);
        assert_eq!(u.join(&u).unwrap(), u);
        assert_eq!(fv(&[0.0, 2.0]).join(&fv(&[2.0, 0.0])).unwrap(), fv(&[2.0, 2.0]));
        assert!(matches!(
            fv(&[0.0]).join(&fv(&[0.0, 1.0])),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn signs() {
        assert_eq!(cell_sign(0), 1);
        assert_eq!(cell_sign(1), -1);
        assert_eq!(cell_sign(4), 1);
    }
}
