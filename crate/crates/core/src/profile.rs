//! n-parameter Euler characteristic profiles and canonicalization.

use crate::curve::EulerCharacteristicCurve;
use crate::error::{Error, Result};
use crate::filtration::{lex_cmp, Contribution, FiltrationVector};

/// An aggregated list of n-parameter contributions.
///
/// Contributions are stored at most once per point, never with a zero delta,
/// and in lexicographic order. The order carries no meaning beyond making the
/// representation unique.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCharacteristicProfile {
    dim: usize,
    contributions: Vec<Contribution>,
    truncation: Option<FiltrationVector>,
    cell_count: u64,
}

impl EulerCharacteristicProfile {
    /// Aggregates raw contributions of dimension `dim`.
    pub fn from_contributions(dim: usize, raw: Vec<Contribution>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("profile dimension must be >= 1".into()));
        }
        if let Some(c) = raw.iter().find(|c| c.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: c.dim(),
            });
        }
        let cell_count = raw.iter().map(|c| c.delta.unsigned_abs()).sum();
        Ok(EulerCharacteristicProfile {
            dim,
            contributions: aggregate(raw),
            truncation: None,
            cell_count,
        })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        Self::from_contributions(dim, Vec::new())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn contributions(&self) -> &[Contribution] {
        &self.contributions
    }

    pub fn len(&self) -> usize {
        self.contributions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contributions.is_empty()
    }

    pub fn truncation(&self) -> Option<&FiltrationVector> {
        self.truncation.as_ref()
    }

    /// `sum |delta|` over the raw contributions this profile was built from.
    pub fn cell_count(&self) -> u64 {
        self.cell_count
    }

    pub fn total(&self) -> i64 {
        self.contributions.iter().map(|c| c.delta).sum()
    }

    /// Attaches a truncation bound, which must be strictly above every
    /// contribution coordinate on every axis.
    pub fn truncate(mut self, bound: FiltrationVector) -> Result<Self> {
        if bound.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: bound.dim(),
            });
        }
        for c in &self.contributions {
            for (axis, (&v, &b)) in c.at.coords().iter().zip(bound.coords()).enumerate() {
                if v >= b {
                    return Err(Error::Truncation {
                        axis,
                        bound: b,
                        value: v,
                    });
                }
            }
        }
        self.truncation = Some(bound);
        Ok(self)
    }

    /// Euler characteristic at `p`: the sum of deltas over contributions
    /// whose point is `<= p` in the product order. Linear in the list length.
    pub fn euler_characteristic_at(&self, p: &FiltrationVector) -> Result<i64> {
        if p.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: p.dim(),
            });
        }
        Ok(self.euler_characteristic_at_coords(p.coords()))
    }

    pub(crate) fn euler_characteristic_at_coords(&self, p: &[f64]) -> i64 {
        self.contributions
            .iter()
            .filter(|c| c.at.coords().iter().zip(p).all(|(a, b)| a <= b))
            .map(|c| c.delta)
            .sum()
    }

    pub(crate) fn set_cell_count(&mut self, count: u64) {
        self.cell_count = count;
    }

    /// Converts a one-parameter profile into a curve.
    pub fn to_curve(&self) -> Result<EulerCharacteristicCurve> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        let pairs = self
            .contributions
            .iter()
            .map(|c| (c.at.coords()[0], c.delta))
            .collect();
        Ok(EulerCharacteristicCurve::from_pairs_unchecked(pairs).with_cell_count(self.cell_count))
    }
}

/// Sorts lexicographically, sums equal points and drops zero sums.
pub(crate) fn aggregate(mut raw: Vec<Contribution>) -> Vec<Contribution> {
    raw.sort_unstable_by(|a, b| lex_cmp(a.at.coords(), b.at.coords()));
    let mut out: Vec<Contribution> = Vec::with_capacity(raw.len());
    for c in raw {
        match out.last_mut() {
            Some(last) if last.at == c.at => last.delta += c.delta,
            _ => {
                if out.last().is_some_and(|l| l.delta == 0) {
                    out.pop();
                }
                out.push(c);
            }
        }
    }
    if out.last().is_some_and(|l| l.delta == 0) {
        out.pop();
    }
    out
}

/// The canonical form of a contribution list: a curve for one parameter,
/// a profile otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Canonical {
    Curve(EulerCharacteristicCurve),
    Profile(EulerCharacteristicProfile),
}

/// Aggregates a raw contribution list. All entries must share a dimension;
/// an empty list canonicalizes to the empty curve.
pub fn canonicalize(raw: Vec<Contribution>) -> Result<Canonical> {
    let dim = raw.first().map_or(1, Contribution::dim);
    if dim == 1 {
        EulerCharacteristicCurve::from_contributions(&raw).map(Canonical::Curve)
    } else {
        EulerCharacteristicProfile::from_contributions(dim, raw).map(Canonical::Profile)
    }
}
