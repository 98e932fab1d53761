//! Contributions of cells born at several incomparable filtration points.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::filtration::{cell_sign, lex_cmp, Contribution, FiltrationVector};

/// A cell of dimension `dim` entering the filtration at each of `births`.
#[derive(Clone, Debug, PartialEq)]
pub struct MulticriticalCell {
    dim: usize,
    births: Vec<FiltrationVector>,
}

impl MulticriticalCell {
    /// Births must be nonempty, of one dimension and pairwise incomparable.
    pub fn new(dim: usize, births: Vec<FiltrationVector>) -> Result<Self> {
        let Some(first) = births.first() else {
            return Err(Error::InvalidParameter("a cell needs at least one birth".into()));
        };
        let n = first.dim();
        if let Some(b) = births.iter().find(|b| b.dim() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.dim(),
            });
        }
        for i in 0..births.len() {
            for j in i + 1..births.len() {
                if births[i].comparable(&births[j]) {
                    return Err(Error::ComparableBirths { first: i, second: j });
                }
            }
        }
        Ok(MulticriticalCell { dim, births })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn births(&self) -> &[FiltrationVector] {
        &self.births
    }
}

/// Coordinatewise maximum.
pub fn join(u: &FiltrationVector, v: &FiltrationVector) -> Result<FiltrationVector> {
    u.join(v)
}

/// Contributions whose sum over `{at <= x}` is `(-1)^dim` when `x` dominates
/// some birth and 0 otherwise.
///
/// Every join of a subset of births is a candidate point. Pairwise joins
/// are queued first in `(i, j)` order, then joins of three or more births;
/// a point is resolved once every strictly smaller candidate has been, and
/// its value is `(-1)^dim` minus the values below it. Zero values are
/// dropped from the output.
pub fn expand_multicritical(cell: &MulticriticalCell) -> Vec<Contribution> {
    let sign = cell_sign(cell.dim);
    let births = &cell.births;
    if births.len() == 1 {
        return vec![Contribution::new(births[0].clone(), sign)];
    }

    let mut resolved: HashMap<FiltrationVector, i64> =
        births.iter().map(|b| (b.clone(), sign)).collect();
    let mut order: Vec<FiltrationVector> = births.clone();

    let mut candidates: Vec<FiltrationVector> = Vec::new();
    let mut seen: HashSet<FiltrationVector> = births.iter().cloned().collect();
    for i in 0..births.len() {
        for j in i + 1..births.len() {
            let p = births[i].join(&births[j]).expect("births share a dimension");
            if seen.insert(p.clone()) {
                candidates.push(p);
            }
        }
    }
    // joins of more than two births are joins of pairwise joins with births
    let mut start = 0;
    while start < candidates.len() {
        let end = candidates.len();
        for c in start..end {
            for b in births {
                let p = candidates[c].join(b).expect("births share a dimension");
                if seen.insert(p.clone()) {
                    candidates.push(p);
                }
            }
        }
        start = end;
    }

    let all: Vec<FiltrationVector> = seen.into_iter().collect();
    let mut queue: VecDeque<FiltrationVector> = candidates.into();
    while let Some(p) = queue.pop_front() {
        let below: Vec<&FiltrationVector> = all.iter().filter(|q| q.lt(&p)).collect();
        if below.iter().all(|q| resolved.contains_key(*q)) {
            let c: i64 = below.iter().map(|q| resolved[*q]).sum();
            resolved.insert(p.clone(), sign - c);
            order.push(p);
        } else {
            queue.push_back(p);
        }
    }

    let mut out: Vec<Contribution> = order
        .into_iter()
        .filter_map(|p| {
            let delta = resolved[&p];
            (delta != 0).then(|| Contribution::new(p, delta))
        })
        .collect();
    out.sort_by(|a, b| lex_cmp(a.at.coords(), b.at.coords()));
    out
}
