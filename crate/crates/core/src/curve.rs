//! One-parameter Euler characteristic curves.

use crate::error::{Error, Result};
use crate::filtration::Contribution;

/// A canonical Euler characteristic curve: strictly increasing jump points,
/// nonzero jumps, and the running Euler characteristic at each jump.
///
/// Immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct EulerCharacteristicCurve {
    jumps: Vec<f64>,
    deltas: Vec<i64>,
    prefix: Vec<i64>,
    cell_count: Option<u64>,
}

impl EulerCharacteristicCurve {
    /// Aggregates raw one-parameter contributions into a canonical curve.
    ///
    /// Records `sum |delta|` of the raw input as the cell count, which is the
    /// number of cells when the input has one `±1` entry per cell.
    pub fn from_contributions(raw: &[Contribution]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(raw.len());
        for c in raw {
            if c.dim() != 1 {
                return Err(Error::DimensionMismatch {
                    expected: 1,
                    found: c.dim(),
                });
            }
            pairs.push((c.at.coords()[0], c.delta));
        }
        let cell_count = pairs.iter().map(|(_, d)| d.unsigned_abs()).sum();
        Ok(Self::from_pairs_unchecked(pairs).with_cell_count(cell_count))
    }

    /// Same as [`from_contributions`](Self::from_contributions) for plain
    /// `(filtration, delta)` pairs. Rejects non-finite filtrations.
    pub fn from_pairs(pairs: Vec<(f64, i64)>) -> Result<Self> {
        if let Some(&(value, _)) = pairs.iter().find(|(f, _)| !f.is_finite()) {
            return Err(Error::NonFinite { axis: 0, value });
        }
        let cell_count = pairs.iter().map(|(_, d)| d.unsigned_abs()).sum();
        Ok(Self::from_pairs_unchecked(pairs).with_cell_count(cell_count))
    }

    pub(crate) fn from_pairs_unchecked(mut pairs: Vec<(f64, i64)>) -> Self {
        for p in pairs.iter_mut() {
            p.0 += 0.0;
        }
        pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
        let mut jumps = Vec::new();
        let mut deltas = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let f = pairs[i].0;
            let mut sum = 0i64;
            while i < pairs.len() && pairs[i].0 == f {
                sum += pairs[i].1;
                i += 1;
            }
            if sum != 0 {
                jumps.push(f);
                deltas.push(sum);
            }
        }
        let prefix = deltas
            .iter()
            .scan(0i64, |acc, d| {
                *acc += d;
                Some(*acc)
            })
            .collect();
        EulerCharacteristicCurve {
            jumps,
            deltas,
            prefix,
            cell_count: None,
        }
    }

    /// Builds a curve from step values: the Euler characteristic equals
    /// `values[i]` on `[points[i], points[i + 1])` and 0 before `points[0]`.
    /// The result carries no cell count.
    pub fn from_steps(points: &[f64], values: &[i64]) -> Result<Self> {
        if points.len() != values.len() {
            return Err(Error::DimensionMismatch {
                expected: points.len(),
                found: values.len(),
            });
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(
                "step points must be strictly increasing".into(),
            ));
        }
        let mut previous = 0;
        let mut pairs = Vec::with_capacity(points.len());
        for (&t, &v) in points.iter().zip(values) {
            if !t.is_finite() {
                return Err(Error::NonFinite { axis: 0, value: t });
            }
            pairs.push((t, v - previous));
            previous = v;
        }
        Ok(Self::from_pairs_unchecked(pairs))
    }

    pub(crate) fn with_cell_count(mut self, count: u64) -> Self {
        self.cell_count = Some(count);
        self
    }

    pub fn empty() -> Self {
        Self::from_pairs_unchecked(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.jumps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.jumps.is_empty()
    }

    pub fn jumps(&self) -> &[f64] {
        &self.jumps
    }

    pub fn deltas(&self) -> &[i64] {
        &self.deltas
    }

    /// Running Euler characteristic at each jump point.
    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// Iterates `(jump, running EC)` pairs.
    pub fn steps(&self) -> impl Iterator<Item = (f64, i64)> + '_ {
        self.jumps.iter().copied().zip(self.prefix.iter().copied())
    }

    pub fn contributions(&self) -> impl Iterator<Item = Contribution> + '_ {
        self.jumps
            .iter()
            .zip(&self.deltas)
            .map(|(&f, &d)| Contribution::scalar(f, d))
    }

    /// Number of cells recorded at canonicalization, if known.
    pub fn cell_count(&self) -> Option<u64> {
        self.cell_count
    }

    /// Euler characteristic for `t` past every jump.
    pub fn final_value(&self) -> i64 {
        self.prefix.last().copied().unwrap_or(0)
    }

    /// Euler characteristic of the sublevel set at `t`: the sum of all jumps
    /// at filtration `<= t`. Zero before the first jump (and for NaN).
    pub fn euler_characteristic_at(&self, t: f64) -> i64 {
        match self.last_jump_at_or_before(t) {
            Some(i) => self.prefix[i],
            None => 0,
        }
    }

    /// Index of the largest jump `<= t`.
    ///
    /// Interpolation search, falling back to bisection after `2 log2(n)`
    /// probes so that clustered jump points cannot degrade to linear time.
    fn last_jump_at_or_before(&self, t: f64) -> Option<usize> {
        let f = &self.jumps;
        let n = f.len();
        if n == 0 || !(t >= f[0]) {
            return None;
        }
        if t >= f[n - 1] {
            return Some(n - 1);
        }
        // invariant: f[lo] <= t < f[hi]
        let (mut lo, mut hi) = (0usize, n - 1);
        let budget = 2 * (usize::BITS - n.leading_zeros()) as usize;
        let mut probes = 0;
        while hi - lo > 1 {
            let mid = if probes < budget {
                let span = f[hi] - f[lo];
                let frac = (t - f[lo]) / span;
                let guess = lo as f64 + frac * (hi - lo) as f64;
                if guess.is_finite() {
                    (guess as usize).clamp(lo + 1, hi - 1)
                } else {
                    lo + (hi - lo) / 2
                }
            } else {
                lo + (hi - lo) / 2
            };
            probes += 1;
            if f[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(lo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(pairs: &[(f64, i64)]) -> EulerCharacteristicCurve {
        EulerCharacteristicCurve::from_pairs(pairs.to_vec()).unwrap()
    }

    #[test]
    fn aggregates_equal_filtrations() {
        let c = curve(&[(0.0, 1), (0.0, 1), (1.0, -1)]);
        assert_eq!(c.jumps(), &[0.0, 1.0]);
        assert_eq!(c.deltas(), &[2, -1]);
        assert_eq!(c.prefix(), &[2, 1]);
        assert_eq!(c.cell_count(), Some(3));
    }

    #[test]
    fn zero_sum_points_are_dropped() {
        let c = curve(&[(0.0, 1), (0.0, -1)]);
        assert!(c.is_empty());
        for t in [-1.0, 0.0, 5.0] {
            assert_eq!(c.euler_characteristic_at(t), 0);
        }
    }

    #[test]
    fn lookup_examples() {
        let c = curve(&[(0.0, 1), (1.0, 1), (2.0, -1)]);
        assert_eq!(c.euler_characteristic_at(0.5), 1);
        assert_eq!(c.euler_characteristic_at(1.5), 2);
        assert_eq!(c.euler_characteristic_at(-1.0), 0);
        assert_eq!(c.euler_characteristic_at(1.0), 2);
        assert_eq!(c.euler_characteristic_at(f64::INFINITY), 1);
        assert_eq!(c.euler_characteristic_at(f64::NEG_INFINITY), 0);
        assert_eq!(c.euler_characteristic_at(f64::NAN), 0);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let raw = vec![Contribution::new(
            crate::FiltrationVector::new([0.0, 1.0]).unwrap(),
            1,
        )];
        assert!(matches!(
            EulerCharacteristicCurve::from_contributions(&raw),
            Err(Error::DimensionMismatch { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn steps_round_trip() {
        let c = EulerCharacteristicCurve::from_steps(&[0.0, 1.0, 2.0], &[3, 3, 1]).unwrap();
        assert_eq!(c.jumps(), &[0.0, 2.0]);
        assert_eq!(c.euler_characteristic_at(1.5), 3);
        assert_eq!(c.euler_characteristic_at(2.0), 1);
        assert_eq!(c.cell_count(), None);
        assert!(EulerCharacteristicCurve::from_steps(&[1.0, 1.0], &[0, 1]).is_err());
    }

    #[test]
    fn clustered_jumps_still_found() {
        // geometric spacing defeats interpolation; the bisection fallback
        // must still land on the right index
        let pairs: Vec<_> = (0..2000).map(|i| (1.1f64.powi(i), 1)).collect();
        let c = curve(&pairs);
        for i in [0, 1, 7, 500, 1999] {
            let t = 1.1f64.powi(i);
            assert_eq!(c.euler_characteristic_at(t), i as i64 + 1);
        }
    }

    fn naive(pairs: &[(f64, i64)], t: f64) -> i64 {
        pairs.iter().filter(|(f, _)| *f <= t).map(|(_, d)| d).sum()
    }

    proptest! {
        #[test]
        fn lookup_matches_linear_scan(
            pairs in prop::collection::vec((-50i32..50, -3i64..=3), 0..200),
            queries in prop::collection::vec(-60.0f64..60.0, 1000),
        ) {
            let pairs: Vec<(f64, i64)> = pairs.into_iter().map(|(f, d)| (f as f64 * 0.5, d)).collect();
            let c = curve(&pairs);
            for t in queries {
                prop_assert_eq!(c.euler_characteristic_at(t), naive(&pairs, t));
            }
            for &(f, _) in &pairs {
                prop_assert_eq!(c.euler_characteristic_at(f), naive(&pairs, f));
            }
        }

        #[test]
        fn canonicalization_is_permutation_invariant_and_idempotent(
            pairs in prop::collection::vec((0i32..20, -2i64..=2), 0..60),
            seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let pairs: Vec<(f64, i64)> = pairs.into_iter().map(|(f, d)| (f as f64, d)).collect();
            let a = curve(&pairs);
            let mut shuffled = pairs.clone();
            shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let b = curve(&shuffled);
            prop_assert_eq!(&a, &b);
            let again: Vec<Contribution> = a.contributions().collect();
            let c = EulerCharacteristicCurve::from_contributions(&again).unwrap();
            prop_assert_eq!(a.jumps(), c.jumps());
            prop_assert_eq!(a.prefix(), c.prefix());
            let total: i64 = pairs.iter().map(|p| p.1).sum();
            prop_assert_eq!(a.final_value(), total);
        }
    }
}
