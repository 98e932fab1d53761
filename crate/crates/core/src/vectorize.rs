//! Sampling curves and profiles on regular grids.

use crate::analysis::{distance_ecc, prefix_sums};
use crate::curve::EulerCharacteristicCurve;
use crate::error::{Error, Result};
use crate::profile::EulerCharacteristicProfile;

/// Evenly spaced sample points `0, Δ, 2Δ, …, f_max` with
/// `Δ = f_max / (n_samples - 1)`. The last point is `f_max` exactly.
pub fn sample_points(n_samples: usize, f_max: f64) -> Result<Vec<f64>> {
    if n_samples < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {n_samples}"
        )));
    }
    if !(f_max > 0.0 && f_max.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "sampling bound must be positive and finite, got {f_max}"
        )));
    }
    let delta = f_max / (n_samples - 1) as f64;
    let mut points: Vec<f64> = (0..n_samples).map(|i| i as f64 * delta).collect();
    points[n_samples - 1] = f_max;
    Ok(points)
}

/// The Euler characteristic at each of [`sample_points`].
pub fn vectorize_ecc(
    curve: &EulerCharacteristicCurve,
    n_samples: usize,
    f_max: f64,
) -> Result<Vec<i64>> {
    Ok(sample_points(n_samples, f_max)?
        .into_iter()
        .map(|t| curve.euler_characteristic_at(t))
        .collect())
}

/// An n-dimensional integer tensor stored row-major (last axis fastest).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EcpTensor {
    shape: Vec<usize>,
    values: Vec<i64>,
}

impl EcpTensor {
    /// Rebuilds a tensor from its flattened values.
    pub fn from_flat(shape: Vec<usize>, values: Vec<i64>) -> Result<Self> {
        let len: usize = shape.iter().product();
        if shape.is_empty() || len != values.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values do not fill shape {shape:?}",
                values.len()
            )));
        }
        Ok(EcpTensor { shape, values })
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    /// Row-major values.
    pub fn flatten(&self) -> &[i64] {
        &self.values
    }

    pub fn into_flat(self) -> Vec<i64> {
        self.values
    }

    pub fn get(&self, index: &[usize]) -> Option<i64> {
        if index.len() != self.shape.len() {
            return None;
        }
        let mut flat = 0;
        for (&i, &n) in index.iter().zip(&self.shape) {
            if i >= n {
                return None;
            }
            flat = flat * n + i;
        }
        Some(self.values[flat])
    }
}

/// Samples a profile on the grid `sample_points(samples[i], bounds[i])` per
/// axis. Entry `(k_1, …, k_n)` is the Euler characteristic at
/// `(k_1 Δ_1, …, k_n Δ_n)`.
pub fn vectorize_ecp(
    profile: &EulerCharacteristicProfile,
    samples: &[usize],
    bounds: &[f64],
) -> Result<EcpTensor> {
    let n = profile.dim();
    for len in [samples.len(), bounds.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let grids: Vec<Vec<f64>> = samples
        .iter()
        .zip(bounds)
        .map(|(&s, &b)| sample_points(s, b))
        .collect::<Result<_>>()?;

    // drop each delta at the first grid node dominating it, then sum up
    let mut values = vec![0i64; samples.iter().product()];
    'outer: for c in profile.contributions() {
        let mut flat = 0;
        for (axis, &v) in c.at.coords().iter().enumerate() {
            let k = grids[axis].partition_point(|&x| x < v);
            if k == samples[axis] {
                continue 'outer;
            }
            flat = flat * samples[axis] + k;
        }
        values[flat] += c.delta;
    }
    prefix_sums(&mut values, samples);
    Ok(EcpTensor {
        shape: samples.to_vec(),
        values,
    })
}

/// Exact L1 error of a curve's vectorization together with the bound
/// `Δ (|K| / 2 + F)`, where `F` sums the absolute differences of
/// consecutive samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VectorizationError {
    pub measured: f64,
    pub bound: f64,
}

impl VectorizationError {
    pub fn holds(&self) -> bool {
        self.measured <= self.bound
    }
}

/// The vectorization is read back as a step function, constant on each
/// `[iΔ, (i+1)Δ)`, and compared with the curve on `(-inf, f_max]`.
pub fn vectorization_error_bound(
    curve: &EulerCharacteristicCurve,
    n_samples: usize,
    f_max: f64,
) -> Result<VectorizationError> {
    let cells = curve.cell_count().ok_or(Error::MissingCellCount)?;
    let points = sample_points(n_samples, f_max)?;
    let values: Vec<i64> = points.iter().map(|&t| curve.euler_characteristic_at(t)).collect();
    let steps = EulerCharacteristicCurve::from_steps(&points, &values)?;
    let measured = distance_ecc(curve, &steps, Some(f_max))?;
    let variation: u64 = values.windows(2).map(|w| (w[1] - w[0]).unsigned_abs()).sum();
    let delta = f_max / (n_samples - 1) as f64;
    Ok(VectorizationError {
        measured,
        bound: delta * (cells as f64 / 2.0 + variation as f64),
    })
}
