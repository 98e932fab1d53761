//! Flat-array entry points for foreign callers.
//!
//! Inputs are contiguous row-major slices plus their shapes; outputs are
//! owned flat vectors. Results match the CLI on the same inputs.

use crate::analysis::{distance_ecc, distance_ecp};
use crate::cubical::{compute_contributions_cubical, Image};
use crate::curve::EulerCharacteristicCurve;
use crate::error::{Error, Result};
use crate::filtration::{Contribution, FiltrationVector};
use crate::profile::{canonicalize, Canonical, EulerCharacteristicProfile};
use crate::vectorize::{vectorize_ecc, vectorize_ecp};
use crate::vr::{compute_contributions_vr, compute_curve_vr, PointCloud};

/// A canonical contribution list as a `len x dim` coordinate matrix and a
/// delta vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ContributionArrays {
    pub dim: usize,
    pub coords: Vec<f64>,
    pub deltas: Vec<i64>,
}

impl ContributionArrays {
    pub fn from_canonical(c: &Canonical) -> Self {
        match c {
            Canonical::Curve(curve) => ContributionArrays {
                dim: 1,
                coords: curve.jumps().to_vec(),
                deltas: curve.deltas().to_vec(),
            },
            Canonical::Profile(p) => ContributionArrays {
                dim: p.dim(),
                coords: p.contributions().iter().flat_map(|c| c.at.coords().to_vec()).collect(),
                deltas: p.contributions().iter().map(|c| c.delta).collect(),
            },
        }
    }

    pub fn len(&self) -> usize {
        self.deltas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deltas.is_empty()
    }

    pub fn to_contributions(&self) -> Result<Vec<Contribution>> {
        if self.dim == 0 || self.coords.len() != self.dim * self.deltas.len() {
            return Err(Error::InvalidParameter(format!(
                "{} coordinates do not match {} deltas of dimension {}",
                self.coords.len(),
                self.deltas.len(),
                self.dim
            )));
        }
        self.coords
            .chunks_exact(self.dim)
            .zip(&self.deltas)
            .map(|(c, &d)| Ok(Contribution::new(FiltrationVector::new(c.iter().copied())?, d)))
            .collect()
    }

    fn curve(&self) -> Result<EulerCharacteristicCurve> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: self.dim,
            });
        }
        EulerCharacteristicCurve::from_contributions(&self.to_contributions()?)
    }

    fn profile(&self) -> Result<EulerCharacteristicProfile> {
        EulerCharacteristicProfile::from_contributions(self.dim, self.to_contributions()?)
    }
}

fn canonical(raw: Vec<Contribution>, dim: usize) -> Result<ContributionArrays> {
    if raw.is_empty() {
        return Ok(ContributionArrays {
            dim,
            coords: Vec::new(),
            deltas: Vec::new(),
        });
    }
    Ok(ContributionArrays::from_canonical(&canonicalize(raw)?))
}

/// Canonical Vietoris-Rips contributions of an `n x d` point matrix.
pub fn vr_contributions(
    points: &[f64],
    d: usize,
    t_max: f64,
    workers: usize,
) -> Result<ContributionArrays> {
    let cloud = PointCloud::from_flat(points.to_vec(), d)?;
    canonical(compute_contributions_vr(&cloud, t_max, None, workers)?, 1)
}

/// Canonical cubical contributions of an image with the given voxel shape;
/// `values` holds `channels` values per voxel.
pub fn cubical_contributions(
    values: &[f64],
    shape: &[usize],
    channels: usize,
) -> Result<ContributionArrays> {
    let img = Image::new(shape.to_vec(), channels, values.to_vec())?;
    canonical(compute_contributions_cubical(&img)?, channels)
}

/// L1 distance between two curves given as arrays.
pub fn distance_ecc_arrays(
    a: &ContributionArrays,
    b: &ContributionArrays,
    upper: Option<f64>,
) -> Result<f64> {
    distance_ecc(&a.curve()?, &b.curve()?, upper)
}

/// L1 distance between two profiles given as arrays.
pub fn distance_ecp_arrays(
    a: &ContributionArrays,
    b: &ContributionArrays,
    truncation: &[f64],
) -> Result<f64> {
    distance_ecp(
        &a.profile()?,
        &b.profile()?,
        &FiltrationVector::new(truncation.iter().copied())?,
    )
}

/// Sampled curve of a contribution array.
pub fn vectorize_ecc_arrays(a: &ContributionArrays, n_samples: usize, f_max: f64) -> Result<Vec<i64>> {
    vectorize_ecc(&a.curve()?, n_samples, f_max)
}

/// Row-major sampled profile of a contribution array.
pub fn vectorize_ecp_arrays(
    a: &ContributionArrays,
    samples: &[usize],
    bounds: &[f64],
) -> Result<Vec<i64>> {
    Ok(vectorize_ecp(&a.profile()?, samples, bounds)?.into_flat())
}

/// Vectorized curves of several clouds, one row of `n_samples` per cloud.
/// Each cloud is a flat `n x d` matrix with its own `d`.
pub fn transform_clouds(
    clouds: &[(&[f64], usize)],
    t_max: f64,
    n_samples: usize,
    f_max: f64,
    workers: usize,
) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(clouds.len() * n_samples);
    for (points, d) in clouds {
        let cloud = PointCloud::from_flat(points.to_vec(), *d)?;
        let curve = compute_curve_vr(&cloud, t_max, workers)?;
        out.extend(vectorize_ecc(&curve, n_samples, f_max)?);
    }
    Ok(out)
}
