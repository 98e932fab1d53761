use std::sync::Arc;

use crate::error::{Error, Result};

/// A finite set of points in `R^d` together with a vertex ordering.
///
/// `ordering[r]` is the index of the point at rank `r`. Each root vertex only
/// sees neighbours ranked after it, so the ordering decides how work is split
/// between roots but never changes the resulting complex.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    dim: usize,
    coords: Vec<f64>,
    ordering: Vec<usize>,
}

impl PointCloud {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points.first().map_or(1, Vec::len);
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Self::from_flat(coords, dim)
    }

    /// Row-major `n x dim` coordinates.
    pub fn from_flat(coords: Vec<f64>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("points need at least one coordinate".into()));
        }
        if coords.len() % dim != 0 {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: coords.len() % dim,
            });
        }
        if let Some((i, &value)) = coords.iter().enumerate().find(|(_, c)| !c.is_finite()) {
            return Err(Error::NonFinite { axis: i % dim, value });
        }
        let n = coords.len() / dim;
        Ok(PointCloud {
            dim,
            coords,
            ordering: (0..n).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.ordering.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordering.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn point(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    /// Replaces the vertex ordering. `ordering` must be a permutation of `0..n`.
    pub fn with_ordering(mut self, ordering: Vec<usize>) -> Result<Self> {
        let n = self.len();
        if ordering.len() != n {
            return Err(Error::InvalidParameter(format!(
                "ordering has {} entries for {n} points",
                ordering.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &ordering {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidParameter(
                    "ordering is not a permutation".into(),
                ));
            }
        }
        self.ordering = ordering;
        Ok(self)
    }

    /// `rank[i]` is the position of point `i` in the ordering.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0; self.len()];
        for (r, &i) in self.ordering.iter().enumerate() {
            rank[i] = r;
        }
        rank
    }

    /// Euclidean distance between points `i` and `j`.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        euclidean(self.point(i), self.point(j))
    }
}

#[inline]
pub(crate) fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Where the values of one extra filtration axis come from.
#[derive(Clone)]
pub enum AxisSource {
    /// One value per point. A simplex takes the max over its vertices.
    Vertex(Vec<f64>),
    /// Values on vertices and on edges. A simplex takes the max over its
    /// vertices and edges, so an edge is never born before its endpoints.
    Edge {
        vertex: Vec<f64>,
        edge: Arc<dyn Fn(usize, usize) -> f64 + Send + Sync>,
    },
}

impl std::fmt::Debug for AxisSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxisSource::Vertex(v) => f.debug_tuple("Vertex").field(v).finish(),
            AxisSource::Edge { vertex, .. } => f
                .debug_struct("Edge")
                .field("vertex", vertex)
                .finish_non_exhaustive(),
        }
    }
}

impl AxisSource {
    fn vertex_values(&self) -> &[f64] {
        match self {
            AxisSource::Vertex(v) | AxisSource::Edge { vertex: v, .. } => v,
        }
    }
}

/// Extra filtration axes for a multiparameter Vietoris-Rips complex.
///
/// Axis 0 is always the diameter; the axes listed here become axes `1..`.
#[derive(Clone, Debug, Default)]
pub struct VertexFiltrationSpec {
    axes: Vec<AxisSource>,
}

impl VertexFiltrationSpec {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_axis(mut self, axis: AxisSource) -> Self {
        self.axes.push(axis);
        self
    }

    pub fn axes(&self) -> &[AxisSource] {
        &self.axes
    }

    /// Total number of filtration parameters, diameter included.
    pub fn parameters(&self) -> usize {
        1 + self.axes.len()
    }

    pub(crate) fn validate(&self, n_points: usize) -> Result<()> {
        for (a, axis) in self.axes.iter().enumerate() {
            let values = axis.vertex_values();
            if values.len() != n_points {
                return Err(Error::InvalidParameter(format!(
                    "axis {} has {} vertex values for {n_points} points",
                    a + 1,
                    values.len()
                )));
            }
            if let Some(&value) = values.iter().find(|v| !v.is_finite()) {
                return Err(Error::NonFinite { axis: a + 1, value });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_ragged_and_non_finite_points() {
        assert!(matches!(
            PointCloud::new(&[vec![0.0, 1.0], vec![2.0]]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(PointCloud::new(&[vec![f64::NAN]]).is_err());
        assert!(PointCloud::new(&[]).unwrap().is_empty());
    }

    #[test]
    fn ordering_must_be_a_permutation() {
        let cloud = PointCloud::new(&[vec![0.0], vec![1.0], vec![2.0]]).unwrap();
        assert!(cloud.clone().with_ordering(vec![0, 0, 1]).is_err());
        assert!(cloud.clone().with_ordering(vec![0, 1]).is_err());
        let c = cloud.with_ordering(vec![2, 0, 1]).unwrap();
        assert_eq!(c.ranks(), vec![1, 2, 0]);
    }

    #[test]
    fn distance_is_symmetric() {
        let cloud = PointCloud::new(&[vec![0.1, 0.7], vec![-0.3, 1.9]]).unwrap();
        assert_eq!(cloud.distance(0, 1), cloud.distance(1, 0));
        assert_eq!(cloud.distance(0, 0), 0.0);
    }

    #[test]
    fn spec_validation() {
        let spec = VertexFiltrationSpec::new().with_axis(AxisSource::Vertex(vec![0.0, 1.0]));
        assert_eq!(spec.parameters(), 2);
        assert!(spec.validate(2).is_ok());
        assert!(spec.validate(3).is_err());
        let bad = VertexFiltrationSpec::new().with_axis(AxisSource::Vertex(vec![f64::INFINITY]));
        assert!(matches!(bad.validate(1), Err(Error::NonFinite { axis: 1, .. })));
    }
}
