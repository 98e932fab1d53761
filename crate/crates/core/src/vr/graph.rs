use super::cloud::{AxisSource, PointCloud, VertexFiltrationSpec};

/// The graph a root vertex works on: the root (local index 0) and its
/// neighbours ranked after it (local indices `1..`, in rank order), with
/// every edge of length `<= t_max` among them.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    vertices: Vec<usize>,
    lengths: Vec<f64>,
    subsequent: Vec<Vec<u32>>,
    extra_vertex: Vec<Vec<f64>>,
    extra_edge: Vec<Option<Vec<f64>>>,
}

/// Builds the local graph of the point `root` (an index into the cloud).
/// Edges are kept when their length is `<= t_max`.
pub fn build_local_graph(cloud: &PointCloud, root: usize, t_max: f64) -> LocalGraph {
    let ranks = cloud.ranks();
    LocalGraph::build(cloud, &ranks, root, t_max, None)
}

impl LocalGraph {
    pub(crate) fn build(
        cloud: &PointCloud,
        ranks: &[usize],
        root: usize,
        t_max: f64,
        spec: Option<&VertexFiltrationSpec>,
    ) -> Self {
        let root_rank = ranks[root];
        let mut vertices = vec![root];
        vertices.extend(
            cloud.ordering()[root_rank + 1..]
                .iter()
                .copied()
                .filter(|&j| cloud.distance(root, j) <= t_max),
        );
        let m = vertices.len();
        let mut lengths = vec![f64::INFINITY; m * m];
        let mut subsequent = vec![Vec::new(); m];
        for a in 0..m {
            lengths[a * m + a] = 0.0;
            for b in a + 1..m {
                let d = cloud.distance(vertices[a], vertices[b]);
                if d <= t_max {
                    lengths[a * m + b] = d;
                    lengths[b * m + a] = d;
                    subsequent[a].push(b as u32);
                }
            }
        }

        let axes = spec.map_or(&[][..], VertexFiltrationSpec::axes);
        let mut extra_vertex = Vec::with_capacity(axes.len());
        let mut extra_edge = Vec::with_capacity(axes.len());
        for axis in axes {
            match axis {
                AxisSource::Vertex(values) => {
                    extra_vertex.push(vertices.iter().map(|&v| values[v]).collect());
                    extra_edge.push(None);
                }
                AxisSource::Edge { vertex, edge } => {
                    extra_vertex.push(vertices.iter().map(|&v| vertex[v]).collect());
                    let mut table = vec![f64::NEG_INFINITY; m * m];
                    for a in 0..m {
                        for &b in &subsequent[a] {
                            let b = b as usize;
                            let value = edge(vertices[a], vertices[b]);
                            table[a * m + b] = value;
                            table[b * m + a] = value;
                        }
                    }
                    extra_edge.push(Some(table));
                }
            }
        }

        LocalGraph {
            vertices,
            lengths,
            subsequent,
            extra_vertex,
            extra_edge,
        }
    }

    /// Global index of the root point.
    pub fn root(&self) -> usize {
        self.vertices[0]
    }

    /// Number of local vertices, root included.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Global point index of a local vertex.
    pub fn vertex(&self, local: u32) -> usize {
        self.vertices[local as usize]
    }

    /// Global indices of the root's subsequent neighbours, in rank order.
    pub fn neighbours(&self) -> &[usize] {
        &self.vertices[1..]
    }

    /// Local neighbours of `local` that come after it.
    pub fn subsequent(&self, local: u32) -> &[u32] {
        &self.subsequent[local as usize]
    }

    /// Length of the edge between two local vertices, if present.
    pub fn edge_length(&self, a: u32, b: u32) -> Option<f64> {
        let l = self.length(a, b);
        (l.is_finite() && a != b).then_some(l)
    }

    #[inline]
    pub(crate) fn length(&self, a: u32, b: u32) -> f64 {
        self.lengths[a as usize * self.vertices.len() + b as usize]
    }

    pub(crate) fn extra_axes(&self) -> usize {
        self.extra_vertex.len()
    }

    #[inline]
    pub(crate) fn extra_vertex_value(&self, axis: usize, v: u32) -> f64 {
        self.extra_vertex[axis][v as usize]
    }

    pub(crate) fn is_edge_axis(&self, axis: usize) -> bool {
        self.extra_edge[axis].is_some()
    }

    /// Value of an edge on an edge-sourced axis. Only meaningful when
    /// [`is_edge_axis`](Self::is_edge_axis) holds and `a`, `b` are adjacent.
    #[inline]
    pub(crate) fn extra_edge_value(&self, axis: usize, a: u32, b: u32) -> f64 {
        self.extra_edge[axis]
            .as_ref()
            .map_or(f64::NEG_INFINITY, |t| t[a as usize * self.vertices.len() + b as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_points_within_threshold() {
        let cloud = PointCloud::new(&[vec![0.0], vec![1.0]]).unwrap();
        let g = build_local_graph(&cloud, 0, 2.0);
        assert_eq!(g.neighbours(), &[1]);
        assert_eq!(g.edge_length(0, 1), Some(1.0));
    }

    #[test]
    fn two_points_beyond_threshold() {
        let cloud = PointCloud::new(&[vec![0.0], vec![1.0]]).unwrap();
        let g = build_local_graph(&cloud, 0, 0.5);
        assert!(g.neighbours().is_empty());
        assert_eq!(g.len(), 1);
    }

    #[test]
    fn unit_square_corner() {
        let cloud = PointCloud::new(&[
            vec![0.0, 0.0],
            vec![0.0, 1.0],
            vec![1.0, 0.0],
            vec![1.0, 1.0],
        ])
        .unwrap();
        let g = build_local_graph(&cloud, 0, 1.0);
        assert_eq!(g.neighbours(), &[1, 2]);
        assert_eq!(g.edge_length(0, 1), Some(1.0));
        assert_eq!(g.edge_length(0, 2), Some(1.0));
        // the diagonal between (0,1) and (1,0) is sqrt(2) > 1
        assert_eq!(g.edge_length(1, 2), None);
        assert!(g.subsequent(1).is_empty());
    }

    #[test]
    fn only_later_ranked_points_are_kept() {
        let cloud = PointCloud::new(&[vec![0.0], vec![0.5], vec![1.0]])
            .unwrap()
            .with_ordering(vec![2, 0, 1])
            .unwrap();
        let g = build_local_graph(&cloud, 0, 1.0);
        assert_eq!(g.neighbours(), &[1]);
        let g = build_local_graph(&cloud, 2, 1.0);
        assert_eq!(g.neighbours(), &[0, 1]);
        let g = build_local_graph(&cloud, 1, 1.0);
        assert!(g.neighbours().is_empty());
    }
}
