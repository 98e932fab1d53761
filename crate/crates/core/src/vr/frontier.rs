//! Breadth-first clique enumeration inside one local graph.

use super::graph::LocalGraph;

/// All simplices of one dimension that contain the root, with their
/// filtration values and the neighbours they can still be extended by.
///
/// Simplices are stored as local vertex indices in increasing order, so
/// every simplex starts with the root (local index 0).
#[derive(Clone, Debug, PartialEq)]
pub struct LocalCliqueFrontier {
    width: usize,
    vertices: Vec<u32>,
    filtrations: Vec<f64>,
    extra_axes: usize,
    extra: Vec<f64>,
    neighbour_offsets: Vec<usize>,
    neighbours: Vec<u32>,
}

/// Counters gathered while enumerating.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerationStats {
    pub simplices: u64,
    /// Edge-length comparisons made while updating filtration values:
    /// extending a simplex on `k` vertices compares `k` new edges.
    pub filtration_comparisons: u64,
    /// Largest frontier seen.
    pub peak_frontier: usize,
}

impl EnumerationStats {
    pub fn merge(&mut self, other: &EnumerationStats) {
        self.simplices += other.simplices;
        self.filtration_comparisons += other.filtration_comparisons;
        self.peak_frontier = self.peak_frontier.max(other.peak_frontier);
    }
}

impl LocalCliqueFrontier {
    /// The frontier holding only the root vertex.
    pub fn root(graph: &LocalGraph) -> Self {
        let extra_axes = graph.extra_axes();
        let neighbours = graph.subsequent(0).to_vec();
        LocalCliqueFrontier {
            width: 1,
            vertices: vec![0],
            filtrations: vec![0.0],
            extra_axes,
            extra: (0..extra_axes)
                .map(|a| graph.extra_vertex_value(a, 0))
                .collect(),
            neighbour_offsets: vec![0, neighbours.len()],
            neighbours,
        }
    }

    pub fn len(&self) -> usize {
        self.filtrations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.filtrations.is_empty()
    }

    /// Dimension of every simplex in the frontier.
    pub fn dim(&self) -> usize {
        self.width - 1
    }

    pub fn simplex(&self, i: usize) -> &[u32] {
        &self.vertices[i * self.width..(i + 1) * self.width]
    }

    /// Diameter of simplex `i`.
    pub fn filtration(&self, i: usize) -> f64 {
        self.filtrations[i]
    }

    /// Values of simplex `i` on the extra axes.
    pub fn extra(&self, i: usize) -> &[f64] {
        &self.extra[i * self.extra_axes..(i + 1) * self.extra_axes]
    }

    /// Common subsequent neighbours of simplex `i`.
    pub fn common_neighbours(&self, i: usize) -> &[u32] {
        &self.neighbours[self.neighbour_offsets[i]..self.neighbour_offsets[i + 1]]
    }

    /// Extends every simplex by each of its common subsequent neighbours.
    pub fn increase_dimension(&self, graph: &LocalGraph) -> Self {
        self.increase_dimension_counted(graph, &mut EnumerationStats::default())
    }

    pub(crate) fn increase_dimension_counted(
        &self,
        graph: &LocalGraph,
        stats: &mut EnumerationStats,
    ) -> Self {
        let width = self.width + 1;
        let capacity: usize = self.neighbours.len();
        let mut next = LocalCliqueFrontier {
            width,
            vertices: Vec::with_capacity(capacity * width),
            filtrations: Vec::with_capacity(capacity),
            extra_axes: self.extra_axes,
            extra: Vec::with_capacity(capacity * self.extra_axes),
            neighbour_offsets: Vec::with_capacity(capacity + 1),
            neighbours: Vec::new(),
        };
        next.neighbour_offsets.push(0);

        for i in 0..self.len() {
            let simplex = self.simplex(i);
            let common = self.common_neighbours(i);
            for (pos, &v) in common.iter().enumerate() {
                next.vertices.extend_from_slice(simplex);
                next.vertices.push(v);

                let mut f = self.filtrations[i];
                for &u in simplex {
                    f = f.max(graph.length(u, v));
                }
                stats.filtration_comparisons += simplex.len() as u64;
                next.filtrations.push(f);

                for (a, &parent) in self.extra(i).iter().enumerate() {
                    let mut value = parent.max(graph.extra_vertex_value(a, v));
                    if graph.is_edge_axis(a) {
                        for &u in simplex {
                            value = value.max(graph.extra_edge_value(a, u, v));
                        }
                    }
                    next.extra.push(value);
                }

                // neighbours of v are all ranked after v, so only the tail of
                // `common` past v can survive the intersection
                intersect_sorted(&common[pos + 1..], graph.subsequent(v), &mut next.neighbours);
                next.neighbour_offsets.push(next.neighbours.len());
            }
        }
        next
    }
}

fn intersect_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Runs the breadth-first enumeration for one local graph, calling `emit`
/// with each frontier (all simplices of one dimension containing the root).
pub fn enumerate_local(
    graph: &LocalGraph,
    mut emit: impl FnMut(&LocalCliqueFrontier),
) -> EnumerationStats {
    let mut stats = EnumerationStats::default();
    let mut frontier = LocalCliqueFrontier::root(graph);
    while !frontier.is_empty() {
        stats.simplices += frontier.len() as u64;
        stats.peak_frontier = stats.peak_frontier.max(frontier.len());
        emit(&frontier);
        frontier = frontier.increase_dimension_counted(graph, &mut stats);
    }
    stats
}
