//! Vietoris-Rips contributions by per-vertex local clique enumeration.
//!
//! Every simplex is generated exactly once, from its lowest-ranked vertex:
//! each root builds the graph of its later-ranked neighbours and extends
//! cliques through the root one dimension at a time. Roots are independent,
//! so they are distributed over a work-stealing pool and each worker keeps a
//! private contribution buffer that is merged at the end.
//!
//! Threshold convention: an edge is present when its length is `<= t_max`
//! and a simplex is filtered by its diameter (vertices at 0).

mod cloud;
mod frontier;
mod graph;

pub use cloud::{AxisSource, PointCloud, VertexFiltrationSpec};
pub use frontier::{enumerate_local, EnumerationStats, LocalCliqueFrontier};
pub use graph::{build_local_graph, LocalGraph};

use rayon::prelude::*;

use crate::curve::EulerCharacteristicCurve;
use crate::error::{Error, Result};
use crate::filtration::{cell_sign, Contribution, FiltrationVector};
use crate::profile::{aggregate, EulerCharacteristicProfile};
use crate::run_with_workers;

/// Worker buffers are compacted once they hold this many entries.
const COMPACT_THRESHOLD: usize = 1 << 20;

fn check_threshold(t_max: f64) -> Result<()> {
    if !(t_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "t_max must be positive, got {t_max}"
        )));
    }
    Ok(())
}

/// Raw contributions of the Vietoris-Rips complex with edge threshold
/// `t_max`: one `(filtration, (-1)^dim)` entry per simplex.
///
/// Axis 0 is the diameter; `spec` adds further axes. The output order is
/// deterministic (roots in rank order, simplices by dimension) and does not
/// depend on `workers`.
pub fn compute_contributions_vr(
    cloud: &PointCloud,
    t_max: f64,
    spec: Option<&VertexFiltrationSpec>,
    workers: usize,
) -> Result<Vec<Contribution>> {
    check_threshold(t_max)?;
    if let Some(spec) = spec {
        spec.validate(cloud.len())?;
    }
    let ranks = cloud.ranks();
    let per_root: Vec<Vec<Contribution>> = run_with_workers(workers, || {
        cloud
            .ordering()
            .par_iter()
            .map(|&root| {
                let graph = LocalGraph::build(cloud, &ranks, root, t_max, spec);
                let mut out = Vec::new();
                enumerate_local(&graph, |frontier| emit_frontier(frontier, &mut out));
                out
            })
            .collect()
    })?;
    Ok(per_root.into_iter().flatten().collect())
}

fn emit_frontier(frontier: &LocalCliqueFrontier, out: &mut Vec<Contribution>) {
    let sign = cell_sign(frontier.dim());
    let mut coords = Vec::with_capacity(1 + frontier.extra(0).len());
    for i in 0..frontier.len() {
        coords.clear();
        coords.push(frontier.filtration(i));
        coords.extend_from_slice(frontier.extra(i));
        out.push(Contribution {
            at: FiltrationVector::from_normalized(&coords),
            delta: sign,
        });
    }
}

/// The Euler characteristic curve of the Vietoris-Rips complex, aggregated
/// on the fly so memory stays proportional to the number of distinct
/// filtration values.
pub fn compute_curve_vr(
    cloud: &PointCloud,
    t_max: f64,
    workers: usize,
) -> Result<EulerCharacteristicCurve> {
    check_threshold(t_max)?;
    let ranks = cloud.ranks();
    let (pairs, cells) = run_with_workers(workers, || {
        cloud
            .ordering()
            .par_iter()
            .fold(
                || (Vec::new(), 0u64),
                |(mut buffer, mut cells), &root| {
                    let graph = LocalGraph::build(cloud, &ranks, root, t_max, None);
                    let stats = enumerate_local(&graph, |frontier| {
                        let sign = cell_sign(frontier.dim());
                        buffer.extend((0..frontier.len()).map(|i| (frontier.filtration(i), sign)));
                    });
                    cells += stats.simplices;
                    if buffer.len() >= COMPACT_THRESHOLD {
                        compact_pairs(&mut buffer);
                    }
                    (buffer, cells)
                },
            )
            .reduce(
                || (Vec::new(), 0u64),
                |(mut a, ca), (b, cb)| {
                    a.extend(b);
                    if a.len() >= COMPACT_THRESHOLD {
                        compact_pairs(&mut a);
                    }
                    (a, ca + cb)
                },
            )
    })?;
    Ok(EulerCharacteristicCurve::from_pairs_unchecked(pairs).with_cell_count(cells))
}

/// The Euler characteristic profile of the multiparameter Vietoris-Rips
/// complex (diameter on axis 0, `spec` axes after it).
pub fn compute_profile_vr(
    cloud: &PointCloud,
    t_max: f64,
    spec: &VertexFiltrationSpec,
    workers: usize,
) -> Result<EulerCharacteristicProfile> {
    check_threshold(t_max)?;
    spec.validate(cloud.len())?;
    let ranks = cloud.ranks();
    let (contributions, cells) = run_with_workers(workers, || {
        cloud
            .ordering()
            .par_iter()
            .fold(
                || (Vec::new(), 0u64),
                |(mut buffer, mut cells), &root| {
                    let graph = LocalGraph::build(cloud, &ranks, root, t_max, Some(spec));
                    let stats = enumerate_local(&graph, |f| emit_frontier(f, &mut buffer));
                    cells += stats.simplices;
                    if buffer.len() >= COMPACT_THRESHOLD {
                        buffer = aggregate(buffer);
                    }
                    (buffer, cells)
                },
            )
            .reduce(
                || (Vec::new(), 0u64),
                |(mut a, ca), (b, cb)| {
                    a.extend(b);
                    if a.len() >= COMPACT_THRESHOLD {
                        a = aggregate(a);
                    }
                    (a, ca + cb)
                },
            )
    })?;
    let mut profile = EulerCharacteristicProfile::from_contributions(spec.parameters(), contributions)?;
    profile.set_cell_count(cells);
    Ok(profile)
}

/// Per-root enumeration statistics, in rank order.
pub fn enumeration_stats(
    cloud: &PointCloud,
    t_max: f64,
    workers: usize,
) -> Result<Vec<EnumerationStats>> {
    check_threshold(t_max)?;
    let ranks = cloud.ranks();
    run_with_workers(workers, || {
        cloud
            .ordering()
            .par_iter()
            .map(|&root| {
                let graph = LocalGraph::build(cloud, &ranks, root, t_max, None);
                enumerate_local(&graph, |_| {})
            })
            .collect()
    })
}

fn compact_pairs(pairs: &mut Vec<(f64, i64)>) {
    pairs.sort_unstable_by(|a, b| a.0.total_cmp(&b.0));
    let mut write = 0;
    for read in 0..pairs.len() {
        if write > 0 && pairs[write - 1].0 == pairs[read].0 {
            pairs[write - 1].1 += pairs[read].1;
        } else {
            pairs[write] = pairs[read];
            write += 1;
        }
    }
    pairs.truncate(write);
    pairs.retain(|p| p.1 != 0);
}

/// Number of other points within `t_max` of each point.
pub fn neighbour_counts(cloud: &PointCloud, t_max: f64) -> Vec<usize> {
    let n = cloud.len();
    (0..n)
        .into_par_iter()
        .map(|i| {
            (0..n)
                .filter(|&j| j != i && cloud.distance(i, j) <= t_max)
                .count()
        })
        .collect()
}

/// Orders vertices by increasing number of `t_max`-neighbours, ties by
/// original index. Roots with many neighbours then come late and see few
/// subsequent neighbours, which evens out the per-root work.
pub fn reorder_by_degree(cloud: &PointCloud, t_max: f64) -> PointCloud {
    let degree = neighbour_counts(cloud, t_max);
    let mut ordering: Vec<usize> = (0..cloud.len()).collect();
    ordering.sort_by_key(|&i| (degree[i], i));
    cloud
        .clone()
        .with_ordering(ordering)
        .expect("a sorted index range is a permutation")
}

/// Mean distance from each point to its `k` nearest other points.
pub fn codensity(cloud: &PointCloud, k: usize) -> Result<Vec<f64>> {
    let n = cloud.len();
    if k == 0 || k >= n {
        return Err(Error::InvalidParameter(format!(
            "codensity needs 0 < k < number of points, got k = {k} for {n} points"
        )));
    }
    Ok((0..n)
        .into_par_iter()
        .map(|i| {
            let mut d: Vec<f64> = (0..n)
                .filter(|&j| j != i)
                .map(|j| cloud.distance(i, j))
                .collect();
            d.select_nth_unstable_by(k - 1, f64::total_cmp);
            let nearest = &mut d[..k];
            nearest.sort_unstable_by(f64::total_cmp);
            nearest.iter().sum::<f64>() / k as f64
        })
        .collect())
}
