//! Slow reference implementations for checking `eulerprof-core`.
//!
//! Everything here enumerates explicitly and refuses inputs beyond toy
//! sizes. Nothing is optimised.

use eulerprof_core::cubical::Image;
use eulerprof_core::vr::PointCloud;
use eulerprof_core::{cell_sign, Contribution, Error, FiltrationVector, Result};
use rand::Rng;

pub const MAX_VR_POINTS: usize = 15;
pub const MAX_CUBICAL_CELLS: usize = 100_000;
pub const MAX_BETTI_CELLS: usize = 200;
pub const MAX_PERSISTENCE_CELLS: usize = 1024;
pub const MAX_DIAGRAM_POINTS: usize = 10;

fn refuse(what: &str, size: usize, limit: usize) -> Error {
    Error::InvalidParameter(format!("oracle refuses {what} of size {size} (limit {limit})"))
}

/// Every simplex of the Vietoris-Rips complex as `(sorted vertices, diameter)`,
/// by enumerating all vertex subsets.
pub fn brute_force_vr_simplices(cloud: &PointCloud, t_max: f64) -> Result<Vec<(Vec<usize>, f64)>> {
    let n = cloud.len();
    if n > MAX_VR_POINTS {
        return Err(refuse("point cloud", n, MAX_VR_POINTS));
    }
    let mut out = Vec::new();
    for mask in 1u32..(1 << n) {
        let vertices: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        let mut diameter = 0.0f64;
        for (a, &i) in vertices.iter().enumerate() {
            for &j in &vertices[a + 1..] {
                diameter = diameter.max(cloud.distance(i, j));
            }
        }
        if vertices.len() == 1 || diameter <= t_max {
            out.push((vertices, diameter));
        }
    }
    Ok(out)
}

/// One `(diameter, (-1)^dim)` contribution per Vietoris-Rips simplex.
pub fn brute_force_vr(cloud: &PointCloud, t_max: f64) -> Result<Vec<Contribution>> {
    Ok(brute_force_vr_simplices(cloud, t_max)?
        .into_iter()
        .map(|(s, f)| Contribution::scalar(f, cell_sign(s.len() - 1)))
        .collect())
}

/// The Vietoris-Rips complex with explicit faces, for homology.
pub fn vr_complex(cloud: &PointCloud, t_max: f64) -> Result<FilteredComplex> {
    let simplices = brute_force_vr_simplices(cloud, t_max)?;
    FilteredComplex::from_simplices(simplices)
}

/// One contribution per cell of the cubical complex of `img`, found by
/// walking every cell of the grid in doubled coordinates: coordinate `k`
/// on an axis is a vertex when even and an interval when odd.
pub fn brute_force_cubical(img: &Image) -> Result<Vec<Contribution>> {
    let shape = img.shape();
    let extents: Vec<usize> = shape.iter().map(|&s| 2 * s + 1).collect();
    let cells: usize = extents.iter().product();
    if cells > MAX_CUBICAL_CELLS {
        return Err(refuse("image complex", cells, MAX_CUBICAL_CELLS));
    }
    if img.voxel_count() == 0 {
        return Ok(Vec::new());
    }
    let c = img.channels();
    let n = shape.len();
    let mut out = Vec::with_capacity(cells);
    let mut k = vec![0usize; n];
    'cells: loop {
        // voxel index ranges of the cofaces on each axis
        let ranges: Vec<Vec<usize>> = (0..n)
            .map(|i| {
                if k[i] % 2 == 1 {
                    vec![(k[i] - 1) / 2]
                } else {
                    let v = k[i] / 2;
                    [v.checked_sub(1), Some(v)]
                        .into_iter()
                        .flatten()
                        .filter(|&x| x < shape[i])
                        .collect()
                }
            })
            .collect();
        let mut mins = vec![f64::INFINITY; c];
        let mut pick = vec![0usize; n];
        'cofaces: loop {
            if ranges.iter().all(|r| !r.is_empty()) {
                let mut flat = 0;
                for i in 0..n {
                    flat = flat * shape[i] + ranges[i][pick[i]];
                }
                for (m, &v) in mins.iter_mut().zip(&img.values()[flat * c..(flat + 1) * c]) {
                    *m = m.min(v);
                }
            } else {
                break 'cofaces;
            }
            let mut i = n;
            loop {
                if i == 0 {
                    break 'cofaces;
                }
                i -= 1;
                pick[i] += 1;
                if pick[i] < ranges[i].len() {
                    break;
                }
                pick[i] = 0;
            }
        }
        if mins[0] < f64::INFINITY {
            let dim = k.iter().filter(|&&x| x % 2 == 1).count();
            out.push(Contribution::new(FiltrationVector::new(mins)?, cell_sign(dim)));
        }

        let mut i = n;
        loop {
            if i == 0 {
                break 'cells;
            }
            i -= 1;
            k[i] += 1;
            if k[i] < extents[i] {
                break;
            }
            k[i] = 0;
        }
    }
    Ok(out)
}

/// A filtered cell complex with explicit boundaries over the two-element
/// field. Cells are stored so that every face precedes its cofaces.
#[derive(Clone, Debug, PartialEq)]
pub struct FilteredComplex {
    cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub dim: usize,
    pub filtration: f64,
    /// Indices of the codimension-one faces.
    pub boundary: Vec<usize>,
}

impl FilteredComplex {
    /// Checks that faces come first, have one dimension less and are born
    /// no later than their cofaces.
    pub fn new(cells: Vec<Cell>) -> Result<Self> {
        for (i, cell) in cells.iter().enumerate() {
            if cell.dim == 0 && !cell.boundary.is_empty() {
                return Err(Error::InvalidParameter(format!("vertex {i} has faces")));
            }
            for &f in &cell.boundary {
                if f >= i || cells[f].dim + 1 != cell.dim || cells[f].filtration > cell.filtration {
                    return Err(Error::InvalidParameter(format!("cell {i} has invalid face {f}")));
                }
            }
        }
        Ok(FilteredComplex { cells })
    }

    /// A simplicial complex from `(vertices, filtration)` pairs; the list
    /// must be closed under taking faces.
    pub fn from_simplices(mut simplices: Vec<(Vec<usize>, f64)>) -> Result<Self> {
        for (s, _) in simplices.iter_mut() {
            s.sort_unstable();
        }
        simplices.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        let index: std::collections::HashMap<Vec<usize>, usize> = simplices
            .iter()
            .enumerate()
            .map(|(i, (s, _))| (s.clone(), i))
            .collect();
        let mut cells = Vec::with_capacity(simplices.len());
        for (s, f) in &simplices {
            let mut boundary = Vec::new();
            if s.len() > 1 {
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                    let &i = index.get(&face).ok_or_else(|| {
                        Error::InvalidParameter(format!("face {face:?} of {s:?} is missing"))
                    })?;
                    boundary.push(i);
                }
            }
            cells.push(Cell {
                dim: s.len() - 1,
                filtration: *f,
                boundary,
            });
        }
        Self::new(cells)
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(0)
    }

    pub fn contributions(&self) -> Vec<Contribution> {
        self.cells
            .iter()
            .map(|c| Contribution::scalar(c.filtration, cell_sign(c.dim)))
            .collect()
    }
}

/// A bitset column of a boundary matrix.
#[derive(Clone, PartialEq, Eq)]
struct Column(Vec<u64>);

impl Column {
    fn new(len: usize) -> Self {
        Column(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn add(&mut self, other: &Column) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn pivot(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(k, &w)| k * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Rank over the two-element field by column reduction.
fn rank_gf2(mut columns: Vec<Column>) -> usize {
    let mut by_pivot: std::collections::HashMap<usize, usize> = Default::default();
    let mut rank = 0;
    for j in 0..columns.len() {
        while let Some(p) = columns[j].pivot() {
            match by_pivot.get(&p) {
                Some(&k) => {
                    let other = columns[k].clone();
                    columns[j].add(&other);
                }
                None => {
                    by_pivot.insert(p, j);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers `β_0..=β_max_dim` of the sublevel complex at each
/// threshold: `β_k = dim ker ∂_k - rank ∂_{k+1}`.
pub fn betti_curves_gf2(complex: &FilteredComplex, thresholds: &[f64]) -> Result<Vec<Vec<i64>>> {
    let n = complex.len();
    if n > MAX_BETTI_CELLS {
        return Err(refuse("complex", n, MAX_BETTI_CELLS));
    }
    let top = complex.max_dim();
    let mut out = Vec::with_capacity(thresholds.len());
    for &t in thresholds {
        let alive: Vec<usize> = (0..n).filter(|&i| complex.cells[i].filtration <= t).collect();
        let mut count = vec![0i64; top + 2];
        let mut rank = vec![0i64; top + 2];
        for d in 0..=top {
            let cols: Vec<Column> = alive
                .iter()
                .filter(|&&i| complex.cells[i].dim == d)
                .map(|&i| {
                    let mut c = Column::new(n);
                    for &f in &complex.cells[i].boundary {
                        c.set(f);
                    }
                    c
                })
                .collect();
            count[d] = cols.len() as i64;
            rank[d] = rank_gf2(cols) as i64;
        }
        out.push((0..=top).map(|d| count[d] - rank[d] - rank[d + 1]).collect());
    }
    Ok(out)
}

/// A point of a persistence diagram; `death` is `+inf` for essential classes.
pub type DiagramPoint = (f64, f64);

/// Persistence diagrams per dimension by the standard reduction of the
/// boundary matrix, cells ordered by (filtration, dimension, index).
/// Pairs with equal birth and death are dropped.
pub fn persistence_diagrams(complex: &FilteredComplex) -> Result<Vec<Vec<DiagramPoint>>> {
    let n = complex.len();
    if n > MAX_PERSISTENCE_CELLS {
        return Err(refuse("complex", n, MAX_PERSISTENCE_CELLS));
    }
    let cells = &complex.cells;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        cells[a]
            .filtration
            .total_cmp(&cells[b].filtration)
            .then(cells[a].dim.cmp(&cells[b].dim))
            .then(a.cmp(&b))
    });
    let mut position = vec![0; n];
    for (p, &i) in order.iter().enumerate() {
        position[i] = p;
    }
    let mut columns: Vec<Column> = order
        .iter()
        .map(|&i| {
            let mut c = Column::new(n);
            for &f in &cells[i].boundary {
                c.set(position[f]);
            }
            c
        })
        .collect();

    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut paired = vec![false; n];
    let mut diagrams = vec![Vec::new(); complex.max_dim() + 1];
    for j in 0..n {
        while let Some(p) = columns[j].pivot() {
            match owner[p] {
                Some(k) => {
                    let other = columns[k].clone();
                    columns[j].add(&other);
                }
                None => {
                    owner[p] = Some(j);
                    paired[p] = true;
                    paired[j] = true;
                    let birth = cells[order[p]].filtration;
                    let death = cells[order[j]].filtration;
                    if birth < death {
                        diagrams[cells[order[p]].dim].push((birth, death));
                    }
                    break;
                }
            }
        }
    }
    for p in 0..n {
        if !paired[p] {
            diagrams[cells[order[p]].dim].push((cells[order[p]].filtration, f64::INFINITY));
        }
    }
    Ok(diagrams)
}

fn linf(a: DiagramPoint, b: DiagramPoint) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn to_diagonal(a: DiagramPoint) -> f64 {
    (a.1 - a.0) / 2.0
}

/// Exact 1-Wasserstein distance with the sup-norm ground metric, by trying
/// every matching (with pruning). Finite points may go to the diagonal;
/// essential points are matched among themselves by birth, and unequal
/// essential counts give `+inf`.
pub fn wasserstein1_exhaustive(c: &[DiagramPoint], d: &[DiagramPoint]) -> Result<f64> {
    let (ce, cf): (Vec<_>, Vec<_>) = c.iter().copied().partition(|p| p.1.is_infinite());
    let (de, df): (Vec<_>, Vec<_>) = d.iter().copied().partition(|p| p.1.is_infinite());
    for size in [cf.len(), df.len()] {
        if size > MAX_DIAGRAM_POINTS {
            return Err(refuse("diagram", size, MAX_DIAGRAM_POINTS));
        }
    }
    if ce.len() != de.len() {
        return Ok(f64::INFINITY);
    }
    // on a line, sorted order is an optimal matching
    let mut cb: Vec<f64> = ce.iter().map(|p| p.0).collect();
    let mut db: Vec<f64> = de.iter().map(|p| p.0).collect();
    cb.sort_by(f64::total_cmp);
    db.sort_by(f64::total_cmp);
    let essential: f64 = cb.iter().zip(&db).map(|(a, b)| (a - b).abs()).sum();

    let mut best = cf.iter().map(|&p| to_diagonal(p)).sum::<f64>()
        + df.iter().map(|&p| to_diagonal(p)).sum::<f64>();
    let mut used = vec![false; df.len()];
    search(&cf, &df, 0, 0.0, &mut used, &mut best);
    Ok(essential + best)
}

fn search(c: &[DiagramPoint], d: &[DiagramPoint], i: usize, cost: f64, used: &mut [bool], best: &mut f64) {
    if cost >= *best {
        return;
    }
    if i == c.len() {
        let rest: f64 = d
            .iter()
            .zip(used.iter())
            .filter(|(_, &u)| !u)
            .map(|(&p, _)| to_diagonal(p))
            .sum();
        *best = best.min(cost + rest);
        return;
    }
    search(c, d, i + 1, cost + to_diagonal(c[i]), used, best);
    for j in 0..d.len() {
        if !used[j] {
            used[j] = true;
            search(c, d, i + 1, cost + linf(c[i], d[j]), used, best);
            used[j] = false;
        }
    }
}

/// A random simplicial complex on at most `max_vertices` vertices with at
/// most `max_cells` cells, closed under faces, and a monotone filtration
/// with values drawn from a small set so that ties occur.
pub fn random_filtered_complex<R: Rng>(rng: &mut R, max_vertices: usize, max_cells: usize) -> FilteredComplex {
    let simplices = random_simplices(rng, max_vertices, max_cells);
    let mut values: std::collections::HashMap<Vec<usize>, f64> = Default::default();
    let mut out = Vec::with_capacity(simplices.len());
    for s in simplices {
        let own = rng.gen_range(0..20) as f64 / 4.0;
        let mut f = own;
        if s.len() > 1 {
            for skip in 0..s.len() {
                let face: Vec<usize> = s.iter().enumerate().filter(|&(k, _)| k != skip).map(|(_, &v)| v).collect();
                f = f.max(values[&face]);
            }
        }
        values.insert(s.clone(), f);
        out.push((s, f));
    }
    FilteredComplex::from_simplices(out).expect("generated complexes are closed under faces")
}

/// Random face-closed simplex list, faces before cofaces.
pub fn random_simplices<R: Rng>(rng: &mut R, max_vertices: usize, max_cells: usize) -> Vec<Vec<usize>> {
    let vertices = rng.gen_range(1..=max_vertices.max(1)).min(max_cells.max(1));
    let mut simplices: Vec<Vec<usize>> = (0..vertices).map(|v| vec![v]).collect();
    let mut present: std::collections::HashSet<Vec<usize>> = simplices.iter().cloned().collect();
    let attempts = 4 * max_cells;
    for _ in 0..attempts {
        if simplices.len() >= max_cells {
            break;
        }
        let size = rng.gen_range(2..=4.min(vertices).max(2));
        if size > vertices {
            break;
        }
        let mut s: Vec<usize> = rand::seq::index::sample(rng, vertices, size).into_vec();
        s.sort_unstable();
        if present.contains(&s) {
            continue;
        }
        // add the missing faces first, smallest first, if they fit
        let mut missing: Vec<Vec<usize>> = all_faces(&s).into_iter().filter(|f| !present.contains(f)).collect();
        missing.sort_by_key(Vec::len);
        if simplices.len() + missing.len() + 1 > max_cells {
            continue;
        }
        for f in missing {
            present.insert(f.clone());
            simplices.push(f);
        }
        present.insert(s.clone());
        simplices.push(s);
    }
    simplices
}

/// Proper nonempty faces of a simplex.
fn all_faces(s: &[usize]) -> Vec<Vec<usize>> {
    let k = s.len();
    (1u32..(1 << k) - 1)
        .map(|mask| (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| s[i]).collect())
        .collect()
}

/// A simplicial complex whose cells carry monotone `d`-parameter filtration
/// values in `[0, scale)`, as `(dim, vertices, value)` with faces first.
pub fn random_multifiltered_complex<R: Rng>(
    rng: &mut R,
    max_cells: usize,
    d: usize,
    scale: f64,
) -> Vec<(Vec<usize>, Vec<f64>)> {
    let simplices = random_simplices(rng, 8, max_cells);
    let mut values: std::collections::HashMap<Vec<usize>, Vec<f64>> = Default::default();
    let mut out = Vec::with_capacity(simplices.len());
    for s in simplices {
        let mut f: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..scale)).collect();
        for face in all_faces(&s).iter().filter(|f| f.len() + 1 == s.len()) {
            for (x, y) in f.iter_mut().zip(&values[face]) {
                *x = x.max(*y);
            }
        }
        values.insert(s.clone(), f.clone());
        out.push((s, f));
    }
    out
}

/// Moves every value of a multifiltered complex by at most `eps` per
/// coordinate, keeping it monotone and inside `[0, upper]`.
pub fn perturb_multifiltered<R: Rng>(
    rng: &mut R,
    complex: &[(Vec<usize>, Vec<f64>)],
    eps: f64,
    upper: f64,
) -> Vec<(Vec<usize>, Vec<f64>)> {
    let mut values: std::collections::HashMap<Vec<usize>, Vec<f64>> = Default::default();
    let mut out = Vec::with_capacity(complex.len());
    for (s, f) in complex {
        let mut g: Vec<f64> = f
            .iter()
            .map(|&x| (x + rng.gen_range(-eps..=eps)).clamp(0.0, upper))
            .collect();
        for face in all_faces(s).iter().filter(|f| f.len() + 1 == s.len()) {
            for (x, y) in g.iter_mut().zip(&values[face]) {
                *x = x.max(*y);
            }
        }
        values.insert(s.clone(), g.clone());
        out.push((s.clone(), g));
    }
    out
}

/// One contribution per cell of a multifiltered complex.
pub fn multifiltered_contributions(complex: &[(Vec<usize>, Vec<f64>)]) -> Result<Vec<Contribution>> {
    complex
        .iter()
        .map(|(s, f)| Ok(Contribution::new(FiltrationVector::new(f.iter().copied())?, cell_sign(s.len() - 1))))
        .collect()
}

/// `n` uniform random points in `[0, 1)^d`.
pub fn random_cloud<R: Rng>(rng: &mut R, n: usize, d: usize) -> PointCloud {
    let coords: Vec<f64> = (0..n * d).map(|_| rng.gen::<f64>()).collect();
    PointCloud::from_flat(coords, d).expect("finite coordinates")
}

/// A random image with integer values in `0..256`.
pub fn random_image<R: Rng>(rng: &mut R, shape: Vec<usize>, channels: usize) -> Image {
    let len = shape.iter().product::<usize>() * channels;
    let values = (0..len).map(|_| rng.gen_range(0..256) as f64).collect();
    Image::new(shape, channels, values).expect("finite values")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_point() {
        let cloud = PointCloud::new(&[vec![0.3, 0.1]]).unwrap();
        assert_eq!(brute_force_vr(&cloud, 1.0).unwrap(), vec![Contribution::scalar(0.0, 1)]);
    }

    #[test]
    fn complete_graph_on_five_points() {
        let pts: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64 * 0.1]).collect();
        let cloud = PointCloud::new(&pts).unwrap();
        let raw = brute_force_vr(&cloud, 1.0).unwrap();
        assert_eq!(raw.len(), 31);
        assert_eq!(raw.iter().map(|c| c.delta).sum::<i64>(), 1);
    }

    #[test]
    fn refuses_large_clouds() {
        let pts: Vec<Vec<f64>> = (0..16).map(|i| vec![i as f64]).collect();
        assert!(brute_force_vr(&PointCloud::new(&pts).unwrap(), 1.0).is_err());
    }

    #[test]
    fn cubical_single_voxel() {
        let img = Image::grayscale(&[vec![5.0]]).unwrap();
        let raw = brute_force_cubical(&img).unwrap();
        assert_eq!(raw.len(), 9);
        assert_eq!(raw.iter().map(|c| c.delta).sum::<i64>(), 1);
    }

    #[test]
    fn cubical_two_pixels() {
        let img = Image::grayscale(&[vec![3.0, 7.0]]).unwrap();
        let raw = brute_force_cubical(&img).unwrap();
        let at3: Vec<_> = raw.iter().filter(|c| c.at.coords()[0] <= 3.0).collect();
        assert_eq!(at3.len(), 9);
        let count = |dim: i64| raw.iter().filter(|c| c.delta == dim).count();
        assert_eq!((count(1), count(-1)), (8, 7));
    }

    #[test]
    fn betti_of_a_vertex_and_a_circle() {
        let v = FilteredComplex::from_simplices(vec![(vec![0], 2.0)]).unwrap();
        assert_eq!(betti_curves_gf2(&v, &[1.0, 2.0, 3.0]).unwrap(), vec![vec![0], vec![1], vec![1]]);

        let circle = FilteredComplex::from_simplices(vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![0, 1], 1.0),
            (vec![1, 2], 1.0),
            (vec![0, 2], 1.0),
        ])
        .unwrap();
        assert_eq!(betti_curves_gf2(&circle, &[1.0]).unwrap(), vec![vec![1, 1]]);
        assert_eq!(betti_curves_gf2(&circle, &[0.0]).unwrap(), vec![vec![3, 0]]);
    }

    #[test]
    fn diagrams_of_a_filled_triangle() {
        let tri = FilteredComplex::from_simplices(vec![
            (vec![0], 0.0),
            (vec![1], 0.0),
            (vec![2], 0.0),
            (vec![0, 1], 1.0),
            (vec![1, 2], 1.0),
            (vec![0, 2], 2.0),
            (vec![0, 1, 2], 3.0),
        ])
        .unwrap();
        let dg = persistence_diagrams(&tri).unwrap();
        let mut h0 = dg[0].clone();
        h0.sort_by(|a, b| a.1.total_cmp(&b.1));
        assert_eq!(h0, vec![(0.0, 1.0), (0.0, 1.0), (0.0, f64::INFINITY)]);
        assert_eq!(dg[1], vec![(2.0, 3.0)]);
        assert!(dg[2].is_empty());
    }

    #[test]
    fn wasserstein_examples() {
        let c = [(0.0, 2.0)];
        assert_eq!(wasserstein1_exhaustive(&c, &c).unwrap(), 0.0);
        assert_eq!(wasserstein1_exhaustive(&c, &[]).unwrap(), 1.0);
        assert_eq!(wasserstein1_exhaustive(&c, &[(0.0, 3.0)]).unwrap(), 1.0);
        assert_eq!(
            wasserstein1_exhaustive(&[(0.0, f64::INFINITY)], &[(0.5, f64::INFINITY)]).unwrap(),
            0.5
        );
        assert_eq!(wasserstein1_exhaustive(&[(0.0, f64::INFINITY)], &[]).unwrap(), f64::INFINITY);
        let big: Vec<DiagramPoint> = (0..11).map(|i| (0.0, i as f64 + 1.0)).collect();
        assert!(wasserstein1_exhaustive(&big, &[]).is_err());
    }

    #[test]
    fn wasserstein_prefers_the_cheaper_matching() {
        let c = [(0.0, 1.0), (0.0, 4.0)];
        let d = [(0.0, 4.1), (0.2, 1.0)];
        let w = wasserstein1_exhaustive(&c, &d).unwrap();
        assert!((w - 0.3).abs() < 1e-12);
    }

    #[test]
    fn random_complexes_are_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let k = random_filtered_complex(&mut rng, 8, 60);
            assert!(k.len() <= 60);
            let m = random_multifiltered_complex(&mut rng, 50, 3, 1.0);
            assert!(m.len() <= 50);
            let p = perturb_multifiltered(&mut rng, &m, 0.1, 1.0);
            for ((_, a), (_, b)) in m.iter().zip(&p) {
                assert!(a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 0.1 + 1e-12));
            }
        }
    }
}
