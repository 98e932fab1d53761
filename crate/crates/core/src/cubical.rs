//! Cubical complexes of images under the top-cell construction.
//!
//! Each voxel is a top-dimensional cube and lower-dimensional cells take the
//! minimum of their cofaces, channel by channel. The image is consumed one
//! slice (along axis 0, the slowest axis) at a time through a window two
//! slices high, padded with `+inf` on every side. For each voxel of the lower
//! slice the window emits the cells of its *upper closure*: the voxel and
//! every face it shares only with voxels at the same or the next index on
//! each axis. Upper closures of the voxels and of the padding voxels at
//! index `-1` partition the cells of the complex.

use crate::error::{Error, Result};
use crate::filtration::{cell_sign, Contribution, FiltrationVector};
use crate::profile::aggregate;

/// A multichannel image on an n-dimensional grid.
///
/// Values are row-major over voxels with the channels of a voxel stored
/// together: value `(voxel, channel)` is at `voxel * channels + channel`.
#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    shape: Vec<usize>,
    channels: usize,
    values: Vec<f64>,
}

impl Image {
    pub fn new(shape: Vec<usize>, channels: usize, values: Vec<f64>) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::InvalidParameter("an image needs at least one axis".into()));
        }
        if channels == 0 {
            return Err(Error::InvalidParameter("an image needs at least one channel".into()));
        }
        let voxels: usize = shape.iter().product();
        if values.len() != voxels * channels {
            return Err(Error::InvalidParameter(format!(
                "shape {shape:?} with {channels} channel(s) needs {} values, got {}",
                voxels * channels,
                values.len()
            )));
        }
        if let Some((i, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                axis: i % channels,
                value,
            });
        }
        Ok(Image {
            shape,
            channels,
            values,
        })
    }

    /// A single-channel 2-D image from rows.
    pub fn grayscale(rows: &[Vec<f64>]) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidParameter("rows have different lengths".into()));
        }
        Self::new(vec![rows.len(), width], 1, rows.concat())
    }

    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn voxel_count(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.voxel_count() == 0
    }

    /// Values of the slice at index `k` along axis 0.
    pub fn slice(&self, k: usize) -> &[f64] {
        let len = self.shape[1..].iter().product::<usize>() * self.channels;
        &self.values[k * len..(k + 1) * len]
    }
}

/// Minimum over the coface values of a cell in one channel, ignoring
/// padding. `None` when every coface is padding, in which case the cell is
/// not part of the complex.
pub fn cell_filtration(cofaces: impl IntoIterator<Item = f64>) -> Option<f64> {
    let min = cofaces.into_iter().fold(f64::INFINITY, f64::min);
    (min < f64::INFINITY).then_some(min)
}

/// Raw contributions of the cubical complex of `img`: one per cell, with a
/// filtration vector holding one coordinate per channel.
pub fn compute_contributions_cubical(img: &Image) -> Result<Vec<Contribution>> {
    if img.is_empty() {
        return Ok(Vec::new());
    }
    let mut stream = CubicalStream::new(&img.shape[1..], img.channels)?;
    for k in 0..img.shape[0] {
        stream.push_slice(img.slice(k))?;
    }
    Ok(stream.finish())
}

/// Incremental form of [`compute_contributions_cubical`]: feed the slices of
/// an image along axis 0 in order, then call [`finish`](Self::finish).
///
/// Holds two padded slices plus the output buffer.
pub struct CubicalStream {
    channels: usize,
    /// extents of the padded slice (axes 1..), each `shape_i + 2`
    padded: Vec<usize>,
    slice_len: usize,
    padded_len: usize,
    /// `closure[s]` lists window offsets of the cofaces of cell `s`, where
    /// bit `i` of `s` marks the cell as sitting on the upper face along axis `i`
    closure: Vec<Vec<usize>>,
    window: Vec<f64>,
    started: bool,
    out: Vec<Contribution>,
    compact_at: Option<usize>,
}

impl CubicalStream {
    /// `slice_shape` is the image shape without axis 0.
    pub fn new(slice_shape: &[usize], channels: usize) -> Result<Self> {
        if channels == 0 {
            return Err(Error::InvalidParameter("an image needs at least one channel".into()));
        }
        let n = slice_shape.len() + 1;
        if n > 16 {
            return Err(Error::InvalidParameter(format!(
                "{n}-dimensional images are not supported"
            )));
        }
        let padded: Vec<usize> = slice_shape.iter().map(|s| s + 2).collect();
        let padded_len: usize = padded.iter().product();

        // strides of the padded window in voxels; axis 0 steps between layers
        let mut strides = vec![0usize; n];
        strides[0] = padded_len;
        let mut stride = 1;
        for i in (1..n).rev() {
            strides[i] = stride;
            stride *= padded[i - 1];
        }
        let closure = (0..1usize << n)
            .map(|s| {
                let mut offsets = vec![0usize];
                for (i, &st) in strides.iter().enumerate() {
                    if s & (1 << i) != 0 {
                        let shifted: Vec<usize> = offsets.iter().map(|o| o + st).collect();
                        offsets.extend(shifted);
                    }
                }
                offsets
            })
            .collect();

        Ok(CubicalStream {
            channels,
            slice_len: slice_shape.iter().product::<usize>() * channels,
            padded,
            padded_len,
            closure,
            window: vec![f64::INFINITY; 2 * padded_len * channels],
            started: false,
            out: Vec::new(),
            compact_at: None,
        })
    }

    /// Aggregates the output buffer whenever it reaches `threshold` entries.
    /// The raw list is lost, but the canonical result is unchanged.
    pub fn compacting(mut self, threshold: usize) -> Self {
        self.compact_at = Some(threshold.max(1));
        self
    }

    pub fn push_slice(&mut self, slice: &[f64]) -> Result<()> {
        if slice.len() != self.slice_len {
            return Err(Error::InvalidParameter(format!(
                "slice has {} values, expected {}",
                slice.len(),
                self.slice_len
            )));
        }
        if let Some((i, &value)) = slice.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite {
                axis: i % self.channels,
                value,
            });
        }
        // the previous upper layer becomes the lower layer
        let layer = self.padded_len * self.channels;
        self.window.copy_within(layer.., 0);
        self.write_upper(Some(slice));
        // on the first slice the lower layer is the padding row below the image
        self.started = true;
        self.emit_lower();
        Ok(())
    }

    /// Processes the last slice against the top padding and returns the raw
    /// contributions.
    pub fn finish(mut self) -> Vec<Contribution> {
        if self.started {
            let layer = self.padded_len * self.channels;
            self.window.copy_within(layer.., 0);
            self.write_upper(None);
            self.emit_lower();
        }
        self.out
    }

    fn write_upper(&mut self, slice: Option<&[f64]>) {
        let c = self.channels;
        let layer = self.padded_len * c;
        let upper = &mut self.window[layer..];
        upper.fill(f64::INFINITY);
        let Some(slice) = slice else { return };
        let rest = self.padded.len();
        let mut idx = vec![0usize; rest];
        for voxel in slice.chunks_exact(c) {
            let mut p = 0;
            for (i, &x) in idx.iter().enumerate() {
                p = p * self.padded[i] + x + 1;
            }
            upper[p * c..(p + 1) * c].copy_from_slice(voxel);
            for i in (0..rest).rev() {
                idx[i] += 1;
                if idx[i] < self.padded[i] - 2 {
                    break;
                }
                idx[i] = 0;
            }
        }
    }

    /// Emits the upper closures of every voxel of the lower layer, padding
    /// voxels at index -1 included.
    fn emit_lower(&mut self) {
        let c = self.channels;
        let n = self.padded.len() + 1;
        let rest = self.padded.len();
        // padded positions 0..=shape_i on each axis, i.e. x_i in -1..shape_i
        let mut idx = vec![0usize; rest];
        let mut values = vec![0.0f64; c];
        loop {
            let mut base = 0;
            for (i, &x) in idx.iter().enumerate() {
                base = base * self.padded[i] + x;
            }
            for (s, offsets) in self.closure.iter().enumerate() {
                values.fill(f64::INFINITY);
                for &o in offsets {
                    let v = &self.window[(base + o) * c..(base + o + 1) * c];
                    for (m, &x) in values.iter_mut().zip(v) {
                        *m = m.min(x);
                    }
                }
                if values[0] == f64::INFINITY {
                    continue;
                }
                let dim = n - s.count_ones() as usize;
                self.out.push(Contribution {
                    at: FiltrationVector::from_normalized(&values),
                    delta: cell_sign(dim),
                });
            }
            if let Some(limit) = self.compact_at {
                if self.out.len() >= limit {
                    self.out = aggregate(std::mem::take(&mut self.out));
                }
            }

            let mut axis = rest;
            loop {
                if axis == 0 {
                    return;
                }
                axis -= 1;
                idx[axis] += 1;
                if idx[axis] < self.padded[axis] - 1 {
                    break;
                }
                idx[axis] = 0;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{canonicalize, Canonical, EulerCharacteristicProfile};

    fn curve(img: &Image) -> crate::EulerCharacteristicCurve {
        curve_of(compute_contributions_cubical(img).unwrap())
    }

    fn curve_of(raw: Vec<Contribution>) -> crate::EulerCharacteristicCurve {
        match canonicalize(raw).unwrap() {
            Canonical::Curve(c) => c,
            Canonical::Profile(_) => panic!("expected a curve"),
        }
    }

    #[test]
    fn single_voxel_is_a_square() {
        let img = Image::grayscale(&[vec![5.0]]).unwrap();
        let raw = compute_contributions_cubical(&img).unwrap();
        assert_eq!(raw.len(), 9);
        assert_eq!(raw.iter().filter(|c| c.delta == 1).count(), 5);
        assert!(raw.iter().all(|c| c.at.coords() == [5.0]));
        let c = curve(&img);
        assert_eq!(c.jumps(), &[5.0]);
        assert_eq!(c.deltas(), &[1]);
    }

    #[test]
    fn two_pixels() {
        let img = Image::grayscale(&[vec![3.0, 7.0]]).unwrap();
        let raw = compute_contributions_cubical(&img).unwrap();
        let at = |t: f64| -> (usize, usize, usize) {
            let mut counts = (0, 0, 0);
            for c in raw.iter().filter(|c| c.at.coords()[0] <= t) {
                match c.delta {
                    1 => counts.0 += 1,
                    _ => counts.1 += 1,
                }
            }
            counts.2 = raw.iter().filter(|c| c.at.coords()[0] <= t).count();
            counts
        };
        // 4 vertices + 1 square = 5 positive, 4 edges negative
        assert_eq!(at(3.0), (5, 4, 9));
        // 6 vertices + 2 squares positive, 7 edges negative
        assert_eq!(at(7.0), (8, 7, 15));
        let c = curve(&img);
        assert_eq!(c.euler_characteristic_at(3.0), 1);
        assert_eq!(c.euler_characteristic_at(7.0), 1);
        assert_eq!(c.euler_characteristic_at(2.9), 0);
    }

    #[test]
    fn annulus() {
        let img = Image::grayscale(&[
            vec![0.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 0.0],
        ])
        .unwrap();
        let c = curve(&img);
        assert_eq!(c.euler_characteristic_at(0.0), 0);
        assert_eq!(c.euler_characteristic_at(1.0), 1);
    }

    #[test]
    fn cell_filtration_examples() {
        assert_eq!(cell_filtration([3.0, 7.0]), Some(3.0));
        assert_eq!(cell_filtration([5.0, f64::INFINITY, f64::INFINITY]), Some(5.0));
        assert_eq!(cell_filtration([2.0, 9.0, 4.0, 8.0]), Some(2.0));
        assert_eq!(cell_filtration([f64::INFINITY; 4]), None);
        assert_eq!(cell_filtration(std::iter::empty()), None);
    }

    #[test]
    fn constant_images_are_contractible() {
        for shape in [vec![4], vec![3, 5], vec![2, 3, 4], vec![2, 1, 2, 2]] {
            let n: usize = shape.iter().product();
            let img = Image::new(shape.clone(), 1, vec![2.5; n]).unwrap();
            let c = curve(&img);
            assert_eq!(c.jumps(), &[2.5], "shape {shape:?}");
            assert_eq!(c.deltas(), &[1], "shape {shape:?}");
        }
    }

    #[test]
    fn cell_count_is_full_complex() {
        // a grid of m_1 x ... x m_n voxels has prod(2 m_i + 1) cells
        for shape in [vec![1], vec![5], vec![2, 3], vec![3, 3, 2], vec![1, 2, 1, 2]] {
            let n: usize = shape.iter().product();
            let img = Image::new(shape.clone(), 1, vec![0.0; n]).unwrap();
            let raw = compute_contributions_cubical(&img).unwrap();
            let expected: usize = shape.iter().map(|m| 2 * m + 1).product();
            assert_eq!(raw.len(), expected, "shape {shape:?}");
        }
    }

    #[test]
    fn multichannel_takes_min_per_channel() {
        // two pixels; channel 0 prefers the left, channel 1 the right
        let img = Image::new(vec![1, 2], 2, vec![1.0, 9.0, 4.0, 2.0]).unwrap();
        let raw = compute_contributions_cubical(&img).unwrap();
        assert!(raw.iter().all(|c| c.dim() == 2));
        // the shared edge takes (1, 2), coming from different voxels
        let shared = FiltrationVector::new([1.0, 2.0]).unwrap();
        assert!(raw.iter().any(|c| c.at == shared && c.delta == -1));
        let p = EulerCharacteristicProfile::from_contributions(2, raw).unwrap();
        let at = |a: f64, b: f64| p.euler_characteristic_at(&FiltrationVector::new([a, b]).unwrap()).unwrap();
        assert_eq!(at(1.0, 9.0), 1);
        assert_eq!(at(4.0, 2.0), 1);
        // only the shared edge and its two vertices
        assert_eq!(at(1.0, 2.0), 1);
        assert_eq!(at(0.0, 100.0), 0);
    }

    #[test]
    fn empty_image() {
        let img = Image::new(vec![0, 3], 1, vec![]).unwrap();
        assert!(compute_contributions_cubical(&img).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Image::new(vec![2, 2], 1, vec![0.0; 3]).is_err());
        assert!(Image::new(vec![1], 1, vec![f64::NAN]).is_err());
        assert!(Image::new(vec![], 1, vec![]).is_err());
        let mut s = CubicalStream::new(&[2], 1).unwrap();
        assert!(s.push_slice(&[0.0]).is_err());
    }

    #[test]
    fn compacting_stream_keeps_the_canonical_result() {
        let values: Vec<f64> = (0..60).map(|i| ((i * 37) % 11) as f64).collect();
        let img = Image::new(vec![5, 4, 3], 1, values).unwrap();
        let mut stream = CubicalStream::new(&[4, 3], 1).unwrap().compacting(16);
        for k in 0..5 {
            stream.push_slice(img.slice(k)).unwrap();
        }
        let compact = curve_of(stream.finish());
        let full = curve_of(compute_contributions_cubical(&img).unwrap());
        assert_eq!(compact.jumps(), full.jumps());
        assert_eq!(compact.deltas(), full.deltas());
    }
}
