//! L1 distances between curves and profiles.

use crate::curve::EulerCharacteristicCurve;
use crate::error::{Error, Result};
use crate::filtration::FiltrationVector;
use crate::profile::EulerCharacteristicProfile;

/// The pointwise difference `a - b` as `(point, a(t) - b(t))` pairs, one per
/// distinct jump point of either curve, in increasing order.
///
/// Points where both curves jump by the same amount are kept, so the list
/// has the same breakpoints as the two inputs together.
pub fn merge_difference(
    a: &EulerCharacteristicCurve,
    b: &EulerCharacteristicCurve,
) -> Vec<(f64, i64)> {
    let (fa, da) = (a.jumps(), a.deltas());
    let (fb, db) = (b.jumps(), b.deltas());
    let mut out = Vec::with_capacity(fa.len() + fb.len());
    let (mut i, mut j) = (0, 0);
    let mut diff = 0i64;
    while i < fa.len() || j < fb.len() {
        let t = match (fa.get(i), fb.get(j)) {
            (Some(&x), Some(&y)) => x.min(y),
            (Some(&x), None) => x,
            (None, Some(&y)) => y,
            (None, None) => unreachable!(),
        };
        if i < fa.len() && fa[i] == t {
            diff += da[i];
            i += 1;
        }
        if j < fb.len() && fb[j] == t {
            diff -= db[j];
            j += 1;
        }
        out.push((t, diff));
    }
    out
}

/// L1 distance between two curves.
///
/// With `upper`, integrates `|a - b|` over `(-inf, upper]`. Without it the
/// curves must end at the same Euler characteristic, otherwise the integral
/// diverges and an error is returned.
pub fn distance_ecc(
    a: &EulerCharacteristicCurve,
    b: &EulerCharacteristicCurve,
    upper: Option<f64>,
) -> Result<f64> {
    match upper {
        Some(u) if u.is_nan() => {
            return Err(Error::InvalidParameter("upper bound is NaN".into()));
        }
        None if a.final_value() != b.final_value() => {
            return Err(Error::DivergentIntegral {
                a_tail: a.final_value(),
                b_tail: b.final_value(),
            });
        }
        _ => {}
    }
    let upper = upper.unwrap_or(f64::INFINITY);
    let diff = merge_difference(a, b);
    let mut total = 0.0;
    for (k, &(t, d)) in diff.iter().enumerate() {
        if t >= upper {
            break;
        }
        let end = diff.get(k + 1).map_or(upper, |&(next, _)| next.min(upper));
        if d != 0 {
            total += d.unsigned_abs() as f64 * (end - t);
        }
    }
    Ok(total)
}

/// Attaches a truncation bound to a profile. See
/// [`EulerCharacteristicProfile::truncate`].
pub fn truncate(
    p: EulerCharacteristicProfile,
    bound: FiltrationVector,
) -> Result<EulerCharacteristicProfile> {
    p.truncate(bound)
}

/// Exact L1 distance between two profiles over the box
/// `[lower_1, t_1] x ... x [lower_n, t_n]`, where `t` is the truncation and
/// `lower_i = min(0, smallest coordinate on axis i)`.
///
/// The box is cut into cuboids by the coordinates of both profiles; the
/// difference is constant on each cuboid and equals its value at the lower
/// corner. Cuboids are swept in slabs along axis 0, keeping running sums
/// over the remaining axes, so memory is linear in the number of cuboids of
/// one slab.
pub fn distance_ecp(
    a: &EulerCharacteristicProfile,
    b: &EulerCharacteristicProfile,
    truncation: &FiltrationVector,
) -> Result<f64> {
    let n = a.dim();
    for d in [b.dim(), truncation.dim()] {
        if d != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d,
            });
        }
    }
    let bound = truncation.coords();
    let merged: Vec<(&[f64], i64)> = a
        .contributions()
        .iter()
        .map(|c| (c.at.coords(), c.delta))
        .chain(b.contributions().iter().map(|c| (c.at.coords(), -c.delta)))
        .collect();
    for (coords, _) in &merged {
        for (axis, (&v, &t)) in coords.iter().zip(bound).enumerate() {
            if v >= t {
                return Err(Error::Truncation {
                    axis,
                    bound: t,
                    value: v,
                });
            }
        }
    }

    // breakpoints[i]: sorted distinct cut points on axis i, from the lower
    // limit to the truncation
    let breakpoints: Vec<Vec<f64>> = (0..n)
        .map(|axis| {
            let mut cuts: Vec<f64> = merged.iter().map(|(c, _)| c[axis]).collect();
            let lower = cuts.iter().copied().fold(0.0f64, f64::min);
            cuts.push(lower);
            cuts.push(bound[axis]);
            cuts.sort_unstable_by(f64::total_cmp);
            cuts.dedup();
            cuts
        })
        .collect();
    let index = |axis: usize, v: f64| -> usize {
        breakpoints[axis].partition_point(|&x| x < v)
    };

    // grid over axes 1.., one node per breakpoint, row-major
    let rest: Vec<usize> = breakpoints[1..].iter().map(Vec::len).collect();
    let slab_len: usize = rest.iter().product();
    let widths: Vec<f64> = slab_volumes(&breakpoints[1..]);

    let mut by_slab: Vec<(usize, usize, i64)> = merged
        .iter()
        .map(|(c, d)| {
            let mut flat = 0;
            for axis in 1..n {
                flat = flat * rest[axis - 1] + index(axis, c[axis]);
            }
            (index(0, c[0]), flat, *d)
        })
        .collect();
    by_slab.sort_unstable();

    let mut deltas = vec![0i64; slab_len];
    let mut running = vec![0i64; slab_len];
    let mut next = 0;
    let mut total = 0.0;
    let axis0 = &breakpoints[0];
    for s in 0..axis0.len() - 1 {
        while next < by_slab.len() && by_slab[next].0 == s {
            deltas[by_slab[next].1] += by_slab[next].2;
            next += 1;
        }
        running.copy_from_slice(&deltas);
        prefix_sums(&mut running, &rest);
        let mut slab = 0.0;
        for (&d, &w) in running.iter().zip(&widths) {
            if d != 0 {
                slab += d.unsigned_abs() as f64 * w;
            }
        }
        if slab != 0.0 {
            total += slab * (axis0[s + 1] - axis0[s]);
        }
    }
    Ok(total)
}

/// Volume of the cuboid whose lower corner is each grid node; 0 for nodes
/// on the last breakpoint of some axis.
fn slab_volumes(breakpoints: &[Vec<f64>]) -> Vec<f64> {
    let mut volumes = vec![1.0f64];
    for cuts in breakpoints {
        let m = cuts.len();
        let mut next = Vec::with_capacity(volumes.len() * m);
        for &v in &volumes {
            for k in 0..m {
                let w = if k + 1 < m { cuts[k + 1] - cuts[k] } else { 0.0 };
                next.push(v * w);
            }
        }
        volumes = next;
    }
    volumes
}

/// In-place inclusive prefix sums along every axis of a row-major array.
pub(crate) fn prefix_sums(values: &mut [i64], shape: &[usize]) {
    let mut stride = 1;
    for &extent in shape.iter().rev() {
        let block = stride * extent;
        for chunk in values.chunks_mut(block) {
            for k in stride..block {
                chunk[k] += chunk[k - stride];
            }
        }
        stride = block;
    }
}
