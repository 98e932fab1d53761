use eulerprof_core::analysis::{distance_ecc, distance_ecp, merge_difference};
use eulerprof_core::multicrit::{expand_multicritical, MulticriticalCell};
use eulerprof_core::vectorize::{vectorization_error_bound, vectorize_ecc, vectorize_ecp, EcpTensor};
use eulerprof_core::{
    cell_sign, Contribution, EulerCharacteristicCurve, EulerCharacteristicProfile, FiltrationVector,
};
use proptest::prelude::*;

fn curve_strategy() -> impl Strategy<Value = EulerCharacteristicCurve> {
    prop::collection::vec((0..40u32, -3..=3i64), 0..12).prop_map(|pairs| {
        EulerCharacteristicCurve::from_pairs(pairs.into_iter().map(|(f, d)| (f as f64 * 0.125, d)).collect())
            .unwrap()
    })
}

fn profile_strategy(dim: usize) -> impl Strategy<Value = EulerCharacteristicProfile> {
    prop::collection::vec((prop::collection::vec(0..8u32, dim), -2..=2i64), 0..8).prop_map(move |items| {
        let raw = items
            .into_iter()
            .map(|(c, d)| {
                Contribution::new(FiltrationVector::new(c.into_iter().map(|x| x as f64 * 0.5)).unwrap(), d)
            })
            .collect();
        EulerCharacteristicProfile::from_contributions(dim, raw).unwrap()
    })
}

/// Midpoint Riemann sum of `|a - b|` on `[lo, hi]`.
fn riemann(a: &EulerCharacteristicCurve, b: &EulerCharacteristicCurve, lo: f64, hi: f64, n: usize) -> f64 {
    let h = (hi - lo) / n as f64;
    (0..n)
        .map(|i| {
            let t = lo + (i as f64 + 0.5) * h;
            (a.euler_characteristic_at(t) - b.euler_characteristic_at(t)).abs() as f64 * h
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ecc_distance_is_a_metric(a in curve_strategy(), b in curve_strategy(), c in curve_strategy()) {
        let u = Some(6.0);
        let ab = distance_ecc(&a, &b, u).unwrap();
        let ba = distance_ecc(&b, &a, u).unwrap();
        prop_assert_eq!(ab, ba);
        prop_assert!(ab >= 0.0);
        prop_assert_eq!(distance_ecc(&a, &a, u).unwrap(), 0.0);
        let ac = distance_ecc(&a, &c, u).unwrap();
        let cb = distance_ecc(&c, &b, u).unwrap();
        prop_assert!(ab <= ac + cb + 1e-9);
    }

    #[test]
    fn ecc_distance_matches_numerical_integration(a in curve_strategy(), b in curve_strategy()) {
        // jumps lie on a 1/8 grid and the sample step divides it, so only rounding remains
        let exact = distance_ecc(&a, &b, Some(5.0)).unwrap();
        let approx = riemann(&a, &b, -1.0, 5.0, 96_000);
        prop_assert!((exact - approx).abs() <= 1e-6, "{} vs {}", exact, approx);
    }

    #[test]
    fn one_parameter_ecp_distance_equals_ecc_distance(a in curve_strategy(), b in curve_strategy()) {
        let to_profile = |c: &EulerCharacteristicCurve| {
            EulerCharacteristicProfile::from_contributions(1, c.contributions().collect()).unwrap()
        };
        let t = 5.5;
        let via_ecc = distance_ecc(&a, &b, Some(t)).unwrap();
        let via_ecp = distance_ecp(&to_profile(&a), &to_profile(&b), &FiltrationVector::scalar(t).unwrap()).unwrap();
        prop_assert_eq!(via_ecc.to_bits(), via_ecp.to_bits());
    }

    #[test]
    fn ecp_distance_matches_grid_integration(a in profile_strategy(2), b in profile_strategy(2)) {
        // coordinates lie on a 1/2 grid; midpoints of a 1/4 grid see every cell
        let t = 4.0;
        let exact = distance_ecp(&a, &b, &FiltrationVector::new([t, t]).unwrap()).unwrap();
        let h = 0.25;
        let steps = (t / h) as usize;
        let mut approx = 0.0;
        for i in 0..steps {
            for j in 0..steps {
                let p = FiltrationVector::new([(i as f64 + 0.5) * h, (j as f64 + 0.5) * h]).unwrap();
                let d = a.euler_characteristic_at(&p).unwrap() - b.euler_characteristic_at(&p).unwrap();
                approx += d.abs() as f64 * h * h;
            }
        }
        prop_assert!((exact - approx).abs() <= 1e-9);
        let ba = distance_ecp(&b, &a, &FiltrationVector::new([t, t]).unwrap()).unwrap();
        prop_assert_eq!(exact, ba);
    }

    #[test]
    fn merge_difference_is_pointwise(a in curve_strategy(), b in curve_strategy()) {
        for (t, d) in merge_difference(&a, &b) {
            prop_assert_eq!(d, a.euler_characteristic_at(t) - b.euler_characteristic_at(t));
        }
    }

    #[test]
    fn refining_samples_respects_the_bound(
        pairs in prop::collection::vec((0..1000u32, prop::sample::select(vec![-1i64, 1])), 1..40),
        n in 2..30usize,
    ) {
        let raw: Vec<Contribution> = pairs.iter().map(|&(f, d)| Contribution::scalar(f as f64 / 1000.0, d)).collect();
        let curve = EulerCharacteristicCurve::from_contributions(&raw).unwrap();
        let coarse = vectorization_error_bound(&curve, n, 1.0).unwrap();
        let fine = vectorization_error_bound(&curve, 2 * n - 1, 1.0).unwrap();
        prop_assert!(coarse.holds());
        prop_assert!(fine.holds());
        prop_assert!(fine.measured <= coarse.measured + fine.bound);
    }

    #[test]
    fn tensor_flatten_round_trip(p in profile_strategy(3), n0 in 2..5usize, n1 in 2..5usize, n2 in 2..5usize) {
        let t = vectorize_ecp(&p, &[n0, n1, n2], &[4.0, 3.0, 2.0]).unwrap();
        let back = EcpTensor::from_flat(t.shape().to_vec(), t.flatten().to_vec()).unwrap();
        prop_assert_eq!(&back, &t);
        for i in 0..n0 {
            for j in 0..n1 {
                for k in 0..n2 {
                    prop_assert_eq!(t.flatten()[(i * n1 + j) * n2 + k], t.get(&[i, j, k]).unwrap());
                }
            }
        }
    }
}

fn antichain() -> impl Strategy<Value = Vec<Vec<u32>>> {
    (2..=3usize)
        .prop_flat_map(|d| prop::collection::vec(prop::collection::vec(0..6u32, d), 1..=5))
        .prop_map(|mut pts| {
            pts.sort();
            pts.dedup();
            let le = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| x <= y);
            pts.iter()
                .filter(|p| !pts.iter().any(|q| q != *p && le(q, p)))
                .cloned()
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multicritical_indicator_and_support(
        births in antichain(),
        dim in 0..3usize,
        queries in prop::collection::vec(prop::collection::vec(-1.0..7.0f64, 3), 200),
    ) {
        let fv: Vec<FiltrationVector> = births
            .iter()
            .map(|b| FiltrationVector::new(b.iter().map(|&x| x as f64)).unwrap())
            .collect();
        let cell = MulticriticalCell::new(dim, fv.clone()).unwrap();
        let out = expand_multicritical(&cell);
        let d = fv[0].dim();

        // support: joins of nonempty subsets
        let k = fv.len();
        let joins: Vec<FiltrationVector> = (1u32..(1 << k))
            .map(|mask| {
                (0..k)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| fv[i].clone())
                    .reduce(|a, b| a.join(&b).unwrap())
                    .unwrap()
            })
            .collect();
        for c in &out {
            prop_assert!(joins.contains(&c.at));
            prop_assert!(c.delta != 0);
        }

        // queries on and off the integer grid
        let mut points: Vec<Vec<f64>> = queries.iter().map(|q| q[..d].to_vec()).collect();
        points.extend(joins.iter().map(|j| j.coords().to_vec()));
        for x in points {
            let le = |p: &FiltrationVector| p.coords().iter().zip(&x).all(|(a, b)| a <= b);
            let sum: i64 = out.iter().filter(|c| le(&c.at)).map(|c| c.delta).sum();
            let expected = if fv.iter().any(le) { cell_sign(dim) } else { 0 };
            prop_assert_eq!(sum, expected);
        }
        if k == 1 {
            prop_assert_eq!(out.len(), 1);
        }
    }
}

#[test]
fn vectorization_is_not_distance_stable() {
    // a narrow spike between two samples: same vectors, distance grows with the spike
    let base = [(0.0, 5), (1.5, -2), (2.5, -1), (5.5, -1)];
    let spiked = |h: i64| {
        let mut v = base.to_vec();
        v.extend([(2.5, h - 2), (3.5, 2 - h)]);
        EulerCharacteristicCurve::from_pairs(v).unwrap()
    };
    let plain = EulerCharacteristicCurve::from_pairs(base.to_vec()).unwrap();
    for h in [10, 1000, 100_000] {
        let s = spiked(h);
        assert_eq!(vectorize_ecc(&plain, 5, 8.0).unwrap(), vectorize_ecc(&s, 5, 8.0).unwrap());
        assert_eq!(distance_ecc(&plain, &s, None).unwrap(), (h - 2) as f64);
    }

    // a jump moved across a sample: distance shrinks, vectors stay apart
    for delta in [1.0, 1e-3, 1e-9] {
        let a = EulerCharacteristicCurve::from_pairs(vec![(0.0, 5), (4.0 - delta / 2.0, -4)]).unwrap();
        let b = EulerCharacteristicCurve::from_pairs(vec![(0.0, 5), (4.0 + delta / 2.0, -4)]).unwrap();
        let d = distance_ecc(&a, &b, None).unwrap();
        assert!((d - 4.0 * delta).abs() <= 1e-12);
        let va = vectorize_ecc(&a, 5, 8.0).unwrap();
        let vb = vectorize_ecc(&b, 5, 8.0).unwrap();
        assert_eq!(va, vec![5, 5, 1, 1, 1]);
        assert_eq!(vb, vec![5, 5, 5, 1, 1]);
    }
}

#[test]
fn three_contribution_profile_grid() {
    let raw = vec![
        Contribution::new(FiltrationVector::new([1.0, 2.0]).unwrap(), 1),
        Contribution::new(FiltrationVector::new([4.0, 1.0]).unwrap(), 1),
        Contribution::new(FiltrationVector::new([2.0, 4.0]).unwrap(), -1),
    ];
    let p = EulerCharacteristicProfile::from_contributions(2, raw).unwrap();
    // cell midpoints of the grid cut at x in {1,2,4}, y in {1,2,4}, up to 6
    let xs = [0.5, 1.5, 3.0, 5.0];
    let ys = [0.5, 1.5, 3.0, 5.0];
    let mut grid = [[0i64; 4]; 4];
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            grid[j][i] = p.euler_characteristic_at(&FiltrationVector::new([x, y]).unwrap()).unwrap();
        }
    }
    // rows bottom to top
    assert_eq!(
        grid,
        [[0, 0, 0, 0], [0, 0, 0, 1], [0, 1, 1, 2], [0, 1, 0, 1]]
    );
}
