use eulerprof_core::cubical::{compute_contributions_cubical, Image};
use eulerprof_core::{canonicalize, Canonical, Contribution};
use eulerprof_oracle as oracle;
use proptest::prelude::*;

fn image_strategy() -> impl Strategy<Value = Image> {
    (prop::collection::vec(1..=6usize, 1..=3), 1..=3usize)
        .prop_map(|(mut shape, c)| {
            if shape.len() == 3 {
                shape[2] = shape[2].min(3);
            }
            (shape, c)
        })
        .prop_flat_map(|(shape, c)| {
            let len = shape.iter().product::<usize>() * c;
            prop::collection::vec(0..256u32, len).prop_map(move |values| {
                Image::new(shape.clone(), c, values.into_iter().map(f64::from).collect()).unwrap()
            })
        })
}

fn sorted(mut raw: Vec<Contribution>) -> Vec<Contribution> {
    raw.sort_by(|a, b| a.at.lex_cmp(&b.at).then(a.delta.cmp(&b.delta)));
    raw
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn streaming_matches_full_complex(img in image_strategy()) {
        let fast = compute_contributions_cubical(&img).unwrap();
        let slow = oracle::brute_force_cubical(&img).unwrap();
        prop_assert_eq!(fast.len(), slow.len());
        prop_assert_eq!(canonicalize(fast.clone()).unwrap(), canonicalize(slow.clone()).unwrap());
        prop_assert_eq!(sorted(fast), sorted(slow));
    }

    #[test]
    fn upper_closures_partition_the_cells(shape in prop::collection::vec(1..=6usize, 1..=3)) {
        let mut shape = shape;
        if shape.len() == 3 {
            shape[2] = shape[2].min(3);
        }
        let n: usize = shape.iter().product();
        let img = Image::new(shape.clone(), 1, (0..n).map(|i| i as f64).collect()).unwrap();
        let cells: usize = shape.iter().map(|m| 2 * m + 1).product();
        prop_assert_eq!(compute_contributions_cubical(&img).unwrap().len(), cells);
    }

    #[test]
    fn constant_images_are_contractible(
        shape in prop::collection::vec(1..=5usize, 1..=4),
        value in -100.0..100.0f64,
    ) {
        let n: usize = shape.iter().product();
        let img = Image::new(shape, 1, vec![value; n]).unwrap();
        match canonicalize(compute_contributions_cubical(&img).unwrap()).unwrap() {
            Canonical::Curve(c) => {
                prop_assert_eq!(c.jumps(), &[value + 0.0][..]);
                prop_assert_eq!(c.deltas(), &[1][..]);
            }
            Canonical::Profile(_) => prop_assert!(false, "expected a curve"),
        }
    }
}

#[test]
fn worked_examples_agree_with_the_oracle() {
    let cases = [
        Image::grayscale(&[vec![5.0]]).unwrap(),
        Image::grayscale(&[vec![3.0, 7.0]]).unwrap(),
        Image::grayscale(&[vec![0.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 0.0]]).unwrap(),
    ];
    for img in cases {
        assert_eq!(
            sorted(compute_contributions_cubical(&img).unwrap()),
            sorted(oracle::brute_force_cubical(&img).unwrap())
        );
    }
}

#[test]
fn real_valued_images() {
    let img = Image::new(vec![2, 2], 1, vec![0.25, -1.5, 3.75, 0.125]).unwrap();
    assert_eq!(
        sorted(compute_contributions_cubical(&img).unwrap()),
        sorted(oracle::brute_force_cubical(&img).unwrap())
    );
}
