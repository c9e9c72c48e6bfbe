//! Property tests across modules.

mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use num_rational::BigRational;
use toric_origami::metric::isoperimetric_constants;
use toric_origami::poset::random::random_sphere;
use toric_origami::surgery::connected_sum;
use toric_origami::template::orbit_posets_agree;
use toric_origami::weighted::{
    check_star_condition, coloring_to_characteristic, four_color, suspend, CharacteristicFunction,
    SignClass,
};
use toric_origami::WeightedSphere;

fn det3(r: &[Vec<i64>]) -> i64 {
    r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
        - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
        + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn four_colouring_is_proper(seed in any::<u64>(), n in 4usize..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sphere(&mut rng, n, 4 * n);
        let c = four_color(&s).unwrap();
        prop_assert!(c.check_proper(&s).is_ok());
        prop_assert!(c.colors_used() <= 4);
    }

    #[test]
    fn star_condition_ignores_signs(seed in any::<u64>(), n in 4usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sphere(&mut rng, n, 3 * n);
        let l = coloring_to_characteristic(&four_color(&s).unwrap());
        // raw representatives with random signs
        let raw: Vec<(usize, Vec<i64>)> = l
            .values()
            .iter()
            .map(|(&v, c)| {
                let sign = if rng.gen_bool(0.5) { -1 } else { 1 };
                (v, c.rep().iter().map(|x| sign * x).collect())
            })
            .collect();
        let flipped = CharacteristicFunction::from_vectors(3, raw.iter().cloned()).unwrap();
        prop_assert_eq!(&flipped, &l);
        let by_det = s.simplices_of_rank(3).all(|t| {
            let rows: Vec<Vec<i64>> = s
                .vertices_of(t)
                .map(|v| raw.iter().find(|(w, _)| *w == v).unwrap().1.clone())
                .collect();
            det3(&rows).abs() == 1
        });
        prop_assert_eq!(check_star_condition(&s, &flipped, false).unwrap().holds, by_det);
        prop_assert!(by_det);
    }

    #[test]
    fn suspension_adds_one_value(seed in any::<u64>(), n in 4usize..30, k in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_sphere(&mut rng, n, 3 * n);
        let l = coloring_to_characteristic(&four_color(&s).unwrap());
        let mut w = WeightedSphere::new(s, l).unwrap();
        let r = w.value_count();
        for i in 1..=k {
            w = suspend(&w);
            prop_assert_eq!(w.value_count(), r + i);
            prop_assert_eq!(w.rank(), 3 + i);
            prop_assert_eq!(w.sphere.vertex_count(), n + 2 * i);
        }
        prop_assert!(check_star_condition(&w.sphere, &w.lambda, false).unwrap().holds);
    }

    #[test]
    fn connected_sum_vertex_count(seed in any::<u64>(), n1 in 4usize..30, n2 in 4usize..30) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_sphere(&mut rng, n1, 3 * n1);
        let b = random_sphere(&mut rng, n2, 3 * n2);
        let up_a = a.cofaces();
        let up_b = b.cofaces();
        // a pair of vertices with links of equal length
        let pair = a.vertices().find_map(|u| {
            b.vertices().find(|&v| up_a.count(u) == up_b.count(v)).map(|v| (u, v))
        });
        prop_assume!(pair.is_some());
        let (u, v) = pair.unwrap();
        let deg = up_a.count(u);
        let sum = connected_sum(&a, u, &b, v, None).unwrap();
        prop_assert_eq!(sum.vertex_count(), n1 + n2 - 2 - deg);
        prop_assert_eq!(sum.euler_characteristic(), 2);
    }

    #[test]
    fn minimal_q_brackets_the_threshold(n in 3u64..40, c2n in 1i64..8, c2d in 1i64..4, c3n in 1i64..4, c3d in 1i64..8) {
        let c2 = BigRational::new(c2n.into(), c2d.into());
        let c3 = BigRational::new(c3n.into(), c3d.into());
        let k = isoperimetric_constants(n, &c2, &c3).unwrap();
        let q = k.minimal_q();
        prop_assert!(k.exceeded_by(2 * q * q + 2));
        prop_assert!(q == 1 || !k.exceeded_by(2 * (q - 1) * (q - 1) + 2));
    }
}

#[test]
fn sign_class_normalises() {
    assert_eq!(
        SignClass::new(vec![-1, 0, 2]).unwrap(),
        SignClass::new(vec![1, 0, -2]).unwrap()
    );
}

#[test]
fn tree_templates_agree() {
    for (name, t) in common::tree_templates() {
        let r = orbit_posets_agree(&t).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(
            r.weighted_isomorphic && r.provenance_preserved,
            "{name}: {r:?}"
        );
    }
}
