mod common;

use dlogflow::algebra::{int, SeriesVector};
use dlogflow::coeffs::CoeffTables;
use dlogflow::flow::{self, FormalMap};
use dlogflow::trees::enumerate_trees;
use dlogflow::treeseries::p_script;
use dlogflow::verify::{random_map, random_system};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dlog_round_trip(seed in any::<u64>(), trunc in 2usize..=7) {
        let map = random_map(seed, trunc).map;
        let a = flow::dlog(&map).unwrap().a;
        let z = SeriesVector::identity(map.nvars(), trunc);
        prop_assert_eq!(&common::exp_field(&a, &int(1), &z), map.map());
        prop_assert_eq!(a, flow::dlog_tree_sum(&map, &CoeffTables::new()));
    }

    #[test]
    fn integer_powers(seed in any::<u64>()) {
        let map = random_map(seed, 5).map;
        let inv = flow::inverse_solver(&map).unwrap();
        prop_assert_eq!(flow::flow_at(&map, &int(-1)).unwrap(), inv.clone());
        prop_assert_eq!(flow::inverse_tree(&map), inv.clone());
        prop_assert_eq!(flow::flow_at(&map, &int(-2)).unwrap(), inv.compose(&inv).unwrap());
        prop_assert_eq!(flow::flow_at(&map, &int(3)).unwrap(), map.map().compose(&map.map().compose(map.map()).unwrap()).unwrap());
    }
}

/// For homogeneous `H` of degree `d`, the degree `(d−1)m+1` part of the
/// inverse is `(−1)^m Σ_{T∈𝕋_m} 𝒫_T`.
#[test]
fn inverse_is_graded_by_tree_size() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in [2usize, 3] {
        let trunc = 7;
        let h = random_system(2, &[d], trunc, &mut rng);
        let map = FormalMap::from_higher(h.clone()).unwrap();
        let inv = flow::inverse_tree(&map);
        for m in 1..=(trunc - 1) / (d - 1) {
            let degree = (d - 1) * m + 1;
            let mut want = SeriesVector::zero(2, trunc);
            for t in enumerate_trees(m) {
                want += &p_script(&t, &h);
            }
            if m % 2 == 1 {
                want = want.scale(&int(-1));
            }
            assert_eq!(inv.homogeneous_part(degree), want, "d = {d}, m = {m}");
        }
    }
}

#[test]
fn exponential_on_tree_series() {
    let tables = CoeffTables::new();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_system(2, &[2], 6, &mut rng);
    let map = FormalMap::from_higher(h).unwrap();
    for s in dlogflow::trees::trees_up_to(3) {
        for tau in [int(-1), int(2)] {
            assert!(
                flow::exp_on_ptree(&map, &tables, Some(&s), &tau).unwrap().equal(),
                "{s}"
            );
        }
    }
}
