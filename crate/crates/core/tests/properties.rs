use proptest::prelude::*;

use topoline_core::arrangement::build_arrangement;
use topoline_core::faces::{build_subdivision, direct_region_count};
use topoline_core::format::{emit_arrangement_file, parse_arrangement_file};
use topoline_core::generate::generate_random_arrangement;
use topoline_core::geom::Vector;
use topoline_core::scalar::Scalar;
use topoline_core::semilattice::semilattice_of;
use topoline_core::{Arrangement, Rat};

fn arrangement(seed: u64, n: usize, v: usize) -> Arrangement {
    build_arrangement(generate_random_arrangement::<Rat>(seed, n, v).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_is_a_sphere(seed in 0u64..10_000, n in 1usize..6, v in 1usize..5) {
        let arr = arrangement(seed, n, v);
        let sub = build_subdivision(&arr);
        prop_assert_eq!(sub.euler_characteristic(), 2);
        prop_assert!(sub.is_connected());
        prop_assert_eq!(semilattice_of(&arr).region_count(), direct_region_count(&arr).regions);
    }

    #[test]
    fn census_survives_invertible_maps(
        seed in 0u64..10_000,
        n in 1usize..5,
        m in prop::array::uniform4(-4i64..=4),
        t in prop::array::uniform2(-6i64..=6),
    ) {
        prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
        let arr = arrangement(seed, n, 3);
        let q = Rat::from_int;
        let mapped = arr
            .map_affine([[q(m[0]), q(m[1])], [q(m[2]), q(m[3])]], &Vector::new(q(t[0]), q(t[1])))
            .unwrap();
        prop_assert_eq!(mapped.pair_table(), arr.pair_table());
        prop_assert_eq!(direct_region_count(&mapped), direct_region_count(&arr));
    }

    #[test]
    fn file_round_trip(seed in 0u64..10_000, n in 1usize..6, v in 1usize..6) {
        let lines = generate_random_arrangement::<Rat>(seed, n, v).unwrap();
        let text = emit_arrangement_file(&lines);
        let back = parse_arrangement_file::<Rat>(&text).unwrap();
        prop_assert_eq!(emit_arrangement_file(&back), text);
    }
}
