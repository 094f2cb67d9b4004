//! Cross-module properties of the combinatorial pipeline and the numerical
//! index engine.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use chlab_core::czengine::{
    cz_crossing_form, random_instance, rotation_cz_sp2, spectral_flow, AsymptoticFamily,
};
use chlab_core::homology::{closed_form, inclusion_map};
use chlab_core::{build_complex, enumerate_orbits, homology_ranks, GroupSpec};

fn any_spec() -> impl Strategy<Value = GroupSpec> {
    let suite = GroupSpec::standard_suite();
    (0..suite.len()).prop_map(move |i| suite[i])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homology_matches_closed_form(spec in any_spec(), n in 1u32..=6) {
        let ranks = homology_ranks(&build_complex(&spec, n).unwrap());
        prop_assert_eq!(ranks, closed_form(&spec, n).unwrap());
    }

    #[test]
    fn bad_orbits_sit_in_odd_degrees(spec in any_spec(), n in 1u32..=6) {
        for o in enumerate_orbits(&spec, n).unwrap() {
            prop_assert!(o.good || o.grading % 2 == 1, "{}", o.name());
        }
    }

    #[test]
    fn inclusions_compose(spec in any_spec(), a in 1u32..=3, b in 0u32..=2, c in 0u32..=2) {
        let (m, l) = (a + b, a + b + c);
        let first = inclusion_map(&spec, a, m).unwrap();
        let second = inclusion_map(&spec, m, l).unwrap();
        let direct = inclusion_map(&spec, a, l).unwrap();
        prop_assert!(first.is_injective() && second.is_injective());
        prop_assert_eq!(second.compose(&first).unwrap(), direct);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn crossing_form_matches_rotation_in_sp2(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, 1).unwrap();
        prop_assert_eq!(cz_crossing_form(&inst.path).unwrap(), inst.index);
        prop_assert_eq!(rotation_cz_sp2(&inst.path).unwrap().index, inst.index);
    }

    #[test]
    fn reversed_family_negates_flow(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_instance(&mut rng, 1).unwrap();
        let b = random_instance(&mut rng, 1).unwrap();
        let (ga, gb) = (a.generator.clone(), b.generator.clone());
        let forward = AsymptoticFamily::interpolating(
            2, 32, move |t| ga.at(t), move |t| gb.at(t),
        ).unwrap();
        let (ga, gb) = (a.generator, b.generator);
        let backward = AsymptoticFamily::interpolating(
            2, 32, move |t| gb.at(t), move |t| ga.at(t),
        ).unwrap();
        let flow = spectral_flow(&forward).unwrap();
        prop_assert_eq!(flow, a.index - b.index);
        prop_assert_eq!(spectral_flow(&backward).unwrap(), -flow);
    }
}
