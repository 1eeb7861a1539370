mod common;

use common::{brute_source_sink, is_source_sink};
use hkh_core::diagram::{Crossing, Diagram, Edge, Sign, Violation};
use hkh_core::random::{random_diagram, RandomConfig};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn diagram(max_crossings: usize) -> impl Strategy<Value = Diagram> {
    (any::<u64>(), 0..=2usize, 0..=max_crossings, 0..=2usize).prop_map(|(seed, genus, crossings, loops)| {
        let cfg = RandomConfig { genus, crossings, max_word_len: 3, max_free_loops: loops };
        random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), &cfg)
    })
}

#[test]
fn validate_examples() {
    let d = Diagram::from_free_loops(1, vec!["a".parse().unwrap()]);
    assert!(d.validate().is_empty());
    let d = Diagram { genus: 0, edges: vec![Edge::plain()], crossings: vec![Crossing::new([0, 0, 1, 0], Sign::Positive)], free_loops: vec![] };
    let v = d.validate();
    assert!(v.iter().any(|x| matches!(x, Violation::DanglingEdge { crossing: 0, slot: 2 })), "{v:?}");
    assert!(v.iter().any(|x| matches!(x, Violation::Degree { edge: 0, count: 3 })), "{v:?}");
    assert_eq!(Diagram::new(1).crossing_signs().unwrap().signs, vec![]);
}

#[test]
fn planar_diagrams_have_source_sink_structures() {
    for name in ["trefoil_left", "trefoil_right", "figure_eight", "hopf", "unknot_kink_pos"] {
        let d = common::corpus_file(name);
        assert!(d.has_source_sink(), "{name}");
        assert!(brute_source_sink(&d).is_some(), "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn source_sink_matches_exhaustive_search(d in diagram(4)) {
        let brute = brute_source_sink(&d);
        let fast = d.source_sink();
        prop_assert_eq!(fast.is_some(), brute.is_some());
        if let Some(ss) = fast {
            prop_assert!(is_source_sink(&d.crossings, &ss.forward));
            prop_assert!(is_source_sink(&d.crossings, &ss.flipped().forward));
        }
    }

    #[test]
    fn json_round_trips(d in diagram(6)) {
        let back = Diagram::from_json(&d.to_json()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn json_without_signs_infers_them(d in diagram(6)) {
        let mut raw = d.to_json_value();
        for c in &mut raw.crossings {
            c.sign = None;
        }
        let back = Diagram::from_json_value(&raw).unwrap();
        // orientations of components without a pinned crossing may flip
        prop_assert!(back.is_valid());
        prop_assert_eq!(back.edges.len(), d.edges.len());
    }

    #[test]
    fn mirror_and_reverse_are_involutions(d in diagram(6)) {
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(d.reverse_orientation().reverse_orientation(), d.clone());
        prop_assert!(d.mirror().is_valid());
        prop_assert!(d.reverse_orientation().is_valid());
        let s = d.crossing_signs().unwrap();
        let m = d.mirror().crossing_signs().unwrap();
        prop_assert_eq!((s.n_plus, s.n_minus), (m.n_minus, m.n_plus));
        prop_assert_eq!(d.reverse_orientation().crossing_signs().unwrap(), s.clone());
        prop_assert_eq!(s.n_plus + s.n_minus, d.crossings.len());
    }
}
