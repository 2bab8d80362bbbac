//! Property tests for the turbulence transforms and the alternation
//! combinatorics.

use proptest::prelude::*;

use mahavier::finite::FiniteRelation;
use mahavier::rational::{rat, Rational};
use mahavier::transforms::{
    chain_check, function_to_graph_witness, graph_to_function_witness, nleg_system,
    separate_turbulent_pair, star_lift_witness, threefold_map, verify_turbulent, FunctionSystem,
    GraphWitness, LegMap, LegSystem, PointSpec, SetSpec, TurbulenceKind,
};
use mahavier::zigzag::{zigzag_bound, zigzag_number, Label, LabeledPath};
use mahavier::IntervalUnion;

fn tent() -> FunctionSystem {
    FunctionSystem::Legs(nleg_system(1))
}

fn threefold() -> FunctionSystem {
    FunctionSystem::Legs(
        LegSystem::new(vec![LegMap {
            target: 0,
            map: threefold_map(),
        }])
        .unwrap(),
    )
}

fn on_unit(lo: &str, hi: &str) -> SetSpec {
    SetSpec::on_leg(1, 0, IntervalUnion::segment(rat(lo), rat(hi)))
}

#[test]
fn chains_hold_to_depth_six_for_separated_pairs() {
    // Every pair the verifier accepts as separated turbulent satisfies
    // the nested image chain for every word.
    let cases: Vec<(FunctionSystem, SetSpec, SetSpec)> = vec![
        (
            tent().iterate_system(2),
            on_unit("0", "1/4"),
            on_unit("1/2", "3/4"),
        ),
        (threefold(), on_unit("0", "1/3"), on_unit("2/3", "1")),
    ];
    for (sys, k0, k1) in cases {
        assert_eq!(
            verify_turbulent(&sys, &k0, &k1, 1),
            Ok(TurbulenceKind::SeparatedTurbulent)
        );
        for word in 0u32..(1 << 7) {
            let bits: Vec<u8> = (0..7).map(|i| ((word >> i) & 1) as u8).collect();
            assert_eq!(chain_check(&sys, &k0, &k1, &bits), Ok(true));
        }
    }
}

#[test]
fn refinement_images_are_exact() {
    // The refined sets map back onto the originals exactly.
    let sys = tent();
    let (r0, r1) = separate_turbulent_pair(
        &sys,
        &on_unit("0", "1/2"),
        &on_unit("1/2", "1"),
        &PointSpec::Leg(0, rat("1/2")),
    )
    .unwrap();
    assert_eq!(sys.image(&r0).unwrap(), on_unit("0", "1/2"));
    assert_eq!(sys.image(&r1).unwrap(), on_unit("1/2", "1"));

    let sys = threefold();
    let (r0, r1) = separate_turbulent_pair(
        &sys,
        &on_unit("0", "1/3"),
        &on_unit("1/3", "2/3"),
        &PointSpec::Leg(0, rat("1/3")),
    )
    .unwrap();
    assert_eq!(r0, on_unit("0", "1/9"));
    assert_eq!(r1, on_unit("4/9", "5/9"));
    assert_eq!(sys.image(&r0).unwrap(), on_unit("0", "1/3"));
    assert_eq!(sys.image(&r1).unwrap(), on_unit("1/3", "2/3"));
    assert_eq!(
        verify_turbulent(&sys, &r0, &r1, 2),
        Ok(TurbulenceKind::SeparatedTurbulent)
    );
}

#[test]
fn graph_round_trip_recovers_the_pair() {
    let sys = tent();
    for (k, l, m) in [
        (on_unit("0", "1/4"), on_unit("1/2", "3/4"), 2u32),
        (on_unit("0", "1/8"), on_unit("1/2", "5/8"), 3),
    ] {
        let w = function_to_graph_witness(&sys, &k, &l, m).unwrap();
        let GraphWitness::Interval(iw) = &w else {
            panic!("legs carriers produce interval witnesses")
        };
        assert_eq!(iw.level as u32, m + 1);
        let (k0, l0, m_back) = graph_to_function_witness(&sys, &w).unwrap();
        assert_eq!(m_back, m);
        assert!(k.is_subset_of(&k0).unwrap());
        assert!(l.is_subset_of(&l0).unwrap());
        assert_eq!(
            verify_turbulent(&sys, &k0, &l0, m),
            Ok(TurbulenceKind::SeparatedTurbulent)
        );
    }
}

#[test]
fn star_lift_projects_onto_the_whole_carrier() {
    let full3 = {
        let ids = ["0", "1", "2"];
        let mut edges = Vec::new();
        for a in ids {
            for b in ids {
                edges.push((a, b));
            }
        }
        FiniteRelation::from_edges(&ids, &edges)
    };
    let edge = |x: &str, y: &str| (x.to_string(), y.to_string());
    // K maps everything to 0; L maps everything to 1.
    let k = vec![edge("0", "0"), edge("1", "0"), edge("2", "0")];
    let l = vec![edge("0", "1"), edge("1", "1"), edge("2", "1")];
    let w = star_lift_witness(&full3, &k, &l).unwrap();
    assert_eq!(full3.verify_witness(&w), Ok(true));
    let pi1: std::collections::BTreeSet<usize> = w.k.iter().map(|t| t.first()).collect();
    assert_eq!(pi1.len(), full3.point_count());
    let pi1l: std::collections::BTreeSet<usize> = w.l.iter().map(|t| t.first()).collect();
    assert_eq!(pi1l.len(), full3.point_count());
}

#[test]
fn nleg_first_hit_is_the_leg_count() {
    for n in 1..=6usize {
        let sys = FunctionSystem::Legs(nleg_system(n));
        let k = SetSpec::on_leg(n, 0, IntervalUnion::segment(rat("0"), rat("1/2")));
        let l = SetSpec::on_leg(n, 0, IntervalUnion::segment(rat("1/2"), rat("1")));
        for m in 1..n as u32 {
            assert_eq!(
                verify_turbulent(&sys, &k, &l, m),
                Ok(TurbulenceKind::Neither),
                "n = {n}, m = {m}"
            );
        }
        assert_eq!(
            verify_turbulent(&sys, &k, &l, n as u32),
            Ok(TurbulenceKind::Turbulent),
            "n = {n}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn zigzag_is_monotone_under_deletion(
        labels in proptest::collection::vec(0u8..3, 0..12),
        mask in any::<u16>(),
    ) {
        let to_label = |v: &u8| match v {
            0 => Label::A,
            1 => Label::B,
            _ => Label::Neither,
        };
        let full: Vec<Label> = labels.iter().map(to_label).collect();
        let kept: Vec<Label> = full
            .iter()
            .enumerate()
            .filter(|(i, _)| (mask >> i) & 1 == 1)
            .map(|(_, l)| *l)
            .collect();
        let path_of = |ls: &[Label]| {
            LabeledPath::new(
                (0..ls.len() as i64).map(Rational::from_int).collect(),
                ls.to_vec(),
            )
            .unwrap()
        };
        prop_assert!(zigzag_number(&path_of(&kept)) <= zigzag_number(&path_of(&full)));
    }

    #[test]
    fn gapped_paths_respect_the_pigeonhole_bound(
        blocks in proptest::collection::vec((1u8..=3, 1u8..=7), 1..6),
        delta_num in 1u8..=8,
    ) {
        // Build alternating A/B blocks whose representatives sit strictly
        // more than delta apart; the zigzag number is then at most
        // ceil(diameter / delta).
        let delta = Rational::new(delta_num as i64, 8);
        let mut ts: Vec<Rational> = Vec::new();
        let mut labels = Vec::new();
        let mut cursor = Rational::zero();
        let tiny = Rational::new(1, 1000); // within-block spacing
        for (i, (size, gap_stretch)) in blocks.iter().enumerate() {
            let label = if i % 2 == 0 { Label::A } else { Label::B };
            for j in 0..*size {
                if !(ts.is_empty() && j == 0) {
                    cursor = if j == 0 {
                        // Strictly wider than delta between opposite blocks.
                        &cursor + &(&delta * &Rational::new(8 + *gap_stretch as i64, 8))
                    } else {
                        &cursor + &tiny
                    };
                }
                ts.push(cursor.clone());
                labels.push(label);
            }
        }
        let path = LabeledPath::new(ts, labels).unwrap();
        let diameter = path.diameter();
        prop_assume!(diameter > Rational::zero());
        let bound = zigzag_bound(&diameter, &delta).unwrap();
        prop_assert!(
            (zigzag_number(&path) as u64) <= bound,
            "zigzag {} exceeds bound {bound}",
            zigzag_number(&path)
        );
    }
}
