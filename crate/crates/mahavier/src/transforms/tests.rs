use super::*;
use crate::rational::rat;

fn seg(lo: &str, hi: &str) -> IntervalUnion {
    IntervalUnion::segment(rat(lo), rat(hi))
}

fn tent_system() -> FunctionSystem {
    FunctionSystem::Legs(nleg_system(1))
}

fn on_tent(lo: &str, hi: &str) -> SetSpec {
    SetSpec::on_leg(1, 0, seg(lo, hi))
}

/// The tent map restricted to the 1/8 grid, as a finite system.
fn dyadic_tent() -> FunctionSystem {
    let ids: Vec<String> = (0..=8).map(|k| Rational::new(k, 8).to_string()).collect();
    let id_refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let tent = tent_map();
    let edges: Vec<(String, String)> = (0..=8)
        .map(|k| {
            let x = Rational::new(k, 8);
            let y = tent.eval(&x).unwrap();
            (x.to_string(), y.to_string())
        })
        .collect();
    let rel = FiniteRelation::new(
        id_refs
            .iter()
            .enumerate()
            .map(|(i, id)| crate::finite::Point {
                id: (*id).to_string(),
                coords: vec![i as f64 / 8.0],
            })
            .collect(),
        &edges,
    )
    .unwrap();
    FunctionSystem::Finite(FiniteSystem::new(rel).unwrap())
}

#[test]
fn tent_pair_classifications() {
    let sys = tent_system();
    assert_eq!(
        verify_turbulent(&sys, &on_tent("0", "1/2"), &on_tent("1/2", "1"), 1),
        Ok(TurbulenceKind::Turbulent)
    );
    assert_eq!(
        verify_turbulent(&sys, &on_tent("0", "1/4"), &on_tent("1/2", "3/4"), 2),
        Ok(TurbulenceKind::SeparatedTurbulent)
    );
    assert_eq!(
        verify_turbulent(&sys, &on_tent("0", "1"), &on_tent("0", "1"), 1),
        Ok(TurbulenceKind::Neither)
    );
}

#[test]
fn chain_holds_for_separated_pairs() {
    let t2 = tent_system().iterate_system(2);
    let k0 = on_tent("0", "1/4");
    let k1 = on_tent("1/2", "3/4");
    for word in 0u32..(1 << 5) {
        let bits: Vec<u8> = (0..5).map(|i| ((word >> i) & 1) as u8).collect();
        assert_eq!(chain_check(&t2, &k0, &k1, &bits), Ok(true));
    }
    // Depth zero is vacuous.
    assert_eq!(chain_check(&t2, &k0, &k1, &[0]), Ok(true));
    assert_eq!(chain_check(&t2, &k0, &k1, &[]), Ok(true));
}

#[test]
fn chain_fails_on_the_two_cycle() {
    let rel = FiniteRelation::from_edges(&["0", "1"], &[("0", "1"), ("1", "0")]);
    let sys = FunctionSystem::Finite(FiniteSystem::new(rel).unwrap());
    let k0 = SetSpec::finite(["0"]);
    let k1 = SetSpec::finite(["1"]);
    assert_eq!(chain_check(&sys, &k0, &k1, &[0, 0]), Ok(false));
    // Overlapping sets are a precondition failure, not a verdict.
    assert!(chain_check(&sys, &k0, &k0, &[0, 0]).is_err());
}

#[test]
fn refinement_of_the_tent_junction_pair() {
    let sys = tent_system();
    let junction = PointSpec::Leg(0, rat("1/2"));
    let (r0, r1) =
        separate_turbulent_pair(&sys, &on_tent("0", "1/2"), &on_tent("1/2", "1"), &junction)
            .unwrap();
    assert_eq!(r0, on_tent("0", "1/4"));
    assert_eq!(r1, on_tent("1/2", "3/4"));
    // The refined image returns the original set exactly.
    assert_eq!(sys.image(&r0).unwrap(), on_tent("0", "1/2"));
    assert_eq!(sys.image(&r1).unwrap(), on_tent("1/2", "1"));
}

#[test]
fn refinement_rejects_fixed_junctions() {
    // The 3-fold map fixes 1/2, yet [0, 1/2] and [1/2, 1] form a genuine
    // turbulent pair there; the refinement must refuse it by name.
    let sys = FunctionSystem::Legs(
        LegSystem::new(vec![LegMap {
            target: 0,
            map: threefold_map(),
        }])
        .unwrap(),
    );
    let k0 = SetSpec::on_leg(1, 0, seg("0", "1/2"));
    let k1 = SetSpec::on_leg(1, 0, seg("1/2", "1"));
    assert_eq!(
        verify_turbulent(&sys, &k0, &k1, 1),
        Ok(TurbulenceKind::Turbulent)
    );
    let err = separate_turbulent_pair(&sys, &k0, &k1, &PointSpec::Leg(0, rat("1/2"))).unwrap_err();
    assert_eq!(err, TransformError::FixedJunction);

    // A pair that is not turbulent at all trips the earlier precondition.
    let sys = tent_system();
    let err = separate_turbulent_pair(
        &sys,
        &on_tent("0", "2/3"),
        &on_tent("2/3", "1"),
        &PointSpec::Leg(0, rat("2/3")),
    )
    .unwrap_err();
    assert!(matches!(err, TransformError::PreconditionFailed(_)));
}

#[test]
fn refinement_on_finite_functional_carriers_cannot_fire() {
    // On a single-valued finite system the inclusion forces the sets to
    // collapse, so the precondition can only hold at a fixed junction.
    let sys = dyadic_tent();
    let k0 = SetSpec::finite(["0", "1/8", "1/4", "3/8", "1/2"]);
    let k1 = SetSpec::finite(["1/2", "5/8", "3/4", "7/8", "1"]);
    let err =
        separate_turbulent_pair(&sys, &k0, &k1, &PointSpec::Finite("1/2".into())).unwrap_err();
    assert!(matches!(err, TransformError::PreconditionFailed(_)));
}

#[test]
fn nleg_classification_sweep() {
    let sys5 = FunctionSystem::Legs(nleg_system(5));
    let k = SetSpec::on_leg(5, 0, seg("0", "1/2"));
    let l = SetSpec::on_leg(5, 0, seg("1/2", "1"));
    for m in 1..=4 {
        assert_eq!(
            verify_turbulent(&sys5, &k, &l, m),
            Ok(TurbulenceKind::Neither),
            "m = {m}"
        );
    }
    assert_eq!(
        verify_turbulent(&sys5, &k, &l, 5),
        Ok(TurbulenceKind::Turbulent)
    );
}

#[test]
fn one_leg_system_is_the_plain_tent() {
    let sys = nleg_system(1);
    assert_eq!(sys.maps()[0].map, tent_map());
    assert_eq!(sys.maps()[0].target, 0);
}

#[test]
fn graph_witness_round_trip_on_the_tent() {
    let sys = tent_system();
    let k = on_tent("0", "1/4");
    let l = on_tent("1/2", "3/4");
    let w = function_to_graph_witness(&sys, &k, &l, 2).unwrap();
    let GraphWitness::Interval(iw) = &w else {
        panic!("legs carrier yields an interval witness");
    };
    assert_eq!(iw.level, 3);
    assert_eq!(iw.k.forced.len(), 2);
    let (k0, l0, m) = graph_to_function_witness(&sys, &w).unwrap();
    assert_eq!(m, 2);
    assert_eq!(k0, k);
    assert_eq!(l0, l);
    assert!(k.is_subset_of(&k0).unwrap());
    assert!(l.is_subset_of(&l0).unwrap());
    assert_eq!(
        verify_turbulent(&sys, &k0, &l0, m),
        Ok(TurbulenceKind::SeparatedTurbulent)
    );
}

#[test]
fn function_witness_requires_separated_input() {
    let sys = tent_system();
    let err =
        function_to_graph_witness(&sys, &on_tent("0", "1/2"), &on_tent("1/2", "1"), 1).unwrap_err();
    assert!(matches!(err, TransformError::PreconditionFailed(_)));
}

#[test]
fn finite_graph_witnesses_are_rejected_upstream() {
    // A permutation has no verifying witness, so extraction refuses it.
    let rel = FiniteRelation::from_edges(&["0", "1"], &[("0", "1"), ("1", "0")]);
    let sys = FunctionSystem::Finite(FiniteSystem::new(rel.clone()).unwrap());
    let w = LevelWitness {
        level: 2,
        kind: WitnessKind::Cr,
        k: vec![rel.tuple(&["0", "1"]).unwrap()],
        l: vec![rel.tuple(&["1", "0"]).unwrap()],
    };
    let err = graph_to_function_witness(&sys, &GraphWitness::Finite(w)).unwrap_err();
    assert!(matches!(err, TransformError::UnverifiableWitness(_)));
}

#[test]
fn star_lift_on_the_full_relation() {
    let rel = FiniteRelation::from_edges(
        &["0", "1"],
        &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
    );
    let edge = |x: &str, y: &str| (x.to_string(), y.to_string());
    let k = vec![edge("0", "0"), edge("1", "0")];
    let l = vec![edge("0", "1"), edge("1", "1")];
    let w = star_lift_witness(&rel, &k, &l).unwrap();
    assert_eq!(w.level, 3);
    assert_eq!(w.kind, WitnessKind::ReverseCr);
    assert_eq!(rel.verify_witness(&w), Ok(true));
    // pi1 of each lifted side covers the whole carrier.
    let pi1: BTreeSet<usize> = w.k.iter().map(PathTuple::first).collect();
    assert_eq!(pi1.len(), rel.point_count());

    // Named precondition failures.
    let short = vec![edge("0", "0")];
    assert!(matches!(
        star_lift_witness(&rel, &short, &l),
        Err(TransformError::Pi1NotOnto)
    ));
    let overlapping = vec![edge("0", "0"), edge("1", "0")];
    assert!(matches!(
        star_lift_witness(&rel, &overlapping, &overlapping),
        Err(TransformError::SharedPairProjectionsMeet)
    ));
    let bogus = vec![edge("0", "0"), edge("1", "2")];
    assert!(star_lift_witness(&rel, &bogus, &l).is_err());
}

#[test]
fn dyadic_tent_images() {
    let sys = dyadic_tent();
    let k = SetSpec::finite(["0", "1/8", "1/4"]);
    let img = sys.image(&k).unwrap();
    assert_eq!(img, SetSpec::finite(["0", "1/4", "1/2"]));
    let pre = sys.preimage(&SetSpec::finite(["1"])).unwrap();
    assert_eq!(pre, SetSpec::finite(["1/2"]));
}

#[test]
fn size_classification_on_legs() {
    let one = SetSpec::on_leg(2, 0, IntervalUnion::point(rat("1/2")));
    assert_eq!(one.size_class(), SizeClass::One);
    let two = one
        .union(&SetSpec::on_leg(2, 1, IntervalUnion::point(rat("1/3"))))
        .unwrap();
    assert_eq!(two.size_class(), SizeClass::Many);
    let segment = SetSpec::on_leg(2, 0, seg("0", "1/4"));
    assert_eq!(segment.size_class(), SizeClass::Many);
    assert_eq!(
        SetSpec::Legs(vec![IntervalUnion::empty(); 2]).size_class(),
        SizeClass::Empty
    );
}
