//! Classical turbulence verifiers and constructive witness
//! transformations between function systems and relation witnesses.
//!
//! A [`FunctionSystem`] is single-valued dynamics on one of two
//! carriers: a finite labeled point set, or a disjoint union of unit
//! intervals ("legs") mapped around by piecewise-linear functions. For
//! either carrier the images are computed exactly, so the turbulence
//! conditions (the pair's union contained in both forward images, with
//! empty or one-point intersection) are decided, never approximated.

use std::collections::BTreeSet;

use crate::finite::{FiniteRelation, LevelWitness, PathTuple};
use crate::interval::{
    check_witness, IntervalRelation, IntervalWitness, PlBranch, PlFunction, TupleSpec,
};
use crate::rational::Rational;
use crate::{IntervalUnion, WitnessKind};

#[derive(Debug, PartialEq, thiserror::Error)]
pub enum TransformError {
    #[error("finite carrier must be functional: point {0:?} has {1} out-edges")]
    NotFunctional(String, usize),
    #[error("unknown point id {0:?}")]
    UnknownPointId(String),
    #[error("set and system carriers do not match")]
    CarrierMismatch,
    #[error("leg index {0} out of range for {1} legs")]
    LegOutOfRange(usize, usize),
    #[error("leg map must cover [0, 1] exactly")]
    LegDomainNotUnit,
    #[error("both sets must be nonempty")]
    EmptySet,
    #[error("precondition failed: {0}")]
    PreconditionFailed(&'static str),
    #[error("the junction point is fixed, so the refinement does not apply")]
    FixedJunction,
    #[error("input witness does not verify: {0}")]
    UnverifiableWitness(String),
    #[error("first-coordinate projections overlap on a single-valued system, so the witness sets cannot be disjoint; the input is malformed")]
    FunctionalityContradiction,
    #[error("pi1-not-onto: the sub-relation must project onto every point")]
    Pi1NotOnto,
    #[error("shared edges project onto a common point on both coordinates")]
    SharedPairProjectionsMeet,
    #[error("({0:?}, {1:?}) is not an edge of the relation")]
    NotAnEdge(String, String),
    #[error("interval sub-relations are not expressible in the single-spec witness schema; lift finite relations instead")]
    IntervalLiftUnsupported,
    #[error("witness transforms on interval carriers support single-leg systems only")]
    MultiLegUnsupported,
    #[error("a leg map piece is flat; the graph needs strictly monotone pieces")]
    FlatPiece,
    #[error("the set crosses monotone pieces at step {0}; no single forced-branch spec describes its orbit")]
    CrossesPieces(usize),
    #[error("a verified construction failed its posterior check; this indicates a bug")]
    PosteriorCheckFailed,
}

/// Single-valued dynamics over one of the two supported carriers.
#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSystem {
    Finite(FiniteSystem),
    Legs(LegSystem),
}

/// A functional finite relation: every point has exactly one out-edge.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSystem {
    relation: FiniteRelation,
}

impl FiniteSystem {
    pub fn new(relation: FiniteRelation) -> Result<Self, TransformError> {
        for p in 0..relation.point_count() {
            let outs = relation.successors(p).len();
            if outs != 1 {
                return Err(TransformError::NotFunctional(
                    relation.id_of(p).to_string(),
                    outs,
                ));
            }
        }
        Ok(FiniteSystem { relation })
    }

    pub fn relation(&self) -> &FiniteRelation {
        &self.relation
    }

    fn step(&self, p: usize) -> usize {
        self.relation.successors(p)[0]
    }
}

/// One leg's dynamics: a piecewise-linear map of `[0, 1]` into a target
/// leg.
#[derive(Debug, Clone, PartialEq)]
pub struct LegMap {
    pub target: usize,
    pub map: PlFunction,
}

/// Dynamics on `legs x [0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegSystem {
    maps: Vec<LegMap>,
}

impl LegSystem {
    pub fn new(maps: Vec<LegMap>) -> Result<Self, TransformError> {
        let legs = maps.len();
        if legs == 0 {
            return Err(TransformError::LegOutOfRange(0, 0));
        }
        for m in &maps {
            if m.target >= legs {
                return Err(TransformError::LegOutOfRange(m.target, legs));
            }
            let (lo, hi) = m.map.domain();
            if *lo != Rational::zero() || *hi != Rational::one() {
                return Err(TransformError::LegDomainNotUnit);
            }
        }
        Ok(LegSystem { maps })
    }

    pub fn legs(&self) -> usize {
        self.maps.len()
    }

    pub fn maps(&self) -> &[LegMap] {
        &self.maps
    }

    /// The composed system applying `self` after `earlier`.
    fn compose_after(&self, earlier: &LegSystem) -> LegSystem {
        let maps = earlier
            .maps
            .iter()
            .map(|first| {
                let second = &self.maps[first.target];
                LegMap {
                    target: second.target,
                    map: PlFunction::compose(&second.map, &first.map)
                        .expect("total maps compose totally"),
                }
            })
            .collect();
        LegSystem { maps }
    }
}

impl FunctionSystem {
    /// The `m`-th iterate as a system of the same carrier; `m >= 1`.
    pub fn iterate_system(&self, m: u32) -> FunctionSystem {
        assert!(m >= 1);
        match self {
            FunctionSystem::Finite(sys) => {
                let rel = sys.relation();
                let edges: Vec<(String, String)> = (0..rel.point_count())
                    .map(|p| {
                        let mut q = p;
                        for _ in 0..m {
                            q = sys.step(q);
                        }
                        (rel.id_of(p).to_string(), rel.id_of(q).to_string())
                    })
                    .collect();
                let iterated =
                    FiniteRelation::new(rel.points().to_vec(), &edges).expect("points unchanged");
                FunctionSystem::Finite(FiniteSystem { relation: iterated })
            }
            FunctionSystem::Legs(sys) => {
                let mut acc = sys.clone();
                for _ in 1..m {
                    acc = sys.compose_after(&acc);
                }
                FunctionSystem::Legs(acc)
            }
        }
    }

    /// Exact forward image of a set.
    pub fn image(&self, set: &SetSpec) -> Result<SetSpec, TransformError> {
        match (self, set) {
            (FunctionSystem::Finite(sys), SetSpec::Finite(ids)) => {
                let rel = sys.relation();
                let mut out = BTreeSet::new();
                for id in ids {
                    let p = rel
                        .point_index(id)
                        .ok_or_else(|| TransformError::UnknownPointId(id.clone()))?;
                    out.insert(rel.id_of(sys.step(p)).to_string());
                }
                Ok(SetSpec::Finite(out))
            }
            (FunctionSystem::Legs(sys), SetSpec::Legs(per_leg)) => {
                if per_leg.len() != sys.legs() {
                    return Err(TransformError::CarrierMismatch);
                }
                let mut out = vec![IntervalUnion::empty(); sys.legs()];
                for (leg, u) in per_leg.iter().enumerate() {
                    if u.is_empty() {
                        continue;
                    }
                    let m = &sys.maps[leg];
                    out[m.target] = out[m.target].union(&m.map.image(u));
                }
                Ok(SetSpec::Legs(out))
            }
            _ => Err(TransformError::CarrierMismatch),
        }
    }

    /// Exact preimage of a set.
    pub fn preimage(&self, set: &SetSpec) -> Result<SetSpec, TransformError> {
        match (self, set) {
            (FunctionSystem::Finite(sys), SetSpec::Finite(ids)) => {
                let rel = sys.relation();
                for id in ids {
                    if rel.point_index(id).is_none() {
                        return Err(TransformError::UnknownPointId(id.clone()));
                    }
                }
                let mut out = BTreeSet::new();
                for p in 0..rel.point_count() {
                    if ids.contains(rel.id_of(sys.step(p))) {
                        out.insert(rel.id_of(p).to_string());
                    }
                }
                Ok(SetSpec::Finite(out))
            }
            (FunctionSystem::Legs(sys), SetSpec::Legs(per_leg)) => {
                if per_leg.len() != sys.legs() {
                    return Err(TransformError::CarrierMismatch);
                }
                let mut out = vec![IntervalUnion::empty(); sys.legs()];
                for (leg, m) in sys.maps.iter().enumerate() {
                    let target_set = &per_leg[m.target];
                    if !target_set.is_empty() {
                        out[leg] = out[leg].union(&m.map.preimage(target_set));
                    }
                }
                Ok(SetSpec::Legs(out))
            }
            _ => Err(TransformError::CarrierMismatch),
        }
    }

    fn image_iterated(&self, set: &SetSpec, m: u32) -> Result<SetSpec, TransformError> {
        let mut acc = set.clone();
        for _ in 0..m {
            acc = self.image(&acc)?;
        }
        Ok(acc)
    }
}

/// A closed subset of a system's carrier.
#[derive(Debug, Clone, PartialEq)]
pub enum SetSpec {
    Finite(BTreeSet<String>),
    /// One union per leg, indexed by leg.
    Legs(Vec<IntervalUnion>),
}

impl SetSpec {
    pub fn finite<I: IntoIterator<Item = S>, S: Into<String>>(ids: I) -> SetSpec {
        SetSpec::Finite(ids.into_iter().map(Into::into).collect())
    }

    /// A single-leg interval set on leg `leg` of a system with `legs`
    /// legs.
    pub fn on_leg(legs: usize, leg: usize, u: IntervalUnion) -> SetSpec {
        let mut v = vec![IntervalUnion::empty(); legs];
        v[leg] = u;
        SetSpec::Legs(v)
    }

    pub fn is_empty(&self) -> bool {
        match self {
            SetSpec::Finite(s) => s.is_empty(),
            SetSpec::Legs(v) => v.iter().all(IntervalUnion::is_empty),
        }
    }

    pub fn union(&self, other: &SetSpec) -> Result<SetSpec, TransformError> {
        match (self, other) {
            (SetSpec::Finite(a), SetSpec::Finite(b)) => {
                Ok(SetSpec::Finite(a.union(b).cloned().collect()))
            }
            (SetSpec::Legs(a), SetSpec::Legs(b)) if a.len() == b.len() => Ok(SetSpec::Legs(
                a.iter().zip(b).map(|(x, y)| x.union(y)).collect(),
            )),
            _ => Err(TransformError::CarrierMismatch),
        }
    }

    pub fn intersect(&self, other: &SetSpec) -> Result<SetSpec, TransformError> {
        match (self, other) {
            (SetSpec::Finite(a), SetSpec::Finite(b)) => {
                Ok(SetSpec::Finite(a.intersection(b).cloned().collect()))
            }
            (SetSpec::Legs(a), SetSpec::Legs(b)) if a.len() == b.len() => Ok(SetSpec::Legs(
                a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect(),
            )),
            _ => Err(TransformError::CarrierMismatch),
        }
    }

    pub fn is_subset_of(&self, other: &SetSpec) -> Result<bool, TransformError> {
        match (self, other) {
            (SetSpec::Finite(a), SetSpec::Finite(b)) => Ok(a.is_subset(b)),
            (SetSpec::Legs(a), SetSpec::Legs(b)) if a.len() == b.len() => {
                Ok(a.iter().zip(b).all(|(x, y)| x.is_subset_of(y)))
            }
            _ => Err(TransformError::CarrierMismatch),
        }
    }

    /// Cardinality classification of the set: empty, one point, or more.
    pub fn size_class(&self) -> SizeClass {
        match self {
            SetSpec::Finite(s) => match s.len() {
                0 => SizeClass::Empty,
                1 => SizeClass::One,
                _ => SizeClass::Many,
            },
            SetSpec::Legs(v) => {
                let mut points = 0usize;
                for u in v {
                    if u.is_empty() {
                        continue;
                    }
                    if !u.is_finite_set() {
                        return SizeClass::Many;
                    }
                    points += u.parts().len();
                    if points > 1 {
                        return SizeClass::Many;
                    }
                }
                match points {
                    0 => SizeClass::Empty,
                    _ => SizeClass::One,
                }
            }
        }
    }

    fn contains_point(&self, p: &PointSpec) -> Result<bool, TransformError> {
        match (self, p) {
            (SetSpec::Finite(s), PointSpec::Finite(id)) => Ok(s.contains(id)),
            (SetSpec::Legs(v), PointSpec::Leg(leg, x)) => {
                if *leg >= v.len() {
                    return Err(TransformError::LegOutOfRange(*leg, v.len()));
                }
                Ok(v[*leg].contains(x))
            }
            _ => Err(TransformError::CarrierMismatch),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SizeClass {
    Empty,
    One,
    Many,
}

/// A point of a system's carrier.
#[derive(Debug, Clone, PartialEq)]
pub enum PointSpec {
    Finite(String),
    Leg(usize, Rational),
}

/// Outcome of the turbulence verifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TurbulenceKind {
    SeparatedTurbulent,
    Turbulent,
    Neither,
}

impl std::fmt::Display for TurbulenceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TurbulenceKind::SeparatedTurbulent => write!(f, "separated-turbulent"),
            TurbulenceKind::Turbulent => write!(f, "turbulent"),
            TurbulenceKind::Neither => write!(f, "neither"),
        }
    }
}

/// Classifies a closed pair under the `m`-th iterate.
///
/// `separated-turbulent` when the sets are disjoint and their union is
/// contained in both `m`-step images; `turbulent` when they share at
/// most one point and the inclusion holds; `neither` otherwise.
pub fn verify_turbulent(
    system: &FunctionSystem,
    k: &SetSpec,
    l: &SetSpec,
    m: u32,
) -> Result<TurbulenceKind, TransformError> {
    if k.is_empty() || l.is_empty() {
        return Err(TransformError::EmptySet);
    }
    assert!(m >= 1, "iterate count must be positive");
    let fk = system.image_iterated(k, m)?;
    let fl = system.image_iterated(l, m)?;
    let both = fk.intersect(&fl)?;
    let included = k.union(l)?.is_subset_of(&both)?;
    if !included {
        return Ok(TurbulenceKind::Neither);
    }
    Ok(match k.intersect(l)?.size_class() {
        SizeClass::Empty => TurbulenceKind::SeparatedTurbulent,
        SizeClass::One => TurbulenceKind::Turbulent,
        SizeClass::Many => TurbulenceKind::Neither,
    })
}

/// Verifies the nested image chain `K_{w0} <= f(K_{w1}) <= f^2(K_{w2})
/// <= ...` along a binary word.
///
/// The two sets must be disjoint. Words of length at most one carry no
/// inclusion to check and hold vacuously.
pub fn chain_check(
    system: &FunctionSystem,
    k0: &SetSpec,
    k1: &SetSpec,
    word: &[u8],
) -> Result<bool, TransformError> {
    if k0.intersect(k1)?.size_class() != SizeClass::Empty {
        return Err(TransformError::PreconditionFailed("sets must be disjoint"));
    }
    let side = |bit: u8| if bit == 0 { k0 } else { k1 };
    let mut prev: Option<SetSpec> = None;
    for (i, &bit) in word.iter().enumerate() {
        let current = system.image_iterated(side(bit), i as u32)?;
        if let Some(p) = prev {
            if !p.is_subset_of(&current)? {
                return Ok(false);
            }
        }
        prev = Some(current);
    }
    Ok(true)
}

/// A turbulence witness over the graph of a function system.
#[derive(Debug, Clone, PartialEq)]
pub enum GraphWitness {
    Finite(LevelWitness),
    Interval(IntervalWitness),
}

/// The graph of a single-leg system as an interval relation of strictly
/// monotone branches.
pub fn graph_relation(system: &LegSystem) -> Result<IntervalRelation, TransformError> {
    if system.legs() != 1 {
        return Err(TransformError::MultiLegUnsupported);
    }
    let map = &system.maps[0].map;
    let mut branches = Vec::new();
    let xs = map.xs();
    let ys = map.ys();
    let mut start = 0usize;
    for i in 0..xs.len() - 1 {
        if ys[i] == ys[i + 1] {
            return Err(TransformError::FlatPiece);
        }
        let rising_here = ys[i] < ys[i + 1];
        let rising_start = ys[start] < ys[start + 1];
        if rising_here != rising_start {
            branches.push(piece(xs, ys, start, i));
            start = i;
        }
    }
    branches.push(piece(xs, ys, start, xs.len() - 1));
    Ok(IntervalRelation::from_branches(branches))
}

fn piece(xs: &[Rational], ys: &[Rational], from: usize, to: usize) -> PlBranch {
    PlBranch::new(xs[from..=to].to_vec(), ys[from..=to].to_vec())
        .expect("monotone run of a valid map")
}

/// Extracts a separated turbulent pair from a verified witness over the
/// system's graph.
///
/// The pair is formed by the first-coordinate projections and the
/// iterate count is one less than the witness level. Both claims are
/// re-verified before returning. On a single-valued system the two
/// projections can never meet, so an overlap is reported as a malformed
/// input rather than a pair.
pub fn graph_to_function_witness(
    system: &FunctionSystem,
    witness: &GraphWitness,
) -> Result<(SetSpec, SetSpec, u32), TransformError> {
    match (system, witness) {
        (FunctionSystem::Finite(sys), GraphWitness::Finite(w)) => {
            if w.kind != WitnessKind::Cr {
                return Err(TransformError::UnverifiableWitness(
                    "witness kind must be cr".into(),
                ));
            }
            match sys.relation().verify_witness(w) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(TransformError::UnverifiableWitness(
                        "projection inclusion fails".into(),
                    ))
                }
                Err(e) => return Err(TransformError::UnverifiableWitness(e.to_string())),
            }
            if w.level < 2 {
                return Err(TransformError::UnverifiableWitness(
                    "level must be at least 2".into(),
                ));
            }
            let firsts = |side: &[PathTuple]| -> BTreeSet<String> {
                side.iter()
                    .map(|t| sys.relation().id_of(t.first()).to_string())
                    .collect()
            };
            let k0 = firsts(&w.k);
            let l0 = firsts(&w.l);
            if k0.intersection(&l0).next().is_some() {
                return Err(TransformError::FunctionalityContradiction);
            }
            let m = (w.level - 1) as u32;
            let (k0, l0) = (SetSpec::Finite(k0), SetSpec::Finite(l0));
            if verify_turbulent(system, &k0, &l0, m)? != TurbulenceKind::SeparatedTurbulent {
                return Err(TransformError::PosteriorCheckFailed);
            }
            Ok((k0, l0, m))
        }
        (FunctionSystem::Legs(sys), GraphWitness::Interval(w)) => {
            if w.kind != WitnessKind::Cr {
                return Err(TransformError::UnverifiableWitness(
                    "witness kind must be cr".into(),
                ));
            }
            let graph = graph_relation(sys)?;
            let check = check_witness(&graph, w)
                .map_err(|e| TransformError::UnverifiableWitness(e.to_string()))?;
            if !check.verdict {
                return Err(TransformError::UnverifiableWitness(
                    "projection inclusion fails".into(),
                ));
            }
            if w.level < 2 {
                return Err(TransformError::UnverifiableWitness(
                    "level must be at least 2".into(),
                ));
            }
            let k0 = SetSpec::Legs(vec![check.first_k.clone()]);
            let l0 = SetSpec::Legs(vec![check.first_l.clone()]);
            if k0.intersect(&l0)?.size_class() != SizeClass::Empty {
                return Err(TransformError::FunctionalityContradiction);
            }
            let m = (w.level - 1) as u32;
            if verify_turbulent(system, &k0, &l0, m)? != TurbulenceKind::SeparatedTurbulent {
                return Err(TransformError::PosteriorCheckFailed);
            }
            Ok((k0, l0, m))
        }
        _ => Err(TransformError::CarrierMismatch),
    }
}

/// Builds a graph witness from a separated `m`-turbulent pair: the
/// tuples are the `m`-step orbits seeded in each set.
pub fn function_to_graph_witness(
    system: &FunctionSystem,
    k: &SetSpec,
    l: &SetSpec,
    m: u32,
) -> Result<GraphWitness, TransformError> {
    if verify_turbulent(system, k, l, m)? != TurbulenceKind::SeparatedTurbulent {
        return Err(TransformError::PreconditionFailed(
            "pair must be separated turbulent at the given iterate",
        ));
    }
    match (system, k, l) {
        (FunctionSystem::Finite(sys), SetSpec::Finite(kids), SetSpec::Finite(lids)) => {
            let rel = sys.relation();
            let orbit = |ids: &BTreeSet<String>| -> Result<Vec<PathTuple>, TransformError> {
                ids.iter()
                    .map(|id| {
                        let mut p = rel
                            .point_index(id)
                            .ok_or_else(|| TransformError::UnknownPointId(id.clone()))?;
                        let mut entries = vec![p];
                        for _ in 0..m {
                            p = sys.step(p);
                            entries.push(p);
                        }
                        Ok(rel.tuple_from_indices(entries))
                    })
                    .collect()
            };
            let witness = LevelWitness {
                level: m as usize + 1,
                kind: WitnessKind::Cr,
                k: orbit(kids)?,
                l: orbit(lids)?,
            };
            if rel.verify_witness(&witness) != Ok(true) {
                return Err(TransformError::PosteriorCheckFailed);
            }
            Ok(GraphWitness::Finite(witness))
        }
        (FunctionSystem::Legs(sys), SetSpec::Legs(kv), SetSpec::Legs(lv)) => {
            let graph = graph_relation(sys)?;
            let spec_for = |v: &[IntervalUnion]| -> Result<TupleSpec, TransformError> {
                let first = v.first().cloned().unwrap_or_else(IntervalUnion::empty);
                let mut forced = Vec::with_capacity(m as usize);
                let mut current = first.clone();
                for step in 0..m {
                    let idx = graph
                        .branches
                        .iter()
                        .position(|b| {
                            let (lo, hi) = b.domain();
                            current.is_subset_of(&IntervalUnion::segment(lo.clone(), hi.clone()))
                        })
                        .ok_or(TransformError::CrossesPieces(step as usize))?;
                    current = graph.branches[idx].image(&current);
                    forced.push(idx);
                }
                Ok(TupleSpec {
                    first,
                    forced,
                    free: 0,
                })
            };
            let witness = IntervalWitness {
                level: m as usize + 1,
                kind: WitnessKind::Cr,
                k: spec_for(kv)?,
                l: spec_for(lv)?,
            };
            if crate::interval::verify_cr_witness(&graph, &witness) != Ok(true) {
                return Err(TransformError::PosteriorCheckFailed);
            }
            Ok(GraphWitness::Interval(witness))
        }
        _ => Err(TransformError::CarrierMismatch),
    }
}

/// Lifts two onto sub-relations into a level-3 reverse witness via the
/// star product.
///
/// `k` and `l` are edge subsets of the relation with full
/// first-coordinate projections whose shared edges never project onto a
/// common point on both coordinates. The returned witness pairs
/// `K * K` with `L * L`.
pub fn star_lift_witness(
    relation: &FiniteRelation,
    k: &[(String, String)],
    l: &[(String, String)],
) -> Result<LevelWitness, TransformError> {
    let resolve = |pairs: &[(String, String)]| -> Result<BTreeSet<(usize, usize)>, TransformError> {
        pairs
            .iter()
            .map(|(x, y)| {
                let xi = relation
                    .point_index(x)
                    .ok_or_else(|| TransformError::UnknownPointId(x.clone()))?;
                let yi = relation
                    .point_index(y)
                    .ok_or_else(|| TransformError::UnknownPointId(y.clone()))?;
                if !relation.has_edge(xi, yi) {
                    return Err(TransformError::NotAnEdge(x.clone(), y.clone()));
                }
                Ok((xi, yi))
            })
            .collect()
    };
    let k = resolve(k)?;
    let l = resolve(l)?;
    let all: BTreeSet<usize> = (0..relation.point_count()).collect();
    for side in [&k, &l] {
        let pi1: BTreeSet<usize> = side.iter().map(|&(x, _)| x).collect();
        if pi1 != all {
            return Err(TransformError::Pi1NotOnto);
        }
    }
    let shared: BTreeSet<(usize, usize)> = k.intersection(&l).copied().collect();
    let pi1: BTreeSet<usize> = shared.iter().map(|&(x, _)| x).collect();
    let pi2: BTreeSet<usize> = shared.iter().map(|&(_, y)| y).collect();
    if pi1.intersection(&pi2).next().is_some() {
        return Err(TransformError::SharedPairProjectionsMeet);
    }
    let star_square = |side: &BTreeSet<(usize, usize)>| -> Vec<PathTuple> {
        let mut out = Vec::new();
        for &(x, y) in side {
            for &(y2, z) in side {
                if y == y2 {
                    out.push(relation.tuple_from_indices(vec![x, y, z]));
                }
            }
        }
        out
    };
    let witness = LevelWitness {
        level: 3,
        kind: WitnessKind::ReverseCr,
        k: star_square(&k),
        l: star_square(&l),
    };
    if relation.verify_witness(&witness) != Ok(true) {
        return Err(TransformError::PosteriorCheckFailed);
    }
    Ok(witness)
}

/// Refines a turbulent pair touching at one non-fixed point into a
/// separated pair for the second iterate.
///
/// Each set is intersected with its own preimage; the junction point
/// cannot survive in both (its image would have to stay at the
/// junction), so the refined sets are disjoint and the refinement is
/// separated 2-turbulent. Verified before returning.
pub fn separate_turbulent_pair(
    system: &FunctionSystem,
    k0: &SetSpec,
    k1: &SetSpec,
    junction: &PointSpec,
) -> Result<(SetSpec, SetSpec), TransformError> {
    let meet = k0.intersect(k1)?;
    if meet.size_class() != SizeClass::One || !meet.contains_point(junction)? {
        return Err(TransformError::PreconditionFailed(
            "sets must intersect exactly in the junction point",
        ));
    }
    if verify_turbulent(system, k0, k1, 1)? != TurbulenceKind::Turbulent {
        return Err(TransformError::PreconditionFailed(
            "pair must be turbulent at the first iterate",
        ));
    }
    let junction_set = match junction {
        PointSpec::Finite(id) => SetSpec::finite([id.clone()]),
        PointSpec::Leg(leg, x) => {
            let legs = match system {
                FunctionSystem::Legs(s) => s.legs(),
                _ => return Err(TransformError::CarrierMismatch),
            };
            SetSpec::on_leg(legs, *leg, IntervalUnion::point(x.clone()))
        }
    };
    let moved = system.image(&junction_set)?;
    if moved.intersect(&junction_set)?.size_class() != SizeClass::Empty {
        return Err(TransformError::FixedJunction);
    }
    let refine = |side: &SetSpec| -> Result<SetSpec, TransformError> {
        side.intersect(&system.preimage(side)?)
    };
    let r0 = refine(k0)?;
    let r1 = refine(k1)?;
    if r0.intersect(&r1)?.size_class() != SizeClass::Empty {
        return Err(TransformError::PosteriorCheckFailed);
    }
    if verify_turbulent(system, &r0, &r1, 2)? != TurbulenceKind::SeparatedTurbulent {
        return Err(TransformError::PosteriorCheckFailed);
    }
    Ok((r0, r1))
}

/// The tent map as a piecewise-linear function.
pub fn tent_map() -> PlFunction {
    PlFunction::new(
        vec![Rational::zero(), Rational::new(1, 2), Rational::one()],
        vec![Rational::zero(), Rational::one(), Rational::zero()],
    )
    .expect("static map data")
}

/// The 3-fold map: full stretches on each third of the interval. Its
/// midpoint is a fixed junction between two turbulent halves, which the
/// separation refinement must refuse.
pub fn threefold_map() -> PlFunction {
    PlFunction::new(
        vec![
            Rational::zero(),
            Rational::new(1, 3),
            Rational::new(2, 3),
            Rational::one(),
        ],
        vec![
            Rational::zero(),
            Rational::one(),
            Rational::zero(),
            Rational::one(),
        ],
    )
    .expect("static map data")
}

/// The `n`-leg rotation system: leg 0 maps to leg 1 by the tent map and
/// every other leg rotates identically to its successor, so the `n`-th
/// iterate restricted to leg 0 is the tent map again.
pub fn nleg_system(n: usize) -> LegSystem {
    assert!(n >= 1);
    let identity = PlFunction::new(
        vec![Rational::zero(), Rational::one()],
        vec![Rational::zero(), Rational::one()],
    )
    .expect("static map data");
    let mut maps = vec![LegMap {
        target: 1 % n,
        map: tent_map(),
    }];
    for k in 1..n {
        maps.push(LegMap {
            target: (k + 1) % n,
            map: identity.clone(),
        });
    }
    let sys = LegSystem::new(maps).expect("static system data");
    // The n-th iterate on leg 0 must be the tent map itself.
    let check = FunctionSystem::Legs(sys.clone()).iterate_system(n as u32);
    if let FunctionSystem::Legs(it) = check {
        debug_assert_eq!(it.maps()[0].target, 0);
        debug_assert_eq!(it.maps()[0].map, tent_map());
    }
    sys
}

#[cfg(test)]
mod tests;
