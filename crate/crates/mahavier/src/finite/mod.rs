//! Exact dynamics of finite closed relations.
//!
//! A [`FiniteRelation`] is a finite labeled point set with a set of
//! directed edges; when the carrier is finite every relation is closed,
//! so this module is the fully decidable end of the crate. It computes
//! Mahavier levels, shift entropy (spectral value cross-checked by
//! walk-count growth), and the CR-turbulence family of decisions with
//! constructive witnesses.

mod entropy;
mod turbulence;

pub use entropy::{DoubleLoop, EntropyEstimate, EntropyMethod};
pub use turbulence::{CrDecision, ObstructionError};

use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

use crate::WitnessKind;

#[derive(Debug, thiserror::Error)]
pub enum RelationError {
    #[error("duplicate point id {0:?}")]
    DuplicatePointId(String),
    #[error("edge endpoint {0:?} is not a declared point id")]
    UnknownPointId(String),
    #[error("coordinate vectors must share one dimension ({0} vs {1})")]
    MixedDimensions(usize, usize),
    #[error("coordinate {value} of point {id:?} is not finite")]
    NonFiniteCoordinate { id: String, value: f64 },
}

#[derive(Debug, thiserror::Error)]
pub enum TupleError {
    #[error("a path tuple needs at least one entry")]
    Empty,
    #[error("({0:?}, {1:?}) is not an edge of the relation")]
    NotAnEdge(String, String),
    #[error("unknown point id {0:?}")]
    UnknownPointId(String),
    #[error("cannot shift a tuple of length 1")]
    TooShortToShift,
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("witness level must be at least 1")]
    ZeroLevel,
    #[error("witness sets K and L must both be nonempty")]
    EmptySide,
    #[error("tuple has length {found} but the witness level is {level}")]
    LevelMismatch { level: usize, found: usize },
    #[error("witness sets K and L are not disjoint")]
    NotDisjoint,
    #[error("tuple is not a path of the relation")]
    NotAPath,
}

#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(
        "level {level} holds {tuples} tuples; subset-pair enumeration at cap {cap} is infeasible"
    )]
    Infeasible {
        level: usize,
        tuples: u128,
        cap: usize,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum RealizationError {
    #[error("itinerary word must be nonempty")]
    EmptyWord,
    #[error("itinerary realization requires a verified cr witness: {0}")]
    UnverifiedWitness(String),
}

/// A labeled point of the carrier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub id: String,
    pub coords: Vec<f64>,
}

/// A finite closed relation: points plus directed edges between them.
///
/// Points keep their declaration order (the JSON wire format round-trips
/// them as given); every enumeration in this module is nevertheless
/// canonical, ordering points and tuples lexicographically by point id.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteRelation {
    points: Vec<Point>,
    edges: BTreeSet<(usize, usize)>,
    /// rank[i] = position of points[i].id in lexicographic id order.
    rank: Vec<usize>,
    /// by_rank[r] = point index holding rank r.
    by_rank: Vec<usize>,
}

/// An element of a Mahavier level: point indices whose consecutive pairs
/// are edges of the owning relation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PathTuple(Vec<usize>);

impl PathTuple {
    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> usize {
        self.0[0]
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("tuples are nonempty")
    }

    /// Drops the first entry. The result of shifting a valid path is
    /// still a valid path, so no relation is needed here.
    pub fn shifted(&self) -> Result<PathTuple, TupleError> {
        if self.0.len() < 2 {
            return Err(TupleError::TooShortToShift);
        }
        Ok(PathTuple(self.0[1..].to_vec()))
    }

    pub fn reversed(&self) -> PathTuple {
        let mut v = self.0.clone();
        v.reverse();
        PathTuple(v)
    }

    /// Concatenation overlapping in one entry; requires
    /// `self.last() == other.first()`.
    pub fn star(&self, other: &PathTuple) -> PathTuple {
        assert_eq!(self.last(), other.first(), "star product endpoint mismatch");
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0[1..]);
        PathTuple(v)
    }
}

/// A turbulence witness over a finite relation: two disjoint nonempty
/// sets of equal-length tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelWitness {
    pub level: usize,
    pub kind: WitnessKind,
    pub k: Vec<PathTuple>,
    pub l: Vec<PathTuple>,
}

impl FiniteRelation {
    /// Builds and validates a relation from full point data.
    pub fn new(
        points: Vec<Point>,
        edge_ids: &[(String, String)],
    ) -> Result<FiniteRelation, RelationError> {
        let mut index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            if index.insert(p.id.as_str(), i).is_some() {
                return Err(RelationError::DuplicatePointId(p.id.clone()));
            }
        }
        if let Some(first) = points.first() {
            let dim = first.coords.len();
            for p in &points {
                if p.coords.len() != dim {
                    return Err(RelationError::MixedDimensions(dim, p.coords.len()));
                }
                for &c in &p.coords {
                    if !c.is_finite() {
                        return Err(RelationError::NonFiniteCoordinate {
                            id: p.id.clone(),
                            value: c,
                        });
                    }
                }
            }
        }
        let mut edges = BTreeSet::new();
        for (a, b) in edge_ids {
            let ai = *index
                .get(a.as_str())
                .ok_or_else(|| RelationError::UnknownPointId(a.clone()))?;
            let bi = *index
                .get(b.as_str())
                .ok_or_else(|| RelationError::UnknownPointId(b.clone()))?;
            edges.insert((ai, bi));
        }
        // index is id-sorted already, being a BTreeMap over ids.
        let by_rank: Vec<usize> = index.values().copied().collect();
        let mut rank = vec![0; points.len()];
        for (r, &i) in by_rank.iter().enumerate() {
            rank[i] = r;
        }
        Ok(FiniteRelation {
            points,
            edges,
            rank,
            by_rank,
        })
    }

    /// Convenience constructor: points named by `ids` with 1-dimensional
    /// coordinates equal to their declaration index.
    pub fn from_edges(ids: &[&str], edge_ids: &[(&str, &str)]) -> FiniteRelation {
        let points = ids
            .iter()
            .enumerate()
            .map(|(i, id)| Point {
                id: (*id).to_string(),
                coords: vec![i as f64],
            })
            .collect();
        let edges: Vec<(String, String)> = edge_ids
            .iter()
            .map(|(a, b)| ((*a).to_string(), (*b).to_string()))
            .collect();
        FiniteRelation::new(points, &edges).expect("static relation data")
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    pub fn point_index(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    pub fn id_of(&self, index: usize) -> &str {
        &self.points[index].id
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    /// Edges as index pairs, in index order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Point indices in canonical (id-lexicographic) order.
    pub fn indices_canonical(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_rank.iter().copied()
    }

    pub(crate) fn rank_of(&self, index: usize) -> usize {
        self.rank[index]
    }

    /// Out-neighbors of a point, in canonical order.
    pub fn successors(&self, from: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .range((from, 0)..=(from, usize::MAX))
            .map(|&(_, b)| b)
            .collect();
        out.sort_by_key(|&b| self.rank[b]);
        out
    }

    pub fn predecessors(&self, to: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter(|&&(_, b)| b == to)
            .map(|&(a, _)| a)
            .collect();
        out.sort_by_key(|&a| self.rank[a]);
        out
    }

    /// The inverse relation: same points, edges reversed.
    pub fn inverse(&self) -> FiniteRelation {
        let edges = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        FiniteRelation {
            points: self.points.clone(),
            edges,
            rank: self.rank.clone(),
            by_rank: self.by_rank.clone(),
        }
    }

    /// Validates a tuple of point ids as a path of this relation.
    pub fn tuple(&self, ids: &[&str]) -> Result<PathTuple, TupleError> {
        if ids.is_empty() {
            return Err(TupleError::Empty);
        }
        let mut entries = Vec::with_capacity(ids.len());
        for id in ids {
            entries.push(
                self.point_index(id)
                    .ok_or_else(|| TupleError::UnknownPointId((*id).to_string()))?,
            );
        }
        for w in entries.windows(2) {
            if !self.has_edge(w[0], w[1]) {
                return Err(TupleError::NotAnEdge(
                    self.points[w[0]].id.clone(),
                    self.points[w[1]].id.clone(),
                ));
            }
        }
        Ok(PathTuple(entries))
    }

    pub(crate) fn tuple_from_indices(&self, entries: Vec<usize>) -> PathTuple {
        debug_assert!(entries.windows(2).all(|w| self.has_edge(w[0], w[1])));
        PathTuple(entries)
    }

    pub fn ids_of(&self, tuple: &PathTuple) -> Vec<&str> {
        tuple.0.iter().map(|&i| self.id_of(i)).collect()
    }

    pub fn is_valid_tuple(&self, tuple: &PathTuple) -> bool {
        !tuple.0.is_empty()
            && tuple.0.iter().all(|&i| i < self.points.len())
            && tuple.0.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// Canonical comparison key of a tuple: its entries as id ranks.
    pub(crate) fn tuple_key(&self, tuple: &PathTuple) -> Vec<usize> {
        tuple.0.iter().map(|&i| self.rank[i]).collect()
    }

    /// Sorts tuples lexicographically by point id.
    pub fn sort_canonical(&self, tuples: &mut [PathTuple]) {
        tuples.sort_by_key(|t| self.tuple_key(t));
    }

    /// The level-`n` Mahavier set: every tuple of `n` points whose
    /// consecutive pairs are edges, in canonical order.
    ///
    /// `n = 1` yields one tuple per point. The result can be exponential
    /// in `n`; [`FiniteRelation::count_level`] bounds it cheaply first.
    pub fn level(&self, n: usize) -> Vec<PathTuple> {
        assert!(n >= 1, "level must be positive");
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(n);
        for start in self.indices_canonical() {
            stack.push(start);
            self.extend_level(n, &mut stack, &mut out);
            stack.pop();
        }
        out
    }

    fn extend_level(&self, n: usize, stack: &mut Vec<usize>, out: &mut Vec<PathTuple>) {
        if stack.len() == n {
            out.push(PathTuple(stack.clone()));
            return;
        }
        let last = *stack.last().unwrap();
        for next in self.successors(last) {
            stack.push(next);
            self.extend_level(n, stack, out);
            stack.pop();
        }
    }

    /// Verifies a witness against this relation.
    ///
    /// Malformed witnesses (wrong tuple lengths, invalid paths, empty or
    /// overlapping sides) are reported as errors, distinct from a `false`
    /// verdict. For kind `cr` the check is that both first-coordinate
    /// projections are contained in both last-coordinate projections;
    /// `reverse-cr` swaps the roles of first and last.
    pub fn verify_witness(&self, w: &LevelWitness) -> Result<bool, WitnessError> {
        if w.level == 0 {
            return Err(WitnessError::ZeroLevel);
        }
        if w.k.is_empty() || w.l.is_empty() {
            return Err(WitnessError::EmptySide);
        }
        for t in w.k.iter().chain(w.l.iter()) {
            if t.len() != w.level {
                return Err(WitnessError::LevelMismatch {
                    level: w.level,
                    found: t.len(),
                });
            }
            if !self.is_valid_tuple(t) {
                return Err(WitnessError::NotAPath);
            }
        }
        let k_set: BTreeSet<&PathTuple> = w.k.iter().collect();
        if w.l.iter().any(|t| k_set.contains(t)) {
            return Err(WitnessError::NotDisjoint);
        }
        let firsts =
            |side: &[PathTuple]| -> BTreeSet<usize> { side.iter().map(|t| t.first()).collect() };
        let lasts =
            |side: &[PathTuple]| -> BTreeSet<usize> { side.iter().map(|t| t.last()).collect() };
        let (sources, sinks_k, sinks_l) = match w.kind {
            WitnessKind::Cr => (&firsts(&w.k) | &firsts(&w.l), lasts(&w.k), lasts(&w.l)),
            WitnessKind::ReverseCr => (&lasts(&w.k) | &lasts(&w.l), firsts(&w.k), firsts(&w.l)),
        };
        let both = &sinks_k & &sinks_l;
        Ok(sources.is_subset(&both))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_cycle() -> FiniteRelation {
        FiniteRelation::from_edges(&["0", "1"], &[("0", "1"), ("1", "0")])
    }

    fn golden_mean() -> FiniteRelation {
        FiniteRelation::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")])
    }

    fn full_two() -> FiniteRelation {
        FiniteRelation::from_edges(
            &["0", "1"],
            &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
        )
    }

    fn id_tuples(rel: &FiniteRelation, tuples: &[PathTuple]) -> Vec<String> {
        tuples.iter().map(|t| rel.ids_of(t).join(",")).collect()
    }

    #[test]
    fn level_of_two_cycle() {
        let rel = two_cycle();
        assert_eq!(id_tuples(&rel, &rel.level(3)), vec!["0,1,0", "1,0,1"]);
    }

    #[test]
    fn level_of_golden_mean_is_canonical() {
        let rel = golden_mean();
        assert_eq!(
            id_tuples(&rel, &rel.level(3)),
            vec!["0,0,0", "0,0,1", "0,1,0", "1,0,0", "1,0,1"]
        );
    }

    #[test]
    fn level_of_full_relation() {
        let rel = full_two();
        assert_eq!(rel.level(2).len(), 4);
        assert_eq!(rel.level(1).len(), 2);
    }

    #[test]
    fn shift_drops_first_entry() {
        let rel = two_cycle();
        let t = rel.tuple(&["0", "1", "0"]).unwrap();
        let s = t.shifted().unwrap();
        assert_eq!(rel.ids_of(&s), vec!["1", "0"]);
        let s2 = s.shifted().unwrap();
        assert_eq!(rel.ids_of(&s2), vec!["0"]);
        assert!(matches!(s2.shifted(), Err(TupleError::TooShortToShift)));
    }

    #[test]
    fn constant_tuple_shifts_to_constant() {
        let rel = full_two();
        let t = rel.tuple(&["0", "0", "0"]).unwrap();
        assert_eq!(rel.ids_of(&t.shifted().unwrap()), vec!["0", "0"]);
    }

    #[test]
    fn inverse_is_involution() {
        for rel in [two_cycle(), golden_mean(), full_two()] {
            assert_eq!(rel.inverse().inverse(), rel);
        }
        let rel = FiniteRelation::from_edges(&["0", "1"], &[("0", "1")]);
        let inv = rel.inverse();
        assert!(inv.has_edge(1, 0));
        assert!(!inv.has_edge(0, 1));
        // A symmetric relation equals its inverse.
        assert_eq!(two_cycle().inverse(), two_cycle());
    }

    #[test]
    fn inverse_reverses_levels() {
        let rel = golden_mean();
        for n in 1..=4 {
            let mut reversed: Vec<PathTuple> = rel.level(n).iter().map(|t| t.reversed()).collect();
            rel.sort_canonical(&mut reversed);
            assert_eq!(rel.inverse().level(n), reversed);
        }
    }

    #[test]
    fn rejects_bad_construction() {
        let points = vec![
            Point {
                id: "a".into(),
                coords: vec![0.0],
            },
            Point {
                id: "a".into(),
                coords: vec![1.0],
            },
        ];
        assert!(matches!(
            FiniteRelation::new(points, &[]),
            Err(RelationError::DuplicatePointId(_))
        ));
        let points = vec![Point {
            id: "a".into(),
            coords: vec![0.0],
        }];
        assert!(matches!(
            FiniteRelation::new(points, &[("a".into(), "b".into())]),
            Err(RelationError::UnknownPointId(_))
        ));
        let points = vec![
            Point {
                id: "a".into(),
                coords: vec![0.0],
            },
            Point {
                id: "b".into(),
                coords: vec![1.0, 2.0],
            },
        ];
        assert!(matches!(
            FiniteRelation::new(points, &[]),
            Err(RelationError::MixedDimensions(1, 2))
        ));
    }

    #[test]
    fn tuple_validation() {
        let rel = golden_mean();
        assert!(rel.tuple(&["1", "1"]).is_err());
        assert!(rel.tuple(&["2"]).is_err());
        assert!(rel.tuple(&[]).is_err());
        assert!(rel.tuple(&["1", "0", "1"]).is_ok());
    }

    #[test]
    fn verify_witness_inclusion() {
        let rel = full_two();
        let w = LevelWitness {
            level: 5,
            kind: WitnessKind::Cr,
            k: vec![rel.tuple(&["0", "0", "0", "1", "0"]).unwrap()],
            l: vec![rel.tuple(&["0", "1", "0", "0", "0"]).unwrap()],
        };
        assert_eq!(rel.verify_witness(&w), Ok(true));
    }

    #[test]
    fn verify_witness_failure_and_malformed() {
        let rel = two_cycle();
        let w = LevelWitness {
            level: 2,
            kind: WitnessKind::Cr,
            k: vec![rel.tuple(&["0", "1"]).unwrap()],
            l: vec![rel.tuple(&["1", "0"]).unwrap()],
        };
        // pi_first = {0},{1}; pi_last = {1},{0}; the inclusion fails.
        assert_eq!(rel.verify_witness(&w), Ok(false));

        let overlapping = LevelWitness {
            level: 2,
            kind: WitnessKind::Cr,
            k: vec![rel.tuple(&["0", "1"]).unwrap()],
            l: vec![rel.tuple(&["0", "1"]).unwrap()],
        };
        assert!(matches!(
            rel.verify_witness(&overlapping),
            Err(WitnessError::NotDisjoint)
        ));

        let wrong_level = LevelWitness {
            level: 3,
            kind: WitnessKind::Cr,
            k: vec![rel.tuple(&["0", "1"]).unwrap()],
            l: vec![rel.tuple(&["1", "0"]).unwrap()],
        };
        assert!(matches!(
            rel.verify_witness(&wrong_level),
            Err(WitnessError::LevelMismatch { .. })
        ));
    }
}
