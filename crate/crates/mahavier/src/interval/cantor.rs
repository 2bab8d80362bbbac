//! Cantor-set graph relations and the syntactic non-turbulence check.
//!
//! These relations have positive entropy potential in their finite
//! shadow yet provably admit no turbulence witness: a full vertical
//! column at `a` and a full horizontal row at `b` absorb every merging
//! of orbits. The obstruction check certifies that structure exactly on
//! the hybrid representation.

use super::{Horizontal, IntervalRelation, PlFunction, Vertical};
use crate::rational::Rational;
use crate::IntervalUnion;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum CantorError {
    #[error("depth must be between 1 and 16")]
    DepthOutOfRange,
    #[error("marked points a and b must differ")]
    EqualMarks,
    #[error("marked point {0} collides with a Cantor interval endpoint")]
    MarkOnCantorPoint(Rational),
    #[error("marked point {0} lies outside [0, 1]")]
    MarkOutOfRange(Rational),
    #[error("permutation must be a bijection of {0} indices")]
    NotABijection(usize),
    #[error("graph point ({0}, {1}) meets the marked column or row off the diagonal")]
    MarkHypothesisViolated(Rational, Rational),
}

/// How to permute the Cantor approximation points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermSpec {
    Identity,
    /// Left-rotate the ternary address bits; a finite stand-in for a
    /// positive-entropy shift on the Cantor set.
    Rotate,
    Explicit(Vec<usize>),
}

impl PermSpec {
    fn build(&self, n: usize, depth: u32) -> Result<Vec<usize>, CantorError> {
        let perm = match self {
            PermSpec::Identity => (0..n).collect(),
            PermSpec::Rotate => (0..n)
                .map(|i| ((i << 1) | (i >> (depth - 1))) & (n - 1))
                .collect(),
            PermSpec::Explicit(p) => p.clone(),
        };
        let mut seen = vec![false; n];
        if perm.len() != n {
            return Err(CantorError::NotABijection(n));
        }
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(CantorError::NotABijection(n));
            }
            seen[i] = true;
        }
        Ok(perm)
    }
}

/// Left endpoints of the surviving middle-thirds intervals at `depth`,
/// ascending.
pub fn cantor_left_endpoints(depth: u32) -> Vec<Rational> {
    left_endpoints(depth)
}

/// The graph of a bijection on the depth-`depth` Cantor approximation
/// points, together with the full vertical column at `a` and the full
/// horizontal row at `b`.
///
/// The marked points must avoid every endpoint of the surviving
/// middle-thirds intervals, which keeps the column and row off the graph
/// except possibly on the diagonal; that hypothesis is re-checked
/// explicitly after construction.
pub fn cantor_relation(
    depth: u32,
    a: &Rational,
    b: &Rational,
    perm: &PermSpec,
) -> Result<IntervalRelation, CantorError> {
    if depth == 0 || depth > 16 {
        return Err(CantorError::DepthOutOfRange);
    }
    if a == b {
        return Err(CantorError::EqualMarks);
    }
    for m in [a, b] {
        if *m < Rational::zero() || *m > Rational::one() {
            return Err(CantorError::MarkOutOfRange(m.clone()));
        }
    }
    let lefts = left_endpoints(depth);
    let width = Rational::new(1, 3).pow(depth);
    for e in &lefts {
        let right = e + &width;
        if a == e || b == e || *a == right || *b == right {
            let hit = if a == e || *a == right { a } else { b };
            return Err(CantorError::MarkOnCantorPoint(hit.clone()));
        }
    }
    let perm = perm.build(lefts.len(), depth)?;
    let isolated: Vec<(Rational, Rational)> = lefts
        .iter()
        .enumerate()
        .map(|(i, e)| (e.clone(), lefts[perm[i]].clone()))
        .collect();
    // The marked column and row may only meet the graph on the diagonal.
    for (x, y) in &isolated {
        if (x == a || y == b) && x != y {
            return Err(CantorError::MarkHypothesisViolated(x.clone(), y.clone()));
        }
    }
    Ok(IntervalRelation {
        branches: vec![],
        verticals: vec![Vertical {
            x: a.clone(),
            y_lo: Rational::zero(),
            y_hi: Rational::one(),
        }],
        horizontals: vec![Horizontal {
            x_lo: Rational::zero(),
            x_hi: Rational::one(),
            y: b.clone(),
        }],
        isolated,
    })
}

fn left_endpoints(depth: u32) -> Vec<Rational> {
    let mut points = vec![Rational::zero()];
    let mut offset = Rational::new(2, 3);
    for _ in 0..depth {
        let mut next = Vec::with_capacity(points.len() * 2);
        for p in &points {
            next.push(p.clone());
            next.push(p + &offset);
        }
        next.sort();
        points = next;
        offset = &offset / &Rational::from_int(3);
    }
    points
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error("the two marked points must be distinct")]
    EqualPoints,
}

/// Checks the syntactic condition that rules out CR-turbulence, exactly,
/// on the hybrid representation.
///
/// The three requirements: only `a` maps to `a`; `b` maps only to `b`;
/// and every point with two or more preimages is involved with `a` or
/// `b` (as the merge target or one of the merging sources). The third is
/// decided by sweeping all part pairs for coincident targets; any
/// nondegenerate stretch of multivalued targets away from the marked
/// points refutes the condition, since only finitely many target values
/// can be excused by touching `{a, b}`.
pub fn turbulence_obstruction(
    relation: &IntervalRelation,
    a: &Rational,
    b: &Rational,
) -> Result<bool, ObstructionError> {
    if a == b {
        return Err(ObstructionError::EqualPoints);
    }
    // (1) preimage of {a} inside {a}
    let pre_a = relation.inverse().image(&IntervalUnion::point(a.clone()));
    if !pre_a.is_subset_of(&IntervalUnion::point(a.clone())) {
        return Ok(false);
    }
    // (2) image of {b} inside {b}
    let im_b = relation.image(&IntervalUnion::point(b.clone()));
    if !im_b.is_subset_of(&IntervalUnion::point(b.clone())) {
        return Ok(false);
    }
    // (3) sweep for merges that avoid {a, b}
    Ok(merge_sweep(relation, a, b))
}

/// One preimage provider: for a target value y it contributes an x.
enum Source {
    /// x = inverse branch of y over the branch's value range.
    Branch(PlFunction, IntervalUnion),
    /// Constant x over a y-interval.
    Column(Rational, IntervalUnion),
    /// A single (x, y) pair.
    Point(Rational, Rational),
}

fn merge_sweep(relation: &IntervalRelation, a: &Rational, b: &Rational) -> bool {
    let marked = |x: &Rational| x == a || x == b;
    let mut sources: Vec<Source> = Vec::new();
    for br in &relation.branches {
        let (lo, hi) = br.range();
        let inv = br.inverted();
        sources.push(Source::Branch(
            inv.as_function().clone(),
            IntervalUnion::segment(lo, hi),
        ));
    }
    for v in &relation.verticals {
        if marked(&v.x) {
            // Merges through the marked column always touch {a, b}.
            continue;
        }
        sources.push(Source::Column(
            v.x.clone(),
            IntervalUnion::segment(v.y_lo.clone(), v.y_hi.clone()),
        ));
    }
    for h in &relation.horizontals {
        if marked(&h.y) {
            continue; // merge target is a marked point
        }
        if h.x_lo < h.x_hi {
            // A whole interval of sources merges into an unmarked target.
            return false;
        }
        sources.push(Source::Point(h.x_lo.clone(), h.y.clone()));
    }
    for (x, y) in &relation.isolated {
        sources.push(Source::Point(x.clone(), y.clone()));
    }
    for i in 0..sources.len() {
        for j in i + 1..sources.len() {
            if !pair_is_safe(&sources[i], &sources[j], a, b) {
                return false;
            }
        }
    }
    true
}

/// Whether every common target of two sources with distinct preimages
/// touches the marked pair.
fn pair_is_safe(s1: &Source, s2: &Source, a: &Rational, b: &Rational) -> bool {
    let allowed = |x1: &Rational, x2: &Rational, y: &Rational| {
        [x1, x2, y].into_iter().any(|v| v == a || v == b)
    };
    match (s1, s2) {
        (Source::Branch(f1, r1), Source::Branch(f2, r2)) => {
            let overlap = r1.intersect(r2);
            if overlap.is_empty() {
                return true;
            }
            let agree = f1.coincidence_set(f2, &overlap);
            match overlap.subtract_to_points(&agree) {
                Err(_) => false,
                Ok(points) => points.iter().all(|y| {
                    let x1 = f1.eval(y).expect("y in range");
                    let x2 = f2.eval(y).expect("y in range");
                    allowed(&x1, &x2, y)
                }),
            }
        }
        (Source::Branch(f, r), Source::Column(x, ys))
        | (Source::Column(x, ys), Source::Branch(f, r)) => {
            let overlap = r.intersect(ys);
            if overlap.is_empty() {
                return true;
            }
            let constant = PlFunction::new(
                vec![Rational::zero(), Rational::one()],
                vec![x.clone(), x.clone()],
            )
            .expect("constant function");
            let agree = f.coincidence_set(&constant, &overlap);
            match overlap.subtract_to_points(&agree) {
                Err(_) => false,
                Ok(points) => points.iter().all(|y| {
                    let x1 = f.eval(y).expect("y in range");
                    allowed(&x1, x, y)
                }),
            }
        }
        (Source::Column(x1, y1), Source::Column(x2, y2)) => {
            if x1 == x2 {
                return true;
            }
            let overlap = y1.intersect(y2);
            match overlap.parts() {
                [] => true,
                [(lo, hi)] if lo == hi => allowed(x1, x2, lo),
                _ => false,
            }
        }
        (Source::Branch(f, r), Source::Point(px, py))
        | (Source::Point(px, py), Source::Branch(f, r)) => {
            if !r.contains(py) {
                return true;
            }
            let x1 = f.eval(py).expect("py in range");
            x1 == *px || allowed(&x1, px, py)
        }
        (Source::Column(x, ys), Source::Point(px, py))
        | (Source::Point(px, py), Source::Column(x, ys)) => {
            !ys.contains(py) || x == px || allowed(x, px, py)
        }
        (Source::Point(x1, y1), Source::Point(x2, y2)) => {
            y1 != y2 || x1 == x2 || allowed(x1, x2, y1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::{tent_relation, PlBranch};
    use crate::rational::rat;

    #[test]
    fn endpoints_of_the_approximation() {
        assert_eq!(left_endpoints(1), vec![rat("0"), rat("2/3")]);
        assert_eq!(
            left_endpoints(2),
            vec![rat("0"), rat("2/9"), rat("2/3"), rat("8/9")]
        );
        assert_eq!(left_endpoints(3).len(), 8);
    }

    #[test]
    fn construction_and_collision_checks() {
        let rel = cantor_relation(2, &rat("1/2"), &rat("5/6"), &PermSpec::Identity).unwrap();
        assert_eq!(rel.isolated.len(), 4);
        assert_eq!(rel.verticals.len(), 1);
        assert_eq!(rel.horizontals.len(), 1);
        assert!(matches!(
            cantor_relation(2, &rat("0"), &rat("5/6"), &PermSpec::Identity),
            Err(CantorError::MarkOnCantorPoint(_))
        ));
        // 1/3 is the right endpoint of the interval at 2/9... of [2/9, 1/3].
        assert!(matches!(
            cantor_relation(2, &rat("1/3"), &rat("5/6"), &PermSpec::Identity),
            Err(CantorError::MarkOnCantorPoint(_))
        ));
        assert!(matches!(
            cantor_relation(2, &rat("1/2"), &rat("1/2"), &PermSpec::Identity),
            Err(CantorError::EqualMarks)
        ));
        assert!(matches!(
            cantor_relation(
                2,
                &rat("1/2"),
                &rat("5/6"),
                &PermSpec::Explicit(vec![0, 0, 1, 2])
            ),
            Err(CantorError::NotABijection(4))
        ));
    }

    #[test]
    fn rotation_is_a_bijection_at_depth_three() {
        let rel = cantor_relation(3, &rat("1/2"), &rat("5/6"), &PermSpec::Rotate).unwrap();
        let mut targets: Vec<Rational> = rel.isolated.iter().map(|(_, y)| y.clone()).collect();
        targets.sort();
        targets.dedup();
        assert_eq!(targets.len(), 8);
    }

    #[test]
    fn obstruction_holds_for_cantor_graphs() {
        for perm in [PermSpec::Identity, PermSpec::Rotate] {
            let rel = cantor_relation(3, &rat("1/2"), &rat("5/6"), &perm).unwrap();
            assert_eq!(
                turbulence_obstruction(&rel, &rat("1/2"), &rat("5/6")),
                Ok(true)
            );
        }
    }

    #[test]
    fn obstruction_fails_for_the_tent() {
        let tent = tent_relation();
        for (a, b) in [("1/3", "2/3"), ("1/7", "6/7"), ("0", "1")] {
            assert_eq!(turbulence_obstruction(&tent, &rat(a), &rat(b)), Ok(false));
        }
    }

    #[test]
    fn obstruction_vacuous_for_the_identity() {
        let id = IntervalRelation::from_branches(vec![PlBranch::line(
            rat("0"),
            rat("0"),
            rat("1"),
            rat("1"),
        )]);
        assert_eq!(
            turbulence_obstruction(&id, &rat("1/3"), &rat("2/3")),
            Ok(true)
        );
        assert_eq!(
            turbulence_obstruction(&id, &rat("1/3"), &rat("1/3")),
            Err(ObstructionError::EqualPoints)
        );
    }

    #[test]
    fn unmarked_wide_horizontal_refutes() {
        let rel = IntervalRelation {
            branches: vec![],
            verticals: vec![],
            horizontals: vec![Horizontal {
                x_lo: rat("0"),
                x_hi: rat("1"),
                y: rat("1/2"),
            }],
            isolated: vec![],
        };
        assert_eq!(
            turbulence_obstruction(&rel, &rat("1/5"), &rat("2/5")),
            Ok(false)
        );
        // Marking the row's own level makes it safe again.
        assert_eq!(
            turbulence_obstruction(&rel, &rat("1/5"), &rat("1/2")),
            Ok(true)
        );
    }
}
