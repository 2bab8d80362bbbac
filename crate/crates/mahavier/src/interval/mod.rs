//! Closed relations on the unit interval with exact rational arithmetic.
//!
//! An [`IntervalRelation`] is a hybrid of monotone piecewise-linear
//! branches, vertical and horizontal segments, and isolated points; the
//! union of the parts is the relation's graph, closed by construction.
//! Images of interval unions are computed exactly, which makes covering
//! and disjointness questions about turbulence witnesses decidable.

mod cantor;
mod fg;
mod periodic;
mod plfun;

pub use cantor::{
    cantor_left_endpoints, cantor_relation, turbulence_obstruction, CantorError, ObstructionError,
    PermSpec,
};
pub use fg::{
    check_witness, linear_pair, verify_cr_witness, CoveringParams, FgError, FgSystem, FgViolation,
    IntervalWitness, SearchFailure, TupleSpec, WitnessCheck, WitnessError, F_BRANCH, G_BRANCH,
};
pub use periodic::{periodic_itineraries, PeriodicError, PeriodicItinerary};
pub use plfun::{PlError, PlFunction};

use crate::finite::{FiniteRelation, Point};
use crate::rational::Rational;
use crate::IntervalUnion;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum IntervalError {
    #[error("branch needs at least two breakpoints")]
    BranchTooShort,
    #[error("branch breakpoints must be strictly increasing")]
    BranchNotIncreasing,
    #[error("branch values must be strictly monotone")]
    BranchNotStrictlyMonotone,
    #[error("coordinate {0} lies outside [0, 1]")]
    OutOfUnitRange(Rational),
    #[error("segment endpoints out of order")]
    SegmentOutOfOrder,
}

/// A strictly monotone (hence injective) piecewise-linear branch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlBranch {
    f: PlFunction,
    increasing: bool,
}

impl PlBranch {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, IntervalError> {
        if xs.len() < 2 || xs.len() != ys.len() {
            return Err(IntervalError::BranchTooShort);
        }
        for v in xs.iter().chain(ys.iter()) {
            check_unit(v)?;
        }
        let increasing = ys[0] < ys[1];
        let monotone = ys
            .windows(2)
            .all(|w| if increasing { w[0] < w[1] } else { w[0] > w[1] });
        if !monotone {
            return Err(IntervalError::BranchNotStrictlyMonotone);
        }
        let f = PlFunction::new(xs, ys).map_err(|e| match e {
            PlError::BreakpointsNotIncreasing => IntervalError::BranchNotIncreasing,
            PlError::Shape => IntervalError::BranchTooShort,
        })?;
        Ok(PlBranch { f, increasing })
    }

    /// The line segment from `(x0, y0)` to `(x1, y1)`.
    pub fn line(x0: Rational, y0: Rational, x1: Rational, y1: Rational) -> Self {
        PlBranch::new(vec![x0, x1], vec![y0, y1]).expect("valid line")
    }

    pub fn xs(&self) -> &[Rational] {
        self.f.xs()
    }

    pub fn ys(&self) -> &[Rational] {
        self.f.ys()
    }

    pub fn increasing(&self) -> bool {
        self.increasing
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        self.f.domain()
    }

    /// Value range as an ordered pair (lo, hi).
    pub fn range(&self) -> (Rational, Rational) {
        let ys = self.f.ys();
        let (a, b) = (ys.first().unwrap(), ys.last().unwrap());
        if a <= b {
            (a.clone(), b.clone())
        } else {
            (b.clone(), a.clone())
        }
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        self.f.eval(x)
    }

    pub fn image(&self, u: &IntervalUnion) -> IntervalUnion {
        self.f.image(u)
    }

    /// The inverse branch; monotone injectivity makes this exact.
    pub fn inverted(&self) -> PlBranch {
        let xs = self.f.xs().to_vec();
        let ys = self.f.ys().to_vec();
        let (mut nxs, mut nys) = (ys, xs);
        if !self.increasing {
            nxs.reverse();
            nys.reverse();
        }
        PlBranch::new(nxs, nys).expect("inverse of a valid branch")
    }

    /// Points mapping into `target`.
    pub fn preimage(&self, target: &IntervalUnion) -> IntervalUnion {
        self.f.preimage(target)
    }

    pub fn as_function(&self) -> &PlFunction {
        &self.f
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.eval(x).as_ref() == Some(y)
    }
}

/// The vertical segment `{x} x [y_lo, y_hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertical {
    pub x: Rational,
    pub y_lo: Rational,
    pub y_hi: Rational,
}

/// The horizontal segment `[x_lo, x_hi] x {y}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horizontal {
    pub x_lo: Rational,
    pub x_hi: Rational,
    pub y: Rational,
}

/// A closed relation on `[0, 1]` as a hybrid of exact parts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalRelation {
    pub branches: Vec<PlBranch>,
    pub verticals: Vec<Vertical>,
    pub horizontals: Vec<Horizontal>,
    pub isolated: Vec<(Rational, Rational)>,
}

fn check_unit(v: &Rational) -> Result<(), IntervalError> {
    if v < &Rational::zero() || v > &Rational::one() {
        return Err(IntervalError::OutOfUnitRange(v.clone()));
    }
    Ok(())
}

impl IntervalRelation {
    pub fn new(
        branches: Vec<PlBranch>,
        verticals: Vec<Vertical>,
        horizontals: Vec<Horizontal>,
        isolated: Vec<(Rational, Rational)>,
    ) -> Result<Self, IntervalError> {
        for v in &verticals {
            check_unit(&v.x)?;
            check_unit(&v.y_lo)?;
            check_unit(&v.y_hi)?;
            if v.y_lo > v.y_hi {
                return Err(IntervalError::SegmentOutOfOrder);
            }
        }
        for h in &horizontals {
            check_unit(&h.x_lo)?;
            check_unit(&h.x_hi)?;
            check_unit(&h.y)?;
            if h.x_lo > h.x_hi {
                return Err(IntervalError::SegmentOutOfOrder);
            }
        }
        for (x, y) in &isolated {
            check_unit(x)?;
            check_unit(y)?;
        }
        Ok(IntervalRelation {
            branches,
            verticals,
            horizontals,
            isolated,
        })
    }

    pub fn from_branches(branches: Vec<PlBranch>) -> Self {
        IntervalRelation {
            branches,
            ..Default::default()
        }
    }

    /// Exact image `{y : exists x in u with (x, y) in R}`.
    pub fn image(&self, u: &IntervalUnion) -> IntervalUnion {
        let mut acc = Vec::new();
        for b in &self.branches {
            acc.push(b.image(u));
        }
        for v in &self.verticals {
            if u.contains(&v.x) {
                acc.push(IntervalUnion::segment(v.y_lo.clone(), v.y_hi.clone()));
            }
        }
        for h in &self.horizontals {
            let span = IntervalUnion::segment(h.x_lo.clone(), h.x_hi.clone());
            if !u.intersect(&span).is_empty() {
                acc.push(IntervalUnion::point(h.y.clone()));
            }
        }
        for (x, y) in &self.isolated {
            if u.contains(x) {
                acc.push(IntervalUnion::point(y.clone()));
            }
        }
        IntervalUnion::union_all(acc)
    }

    /// `n`-fold image; `n = 0` returns the input unchanged.
    pub fn iterate_image(&self, u: &IntervalUnion, n: u32) -> IntervalUnion {
        let mut acc = u.clone();
        for _ in 0..n {
            acc = self.image(&acc);
        }
        acc
    }

    /// The inverse relation: branches inverted, verticals and
    /// horizontals exchanged, isolated points swapped. Part order is
    /// preserved, so branch indices stay meaningful across inversion.
    pub fn inverse(&self) -> IntervalRelation {
        IntervalRelation {
            branches: self.branches.iter().map(PlBranch::inverted).collect(),
            verticals: self
                .horizontals
                .iter()
                .map(|h| Vertical {
                    x: h.y.clone(),
                    y_lo: h.x_lo.clone(),
                    y_hi: h.x_hi.clone(),
                })
                .collect(),
            horizontals: self
                .verticals
                .iter()
                .map(|v| Horizontal {
                    x_lo: v.y_lo.clone(),
                    x_hi: v.y_hi.clone(),
                    y: v.x.clone(),
                })
                .collect(),
            isolated: self
                .isolated
                .iter()
                .map(|(x, y)| (y.clone(), x.clone()))
                .collect(),
        }
    }

    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        self.branches.iter().any(|b| b.contains(x, y))
            || self
                .verticals
                .iter()
                .any(|v| &v.x == x && &v.y_lo <= y && y <= &v.y_hi)
            || self
                .horizontals
                .iter()
                .any(|h| &h.y == y && &h.x_lo <= x && x <= &h.x_hi)
            || self.isolated.iter().any(|(px, py)| px == x && py == y)
    }

    /// The finite sub-relation on the part-defining coordinates.
    ///
    /// Samples every breakpoint, segment endpoint, and isolated
    /// coordinate, takes those rationals as labeled points (ids are the
    /// rational literals), and keeps exactly the pairs lying on the
    /// relation.
    pub fn discretize(&self) -> FiniteRelation {
        let mut coords: Vec<Rational> = Vec::new();
        for b in &self.branches {
            coords.extend(b.xs().iter().cloned());
            coords.extend(b.ys().iter().cloned());
        }
        for v in &self.verticals {
            coords.extend([v.x.clone(), v.y_lo.clone(), v.y_hi.clone()]);
        }
        for h in &self.horizontals {
            coords.extend([h.x_lo.clone(), h.x_hi.clone(), h.y.clone()]);
        }
        for (x, y) in &self.isolated {
            coords.extend([x.clone(), y.clone()]);
        }
        coords.sort();
        coords.dedup();
        let points: Vec<Point> = coords
            .iter()
            .map(|c| Point {
                id: c.to_string(),
                coords: vec![c.to_f64()],
            })
            .collect();
        let mut edges = Vec::new();
        for x in &coords {
            for y in &coords {
                if self.contains(x, y) {
                    edges.push((x.to_string(), y.to_string()));
                }
            }
        }
        FiniteRelation::new(points, &edges).expect("sampled points are valid")
    }
}

/// The standard tent relation: the graph of the full tent map as two
/// monotone branches.
pub fn tent_relation() -> IntervalRelation {
    let up = PlBranch::line(
        Rational::zero(),
        Rational::zero(),
        Rational::new(1, 2),
        Rational::one(),
    );
    let down = PlBranch::line(
        Rational::new(1, 2),
        Rational::one(),
        Rational::one(),
        Rational::zero(),
    );
    IntervalRelation::from_branches(vec![up, down])
}

pub(crate) fn unit_interval() -> IntervalUnion {
    IntervalUnion::segment(Rational::zero(), Rational::one())
}
