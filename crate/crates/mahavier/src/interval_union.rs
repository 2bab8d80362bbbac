//! Finite unions of closed rational intervals in normalized form.

use crate::rational::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

/// A finite union of closed intervals with rational endpoints.
///
/// The parts are kept sorted, pairwise disjoint, and non-adjacent
/// (touching intervals are merged), so two unions describe the same
/// point set exactly when they are equal. Degenerate parts (single
/// points) are allowed.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(
    try_from = "Vec<(Rational, Rational)>",
    into = "Vec<(Rational, Rational)>"
)]
pub struct IntervalUnion {
    parts: Vec<(Rational, Rational)>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    /// Single closed interval `[lo, hi]`. Panics if `lo > hi`.
    pub fn segment(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "segment endpoints out of order");
        IntervalUnion {
            parts: vec![(lo, hi)],
        }
    }

    pub fn point(x: Rational) -> Self {
        IntervalUnion {
            parts: vec![(x.clone(), x)],
        }
    }

    /// Normalizes an arbitrary list of closed intervals.
    ///
    /// Parts with `lo > hi` are rejected rather than silently dropped.
    pub fn from_parts(parts: Vec<(Rational, Rational)>) -> Result<Self, BadInterval> {
        for (lo, hi) in &parts {
            if lo > hi {
                return Err(BadInterval(lo.clone(), hi.clone()));
            }
        }
        Ok(Self::normalize(parts))
    }

    fn normalize(mut parts: Vec<(Rational, Rational)>) -> Self {
        parts.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(parts.len());
        for (lo, hi) in parts {
            match out.last_mut() {
                Some(last) if lo <= last.1 => {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                }
                _ => out.push((lo, hi)),
            }
        }
        IntervalUnion { parts: out }
    }

    pub fn parts(&self) -> &[(Rational, Rational)] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// True when the union is exactly one point.
    pub fn single_point(&self) -> Option<&Rational> {
        match self.parts.as_slice() {
            [(lo, hi)] if lo == hi => Some(lo),
            _ => None,
        }
    }

    pub fn min(&self) -> Option<&Rational> {
        self.parts.first().map(|(lo, _)| lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.parts.last().map(|(_, hi)| hi)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|(lo, hi)| lo <= x && x <= hi)
    }

    pub fn union(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut parts = self.parts.clone();
        parts.extend(other.parts.iter().cloned());
        Self::normalize(parts)
    }

    pub fn union_all<I: IntoIterator<Item = IntervalUnion>>(items: I) -> IntervalUnion {
        let mut parts = Vec::new();
        for u in items {
            parts.extend(u.parts);
        }
        Self::normalize(parts)
    }

    pub fn intersect(&self, other: &IntervalUnion) -> IntervalUnion {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            let (alo, ahi) = &self.parts[i];
            let (blo, bhi) = &other.parts[j];
            let lo = Rational::max_of(alo, blo);
            let hi = Rational::min_of(ahi, bhi);
            if lo <= hi {
                out.push((lo, hi));
            }
            if ahi <= bhi {
                i += 1;
            } else {
                j += 1;
            }
        }
        // Intersections of disjoint sorted parts are already disjoint and sorted.
        IntervalUnion { parts: out }
    }

    /// Restricts to `[lo, hi]`.
    pub fn clip(&self, lo: &Rational, hi: &Rational) -> IntervalUnion {
        if lo > hi {
            return IntervalUnion::empty();
        }
        self.intersect(&IntervalUnion::segment(lo.clone(), hi.clone()))
    }

    pub fn is_subset_of(&self, other: &IntervalUnion) -> bool {
        self.parts
            .iter()
            .all(|(lo, hi)| other.parts.iter().any(|(olo, ohi)| olo <= lo && hi <= ohi))
    }

    /// True when every part is a single point.
    pub fn is_finite_set(&self) -> bool {
        self.parts.iter().all(|(lo, hi)| lo == hi)
    }

    /// Whether `self` minus `other` contains a nondegenerate interval.
    ///
    /// When it does not, the difference is a finite point set and the
    /// list of those points is returned. Because both unions are closed
    /// and normalized, a nondegenerate part of `self` either sits inside
    /// a single part of `other` or leaves an uncovered piece of positive
    /// length, so leftover isolated points can only come from degenerate
    /// parts of `self`.
    pub fn subtract_to_points(&self, other: &IntervalUnion) -> Result<Vec<Rational>, NotFinite> {
        let mut points = Vec::new();
        for (lo, hi) in &self.parts {
            if lo == hi {
                if !other.contains(lo) {
                    points.push(lo.clone());
                }
            } else if !other.parts.iter().any(|(olo, ohi)| olo <= lo && hi <= ohi) {
                return Err(NotFinite);
            }
        }
        Ok(points)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("interval endpoints out of order: [{0}, {1}]")]
pub struct BadInterval(pub Rational, pub Rational);

/// The set difference was not a finite point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("difference contains a nondegenerate interval")]
pub struct NotFinite;

impl TryFrom<Vec<(Rational, Rational)>> for IntervalUnion {
    type Error = BadInterval;
    fn try_from(parts: Vec<(Rational, Rational)>) -> Result<Self, BadInterval> {
        IntervalUnion::from_parts(parts)
    }
}

impl From<IntervalUnion> for Vec<(Rational, Rational)> {
    fn from(u: IntervalUnion) -> Self {
        u.parts
    }
}

impl fmt::Debug for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "{{}}");
        }
        let mut first = true;
        for (lo, hi) in &self.parts {
            if !first {
                write!(f, " u ")?;
            }
            first = false;
            if lo == hi {
                write!(f, "{{{lo}}}")?;
            } else {
                write!(f, "[{lo}, {hi}]")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntervalUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
