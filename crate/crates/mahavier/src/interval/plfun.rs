//! Continuous piecewise-linear functions with exact rational arithmetic.
//!
//! [`PlFunction`] is the workhorse behind branch evaluation, image and
//! preimage computation, function composition, and exact coincidence
//! analysis (where do two functions agree). It imposes no monotonicity;
//! the monotone, injective branch type wraps it.

use crate::rational::Rational;
use crate::IntervalUnion;

/// A continuous piecewise-linear function given by its breakpoints.
///
/// `xs` is strictly increasing; a single breakpoint denotes the constant
/// point map `{x0 -> y0}` (useful as a degenerate composition result).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl PlFunction {
    pub fn new(xs: Vec<Rational>, ys: Vec<Rational>) -> Result<Self, PlError> {
        if xs.is_empty() || xs.len() != ys.len() {
            return Err(PlError::Shape);
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(PlError::BreakpointsNotIncreasing);
        }
        Ok(PlFunction { xs, ys })
    }

    pub fn constant_point(x: Rational, y: Rational) -> Self {
        PlFunction {
            xs: vec![x],
            ys: vec![y],
        }
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    pub fn domain(&self) -> (&Rational, &Rational) {
        (self.xs.first().unwrap(), self.xs.last().unwrap())
    }

    pub fn domain_union(&self) -> IntervalUnion {
        let (lo, hi) = self.domain();
        IntervalUnion::segment(lo.clone(), hi.clone())
    }

    /// Exact evaluation; `None` outside the domain.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let (lo, hi) = self.domain();
        if x < lo || x > hi {
            return None;
        }
        if self.xs.len() == 1 {
            return Some(self.ys[0].clone());
        }
        // Find the segment holding x.
        let i = match self.xs.binary_search(x) {
            Ok(i) => return Some(self.ys[i].clone()),
            Err(i) => i - 1,
        };
        let (x0, x1) = (&self.xs[i], &self.xs[i + 1]);
        let (y0, y1) = (&self.ys[i], &self.ys[i + 1]);
        Some(y0 + &((y1 - y0) * (x - x0) / (x1 - x0)))
    }

    /// Exact image of a union of intervals, computed per linear segment.
    pub fn image(&self, u: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        if self.xs.len() == 1 {
            if u.contains(&self.xs[0]) {
                parts.push((self.ys[0].clone(), self.ys[0].clone()));
            }
            return IntervalUnion::from_parts(parts).unwrap();
        }
        for (lo, hi) in u.parts() {
            for i in 0..self.xs.len() - 1 {
                let slo = Rational::max_of(lo, &self.xs[i]);
                let shi = Rational::min_of(hi, &self.xs[i + 1]);
                if slo > shi {
                    continue;
                }
                let a = self.eval(&slo).expect("inside domain");
                let b = self.eval(&shi).expect("inside domain");
                parts.push(if a <= b { (a, b) } else { (b, a) });
            }
        }
        IntervalUnion::from_parts(parts).unwrap()
    }

    /// Exact preimage of a union of intervals.
    pub fn preimage(&self, target: &IntervalUnion) -> IntervalUnion {
        let mut parts = Vec::new();
        if self.xs.len() == 1 {
            if target.contains(&self.ys[0]) {
                parts.push((self.xs[0].clone(), self.xs[0].clone()));
            }
            return IntervalUnion::from_parts(parts).unwrap();
        }
        for i in 0..self.xs.len() - 1 {
            let (x0, x1) = (&self.xs[i], &self.xs[i + 1]);
            let (y0, y1) = (&self.ys[i], &self.ys[i + 1]);
            for (clo, chi) in target.parts() {
                if y0 == y1 {
                    if clo <= y0 && y0 <= chi {
                        parts.push((x0.clone(), x1.clone()));
                    }
                    continue;
                }
                // Solve y0 + t (y1 - y0) in [clo, chi] for x in [x0, x1].
                let (vlo, vhi) = if y0 < y1 { (y0, y1) } else { (y1, y0) };
                let lo = Rational::max_of(clo, vlo);
                let hi = Rational::min_of(chi, vhi);
                if lo > hi {
                    continue;
                }
                let invert = |y: &Rational| x0 + &((x1 - x0) * (y - y0) / (y1 - y0));
                let (a, b) = (invert(&lo), invert(&hi));
                parts.push(if a <= b { (a, b) } else { (b, a) });
            }
        }
        IntervalUnion::from_parts(parts).unwrap()
    }

    /// `outer(inner(x))` where the composition domain is connected.
    ///
    /// Returns `None` when no `x` satisfies `inner(x) in dom(outer)`, or
    /// when the satisfying set is disconnected (callers here only compose
    /// monotone chains and total leg maps, which never disconnect).
    pub fn compose(outer: &PlFunction, inner: &PlFunction) -> Option<PlFunction> {
        let dom = inner.preimage(&outer.domain_union());
        let (dlo, dhi) = match dom.parts() {
            [] => return None,
            [(lo, hi)] => (lo.clone(), hi.clone()),
            _ => return None,
        };
        if dlo == dhi {
            let y = outer.eval(&inner.eval(&dlo)?)?;
            return Some(PlFunction::constant_point(dlo, y));
        }
        // Breakpoints: inner's own, plus preimages of outer's breakpoints,
        // clipped to the composition domain.
        let mut cuts: Vec<Rational> = vec![dlo.clone(), dhi.clone()];
        for x in &inner.xs {
            if *x > dlo && *x < dhi {
                cuts.push(x.clone());
            }
        }
        for oy in &outer.xs {
            let hits = inner.preimage(&IntervalUnion::point(oy.clone()));
            for (lo, hi) in hits.parts() {
                for x in [lo, hi] {
                    if *x > dlo && *x < dhi {
                        cuts.push(x.clone());
                    }
                }
            }
        }
        cuts.sort();
        cuts.dedup();
        let ys: Vec<Rational> = cuts
            .iter()
            .map(|x| {
                outer
                    .eval(&inner.eval(x).expect("x in composition domain"))
                    .expect("value in outer domain")
            })
            .collect();
        Some(PlFunction { xs: cuts, ys })
    }

    /// The set where `self` and `other` agree, within `scope`.
    ///
    /// Exact: per linear segment of the combined breakpoint partition the
    /// difference is linear, so coincidences are whole segments or single
    /// roots.
    pub fn coincidence_set(&self, other: &PlFunction, scope: &IntervalUnion) -> IntervalUnion {
        let scope = scope
            .intersect(&self.domain_union())
            .intersect(&other.domain_union());
        let mut parts = Vec::new();
        for (lo, hi) in scope.parts() {
            let mut cuts: Vec<Rational> = vec![lo.clone(), hi.clone()];
            for x in self.xs.iter().chain(other.xs.iter()) {
                if x > lo && x < hi {
                    cuts.push(x.clone());
                }
            }
            cuts.sort();
            cuts.dedup();
            let diff_at = |x: &Rational| -> Rational {
                let a = self.eval(x).expect("in scope");
                let b = other.eval(x).expect("in scope");
                &a - &b
            };
            if cuts.len() == 1 {
                if diff_at(&cuts[0]).is_zero() {
                    parts.push((cuts[0].clone(), cuts[0].clone()));
                }
                continue;
            }
            for w in cuts.windows(2) {
                let (p, q) = (&w[0], &w[1]);
                let (dp, dq) = (diff_at(p), diff_at(q));
                match (dp.is_zero(), dq.is_zero()) {
                    (true, true) => parts.push((p.clone(), q.clone())),
                    (true, false) => parts.push((p.clone(), p.clone())),
                    (false, true) => parts.push((q.clone(), q.clone())),
                    (false, false) => {
                        if dp.is_negative() != dq.is_negative() {
                            // Single interior root of the linear difference.
                            let root = p + &((q - p) * &dp / &(&dp - &dq));
                            parts.push((root.clone(), root));
                        }
                    }
                }
            }
        }
        IntervalUnion::from_parts(parts).unwrap()
    }
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum PlError {
    #[error("breakpoint and value lists must be nonempty and of equal length")]
    Shape,
    #[error("breakpoints must be strictly increasing")]
    BreakpointsNotIncreasing,
}
