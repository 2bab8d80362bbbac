//! Periodic-itinerary certification for relations whose branches are
//! all linear through the origin.
//!
//! A word of branches composes to `x -> (product of slopes) x` on a
//! nondegenerate domain, so a nonzero periodic point of that itinerary
//! exists exactly when the slope product is 1. Enumerating all words up
//! to a length bound therefore certifies the absence of nonzero periodic
//! points up to that period, or reports every itinerary carrying them.

use super::IntervalRelation;
use crate::rational::Rational;
use crate::IntervalUnion;

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum PeriodicError {
    #[error("relation has segment or isolated parts; only pure branch relations are supported")]
    NonBranchParts,
    #[error("branch {0} is not linear through the origin")]
    NonLinearBranch(usize),
    #[error("relation has no branches")]
    Empty,
}

/// An itinerary whose composition is the identity on its domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicItinerary {
    /// Branch indices, applied left to right.
    pub word: Vec<usize>,
    /// The composition's domain; every point of it is periodic.
    pub fixed_points: IntervalUnion,
}

/// Enumerates all itineraries of length at most `k_max` whose slope
/// product is exactly 1.
///
/// Words whose exponent pattern cannot reach product 1 are pruned in
/// bulk: the product only depends on how many times each branch is used,
/// so the multiset check runs first and the word enumeration only visits
/// lengths that can possibly qualify.
pub fn periodic_itineraries(
    relation: &IntervalRelation,
    k_max: u32,
) -> Result<Vec<PeriodicItinerary>, PeriodicError> {
    if !relation.verticals.is_empty()
        || !relation.horizontals.is_empty()
        || !relation.isolated.is_empty()
    {
        return Err(PeriodicError::NonBranchParts);
    }
    if relation.branches.is_empty() {
        return Err(PeriodicError::Empty);
    }
    let mut slopes = Vec::new();
    let mut dom_tops = Vec::new();
    for (i, b) in relation.branches.iter().enumerate() {
        let xs = b.xs();
        let ys = b.ys();
        if xs[0] != Rational::zero() || ys[0] != Rational::zero() {
            return Err(PeriodicError::NonLinearBranch(i));
        }
        let slope = &ys[1] / &xs[1];
        if xs.iter().zip(ys).any(|(x, y)| *y != &slope * x) {
            return Err(PeriodicError::NonLinearBranch(i));
        }
        slopes.push(slope);
        dom_tops.push(xs.last().unwrap().clone());
    }
    let feasible = feasible_lengths(&slopes, k_max);
    let mut out = Vec::new();
    if feasible.iter().all(|f| !f) {
        return Ok(out);
    }
    let mut word = Vec::new();
    enumerate(
        &slopes,
        &dom_tops,
        &feasible,
        k_max as usize,
        &mut word,
        &Rational::one(),
        &Rational::one(),
        &mut out,
    );
    Ok(out)
}

/// Which word lengths admit a slope multiset with product exactly 1.
fn feasible_lengths(slopes: &[Rational], k_max: u32) -> Vec<bool> {
    let mut feasible = vec![false; k_max as usize + 1];
    let mut products: std::collections::BTreeSet<(usize, Rational)> = Default::default();
    products.insert((0, Rational::one()));
    let mut frontier = vec![(0usize, Rational::one())];
    while let Some((len, prod)) = frontier.pop() {
        if len > 0 && prod == Rational::one() {
            feasible[len] = true;
        }
        if len == k_max as usize {
            continue;
        }
        for s in slopes {
            let next = (len + 1, &prod * s);
            if products.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    feasible
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    slopes: &[Rational],
    dom_tops: &[Rational],
    feasible: &[bool],
    k_max: usize,
    word: &mut Vec<usize>,
    product: &Rational,
    dom_top: &Rational,
    out: &mut Vec<PeriodicItinerary>,
) {
    if !word.is_empty() && feasible[word.len()] && *product == Rational::one() {
        out.push(PeriodicItinerary {
            word: word.clone(),
            fixed_points: IntervalUnion::segment(Rational::zero(), dom_top.clone()),
        });
    }
    if word.len() == k_max || !feasible[word.len() + 1..].iter().any(|f| *f) {
        return;
    }
    for (i, slope) in slopes.iter().enumerate() {
        // Composition so far maps [0, dom_top] by x -> product * x; the
        // next branch needs product * x <= its domain end.
        let limit = &dom_tops[i] / product;
        let next_top = Rational::min_of(dom_top, &limit);
        word.push(i);
        enumerate(
            slopes,
            dom_tops,
            feasible,
            k_max,
            word,
            &(product * slope),
            &next_top,
            out,
        );
        word.pop();
    }
}
