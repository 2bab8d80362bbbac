//! Alternation combinatorics for labeled arcs.
//!
//! A labeled path samples a map along an arc and records, per sample,
//! whether the value landed in a set A, a set B, or neither. The zigzag
//! number is the longest strictly alternating A/B subsequence; a
//! uniform-continuity gap turns it into the pigeonhole bound
//! `ceil(diameter / delta)`. The flip-count machinery quantifies the
//! same alternation over orderings of a binary cube and is checked
//! exhaustively for small dimensions.

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "A")]
    A,
    #[serde(rename = "B")]
    B,
    #[serde(rename = "-")]
    Neither,
}

#[derive(Debug, thiserror::Error)]
pub enum ZigzagError {
    #[error("sample parameters must be strictly increasing")]
    ParametersNotIncreasing,
    #[error("parameter and label lists must have equal length")]
    LengthMismatch,
    #[error("diameter and delta must be positive")]
    NonPositive,
    #[error("exhaustive verification is limited to n <= {max}, got {got}")]
    TooLarge { max: u32, got: u32 },
    #[error("a flip assignment over n = {n} needs a bijection of {expected} cube points")]
    NotABijection { n: u32, expected: usize },
}

/// Samples along an arc with A/B/neither labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPath {
    ts: Vec<Rational>,
    labels: Vec<Label>,
}

impl LabeledPath {
    pub fn new(ts: Vec<Rational>, labels: Vec<Label>) -> Result<Self, ZigzagError> {
        if ts.len() != labels.len() {
            return Err(ZigzagError::LengthMismatch);
        }
        if ts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ZigzagError::ParametersNotIncreasing);
        }
        Ok(LabeledPath { ts, labels })
    }

    pub fn ts(&self) -> &[Rational] {
        &self.ts
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Parameter spread `t_last - t_first`; zero when nearly empty.
    pub fn diameter(&self) -> Rational {
        match (self.ts.first(), self.ts.last()) {
            (Some(a), Some(b)) => b - a,
            _ => Rational::zero(),
        }
    }
}

/// Longest strictly alternating A/B subsequence, either phase.
///
/// Greedy block counting: drop the unlabeled samples, then count the
/// maximal runs of equal labels. Taking one sample per run is an
/// alternating subsequence, and no alternating subsequence can take two
/// samples from one run, so the count is exact (the brute-force oracle
/// in the tests confirms it).
pub fn zigzag_number(path: &LabeledPath) -> usize {
    let mut blocks = 0usize;
    let mut prev: Option<Label> = None;
    for &l in &path.labels {
        if l == Label::Neither {
            continue;
        }
        if prev != Some(l) {
            blocks += 1;
            prev = Some(l);
        }
    }
    blocks
}

/// The pigeonhole bound `ceil(diameter / delta)`.
pub fn zigzag_bound(diameter: &Rational, delta: &Rational) -> Result<u64, ZigzagError> {
    if diameter <= &Rational::zero() || delta <= &Rational::zero() {
        return Err(ZigzagError::NonPositive);
    }
    Ok((diameter / delta)
        .ceil_int()
        .to_u64()
        .expect("bound fits in 64 bits"))
}

/// An ordering of the binary `n`-cube: `psi[i]` is the vertex (as a bit
/// mask) assigned to the `i`-th point of an increasing sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipAssignment {
    n: u32,
    psi: Vec<u32>,
}

impl FlipAssignment {
    pub fn new(n: u32, psi: Vec<u32>) -> Result<Self, ZigzagError> {
        let expected = 1usize << n;
        let mut seen = vec![false; expected];
        if psi.len() != expected {
            return Err(ZigzagError::NotABijection { n, expected });
        }
        for &v in &psi {
            if v as usize >= expected || seen[v as usize] {
                return Err(ZigzagError::NotABijection { n, expected });
            }
            seen[v as usize] = true;
        }
        Ok(FlipAssignment { n, psi })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn psi(&self) -> &[u32] {
        &self.psi
    }
}

/// Per-coordinate counts of adjacent flips in the ordering.
pub fn flip_counts(assignment: &FlipAssignment) -> Vec<u32> {
    let mut counts = vec![0u32; assignment.n as usize];
    for w in assignment.psi.windows(2) {
        let delta = w[0] ^ w[1];
        for (k, c) in counts.iter_mut().enumerate() {
            if (delta >> k) & 1 == 1 {
                *c += 1;
            }
        }
    }
    counts
}

/// Exhaustively checks that every ordering of the `n`-cube flips some
/// coordinate at least `(2^n - 1) / n` times.
///
/// Adjacent distinct vertices flip at least one coordinate, so the
/// total flip count is at least `2^n - 1` and the maximum is at least
/// the average; the exhaustive sweep confirms there is no ordering
/// beating the bound. Factorial growth caps the check at `n <= 3`
/// (40320 orderings).
pub fn flip_bound_exhaustive(n: u32) -> Result<bool, ZigzagError> {
    const MAX_N: u32 = 3;
    if n == 0 || n > MAX_N {
        return Err(ZigzagError::TooLarge { max: MAX_N, got: n });
    }
    let size = 1u32 << n;
    let perms = permutations((0..size).collect());
    // max_k flips * n >= 2^n - 1, compared exactly in integers.
    let needed = (1u64 << n) - 1;
    Ok(perms.par_iter().all(|psi| {
        let fa = FlipAssignment {
            n,
            psi: psi.clone(),
        };
        let best = flip_counts(&fa).into_iter().max().unwrap_or(0) as u64;
        best * n as u64 >= needed
    }))
}

fn permutations(items: Vec<u32>) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut items = items;
    heap_permute(items.len(), &mut items, &mut out);
    out
}

fn heap_permute(k: usize, items: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k <= 1 {
        out.push(items.clone());
        return;
    }
    for i in 0..k {
        heap_permute(k - 1, items, out);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}
