//! CR-turbulence decisions, brute-force oracles, and itinerary
//! realization for finite relations.

use num_traits::ToPrimitive;
use std::collections::BTreeMap;

use super::{FiniteRelation, LevelWitness, PathTuple, RealizationError, SearchError};
use crate::WitnessKind;

/// Caps for the brute-force feasibility guard.
const MAX_TUPLES: u128 = 200_000;
const MAX_PAIRS: u128 = 25_000_000;

/// Verdict plus constructive evidence for a turbulence decision.
#[derive(Debug, Clone, PartialEq)]
pub struct CrDecision {
    pub verdict: bool,
    pub witness: Option<LevelWitness>,
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum ObstructionError {
    #[error("the two marked points must be distinct")]
    EqualPoints,
    #[error("unknown point id {0:?}")]
    UnknownPointId(String),
}

impl FiniteRelation {
    /// Decides CR-turbulence.
    ///
    /// The verdict is positive exactly when a double loop exists (two
    /// distinct closed walks through a common point), and the returned
    /// witness is the singleton pair `K = {x * y}`, `L = {y * x}` built
    /// from those walks. It always verifies.
    pub fn cr_turbulence(&self) -> CrDecision {
        match self.double_loop_witness() {
            None => CrDecision {
                verdict: false,
                witness: None,
            },
            Some(dl) => {
                let k = dl.x.star(&dl.y);
                let l = dl.y.star(&dl.x);
                let witness = LevelWitness {
                    level: k.len(),
                    kind: WitnessKind::Cr,
                    k: vec![k],
                    l: vec![l],
                };
                debug_assert_eq!(self.verify_witness(&witness), Ok(true));
                CrDecision {
                    verdict: true,
                    witness: Some(witness),
                }
            }
        }
    }

    /// Decides reverse CR-turbulence as CR-turbulence of the inverse
    /// relation, with the witness tuples reversed back.
    pub fn reverse_cr_turbulence(&self) -> CrDecision {
        let inv = self.inverse().cr_turbulence();
        let witness = inv.witness.map(|w| {
            let rev = LevelWitness {
                level: w.level,
                kind: WitnessKind::ReverseCr,
                k: w.k.iter().map(PathTuple::reversed).collect(),
                l: w.l.iter().map(PathTuple::reversed).collect(),
            };
            debug_assert_eq!(self.verify_witness(&rev), Ok(true));
            rev
        });
        CrDecision {
            verdict: inv.verdict,
            witness,
        }
    }

    /// Whether the one-sided orbit space is uncountable. For finite
    /// relations this coincides with CR-turbulence.
    pub fn is_uncountable(&self) -> bool {
        self.cr_turbulence().verdict
    }

    /// Exhaustive witness search at one level.
    ///
    /// Enumerates pairs of disjoint nonempty tuple sets of size at most
    /// `size_cap` over `level(n)`, in canonical order (subsets ordered by
    /// size, then lexicographically), and returns the first pair that
    /// verifies. `None` means no witness of that shape exists at this
    /// level. Levels whose enumeration would be too large are rejected
    /// with a resource error instead of running forever.
    pub fn brute_force_witness(
        &self,
        n: usize,
        size_cap: usize,
    ) -> Result<Option<LevelWitness>, SearchError> {
        assert!(n >= 1 && size_cap >= 1);
        let count = self.count_level(n).to_u128().unwrap_or(u128::MAX);
        let infeasible = |cap: usize| SearchError::Infeasible {
            level: n,
            tuples: count,
            cap,
        };
        if count > MAX_TUPLES {
            return Err(infeasible(size_cap));
        }
        if size_cap > 1 {
            let subsets = subsets_up_to(count, size_cap);
            if subsets.saturating_mul(subsets) > MAX_PAIRS {
                return Err(infeasible(size_cap));
            }
        }
        let tuples = self.level(n);
        if size_cap == 1 {
            return Ok(self.singleton_search(&tuples));
        }
        let combos = combinations_up_to(tuples.len(), size_cap);
        for k_idx in &combos {
            for l_idx in &combos {
                if l_idx.iter().any(|i| k_idx.contains(i)) {
                    continue;
                }
                let w = LevelWitness {
                    level: n,
                    kind: WitnessKind::Cr,
                    k: k_idx.iter().map(|&i| tuples[i].clone()).collect(),
                    l: l_idx.iter().map(|&i| tuples[i].clone()).collect(),
                };
                if self.verify_witness(&w) == Ok(true) {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }

    /// Singleton pairs verify exactly when two distinct tuples share one
    /// point as common first and last entry, so group and scan.
    fn singleton_search(&self, tuples: &[PathTuple]) -> Option<LevelWitness> {
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (i, t) in tuples.iter().enumerate() {
            if t.first() == t.last() {
                groups.entry(t.first()).or_default().push(i);
            }
        }
        for (i, t) in tuples.iter().enumerate() {
            if t.first() != t.last() {
                continue;
            }
            let group = &groups[&t.first()];
            if let Some(&j) = group.iter().find(|&&j| j != i) {
                return Some(LevelWitness {
                    level: t.len(),
                    kind: WitnessKind::Cr,
                    k: vec![t.clone()],
                    l: vec![tuples[j].clone()],
                });
            }
        }
        None
    }

    /// Realizes a binary itinerary through a verified cr witness.
    ///
    /// For a witness at level `n` and a word of length `j`, returns a
    /// tuple of length `j (n - 1) + 1` whose `i`-th block of `n` entries
    /// (consecutive blocks overlap in one entry) lies in `K` when
    /// `word[i] == 0` and in `L` when `word[i] == 1`. The construction
    /// walks the word right to left, always taking the first extension in
    /// canonical order, so distinct words of one length yield distinct
    /// tuples.
    pub fn realize_itinerary(
        &self,
        w: &LevelWitness,
        word: &[u8],
    ) -> Result<PathTuple, RealizationError> {
        if word.is_empty() {
            return Err(RealizationError::EmptyWord);
        }
        if w.kind != WitnessKind::Cr {
            return Err(RealizationError::UnverifiedWitness(
                "witness kind must be cr".to_string(),
            ));
        }
        match self.verify_witness(w) {
            Ok(true) => {}
            Ok(false) => {
                return Err(RealizationError::UnverifiedWitness(
                    "witness fails the projection inclusion".to_string(),
                ))
            }
            Err(e) => return Err(RealizationError::UnverifiedWitness(e.to_string())),
        }
        let mut k_sorted = w.k.clone();
        let mut l_sorted = w.l.clone();
        self.sort_canonical(&mut k_sorted);
        self.sort_canonical(&mut l_sorted);
        let side = |bit: u8| -> &[PathTuple] {
            if bit == 0 {
                &k_sorted
            } else {
                &l_sorted
            }
        };
        let mut current = side(word[word.len() - 1])[0].clone();
        for &bit in word[..word.len() - 1].iter().rev() {
            let head = current.first();
            let prefix = side(bit)
                .iter()
                .find(|t| t.last() == head)
                .expect("verified witness guarantees an extension");
            current = prefix.star(&current);
        }
        Ok(current)
    }

    /// Checks a syntactic condition that rules out CR-turbulence.
    ///
    /// For distinct marked points `a`, `b` the conditions are: nothing
    /// maps to `a` except `a` itself; `b` maps only to `b`; and whenever
    /// two distinct points map to a common point, one of the three
    /// touches `{a, b}`. When all three hold the relation cannot be
    /// CR-turbulent.
    pub fn turbulence_obstruction(&self, a: &str, b: &str) -> Result<bool, ObstructionError> {
        if a == b {
            return Err(ObstructionError::EqualPoints);
        }
        let a = self
            .point_index(a)
            .ok_or_else(|| ObstructionError::UnknownPointId(a.to_string()))?;
        let b = self
            .point_index(b)
            .ok_or_else(|| ObstructionError::UnknownPointId(b.to_string()))?;
        // (1) edges into a come only from a
        for (x, y) in self.edges() {
            if y == a && x != a {
                return Ok(false);
            }
            // (2) edges out of b go only to b
            if x == b && y != b {
                return Ok(false);
            }
        }
        // (3) merging pairs must touch {a, b}
        for u in 0..self.point_count() {
            let pre = self.predecessors(u);
            for (i, &s) in pre.iter().enumerate() {
                for &t in &pre[i + 1..] {
                    let trio = [s, t, u];
                    if !trio.contains(&a) && !trio.contains(&b) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

fn subsets_up_to(count: u128, cap: usize) -> u128 {
    let mut total: u128 = 0;
    let mut c: u128 = 1;
    for k in 1..=cap as u128 {
        if count < k {
            break;
        }
        c = c.saturating_mul(count - k + 1) / k;
        total = total.saturating_add(c);
    }
    total
}

/// Index combinations of sizes 1..=cap in canonical order:
/// size-major, then lexicographic.
fn combinations_up_to(n: usize, cap: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=cap.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            // Rightmost slot that can still advance.
            let mut i = size;
            while i > 0 && idx[i - 1] == n - size + (i - 1) {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}
