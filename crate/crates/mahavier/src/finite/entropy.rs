//! Shift entropy of finite relations.
//!
//! The orbit space of a finite relation is a vertex shift, so its
//! entropy is the natural log of the Perron root of the adjacency
//! matrix after forward trimming (points with no outgoing edge cannot
//! start an infinite orbit and are deleted iteratively). The zero /
//! nonzero decision is made combinatorially, on strongly connected
//! components; the numeric value comes from big-integer power iteration,
//! and an independent walk-count growth estimator cross-checks it.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{FiniteRelation, PathTuple};

/// Relative tolerance for the Rayleigh-quotient convergence test.
const RAYLEIGH_REL_TOL: f64 = 1e-12;
const MAX_POWER_ITERATIONS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyMethod {
    Spectral,
    Growth,
}

/// An entropy value in natural-log units, with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyEstimate {
    pub value: f64,
    pub method: EntropyMethod,
    /// `(m, ln |level m+1| / m)` samples when `method` is `Growth`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<(u32, f64)>>,
}

/// Two distinct closed walks from a common base point, padded to equal
/// length; the combinatorial core of every positive-entropy certificate.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleLoop {
    pub x: PathTuple,
    pub y: PathTuple,
    /// First position (1-based) where the walks differ.
    pub j: usize,
}

impl FiniteRelation {
    /// Indices surviving iterative deletion of points with no out-edge.
    pub(crate) fn forward_trim(&self) -> Vec<usize> {
        let n = self.point_count();
        let mut alive = vec![true; n];
        loop {
            let mut changed = false;
            for p in 0..n {
                if alive[p] && !self.successors(p).iter().any(|&q| alive[q]) {
                    alive[p] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        (0..n).filter(|&p| alive[p]).collect()
    }

    /// Strongly connected components of the subgraph on `verts`,
    /// each sorted canonically; components ordered by their least rank.
    pub(crate) fn sccs(&self, verts: &[usize]) -> Vec<Vec<usize>> {
        let pos: std::collections::BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = verts.len();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        // Iterative DFS for the finish order.
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![(start, 0usize)];
            seen[start] = true;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let succ: Vec<usize> = self
                    .successors(verts[v])
                    .iter()
                    .filter_map(|q| pos.get(q).copied())
                    .collect();
                if *next < succ.len() {
                    let w = succ[*next];
                    *next += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(v);
                    stack.pop();
                }
            }
        }
        // Reverse graph pass in reverse finish order.
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for &root in order.iter().rev() {
            if comp[root] != usize::MAX {
                continue;
            }
            let mut stack = vec![root];
            comp[root] = count;
            while let Some(v) = stack.pop() {
                for q in self.predecessors(verts[v]) {
                    if let Some(&w) = pos.get(&q) {
                        if comp[w] == usize::MAX {
                            comp[w] = count;
                            stack.push(w);
                        }
                    }
                }
            }
            count += 1;
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (i, &c) in comp.iter().enumerate() {
            groups[c].push(verts[i]);
        }
        for g in &mut groups {
            g.sort_by_key(|&v| self.rank_of(v));
        }
        groups.sort_by_key(|g| g.iter().map(|&v| self.rank_of(v)).min().unwrap());
        groups
    }

    fn scc_is_simple(&self, scc: &[usize]) -> bool {
        // A component is entropy-free when it is a lone vertex without a
        // self-loop, or every vertex has exactly one out-edge inside the
        // component (strong connectivity then forces a single cycle).
        if scc.len() == 1 {
            let v = scc[0];
            if !self.has_edge(v, v) {
                return true;
            }
            return self
                .successors(v)
                .iter()
                .filter(|q| scc.contains(q))
                .count()
                == 1;
        }
        scc.iter().all(|&v| {
            self.successors(v)
                .iter()
                .filter(|q| scc.contains(q))
                .count()
                == 1
        })
    }

    /// Natural log of the spectral radius of the forward-trimmed
    /// adjacency matrix.
    ///
    /// Exactly zero when the trimmed relation is empty or every strongly
    /// connected component is a single cycle or an isolated vertex; that
    /// decision is combinatorial, so no rounding can flip it. Positive
    /// values come from per-component power iteration on big-integer
    /// vectors (self-loops added to force aperiodicity, Rayleigh
    /// quotients compared at 1e-12 relative tolerance).
    pub fn entropy(&self) -> EntropyEstimate {
        let trimmed = self.forward_trim();
        let mut best: f64 = 0.0;
        if !trimmed.is_empty() {
            for scc in self.sccs(&trimmed) {
                if self.scc_is_simple(&scc) {
                    continue;
                }
                let rho = self.perron_root(&scc);
                if rho > best {
                    best = rho;
                }
            }
        }
        EntropyEstimate {
            value: if best > 1.0 { best.ln() } else { 0.0 },
            method: EntropyMethod::Spectral,
            samples: None,
        }
    }

    /// Perron root of the adjacency restricted to one nontrivial SCC.
    ///
    /// Power iteration on the shifted matrix (a self-loop added at every
    /// vertex forces aperiodicity) with exact integer vectors. The
    /// component-wise quotients of consecutive iterates sandwich the
    /// Perron root from both sides, so the iteration stops once that
    /// bracket is relatively tight; the successive values of a single
    /// quotient can plateau away from the root, but the bracket cannot.
    fn perron_root(&self, scc: &[usize]) -> f64 {
        let n = scc.len();
        let pos: std::collections::BTreeMap<usize, usize> =
            scc.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj: Vec<Vec<usize>> = scc
            .iter()
            .map(|&v| {
                self.successors(v)
                    .iter()
                    .filter_map(|q| pos.get(q).copied())
                    .collect()
            })
            .collect();
        let apply = |v: &[BigUint]| -> Vec<BigUint> {
            (0..n)
                .map(|i| {
                    let mut acc = v[i].clone(); // the shift's self-loop
                    for &j in &adj[i] {
                        acc += &v[j];
                    }
                    acc
                })
                .collect()
        };
        let mut v: Vec<BigUint> = vec![BigUint::one(); n];
        let mut best = f64::NAN;
        for _ in 0..MAX_POWER_ITERATIONS {
            let next = apply(&v);
            // Exact quotient bracket at v: the iterate entries stay
            // positive, so every ratio is well defined.
            let mut lo: Option<BigRational> = None;
            let mut hi: Option<BigRational> = None;
            for (vi, ni) in v.iter().zip(&next) {
                let q = BigRational::new(BigInt::from(ni.clone()), BigInt::from(vi.clone()));
                if lo.as_ref().is_none_or(|l| &q < l) {
                    lo = Some(q.clone());
                }
                if hi.as_ref().is_none_or(|h| &q > h) {
                    hi = Some(q);
                }
            }
            let lo = lo.unwrap().to_f64().unwrap_or(f64::NAN);
            let hi = hi.unwrap().to_f64().unwrap_or(f64::NAN);
            best = (lo + hi) / 2.0 - 1.0;
            if hi - lo <= RAYLEIGH_REL_TOL * hi.max(1.0) {
                return best;
            }
            // The bracket holds for any positive vector, so the iterate
            // can be rescaled freely; keep the integers well inside f64
            // range or the quotient conversion above degenerates.
            let max_bits = next.iter().map(BigUint::bits).max().unwrap_or(0);
            v = if max_bits > 512 {
                let shift = max_bits - 256;
                next.into_iter()
                    .map(|x| {
                        let scaled = &x >> shift;
                        if scaled.is_zero() {
                            BigUint::one()
                        } else {
                            scaled
                        }
                    })
                    .collect()
            } else {
                next
            };
        }
        best
    }

    /// Number of tuples in `level(n)` without materializing them.
    pub fn count_level(&self, n: usize) -> BigUint {
        assert!(n >= 1);
        let pts = self.point_count();
        let mut v = vec![BigUint::one(); pts];
        for _ in 1..n {
            let mut w = vec![BigUint::zero(); pts];
            for (a, b) in self.edges() {
                let add = v[b].clone();
                w[a] += add;
            }
            v = w;
        }
        v.into_iter().sum()
    }

    /// The independent growth estimator: samples `ln |level(m + 1)| / m`
    /// for `m = 1..=m_max` using exact big-integer walk counts.
    ///
    /// Lengths whose count is zero carry no information and are skipped.
    /// The final sample is the estimate; it converges to the spectral
    /// value from above as `m_max` grows.
    pub fn entropy_growth(&self, m_max: u32) -> EntropyEstimate {
        assert!(m_max >= 2, "need at least two samples");
        let mut samples = Vec::with_capacity(m_max as usize);
        for m in 1..=m_max {
            let count = self.count_level(m as usize + 1);
            if count.is_zero() {
                continue;
            }
            samples.push((m, ln_biguint(&count) / m as f64));
        }
        EntropyEstimate {
            value: samples.last().map(|&(_, s)| s).unwrap_or(0.0),
            method: EntropyMethod::Growth,
            samples: Some(samples),
        }
    }

    /// Searches for two distinct closed walks through a common point.
    ///
    /// Present exactly when the entropy is positive. The walks are padded
    /// by repetition to a common length (their lcm), keeping equal first
    /// and last entries; the returned `j` is the first differing position,
    /// 1-based. Deterministic: the branching vertex, its two out-edges,
    /// and the return paths are all chosen in canonical order.
    pub fn double_loop_witness(&self) -> Option<DoubleLoop> {
        let trimmed = self.forward_trim();
        if trimmed.is_empty() {
            return None;
        }
        for scc in self.sccs(&trimmed) {
            if self.scc_is_simple(&scc) {
                continue;
            }
            for &v in &scc {
                let inside: Vec<usize> = self
                    .successors(v)
                    .into_iter()
                    .filter(|q| scc.contains(q))
                    .collect();
                if inside.len() < 2 {
                    continue;
                }
                let (w1, w2) = (inside[0], inside[1]);
                let x = self.close_walk(v, w1, &scc);
                let y = self.close_walk(v, w2, &scc);
                let kx = x.len() - 1;
                let ky = y.len() - 1;
                let common = kx.lcm(&ky);
                let x = repeat_walk(&x, common / kx);
                let y = repeat_walk(&y, common / ky);
                let j = x
                    .entries()
                    .iter()
                    .zip(y.entries())
                    .position(|(a, b)| a != b)
                    .expect("distinct walks differ")
                    + 1;
                return Some(DoubleLoop { x, y, j });
            }
        }
        None
    }

    /// The walk v -> w -> (shortest canonical path back to v).
    fn close_walk(&self, v: usize, w: usize, scc: &[usize]) -> PathTuple {
        if w == v {
            return self.tuple_from_indices(vec![v, v]);
        }
        // BFS from w to v inside the component, expanding in canonical
        // order so the recovered path is the lexicographically least
        // shortest one.
        let mut parent: std::collections::BTreeMap<usize, usize> = Default::default();
        let mut queue = std::collections::VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            if u == v {
                break;
            }
            for q in self.successors(u) {
                if scc.contains(&q) && q != w && !parent.contains_key(&q) {
                    parent.insert(q, u);
                    queue.push_back(q);
                }
            }
        }
        let mut back = vec![v];
        let mut cur = v;
        while cur != w {
            cur = parent[&cur];
            back.push(cur);
        }
        back.reverse(); // now w, ..., v
        let mut path = vec![v];
        path.extend(back);
        self.tuple_from_indices(path)
    }
}

fn repeat_walk(walk: &PathTuple, times: usize) -> PathTuple {
    let mut acc = walk.clone();
    for _ in 1..times {
        acc = acc.star(walk);
    }
    acc
}

/// Natural log of a positive big integer, safe for values beyond f64.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    debug_assert!(!x.is_zero());
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}
