//! Verified turbulence witnesses for expanding / contracting branch
//! pairs on the unit interval.
//!
//! An [`FgSystem`] couples an expanding branch `f` (defined on `[0, a]`,
//! fixing 0, reaching 1 at `a`, strictly above the diagonal) with a
//! contracting branch `g` (defined on `[0, 1]`, fixing 0, strictly below
//! the diagonal). The union of their graphs is CR-turbulent and reverse
//! CR-turbulent, and the witness search here produces certified evidence:
//! tuple-set specifications whose disjointness and projection covering
//! are checked by exact interval arithmetic, never assumed.

use serde::{Deserialize, Serialize};

use super::{unit_interval, IntervalRelation, PlBranch, PlFunction};
use crate::rational::Rational;
use crate::{IntervalUnion, WitnessKind};

/// Branch index of `f` in [`FgSystem::relation`].
pub const F_BRANCH: usize = 0;
/// Branch index of `g` in [`FgSystem::relation`].
pub const G_BRANCH: usize = 1;

/// Hard cap on the free-suffix search.
const SEARCH_CAP: u32 = 64;

/// A named hypothesis violation from [`FgSystem::new`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FgViolation {
    FDomainStartsAtZero,
    FDomainEndInOpenUnit,
    FFixesZero,
    FMapsEndpointToOne,
    FStrictlyIncreasing,
    FStrictAboveDiagonal,
    GDomainIsUnit,
    GFixesZero,
    GEndpointInOpenUnit,
    GStrictlyIncreasing,
    GStrictBelowDiagonal,
}

impl FgViolation {
    pub fn name(self) -> &'static str {
        match self {
            FgViolation::FDomainStartsAtZero => "f-domain-starts-at-zero",
            FgViolation::FDomainEndInOpenUnit => "f-domain-end-in-open-unit",
            FgViolation::FFixesZero => "f-fixes-zero",
            FgViolation::FMapsEndpointToOne => "f-maps-endpoint-to-one",
            FgViolation::FStrictlyIncreasing => "f-strictly-increasing",
            FgViolation::FStrictAboveDiagonal => "f-strict-above-diagonal",
            FgViolation::GDomainIsUnit => "g-domain-is-unit",
            FgViolation::GFixesZero => "g-fixes-zero",
            FgViolation::GEndpointInOpenUnit => "g-endpoint-in-open-unit",
            FgViolation::GStrictlyIncreasing => "g-strictly-increasing",
            FgViolation::GStrictBelowDiagonal => "g-strict-below-diagonal",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum FgError {
    #[error("branch hypotheses violated: {}", .0.iter().map(|v| v.name()).collect::<Vec<_>>().join(", "))]
    Hypotheses(Vec<FgViolation>),
    #[error("parameter {0} must lie in the open interval (0, 1)")]
    ParameterRange(Rational),
    #[error("slopes must satisfy 0 < a < 1 < b, got a = {0}, b = {1}")]
    SlopeRange(Rational, Rational),
    #[error(transparent)]
    SearchExhausted(Box<SearchFailure>),
}

/// A validated expanding / contracting branch pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FgSystem {
    f: PlBranch,
    g: PlBranch,
}

impl FgSystem {
    /// Validates the standing hypotheses exactly, reporting every
    /// violated one by name.
    ///
    /// The diagonal comparisons only need the breakpoints: a piecewise
    /// linear function minus the identity is linear on each segment, so
    /// strict inequality at all breakpoints (with equality pinned at 0)
    /// gives strict inequality on the whole punctured domain.
    pub fn new(f: PlBranch, g: PlBranch) -> Result<FgSystem, FgError> {
        let mut bad = Vec::new();
        let zero = Rational::zero();
        let one = Rational::one();
        let (flo, fhi) = f.domain();
        if *flo != zero {
            bad.push(FgViolation::FDomainStartsAtZero);
        }
        if !(*fhi > zero && *fhi < one) {
            bad.push(FgViolation::FDomainEndInOpenUnit);
        }
        if f.ys().first() != Some(&zero) {
            bad.push(FgViolation::FFixesZero);
        }
        if f.ys().last() != Some(&one) {
            bad.push(FgViolation::FMapsEndpointToOne);
        }
        if !f.increasing() {
            bad.push(FgViolation::FStrictlyIncreasing);
        }
        if f.xs().iter().zip(f.ys()).any(|(x, y)| *x > zero && y <= x) {
            bad.push(FgViolation::FStrictAboveDiagonal);
        }
        let (glo, ghi) = g.domain();
        if !(*glo == zero && *ghi == one) {
            bad.push(FgViolation::GDomainIsUnit);
        }
        if g.ys().first() != Some(&zero) {
            bad.push(FgViolation::GFixesZero);
        }
        if let Some(b) = g.ys().last() {
            if !(*b > zero && *b < one) {
                bad.push(FgViolation::GEndpointInOpenUnit);
            }
        }
        if !g.increasing() {
            bad.push(FgViolation::GStrictlyIncreasing);
        }
        if g.xs().iter().zip(g.ys()).any(|(x, y)| *x > zero && y >= x) {
            bad.push(FgViolation::GStrictBelowDiagonal);
        }
        if bad.is_empty() {
            Ok(FgSystem { f, g })
        } else {
            Err(FgError::Hypotheses(bad))
        }
    }

    pub fn f(&self) -> &PlBranch {
        &self.f
    }

    pub fn g(&self) -> &PlBranch {
        &self.g
    }

    /// Right endpoint of `f`'s domain.
    pub fn a(&self) -> &Rational {
        self.f.domain().1
    }

    /// `g(1)`, the top of `g`'s range.
    pub fn b(&self) -> Rational {
        self.g.eval(&Rational::one()).expect("1 in g's domain")
    }

    /// The threshold `f^-1(g(1))`: below it, images of `[x, 1]` stay
    /// full-topped intervals.
    pub fn alpha(&self) -> Rational {
        self.f_inv(&self.b())
    }

    fn f_inv(&self, y: &Rational) -> Rational {
        self.f.inverted().eval(y).expect("f maps onto [0, 1]")
    }

    fn g_inv(&self, y: &Rational) -> Rational {
        self.g.inverted().eval(y).expect("value inside g's range")
    }

    /// The union-of-graphs relation, branches ordered `[f, g]`.
    pub fn relation(&self) -> IntervalRelation {
        IntervalRelation::from_branches(vec![self.f.clone(), self.g.clone()])
    }

    /// The inverse system: `g^-1` expands, `f^-1` contracts, and the
    /// hypotheses hold again with the roles exchanged.
    pub fn inverse(&self) -> FgSystem {
        FgSystem::new(self.g.inverted(), self.f.inverted())
            .expect("hypotheses are self-dual under inversion")
    }

    /// Derived covering parameters at `p`.
    ///
    /// `alpha = f^-1(g(1))`; when `a <= p` one expansion step suffices
    /// (`z = f^-1(g(p))`, `m = 1`), otherwise `m` is the least iterate
    /// with `f^(m-1)(p) >= a` and `z = f^-m(g^m(p))`. `beta = g^-1(z)`
    /// and `gamma = f^-1(alpha)` locate the witness base intervals; `n`
    /// stays unset until the search fills it.
    pub fn covering_params(&self, p: &Rational) -> Result<CoveringParams, FgError> {
        if !(*p > Rational::zero() && *p < Rational::one()) {
            return Err(FgError::ParameterRange(p.clone()));
        }
        let alpha = self.alpha();
        let (z, m) = self.contraction_entry(p);
        let beta = self.g_inv(&z);
        let gamma = self.f_inv(&alpha);
        assert!(z > Rational::zero() && z <= alpha && alpha < *self.a());
        Ok(CoveringParams {
            p: p.clone(),
            alpha,
            beta,
            gamma,
            z,
            m,
            n: None,
        })
    }

    /// The pair `(z, m)` with `(f u g)^m([z, p])` a full-top interval.
    fn contraction_entry(&self, p: &Rational) -> (Rational, u32) {
        let a = self.a();
        if a <= p {
            let z = self.f_inv(&self.g.eval(p).expect("p in g's domain"));
            return (z, 1);
        }
        // Least m with f^(m-1)(p) >= a; the expanding branch forces
        // termination.
        let mut m = 1u32;
        let mut it = p.clone();
        while &it < a {
            it = self.f.eval(&it).expect("iterate stays in f's domain");
            m += 1;
        }
        let mut z = p.clone();
        for _ in 0..m {
            z = self.g.eval(&z).expect("g is total");
        }
        for _ in 0..m {
            z = self.f_inv(&z);
        }
        (z, m)
    }

    /// Searches for the least free-suffix length whose witness verifies.
    ///
    /// The two tuple-set specifications force one branch application on
    /// their base interval (K applies `g` on `[g^-1(z'), 1]`, L applies
    /// `f` on `[f^-1(z'), alpha]`, where `z'` comes from the covering
    /// parameters at `min(p, g(1))`), then leave the remaining steps
    /// free. Each candidate is checked by [`verify_cr_witness`]; the
    /// first verified one is returned together with the parameters,
    /// their `n` field set to the verified suffix count.
    pub fn cr_witness_search(
        &self,
        p: &Rational,
    ) -> Result<(IntervalWitness, CoveringParams), FgError> {
        let mut params = self.covering_params(p)?;
        let b = self.b();
        let p_eff = Rational::min_of(p, &b);
        let (z_eff, m_eff) = if p_eff == *p {
            (params.z.clone(), params.m)
        } else {
            self.contraction_entry(&p_eff)
        };
        let beta_eff = self.g_inv(&z_eff);
        let gamma_eff = self.f_inv(&z_eff);
        let relation = self.relation();
        let one = Rational::one();
        let mut last = None;
        for n in 0..=SEARCH_CAP {
            let free = (m_eff + n) as usize - 1;
            if free == 0 {
                continue;
            }
            let witness = IntervalWitness {
                level: 2 + free,
                kind: WitnessKind::Cr,
                k: TupleSpec {
                    first: IntervalUnion::segment(beta_eff.clone(), one.clone()),
                    forced: vec![G_BRANCH],
                    free,
                },
                l: TupleSpec {
                    first: IntervalUnion::segment(gamma_eff.clone(), params.alpha.clone()),
                    forced: vec![F_BRANCH],
                    free,
                },
            };
            let check =
                check_witness(&relation, &witness).expect("search constructs well-formed specs");
            if check.verdict {
                params.n = Some(n);
                return Ok((witness, params));
            }
            last = Some(check);
        }
        let last = last.expect("at least one suffix length was tried");
        Err(FgError::from(SearchFailure {
            cap: SEARCH_CAP,
            last_k_cover: last.last_k,
            last_l_cover: last.last_l,
        }))
    }
}

impl FgSystem {
    /// Searches for a reverse witness by running the search on the
    /// inverse system and restating the outcome against this system.
    ///
    /// The inverse system orders its branches `[g^-1, f^-1]` (the roles
    /// swap), while this relation's inverse keeps `[f^-1, g^-1]`, so the
    /// forced branch indices are flipped before tagging the witness as
    /// `reverse-cr`.
    pub fn reverse_cr_witness_search(
        &self,
        p: &Rational,
    ) -> Result<(IntervalWitness, CoveringParams), FgError> {
        let (mut w, params) = self.inverse().cr_witness_search(p)?;
        for spec in [&mut w.k, &mut w.l] {
            for b in &mut spec.forced {
                *b = 1 - *b;
            }
        }
        w.kind = WitnessKind::ReverseCr;
        debug_assert_eq!(verify_cr_witness(&self.relation(), &w), Ok(true));
        Ok((w, params))
    }
}

/// Witness search exhausted its cap; carries the last covering sets for
/// diagnosis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("no witness verified with free suffix up to {cap}; last coverings K: {last_k_cover}, L: {last_l_cover}")]
pub struct SearchFailure {
    pub cap: u32,
    pub last_k_cover: IntervalUnion,
    pub last_l_cover: IntervalUnion,
}

impl From<SearchFailure> for FgError {
    fn from(f: SearchFailure) -> FgError {
        FgError::SearchExhausted(Box::new(f))
    }
}

/// Derived quantities behind a witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringParams {
    pub p: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    pub gamma: Rational,
    pub z: Rational,
    pub m: u32,
    pub n: Option<u32>,
}

/// One side of an interval witness: tuples whose first coordinate lies
/// in `first`, whose next `forced.len()` coordinates apply the named
/// branches, and whose remaining `free` steps follow any part of the
/// relation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleSpec {
    pub first: IntervalUnion,
    pub forced: Vec<usize>,
    pub free: usize,
}

/// A turbulence witness over an interval relation.
///
/// For kind `reverse-cr` the specs are read against the inverse
/// relation: they describe the reversed tuples, so verification swaps
/// first and last projections exactly as the definition demands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalWitness {
    pub level: usize,
    pub kind: WitnessKind,
    pub k: TupleSpec,
    pub l: TupleSpec,
}

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum WitnessError {
    #[error("spec level {level} does not match 1 + {forced} forced + {free} free")]
    LevelMismatch {
        level: usize,
        forced: usize,
        free: usize,
    },
    #[error("forced branch index {0} is out of range")]
    UnknownBranch(usize),
    #[error("first-coordinate set is empty")]
    EmptyFirst,
    #[error("first-coordinate set leaves [0, 1]")]
    FirstOutOfRange,
    #[error("no tuples satisfy the spec (its projection is empty)")]
    EmptySide,
    #[error("witness sets K and L are not disjoint")]
    NotDisjoint,
}

/// Projection data from a verification pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCheck {
    pub verdict: bool,
    pub first_k: IntervalUnion,
    pub first_l: IntervalUnion,
    /// Union of the two first-coordinate projections.
    pub sources: IntervalUnion,
    pub last_k: IntervalUnion,
    pub last_l: IntervalUnion,
}

impl WitnessCheck {
    /// A concrete uncovered source value when the verdict is false.
    pub fn first_uncovered(&self) -> Option<Rational> {
        let both = self.last_k.intersect(&self.last_l);
        for (lo, hi) in self.sources.parts() {
            if IntervalUnion::segment(lo.clone(), hi.clone()).is_subset_of(&both) {
                continue;
            }
            if !both.contains(lo) {
                return Some(lo.clone());
            }
            // lo is covered; the covering part ends inside [lo, hi], and
            // the midpoint to the next covered part (or hi) sits in a gap.
            let (_, bhi) = both
                .parts()
                .iter()
                .find(|(blo, bhi)| blo <= lo && lo <= bhi)
                .expect("lo is covered");
            let next_lo = both
                .parts()
                .iter()
                .map(|(blo, _)| blo)
                .find(|blo| *blo > bhi && *blo < hi)
                .unwrap_or(hi);
            return Some(midpoint(bhi, next_lo));
        }
        None
    }
}

fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / Rational::from_int(2)
}

/// Verifies a witness by exact projection computation.
///
/// Returns `Ok(verdict)`; malformed specifications (level mismatches,
/// unknown branches, empty sides, non-disjoint sides) are errors,
/// distinct from a false verdict.
pub fn verify_cr_witness(
    relation: &IntervalRelation,
    witness: &IntervalWitness,
) -> Result<bool, WitnessError> {
    check_witness(relation, witness).map(|c| c.verdict)
}

/// Full verification pass, exposing the computed projections.
pub fn check_witness(
    relation: &IntervalRelation,
    witness: &IntervalWitness,
) -> Result<WitnessCheck, WitnessError> {
    match witness.kind {
        WitnessKind::Cr => check_cr(relation, witness),
        WitnessKind::ReverseCr => check_cr(&relation.inverse(), witness),
    }
}

fn check_cr(
    relation: &IntervalRelation,
    witness: &IntervalWitness,
) -> Result<WitnessCheck, WitnessError> {
    let (first_k, last_k) = spec_projections(relation, &witness.k, witness.level)?;
    let (first_l, last_l) = spec_projections(relation, &witness.l, witness.level)?;
    certify_disjoint(relation, &witness.k, &witness.l, &first_k, &first_l)?;
    let sources = first_k.union(&first_l);
    let both = last_k.intersect(&last_l);
    Ok(WitnessCheck {
        verdict: sources.is_subset_of(&both),
        first_k,
        first_l,
        sources,
        last_k,
        last_l,
    })
}

/// Exact first- and last-coordinate projections of a spec.
///
/// The first projection accounts for every constraint: base interval,
/// forced-branch domains along the chain, and extendability through the
/// free steps (a point survives only if `free` backward images of the
/// full relation reach it). The last projection is then the forward
/// image of the surviving set.
fn spec_projections(
    relation: &IntervalRelation,
    spec: &TupleSpec,
    level: usize,
) -> Result<(IntervalUnion, IntervalUnion), WitnessError> {
    if level != 1 + spec.forced.len() + spec.free {
        return Err(WitnessError::LevelMismatch {
            level,
            forced: spec.forced.len(),
            free: spec.free,
        });
    }
    for &b in &spec.forced {
        if b >= relation.branches.len() {
            return Err(WitnessError::UnknownBranch(b));
        }
    }
    if spec.first.is_empty() {
        return Err(WitnessError::EmptyFirst);
    }
    if !spec.first.is_subset_of(&unit_interval()) {
        return Err(WitnessError::FirstOutOfRange);
    }
    // Forward pass through the forced chain, tracking reachable values.
    let mut chain = vec![spec.first.clone()];
    for &b in &spec.forced {
        let next = relation.branches[b].image(chain.last().unwrap());
        chain.push(next);
    }
    // Free-step extendability, pulled back to the chain's end.
    let inverse = relation.inverse();
    let mut extendable = unit_interval();
    for _ in 0..spec.free {
        extendable = inverse.image(&extendable);
    }
    let mut survivors = chain.last().unwrap().intersect(&extendable);
    for (i, &b) in spec.forced.iter().enumerate().rev() {
        survivors = relation.branches[b]
            .preimage(&survivors)
            .intersect(&chain[i]);
    }
    let first = survivors;
    if first.is_empty() {
        return Err(WitnessError::EmptySide);
    }
    let mut last = first.clone();
    for &b in &spec.forced {
        last = relation.branches[b].image(&last);
    }
    for _ in 0..spec.free {
        last = relation.image(&last);
    }
    Ok((first, last))
}

/// Certifies that no tuple satisfies both specs.
///
/// Two tuples with a common first coordinate agree up to the length of
/// the shorter forced prefix exactly when the forced chains coincide
/// pointwise there (free steps can always mimic any branch). So the
/// surviving coincidence set is narrowed step by step: equal branch
/// indices keep it, differing branches restrict it to the exact
/// coincidence set of the two chain functions. Nonempty survivors mean
/// the witness sets overlap, which is malformed.
fn certify_disjoint(
    relation: &IntervalRelation,
    spec_k: &TupleSpec,
    spec_l: &TupleSpec,
    first_k: &IntervalUnion,
    first_l: &IntervalUnion,
) -> Result<(), WitnessError> {
    let mut survivors = first_k.intersect(first_l);
    if survivors.is_empty() {
        return Ok(());
    }
    let depth = spec_k.forced.len().min(spec_l.forced.len());
    let mut chain_k: Option<PlFunction> = None;
    let mut chain_l: Option<PlFunction> = None;
    for i in 0..depth {
        let bk = relation.branches[spec_k.forced[i]].as_function();
        let bl = relation.branches[spec_l.forced[i]].as_function();
        chain_k = Some(match chain_k {
            None => bk.clone(),
            Some(prev) => PlFunction::compose(bk, &prev).expect("chain stays connected"),
        });
        chain_l = Some(match chain_l {
            None => bl.clone(),
            Some(prev) => PlFunction::compose(bl, &prev).expect("chain stays connected"),
        });
        if spec_k.forced[i] == spec_l.forced[i] {
            continue;
        }
        let fk = chain_k.as_ref().unwrap();
        let fl = chain_l.as_ref().unwrap();
        survivors = fk.coincidence_set(fl, &survivors);
        if survivors.is_empty() {
            return Ok(());
        }
    }
    Err(WitnessError::NotDisjoint)
}

/// The two-slope system `{(x, b x) : x in [0, 1/b]} u {(x, a x)}` for
/// slopes `0 < a < 1 < b`.
pub fn linear_pair(a: &Rational, b: &Rational) -> Result<FgSystem, FgError> {
    let zero = Rational::zero();
    let one = Rational::one();
    if !(*a > zero && *a < one && *b > one) {
        return Err(FgError::SlopeRange(a.clone(), b.clone()));
    }
    let f = PlBranch::line(zero.clone(), zero.clone(), b.recip(), one.clone());
    let g = PlBranch::line(zero.clone(), zero, one, a.clone());
    FgSystem::new(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn seg(lo: &str, hi: &str) -> IntervalUnion {
        IntervalUnion::segment(rat(lo), rat(hi))
    }

    fn fab_third() -> FgSystem {
        linear_pair(&rat("1/3"), &rat("2")).unwrap()
    }

    fn fab_half() -> FgSystem {
        linear_pair(&rat("1/2"), &rat("2")).unwrap()
    }

    #[test]
    fn linear_pair_validates_slopes() {
        assert!(linear_pair(&rat("1/2"), &rat("2")).is_ok());
        assert!(matches!(
            linear_pair(&rat("2"), &rat("3")),
            Err(FgError::SlopeRange(..))
        ));
        assert!(matches!(
            linear_pair(&rat("1/2"), &rat("1")),
            Err(FgError::SlopeRange(..))
        ));
    }

    #[test]
    fn hypothesis_violations_are_named() {
        // g = identity sits on the diagonal, not strictly below it.
        let f = PlBranch::line(rat("0"), rat("0"), rat("1/2"), rat("1"));
        let g = PlBranch::line(rat("0"), rat("0"), rat("1"), rat("1"));
        match FgSystem::new(f, g) {
            Err(FgError::Hypotheses(v)) => {
                assert!(v.contains(&FgViolation::GEndpointInOpenUnit));
                assert!(v.contains(&FgViolation::GStrictBelowDiagonal));
            }
            other => panic!("expected named violations, got {other:?}"),
        }
    }

    #[test]
    fn curved_shapes_enter_as_approximants() {
        // Samples of 2 sqrt(x) on [0, 1/4] and of x^2 / 2 on [0, 1] at
        // rational breakpoints; the hypotheses hold exactly there.
        let f = PlBranch::new(
            vec![rat("0"), rat("1/64"), rat("1/16"), rat("9/64"), rat("1/4")],
            vec![rat("0"), rat("1/4"), rat("1/2"), rat("3/4"), rat("1")],
        )
        .unwrap();
        let g = PlBranch::new(
            vec![rat("0"), rat("1/4"), rat("1/2"), rat("3/4"), rat("1")],
            vec![rat("0"), rat("1/32"), rat("1/8"), rat("9/32"), rat("1/2")],
        )
        .unwrap();
        assert!(FgSystem::new(f, g).is_ok());
    }

    #[test]
    fn covering_params_one_step_case() {
        let sys = fab_third();
        let p = sys.covering_params(&rat("1/2")).unwrap();
        assert_eq!(p.alpha, rat("1/6"));
        assert_eq!(p.z, rat("1/12"));
        assert_eq!(p.m, 1);
        assert_eq!(p.beta, rat("1/4"));
        assert_eq!(p.gamma, rat("1/12"));
        assert_eq!(p.n, None);
    }

    #[test]
    fn covering_params_iterated_case() {
        let sys = fab_third();
        let p = sys.covering_params(&rat("1/4")).unwrap();
        assert_eq!(p.m, 2);
        assert_eq!(p.z, rat("1/144"));
        assert!(matches!(
            sys.covering_params(&rat("1")),
            Err(FgError::ParameterRange(_))
        ));
    }

    #[test]
    fn covering_reaches_full_top() {
        // (f u g)^m([z, p]) must be [g^m(z), 1], a full-top interval.
        let sys = fab_third();
        let rel = sys.relation();
        for p in ["1/2", "1/4", "1/8", "2/3", "9/10"] {
            let params = sys.covering_params(&rat(p)).unwrap();
            let covered = rel.iterate_image(
                &IntervalUnion::segment(params.z.clone(), params.p.clone()),
                params.m,
            );
            let mut bottom = params.z.clone();
            for _ in 0..params.m {
                bottom = sys.g().eval(&bottom).unwrap();
            }
            assert_eq!(covered, IntervalUnion::segment(bottom, rat("1")));
            assert!(seg("1/6", "1").is_subset_of(&covered));
        }
    }

    #[test]
    fn witness_search_on_the_standard_pairs() {
        let (w, params) = fab_third().cr_witness_search(&rat("1/2")).unwrap();
        assert_eq!(params.n, Some(1));
        assert_eq!(w.level, 4);
        assert_eq!(verify_cr_witness(&fab_third().relation(), &w), Ok(true));

        let (w, params) = fab_half().cr_witness_search(&rat("1/2")).unwrap();
        assert_eq!(params.n, Some(1));
        assert_eq!(w.level, 3);
        assert_eq!(verify_cr_witness(&fab_half().relation(), &w), Ok(true));
    }

    #[test]
    fn reverse_witness_via_inverse_system() {
        let (w, params) = fab_third().reverse_cr_witness_search(&rat("1/2")).unwrap();
        assert_eq!(params.n, Some(2));
        assert_eq!(w.kind, WitnessKind::ReverseCr);
        assert_eq!(verify_cr_witness(&fab_third().relation(), &w), Ok(true));

        let (w, params) = fab_half().reverse_cr_witness_search(&rat("1/2")).unwrap();
        assert_eq!(params.n, Some(1));
        assert_eq!(verify_cr_witness(&fab_half().relation(), &w), Ok(true));
    }

    #[test]
    fn shrinking_the_suffix_breaks_the_covering() {
        let sys = fab_third();
        let (w, _) = sys.cr_witness_search(&rat("1/2")).unwrap();
        let shrunk = IntervalWitness {
            level: w.level - 1,
            kind: w.kind,
            k: TupleSpec {
                free: w.k.free - 1,
                ..w.k.clone()
            },
            l: TupleSpec {
                free: w.l.free - 1,
                ..w.l.clone()
            },
        };
        assert_eq!(verify_cr_witness(&sys.relation(), &shrunk), Ok(false));
    }

    #[test]
    fn malformed_specs_are_rejected() {
        let sys = fab_half();
        let rel = sys.relation();
        let (w, _) = sys.cr_witness_search(&rat("1/2")).unwrap();

        let mut level_off = w.clone();
        level_off.level += 1;
        assert!(matches!(
            verify_cr_witness(&rel, &level_off),
            Err(WitnessError::LevelMismatch { .. })
        ));

        let mut bad_branch = w.clone();
        bad_branch.k.forced = vec![7];
        assert!(matches!(
            verify_cr_witness(&rel, &bad_branch),
            Err(WitnessError::UnknownBranch(7))
        ));

        let mut same_sides = w.clone();
        same_sides.l = same_sides.k.clone();
        assert!(matches!(
            verify_cr_witness(&rel, &same_sides),
            Err(WitnessError::NotDisjoint)
        ));

        let mut empty_first = w;
        empty_first.k.first = IntervalUnion::empty();
        assert!(matches!(
            verify_cr_witness(&rel, &empty_first),
            Err(WitnessError::EmptyFirst)
        ));
    }

    #[test]
    fn disjointness_uses_branch_separation() {
        // Overlapping first intervals are fine when the forced branches
        // differ strictly on the overlap.
        let sys = fab_third();
        let rel = sys.relation();
        let w = IntervalWitness {
            level: 3,
            kind: WitnessKind::Cr,
            k: TupleSpec {
                first: seg("1/24", "1"),
                forced: vec![G_BRANCH],
                free: 1,
            },
            l: TupleSpec {
                first: seg("1/24", "1/6"),
                forced: vec![F_BRANCH],
                free: 1,
            },
        };
        // Must not report NotDisjoint; the verdict itself may be false.
        assert!(verify_cr_witness(&rel, &w).is_ok());
    }

    #[test]
    fn uncovered_source_is_identified() {
        let sys = fab_third();
        let rel = sys.relation();
        let (w, _) = sys.cr_witness_search(&rat("1/2")).unwrap();
        let shrunk = IntervalWitness {
            level: w.level - 1,
            kind: w.kind,
            k: TupleSpec {
                free: w.k.free - 1,
                ..w.k.clone()
            },
            l: TupleSpec {
                free: w.l.free - 1,
                ..w.l.clone()
            },
        };
        let check = check_witness(&rel, &shrunk).unwrap();
        assert!(!check.verdict);
        let probe = check.first_uncovered().expect("a gap exists");
        assert!(check.sources.contains(&probe));
        assert!(!check.last_k.intersect(&check.last_l).contains(&probe));
    }
}
