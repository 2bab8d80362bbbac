//! Deterministic analysis reports.
//!
//! `analyze` inspects a relation document and runs every decision
//! procedure that applies to its shape: entropy and the turbulence
//! family for finite relations, witness search or the non-turbulence
//! obstruction for interval relations, and canonical-pair classification
//! for leg systems. Every verdict carries the name of the operation that
//! produced it, every constructed witness is re-verified, and identical
//! inputs yield byte-identical reports (timings are opt-in).

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;
use std::time::Instant;

use crate::files::{LevelWitnessJson, RelationFile};
use crate::finite::FiniteRelation;
use crate::interval::{
    periodic_itineraries, turbulence_obstruction, verify_cr_witness, CoveringParams, FgSystem,
    IntervalRelation, IntervalWitness,
};
use crate::rational::Rational;
use crate::transforms::{verify_turbulent, FunctionSystem, LegSystem, SetSpec, TurbulenceKind};
use crate::IntervalUnion;

/// Tuning knobs for `analyze`; the defaults match the CLI defaults.
#[derive(Debug, Clone)]
pub struct AnalyzeOptions {
    /// Base parameter for the interval witness search.
    pub p: Rational,
    /// Length cap for the growth estimator.
    pub growth_m: u32,
    /// Period cap for periodic-itinerary enumeration.
    pub k_max: u32,
    /// Level cap for the optional brute-force cross-check.
    pub level_cap: u32,
    /// Set-size cap enabling the brute-force cross-check.
    pub size_cap: Option<usize>,
    pub with_timings: bool,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            p: Rational::new(1, 2),
            growth_m: 30,
            k_max: 20,
            level_cap: 8,
            size_cap: None,
            with_timings: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub input: InputInfo,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub entropy: Option<EntropyReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub covering: Option<CoveringReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<ObstructionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub periodic: Option<PeriodicReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Vec<ClassificationRow>>,
    pub witnesses: Vec<Value>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<&'static str, f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputInfo {
    pub digest: String,
    pub kind: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub method: &'static str,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Verdicts {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cr_turbulent: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reverse_cr_turbulent: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncountable: Option<Verdict>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntropyReport {
    /// Spectral value, rounded to 12 significant digits.
    pub value: f64,
    pub method: &'static str,
    pub growth: GrowthReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub m_max: u32,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoveringReport {
    pub cr: CoveringParams,
    pub reverse: CoveringParams,
}

#[derive(Debug, Clone, Serialize)]
pub struct ObstructionReport {
    pub a: Rational,
    pub b: Rational,
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicReport {
    pub k_max: u32,
    pub itineraries: Vec<ItineraryRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ItineraryRow {
    pub word: Vec<usize>,
    pub fixed_points: IntervalUnion,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationRow {
    pub m: u32,
    pub kind: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

/// FNV-1a content digest of the input document.
pub fn digest(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    format!("fnv1a64:{h:016x}")
}

/// Rounds to 12 significant digits; the only precision at which floats
/// leave this crate.
pub fn round_sig12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float")
}

/// Runs every analysis that applies to the document's shape.
pub fn analyze(bytes: &[u8], file: &RelationFile, opts: &AnalyzeOptions) -> AnalysisReport {
    let started = Instant::now();
    let mut report = match file {
        RelationFile::Finite(rel) => analyze_finite(rel, opts),
        RelationFile::Interval(rel) => analyze_interval(rel, opts),
        RelationFile::Legs(sys) => analyze_legs(sys, opts),
    };
    report.input.digest = digest(bytes);
    if opts.with_timings {
        let mut t = BTreeMap::new();
        t.insert("total", started.elapsed().as_secs_f64() * 1e3);
        report.timings_ms = Some(t);
    }
    report
}

fn empty_report(kind: &'static str) -> AnalysisReport {
    AnalysisReport {
        input: InputInfo {
            digest: String::new(),
            kind,
        },
        verdicts: Verdicts::default(),
        entropy: None,
        covering: None,
        obstruction: None,
        periodic: None,
        classification: None,
        witnesses: Vec::new(),
        checks: Vec::new(),
        notes: Vec::new(),
        timings_ms: None,
    }
}

fn analyze_finite(rel: &FiniteRelation, opts: &AnalyzeOptions) -> AnalysisReport {
    let mut report = empty_report("finite-relation");
    let spectral = rel.entropy();
    let growth = rel.entropy_growth(opts.growth_m.max(2));
    report.entropy = Some(EntropyReport {
        value: round_sig12(spectral.value),
        method: "finite.entropy-spectral",
        growth: GrowthReport {
            m_max: opts.growth_m.max(2),
            value: round_sig12(growth.value),
        },
    });
    let cr = rel.cr_turbulence();
    let rev = rel.reverse_cr_turbulence();
    let dl = rel.double_loop_witness();
    report.verdicts.cr_turbulent = Some(Verdict {
        value: cr.verdict,
        method: "finite.cr-turbulence",
    });
    report.verdicts.reverse_cr_turbulent = Some(Verdict {
        value: rev.verdict,
        method: "finite.reverse-cr-turbulence",
    });
    report.verdicts.uncountable = Some(Verdict {
        value: rel.is_uncountable(),
        method: "finite.uncountable",
    });
    report.checks.push(Check {
        name: "entropy-positive-iff-cr-turbulent",
        pass: (spectral.value > 0.0) == cr.verdict,
    });
    report.checks.push(Check {
        name: "double-loop-iff-cr-turbulent",
        pass: dl.is_some() == cr.verdict,
    });
    report.checks.push(Check {
        name: "uncountable-iff-cr-turbulent",
        pass: rel.is_uncountable() == cr.verdict,
    });
    for (name, decision) in [
        ("cr-witness-verifies", &cr),
        ("reverse-witness-verifies", &rev),
    ] {
        if let Some(w) = &decision.witness {
            report.checks.push(Check {
                name,
                pass: rel.verify_witness(w) == Ok(true),
            });
            report
                .witnesses
                .push(serde_json::to_value(LevelWitnessJson::from_witness(rel, w)).unwrap());
        }
    }
    if let Some(cap) = opts.size_cap {
        let mut found = false;
        let mut feasible = true;
        for level in 2..=opts.level_cap as usize {
            match rel.brute_force_witness(level, cap) {
                Ok(Some(_)) => {
                    found = true;
                    break;
                }
                Ok(None) => {}
                Err(e) => {
                    feasible = false;
                    report.notes.push(format!("brute force stopped: {e}"));
                    break;
                }
            }
        }
        if feasible || found {
            report.checks.push(Check {
                name: "brute-force-agrees",
                pass: found == cr.verdict,
            });
        }
    }
    report
}

/// Recognizes a two-branch relation as an expanding / contracting pair,
/// remembering whether the loaded branch order was `[g, f]`.
pub fn detect_fg(rel: &IntervalRelation) -> Option<(FgSystem, bool)> {
    if !rel.verticals.is_empty() || !rel.horizontals.is_empty() || !rel.isolated.is_empty() {
        return None;
    }
    let [b0, b1] = rel.branches.as_slice() else {
        return None;
    };
    if let Ok(sys) = FgSystem::new(b0.clone(), b1.clone()) {
        return Some((sys, false));
    }
    if let Ok(sys) = FgSystem::new(b1.clone(), b0.clone()) {
        return Some((sys, true));
    }
    None
}

fn remap_swapped(witness: &mut IntervalWitness) {
    for spec in [&mut witness.k, &mut witness.l] {
        for b in &mut spec.forced {
            *b = 1 - *b;
        }
    }
}

fn analyze_interval(rel: &IntervalRelation, opts: &AnalyzeOptions) -> AnalysisReport {
    let mut report = empty_report("interval-relation");
    if let Some((sys, swapped)) = detect_fg(rel) {
        match (
            sys.cr_witness_search(&opts.p),
            sys.reverse_cr_witness_search(&opts.p),
        ) {
            (Ok((mut w_cr, p_cr)), Ok((mut w_rev, p_rev))) => {
                if swapped {
                    remap_swapped(&mut w_cr);
                    remap_swapped(&mut w_rev);
                }
                report.verdicts.cr_turbulent = Some(Verdict {
                    value: true,
                    method: "interval.cr-witness-search",
                });
                report.verdicts.reverse_cr_turbulent = Some(Verdict {
                    value: true,
                    method: "interval.cr-witness-search",
                });
                report.checks.push(Check {
                    name: "cr-witness-verifies",
                    pass: verify_cr_witness(rel, &w_cr) == Ok(true),
                });
                report.checks.push(Check {
                    name: "reverse-witness-verifies",
                    pass: verify_cr_witness(rel, &w_rev) == Ok(true),
                });
                report.covering = Some(CoveringReport {
                    cr: p_cr,
                    reverse: p_rev,
                });
                report.witnesses = vec![
                    serde_json::to_value(&w_cr).unwrap(),
                    serde_json::to_value(&w_rev).unwrap(),
                ];
            }
            (cr, rev) => {
                for (label, outcome) in [("cr", cr.err()), ("reverse", rev.err())] {
                    if let Some(e) = outcome {
                        report
                            .notes
                            .push(format!("{label} witness search failed: {e}"));
                    }
                }
            }
        }
    } else if let Some((a, b)) = obstruction_sweep(rel) {
        report.verdicts.cr_turbulent = Some(Verdict {
            value: false,
            method: "interval.turbulence-obstruction",
        });
        report.verdicts.reverse_cr_turbulent = Some(Verdict {
            value: false,
            method: "interval.turbulence-obstruction",
        });
        report.obstruction = Some(ObstructionReport { a, b });
    } else {
        report
            .notes
            .push("no decision procedure applies to this shape".to_string());
    }
    if rel.verticals.is_empty() && rel.horizontals.is_empty() && rel.isolated.is_empty() {
        if let Ok(itins) = periodic_itineraries(rel, opts.k_max) {
            report.periodic = Some(PeriodicReport {
                k_max: opts.k_max,
                itineraries: itins
                    .into_iter()
                    .map(|p| ItineraryRow {
                        word: p.word,
                        fixed_points: p.fixed_points,
                    })
                    .collect(),
            });
        }
    }
    report
}

/// Looks for a vertical / horizontal mark pair that rules turbulence out
/// in both directions.
fn obstruction_sweep(rel: &IntervalRelation) -> Option<(Rational, Rational)> {
    let inverse = rel.inverse();
    for v in &rel.verticals {
        for h in &rel.horizontals {
            let (a, b) = (&v.x, &h.y);
            if a == b {
                continue;
            }
            if turbulence_obstruction(rel, a, b) == Ok(true)
                && turbulence_obstruction(&inverse, b, a) == Ok(true)
            {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn analyze_legs(sys: &LegSystem, _opts: &AnalyzeOptions) -> AnalysisReport {
    let mut report = empty_report("leg-system");
    let legs = sys.legs();
    let system = FunctionSystem::Legs(sys.clone());
    let half = Rational::new(1, 2);
    let k = SetSpec::on_leg(
        legs,
        0,
        IntervalUnion::segment(Rational::zero(), half.clone()),
    );
    let l = SetSpec::on_leg(legs, 0, IntervalUnion::segment(half, Rational::one()));
    let mut rows = Vec::new();
    let mut hit = None;
    for m in 1..=legs as u32 {
        let kind = match verify_turbulent(&system, &k, &l, m) {
            Ok(kind) => kind,
            Err(e) => {
                report.notes.push(format!("classification failed: {e}"));
                break;
            }
        };
        if kind != TurbulenceKind::Neither && hit.is_none() {
            hit = Some(m);
        }
        rows.push(ClassificationRow {
            m,
            kind: kind.to_string(),
        });
    }
    report.checks.push(Check {
        name: "canonical-pair-turbulent-at-leg-count",
        pass: hit == Some(legs as u32),
    });
    report.classification = Some(rows);
    report
}

/// Renders a report as stable pretty JSON.
pub fn to_json(report: &AnalysisReport) -> Value {
    serde_json::to_value(report).expect("report is serializable")
}

/// Growth samples as CSV rows `m,sample`.
pub fn growth_csv(rel: &FiniteRelation, m_max: u32) -> String {
    let est = rel.entropy_growth(m_max.max(2));
    let mut out = String::from("m,log_count_over_m\n");
    for (m, s) in est.samples.unwrap_or_default() {
        out.push_str(&format!("{m},{:.12e}\n", s));
    }
    out
}
