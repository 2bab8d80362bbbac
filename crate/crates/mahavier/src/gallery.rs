//! Canonical example relations with pinned expected verdicts.
//!
//! Each entry emits a relation document plus a sidecar of expected
//! analysis results; the test suite replays `analyze` over the emitted
//! file and checks the sidecar, so a gallery entry is a frozen
//! regression case.

use serde_json::{json, Value};

use crate::files;
use crate::finite::FiniteRelation;
use crate::interval::{cantor_relation, linear_pair, PermSpec};
use crate::rational::Rational;
use crate::transforms::nleg_system;

#[derive(Debug, thiserror::Error)]
pub enum GalleryError {
    #[error("unknown gallery entry {0:?} (expected tent, nleg, golden-mean, full-2, linear-pair, or cantor)")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
}

/// Parameters shared by the gallery constructors; unused fields are
/// ignored by entries that do not need them.
#[derive(Debug, Clone)]
pub struct GalleryParams {
    /// Contraction slope for `linear-pair`, mark column for `cantor`.
    pub a: Option<Rational>,
    /// Expansion slope for `linear-pair`, mark row for `cantor`.
    pub b: Option<Rational>,
    pub n: usize,
    pub depth: u32,
    pub perm: PermSpec,
    pub p: Rational,
}

impl Default for GalleryParams {
    fn default() -> Self {
        GalleryParams {
            a: None,
            b: None,
            n: 5,
            depth: 3,
            perm: PermSpec::Rotate,
            p: Rational::new(1, 2),
        }
    }
}

#[derive(Debug, Clone)]
pub struct GalleryFiles {
    pub name: String,
    pub relation: Value,
    pub expected: Value,
}

pub fn build(name: &str, params: &GalleryParams) -> Result<GalleryFiles, GalleryError> {
    match name {
        "golden-mean" => Ok(finite_entry(
            name,
            FiniteRelation::from_edges(&["0", "1"], &[("0", "0"), ("0", "1"), ("1", "0")]),
            0.481211825060,
        )),
        "full-2" => Ok(finite_entry(
            name,
            FiniteRelation::from_edges(
                &["0", "1"],
                &[("0", "0"), ("0", "1"), ("1", "0"), ("1", "1")],
            ),
            crate::report::round_sig12(std::f64::consts::LN_2),
        )),
        "tent" => {
            let sys = nleg_system(1);
            Ok(GalleryFiles {
                name: name.to_string(),
                relation: files::legs_to_json(&sys),
                expected: json!({
                    "classification": [{"m": 1, "kind": "turbulent"}],
                }),
            })
        }
        "nleg" => {
            let n = params.n;
            if n == 0 {
                return Err(GalleryError::BadParams("leg count must be positive".into()));
            }
            let sys = nleg_system(n);
            let rows: Vec<Value> = (1..=n)
                .map(|m| {
                    json!({
                        "m": m,
                        "kind": if m == n { "turbulent" } else { "neither" },
                    })
                })
                .collect();
            Ok(GalleryFiles {
                name: name.to_string(),
                relation: files::legs_to_json(&sys),
                expected: json!({ "classification": rows }),
            })
        }
        "linear-pair" => {
            let a = params.a.clone().unwrap_or_else(|| Rational::new(1, 3));
            let b = params.b.clone().unwrap_or_else(|| Rational::from_int(2));
            let sys = linear_pair(&a, &b).map_err(|e| GalleryError::BadParams(e.to_string()))?;
            let relation = files::interval_to_json(&sys.relation());
            // The verified suffix lengths depend on the slopes; compute
            // them once here so the sidecar freezes today's values.
            let (_, p_cr) = sys
                .cr_witness_search(&params.p)
                .map_err(|e| GalleryError::BadParams(e.to_string()))?;
            let (_, p_rev) = sys
                .reverse_cr_witness_search(&params.p)
                .map_err(|e| GalleryError::BadParams(e.to_string()))?;
            Ok(GalleryFiles {
                name: name.to_string(),
                relation,
                expected: json!({
                    "verdicts": {"cr_turbulent": true, "reverse_cr_turbulent": true},
                    "least_n": {"cr": p_cr.n, "reverse": p_rev.n},
                    "p": params.p,
                }),
            })
        }
        "cantor" => {
            let a = params.a.clone().unwrap_or_else(|| Rational::new(1, 2));
            let b = params.b.clone().unwrap_or_else(|| Rational::new(5, 6));
            let rel = cantor_relation(params.depth, &a, &b, &params.perm)
                .map_err(|e| GalleryError::BadParams(e.to_string()))?;
            Ok(GalleryFiles {
                name: name.to_string(),
                relation: files::interval_to_json(&rel),
                expected: json!({
                    "verdicts": {"cr_turbulent": false, "reverse_cr_turbulent": false},
                    "obstruction": {"a": a, "b": b},
                }),
            })
        }
        other => Err(GalleryError::UnknownName(other.to_string())),
    }
}

fn finite_entry(name: &str, rel: FiniteRelation, entropy12: f64) -> GalleryFiles {
    GalleryFiles {
        name: name.to_string(),
        relation: files::finite_to_json(&rel),
        expected: json!({
            "verdicts": {
                "cr_turbulent": true,
                "reverse_cr_turbulent": true,
                "uncountable": true,
            },
            "entropy": {"value": entropy12, "tolerance": 1e-9},
        }),
    }
}

/// Checks a gallery sidecar against a fresh analysis report.
pub fn matches_expected(expected: &Value, report: &Value) -> Result<(), String> {
    if let Some(verdicts) = expected.get("verdicts").and_then(Value::as_object) {
        for (key, want) in verdicts {
            let got = report
                .pointer(&format!("/verdicts/{key}/value"))
                .ok_or_else(|| format!("report lacks verdict {key}"))?;
            if got != want {
                return Err(format!("verdict {key}: expected {want}, got {got}"));
            }
        }
    }
    if let Some(ent) = expected.get("entropy") {
        let want = ent["value"].as_f64().expect("sidecar entropy value");
        let tol = ent["tolerance"].as_f64().expect("sidecar tolerance");
        let got = report
            .pointer("/entropy/value")
            .and_then(Value::as_f64)
            .ok_or("report lacks an entropy value")?;
        if (got - want).abs() > tol {
            return Err(format!("entropy {got} not within {tol} of {want}"));
        }
    }
    if let Some(least) = expected.get("least_n").and_then(Value::as_object) {
        for (side, want) in least {
            let got = report
                .pointer(&format!("/covering/{side}/n"))
                .ok_or_else(|| format!("report lacks covering {side}"))?;
            if got != want {
                return Err(format!("least n for {side}: expected {want}, got {got}"));
            }
        }
    }
    if let Some(rows) = expected.get("classification") {
        let got = report
            .get("classification")
            .ok_or("report lacks a classification")?;
        if got != rows {
            return Err(format!(
                "classification mismatch: expected {rows}, got {got}"
            ));
        }
    }
    if let Some(marks) = expected.get("obstruction") {
        let got = report
            .get("obstruction")
            .ok_or("report lacks obstruction marks")?;
        if got != marks {
            return Err(format!("obstruction marks: expected {marks}, got {got}"));
        }
    }
    Ok(())
}

/// Every gallery entry buildable with default parameters.
pub fn all_names() -> &'static [&'static str] {
    &[
        "golden-mean",
        "full-2",
        "tent",
        "nleg",
        "linear-pair",
        "cantor",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::files::{relation_from_value, RelationFile};
    use crate::report::{analyze, AnalyzeOptions};

    #[test]
    fn every_entry_builds_and_reproduces_its_sidecar() {
        for name in all_names() {
            let files = build(name, &GalleryParams::default()).unwrap();
            let rel = relation_from_value(name, files.relation.clone()).unwrap();
            let bytes = serde_json::to_vec(&files.relation).unwrap();
            let report = analyze(&bytes, &rel, &AnalyzeOptions::default());
            let report_json = serde_json::to_value(&report).unwrap();
            if let Err(e) = matches_expected(&files.expected, &report_json) {
                panic!("{name}: {e}\nreport: {report_json}");
            }
            // Emitted relations parse into the shape their entry promises.
            match (*name, &rel) {
                ("golden-mean" | "full-2", RelationFile::Finite(_)) => {}
                ("tent" | "nleg", RelationFile::Legs(_)) => {}
                ("linear-pair" | "cantor", RelationFile::Interval(_)) => {}
                (n, _) => panic!("{n} produced an unexpected shape"),
            }
        }
    }

    #[test]
    fn unknown_names_and_bad_params_fail() {
        assert!(matches!(
            build("seven-legged", &GalleryParams::default()),
            Err(GalleryError::UnknownName(_))
        ));
        let bad = GalleryParams {
            a: Some(Rational::from_int(3)),
            ..GalleryParams::default()
        };
        assert!(matches!(
            build("linear-pair", &bad),
            Err(GalleryError::BadParams(_))
        ));
        let marks_on_cantor_points = GalleryParams {
            a: Some(Rational::zero()),
            ..GalleryParams::default()
        };
        assert!(matches!(
            build("cantor", &marks_on_cantor_points),
            Err(GalleryError::BadParams(_))
        ));
    }
}
