//! JSON wire formats for relations, systems, witnesses, and paths.
//!
//! Rationals travel as `"p/q"` strings (plain `"p"` for integers), so
//! every format round-trips exactly. Finite relations keep their point
//! order and normalize edge order lexicographically on write.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeSet;
use std::path::Path;

use crate::finite::{FiniteRelation, LevelWitness, Point};
use crate::interval::{Horizontal, IntervalRelation, IntervalWitness, PlBranch, Vertical};
use crate::rational::Rational;
use crate::transforms::{LegMap, LegSystem, SetSpec};
use crate::zigzag::{Label, LabeledPath};
use crate::{IntervalUnion, WitnessKind};

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("{path} is not valid JSON: {source}")]
    Json {
        path: String,
        source: serde_json::Error,
    },
    #[error("{path}: unrecognized document shape (expected {expected})")]
    UnknownShape {
        path: String,
        expected: &'static str,
    },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {message}")]
    Math { path: String, message: String },
}

impl FileError {
    /// Whether the failure is malformed mathematics rather than a
    /// malformed document.
    pub fn is_math(&self) -> bool {
        matches!(self, FileError::Math { .. })
    }
}

/// Any relation-like input document.
#[derive(Debug, Clone)]
pub enum RelationFile {
    Finite(FiniteRelation),
    Interval(IntervalRelation),
    Legs(LegSystem),
}

/// Any witness-like input document.
#[derive(Debug, Clone)]
pub enum WitnessFile {
    Level(LevelWitnessJson),
    Interval(IntervalWitness),
    Pair(PairJson),
}

// ---------------------------------------------------------------------
// finite relations

#[derive(Debug, Clone, Serialize, Deserialize)]
struct FiniteJson {
    points: Vec<Point>,
    edges: Vec<(String, String)>,
}

pub fn finite_to_json(rel: &FiniteRelation) -> Value {
    let mut edges: Vec<(String, String)> = rel
        .edges()
        .map(|(a, b)| (rel.id_of(a).to_string(), rel.id_of(b).to_string()))
        .collect();
    edges.sort();
    serde_json::to_value(FiniteJson {
        points: rel.points().to_vec(),
        edges,
    })
    .expect("static shape")
}

fn finite_from_value(path: &str, v: Value) -> Result<FiniteRelation, FileError> {
    let doc: FiniteJson = from_value(path, v)?;
    FiniteRelation::new(doc.points, &doc.edges).map_err(|e| FileError::Math {
        path: path.to_string(),
        message: e.to_string(),
    })
}

// ---------------------------------------------------------------------
// interval relations

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BranchJson {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct VerticalJson {
    x: Rational,
    y0: Rational,
    y1: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct HorizontalJson {
    x0: Rational,
    x1: Rational,
    y: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IntervalJson {
    #[serde(default)]
    branches: Vec<BranchJson>,
    #[serde(default)]
    verticals: Vec<VerticalJson>,
    #[serde(default)]
    horizontals: Vec<HorizontalJson>,
    #[serde(default)]
    isolated: Vec<(Rational, Rational)>,
}

pub fn interval_to_json(rel: &IntervalRelation) -> Value {
    serde_json::to_value(IntervalJson {
        branches: rel
            .branches
            .iter()
            .map(|b| BranchJson {
                xs: b.xs().to_vec(),
                ys: b.ys().to_vec(),
            })
            .collect(),
        verticals: rel
            .verticals
            .iter()
            .map(|v| VerticalJson {
                x: v.x.clone(),
                y0: v.y_lo.clone(),
                y1: v.y_hi.clone(),
            })
            .collect(),
        horizontals: rel
            .horizontals
            .iter()
            .map(|h| HorizontalJson {
                x0: h.x_lo.clone(),
                x1: h.x_hi.clone(),
                y: h.y.clone(),
            })
            .collect(),
        isolated: rel.isolated.clone(),
    })
    .expect("static shape")
}

fn interval_from_value(path: &str, v: Value) -> Result<IntervalRelation, FileError> {
    let doc: IntervalJson = from_value(path, v)?;
    let math = |m: String| FileError::Math {
        path: path.to_string(),
        message: m,
    };
    let mut branches = Vec::new();
    for b in doc.branches {
        branches.push(PlBranch::new(b.xs, b.ys).map_err(|e| math(e.to_string()))?);
    }
    let verticals = doc
        .verticals
        .into_iter()
        .map(|v| Vertical {
            x: v.x,
            y_lo: v.y0,
            y_hi: v.y1,
        })
        .collect();
    let horizontals = doc
        .horizontals
        .into_iter()
        .map(|h| Horizontal {
            x_lo: h.x0,
            x_hi: h.x1,
            y: h.y,
        })
        .collect();
    IntervalRelation::new(branches, verticals, horizontals, doc.isolated)
        .map_err(|e| math(e.to_string()))
}

// ---------------------------------------------------------------------
// leg systems

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LegBranchJson {
    source: usize,
    target: usize,
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LegsJson {
    legs: usize,
    branches: Vec<LegBranchJson>,
}

pub fn legs_to_json(sys: &LegSystem) -> Value {
    serde_json::to_value(LegsJson {
        legs: sys.legs(),
        branches: sys
            .maps()
            .iter()
            .enumerate()
            .map(|(source, m)| LegBranchJson {
                source,
                target: m.target,
                xs: m.map.xs().to_vec(),
                ys: m.map.ys().to_vec(),
            })
            .collect(),
    })
    .expect("static shape")
}

fn legs_from_value(path: &str, v: Value) -> Result<LegSystem, FileError> {
    let doc: LegsJson = from_value(path, v)?;
    let math = |m: String| FileError::Math {
        path: path.to_string(),
        message: m,
    };
    if doc.branches.len() != doc.legs {
        return Err(math(format!(
            "need exactly one map per leg: {} legs, {} maps",
            doc.legs,
            doc.branches.len()
        )));
    }
    let mut maps: Vec<Option<LegMap>> = vec![None; doc.legs];
    for b in doc.branches {
        if b.source >= doc.legs {
            return Err(math(format!("source leg {} out of range", b.source)));
        }
        if maps[b.source].is_some() {
            return Err(math(format!("duplicate map for leg {}", b.source)));
        }
        let map = crate::interval::PlFunction::new(b.xs, b.ys).map_err(|e| math(e.to_string()))?;
        maps[b.source] = Some(LegMap {
            target: b.target,
            map,
        });
    }
    let maps = maps.into_iter().map(Option::unwrap).collect();
    LegSystem::new(maps).map_err(|e| math(e.to_string()))
}

// ---------------------------------------------------------------------
// witnesses

/// Tuple-set witness with tuples spelled as point-id arrays.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelWitnessJson {
    pub level: usize,
    pub kind: WitnessKind,
    pub k: Vec<Vec<String>>,
    pub l: Vec<Vec<String>>,
}

impl LevelWitnessJson {
    pub fn from_witness(rel: &FiniteRelation, w: &LevelWitness) -> Self {
        let side = |tuples: &[crate::finite::PathTuple]| {
            tuples
                .iter()
                .map(|t| rel.ids_of(t).iter().map(|s| s.to_string()).collect())
                .collect()
        };
        LevelWitnessJson {
            level: w.level,
            kind: w.kind,
            k: side(&w.k),
            l: side(&w.l),
        }
    }

    /// Resolves the id tuples against a relation.
    pub fn resolve(&self, rel: &FiniteRelation) -> Result<LevelWitness, String> {
        let side = |tuples: &[Vec<String>]| -> Result<Vec<crate::finite::PathTuple>, String> {
            tuples
                .iter()
                .map(|ids| {
                    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
                    rel.tuple(&refs).map_err(|e| e.to_string())
                })
                .collect()
        };
        Ok(LevelWitness {
            level: self.level,
            kind: self.kind,
            k: side(&self.k)?,
            l: side(&self.l)?,
        })
    }
}

/// A turbulence-pair document for function systems.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairJson {
    pub m: u32,
    pub k: SetSpecJson,
    pub l: SetSpecJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SetSpecJson {
    Finite {
        points: Vec<String>,
    },
    Legs {
        legs: Vec<Vec<(Rational, Rational)>>,
    },
}

impl SetSpecJson {
    pub fn from_spec(spec: &SetSpec) -> Self {
        match spec {
            SetSpec::Finite(ids) => SetSpecJson::Finite {
                points: ids.iter().cloned().collect(),
            },
            SetSpec::Legs(v) => SetSpecJson::Legs {
                legs: v.iter().map(|u| u.parts().to_vec()).collect(),
            },
        }
    }

    pub fn to_spec(&self) -> Result<SetSpec, String> {
        match self {
            SetSpecJson::Finite { points } => Ok(SetSpec::Finite(
                points.iter().cloned().collect::<BTreeSet<_>>(),
            )),
            SetSpecJson::Legs { legs } => {
                let mut out = Vec::with_capacity(legs.len());
                for parts in legs {
                    out.push(IntervalUnion::from_parts(parts.clone()).map_err(|e| e.to_string())?);
                }
                Ok(SetSpec::Legs(out))
            }
        }
    }
}

// ---------------------------------------------------------------------
// labeled paths

#[derive(Debug, Clone, Serialize, Deserialize)]
struct LabeledPathJson {
    t: Vec<Rational>,
    labels: Vec<Label>,
}

pub fn labeled_path_to_json(p: &LabeledPath) -> Value {
    serde_json::to_value(LabeledPathJson {
        t: p.ts().to_vec(),
        labels: p.labels().to_vec(),
    })
    .expect("static shape")
}

// ---------------------------------------------------------------------
// loading with shape detection

pub fn read_json(path: &Path) -> Result<Value, FileError> {
    let text = std::fs::read_to_string(path).map_err(|source| FileError::Read {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| FileError::Json {
        path: path.display().to_string(),
        source,
    })
}

fn from_value<T: serde::de::DeserializeOwned>(path: &str, v: Value) -> Result<T, FileError> {
    serde_json::from_value(v).map_err(|e| FileError::Schema {
        path: path.to_string(),
        message: e.to_string(),
    })
}

/// Loads a relation document, detecting its shape from the fields.
pub fn load_relation(path: &Path) -> Result<RelationFile, FileError> {
    let v = read_json(path)?;
    relation_from_value(&path.display().to_string(), v)
}

pub fn relation_from_value(path: &str, v: Value) -> Result<RelationFile, FileError> {
    let obj = v.as_object().ok_or(FileError::UnknownShape {
        path: path.to_string(),
        expected: "a JSON object",
    })?;
    if obj.contains_key("points") {
        return Ok(RelationFile::Finite(finite_from_value(path, v)?));
    }
    if obj.contains_key("legs") {
        return Ok(RelationFile::Legs(legs_from_value(path, v)?));
    }
    if obj.contains_key("branches")
        || obj.contains_key("verticals")
        || obj.contains_key("horizontals")
        || obj.contains_key("isolated")
    {
        return Ok(RelationFile::Interval(interval_from_value(path, v)?));
    }
    Err(FileError::UnknownShape {
        path: path.to_string(),
        expected: "points/edges, branches/segments, or legs",
    })
}

/// Loads a witness document, detecting its shape.
pub fn load_witness(path: &Path) -> Result<WitnessFile, FileError> {
    let v = read_json(path)?;
    let p = path.display().to_string();
    let obj = v.as_object().ok_or(FileError::UnknownShape {
        path: p.clone(),
        expected: "a JSON object",
    })?;
    if obj.contains_key("m") {
        return Ok(WitnessFile::Pair(from_value(&p, v)?));
    }
    match obj.get("k") {
        Some(Value::Array(_)) => Ok(WitnessFile::Level(from_value(&p, v)?)),
        Some(Value::Object(_)) => Ok(WitnessFile::Interval(from_value(&p, v)?)),
        _ => Err(FileError::UnknownShape {
            path: p,
            expected: "a level witness, an interval witness, or a turbulence pair",
        }),
    }
}

pub fn load_labeled_path(path: &Path) -> Result<LabeledPath, FileError> {
    let v = read_json(path)?;
    let p = path.display().to_string();
    let doc: LabeledPathJson = from_value(&p, v)?;
    LabeledPath::new(doc.t, doc.labels).map_err(|e| FileError::Math {
        path: p,
        message: e.to_string(),
    })
}

/// Serializes a value as pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FileError> {
    std::fs::write(path, text).map_err(|source| FileError::Write {
        path: path.display().to_string(),
        source,
    })
}
