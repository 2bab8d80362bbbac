//! The `mahavier` command line: analyze, gallery, verify-witness,
//! zigzag, and entropy subcommands.
//!
//! Exit codes: 0 on success (and verified witnesses), 1 when the
//! analysis finds malformed mathematical input or a witness fails, 2 on
//! I/O, JSON, or schema errors.

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};

use crate::files::{self, RelationFile, WitnessFile};
use crate::gallery::{self, GalleryParams};
use crate::interval::{check_witness, IntervalWitness, PermSpec};
use crate::rational::Rational;
use crate::report::{self, AnalyzeOptions};
use crate::transforms::{verify_turbulent, FunctionSystem, TurbulenceKind};
use crate::zigzag;

#[derive(Debug, Parser)]
#[command(
    name = "mahavier",
    version,
    about = "Dynamics of closed relations: Mahavier products, entropy, turbulence witnesses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze a relation document and emit a JSON report.
    Analyze {
        /// Relation file (finite, interval, or leg-system JSON).
        input: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write an SVG plot of the relation.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Also write entropy-growth samples as CSV (finite inputs).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Omit wall-clock timings for byte-stable output.
        #[arg(long)]
        no_timings: bool,
        /// Level cap for the brute-force cross-check.
        #[arg(long, default_value_t = 8)]
        level_cap: u32,
        /// Enable the brute-force cross-check with this set-size cap.
        #[arg(long)]
        size_cap: Option<usize>,
        /// Base parameter for the interval witness search.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Period cap for periodic-itinerary enumeration.
        #[arg(long, default_value_t = 20)]
        k_max: u32,
        /// Length cap for the growth estimator.
        #[arg(long, default_value_t = 30)]
        growth: u32,
    },
    /// Emit a canonical example relation plus its expected verdicts.
    Gallery {
        /// One of: tent, nleg, golden-mean, full-2, linear-pair, cantor.
        name: String,
        /// Slope (linear-pair) or mark column (cantor).
        #[arg(long)]
        a: Option<String>,
        /// Slope (linear-pair) or mark row (cantor).
        #[arg(long)]
        b: Option<String>,
        /// Leg count for nleg.
        #[arg(long, default_value_t = 5)]
        n: usize,
        /// Approximation depth for cantor.
        #[arg(long, default_value_t = 3)]
        depth: u32,
        /// Permutation for cantor: identity, rotate, or i,j,k,...
        #[arg(long, default_value = "rotate")]
        perm: String,
        /// Base parameter for the witness search sidecar.
        #[arg(long, default_value = "1/2")]
        p: String,
        /// Directory receiving NAME.json and NAME.expected.json.
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Verify a witness file against a relation file.
    VerifyWitness {
        relation: PathBuf,
        witness: PathBuf,
        /// Write the verdict report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Accepted for symmetry; verdict reports carry no timings.
        #[arg(long)]
        no_timings: bool,
    },
    /// Zigzag numbers of labeled paths and the exhaustive flip bound.
    Zigzag {
        /// Labeled path file: {"t": [...], "labels": ["A","B","-",...]}.
        input: Option<PathBuf>,
        /// Also check the pigeonhole bound ceil(diameter / delta).
        #[arg(long)]
        delta: Option<String>,
        /// Exhaustively verify the cube flip bound for this dimension.
        #[arg(long)]
        pigeonhole: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spectral and growth entropy of a finite relation.
    Entropy {
        relation: PathBuf,
        #[arg(long, default_value_t = 30)]
        m_max: u32,
        /// Write growth samples as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit wall-clock timings for byte-stable output.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// I/O, JSON, or document-shape problems: exit 2.
    #[error("{0}")]
    Schema(String),
    /// Structurally valid input with broken mathematics: exit 1.
    #[error("{0}")]
    Math(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Math(_) => 1,
        }
    }
}

impl From<files::FileError> for CliError {
    fn from(e: files::FileError) -> Self {
        if e.is_math() {
            CliError::Math(e.to_string())
        } else {
            CliError::Schema(e.to_string())
        }
    }
}

fn parse_rational(label: &str, s: &str) -> Result<Rational, CliError> {
    s.parse().map_err(|_| {
        CliError::Schema(format!(
            "{label}: expected a rational like 2 or 1/3, got {s:?}"
        ))
    })
}

fn emit(out: &Option<PathBuf>, text: String) -> Result<(), CliError> {
    match out {
        Some(path) => files::write_text(path, &text).map_err(CliError::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs one command; the returned code is the process exit status.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Analyze {
            input,
            out,
            svg,
            csv,
            no_timings,
            level_cap,
            size_cap,
            p,
            k_max,
            growth,
        } => {
            let bytes = std::fs::read(&input)
                .map_err(|e| CliError::Schema(format!("cannot read {}: {e}", input.display())))?;
            let file = files::load_relation(&input)?;
            let opts = AnalyzeOptions {
                p: parse_rational("--p", &p)?,
                growth_m: growth,
                k_max,
                level_cap,
                size_cap,
                with_timings: !no_timings,
            };
            let rep = report::analyze(&bytes, &file, &opts);
            if let Some(path) = svg {
                // Interval reports carry their witnesses; shade the first
                // one into the plot.
                let witness = match (&file, rep.witnesses.first()) {
                    (RelationFile::Interval(_), Some(v)) => {
                        serde_json::from_value::<IntervalWitness>(v.clone()).ok()
                    }
                    _ => None,
                };
                files::write_text(&path, &crate::svg::render(&file, witness.as_ref()))?;
            }
            if let Some(path) = csv {
                let RelationFile::Finite(rel) = &file else {
                    return Err(CliError::Math(
                        "growth CSV output needs a finite relation".to_string(),
                    ));
                };
                files::write_text(&path, &report::growth_csv(rel, growth))?;
            }
            emit(&out, files::to_pretty(&report::to_json(&rep)))?;
            Ok(0)
        }
        Command::Gallery {
            name,
            a,
            b,
            n,
            depth,
            perm,
            p,
            out_dir,
        } => {
            let params = GalleryParams {
                a: a.as_deref().map(|s| parse_rational("--a", s)).transpose()?,
                b: b.as_deref().map(|s| parse_rational("--b", s)).transpose()?,
                n,
                depth,
                perm: parse_perm(&perm)?,
                p: parse_rational("--p", &p)?,
            };
            let built =
                gallery::build(&name, &params).map_err(|e| CliError::Math(e.to_string()))?;
            std::fs::create_dir_all(&out_dir).map_err(|e| {
                CliError::Schema(format!("cannot create {}: {e}", out_dir.display()))
            })?;
            let rel_path = out_dir.join(format!("{name}.json"));
            let exp_path = out_dir.join(format!("{name}.expected.json"));
            files::write_text(&rel_path, &files::to_pretty(&built.relation))?;
            files::write_text(&exp_path, &files::to_pretty(&built.expected))?;
            println!("{}", rel_path.display());
            println!("{}", exp_path.display());
            Ok(0)
        }
        Command::VerifyWitness {
            relation,
            witness,
            out,
            no_timings: _,
        } => {
            let rel = files::load_relation(&relation)?;
            let wit = files::load_witness(&witness)?;
            let (verdict, detail) = verify_witness_files(&rel, &wit, &witness)?;
            emit(&out, files::to_pretty(&detail))?;
            Ok(if verdict { 0 } else { 1 })
        }
        Command::Zigzag {
            input,
            delta,
            pigeonhole,
            out,
        } => {
            let mut doc = serde_json::Map::new();
            if let Some(path) = &input {
                let p = files::load_labeled_path(path)?;
                let count = zigzag::zigzag_number(&p);
                doc.insert("zigzag_number".into(), json!(count));
                doc.insert("diameter".into(), json!(p.diameter()));
                if let Some(delta) = &delta {
                    let delta = parse_rational("--delta", delta)?;
                    let bound = zigzag::zigzag_bound(&p.diameter(), &delta)
                        .map_err(|e| CliError::Math(e.to_string()))?;
                    doc.insert("delta".into(), json!(delta));
                    doc.insert("bound".into(), json!(bound));
                    doc.insert("within_bound".into(), json!(count as u64 <= bound));
                }
            }
            if let Some(n) = pigeonhole {
                let holds =
                    zigzag::flip_bound_exhaustive(n).map_err(|e| CliError::Math(e.to_string()))?;
                doc.insert("pigeonhole_n".into(), json!(n));
                doc.insert("pigeonhole_holds".into(), json!(holds));
            }
            if doc.is_empty() {
                return Err(CliError::Schema(
                    "zigzag needs a labeled path file or --pigeonhole N".to_string(),
                ));
            }
            emit(&out, files::to_pretty(&Value::Object(doc)))?;
            Ok(0)
        }
        Command::Entropy {
            relation,
            m_max,
            csv,
            out,
            no_timings,
        } => {
            let RelationFile::Finite(rel) = files::load_relation(&relation)? else {
                return Err(CliError::Math(
                    "the entropy subcommand needs a finite relation".to_string(),
                ));
            };
            let started = std::time::Instant::now();
            let spectral = rel.entropy();
            let growth = rel.entropy_growth(m_max.max(2));
            let mut doc = json!({
                "spectral": report::round_sig12(spectral.value),
                "growth": {
                    "m_max": m_max.max(2),
                    "value": report::round_sig12(growth.value),
                },
            });
            if !no_timings {
                doc["timings_ms"] = json!({
                    "total": started.elapsed().as_secs_f64() * 1e3
                });
            }
            if let Some(path) = csv {
                files::write_text(&path, &report::growth_csv(&rel, m_max))?;
            }
            emit(&out, files::to_pretty(&doc))?;
            Ok(0)
        }
    }
}

fn parse_perm(s: &str) -> Result<PermSpec, CliError> {
    match s {
        "identity" => Ok(PermSpec::Identity),
        "rotate" => Ok(PermSpec::Rotate),
        list => {
            let indices: Result<Vec<usize>, _> =
                list.split(',').map(|t| t.trim().parse::<usize>()).collect();
            indices.map(PermSpec::Explicit).map_err(|_| {
                CliError::Schema(format!(
                    "--perm: expected identity, rotate, or a comma list of indices, got {s:?}"
                ))
            })
        }
    }
}

/// Dispatches witness verification by document shapes; reports the
/// failing inclusion coordinate-wise on failure.
fn verify_witness_files(
    rel: &RelationFile,
    wit: &WitnessFile,
    witness_path: &Path,
) -> Result<(bool, Value), CliError> {
    let schema = |m: String| CliError::Schema(format!("{}: {m}", witness_path.display()));
    match (rel, wit) {
        (RelationFile::Finite(rel), WitnessFile::Level(w)) => {
            let resolved = w.resolve(rel).map_err(schema)?;
            match rel.verify_witness(&resolved) {
                Ok(true) => Ok((
                    true,
                    json!({"verdict": "pass", "kind": w.kind, "level": w.level}),
                )),
                Ok(false) => {
                    let detail = finite_failure_detail(rel, &resolved);
                    Ok((
                        false,
                        json!({"verdict": "fail", "kind": w.kind, "level": w.level, "failing": detail}),
                    ))
                }
                Err(e) => Err(schema(e.to_string())),
            }
        }
        (RelationFile::Interval(rel), WitnessFile::Interval(w)) => match check_witness(rel, w) {
            Ok(check) if check.verdict => Ok((
                true,
                json!({"verdict": "pass", "kind": w.kind, "level": w.level}),
            )),
            Ok(check) => {
                let uncovered = check.first_uncovered();
                Ok((
                    false,
                    json!({
                        "verdict": "fail",
                        "kind": w.kind,
                        "level": w.level,
                        "failing": {
                            "inclusion": "sources must lie in both last projections",
                            "uncovered": uncovered,
                            "sources": check.sources,
                            "last_k": check.last_k,
                            "last_l": check.last_l,
                        }
                    }),
                ))
            }
            Err(e) => Err(schema(e.to_string())),
        },
        (RelationFile::Legs(sys), WitnessFile::Pair(pair)) => {
            let k = pair.k.to_spec().map_err(&schema)?;
            let l = pair.l.to_spec().map_err(&schema)?;
            let system = FunctionSystem::Legs(sys.clone());
            let kind =
                verify_turbulent(&system, &k, &l, pair.m).map_err(|e| schema(e.to_string()))?;
            let pass = kind != TurbulenceKind::Neither;
            Ok((
                pass,
                json!({
                    "verdict": if pass { "pass" } else { "fail" },
                    "kind": kind.to_string(),
                    "m": pair.m,
                }),
            ))
        }
        _ => Err(CliError::Schema(
            "relation and witness documents have incompatible shapes".to_string(),
        )),
    }
}

fn finite_failure_detail(
    rel: &crate::finite::FiniteRelation,
    w: &crate::finite::LevelWitness,
) -> Value {
    use std::collections::BTreeSet;
    let firsts = |side: &[crate::finite::PathTuple]| -> BTreeSet<usize> {
        side.iter().map(|t| t.first()).collect()
    };
    let lasts = |side: &[crate::finite::PathTuple]| -> BTreeSet<usize> {
        side.iter().map(|t| t.last()).collect()
    };
    let (sources, both) = match w.kind {
        crate::WitnessKind::Cr => (&firsts(&w.k) | &firsts(&w.l), &lasts(&w.k) & &lasts(&w.l)),
        crate::WitnessKind::ReverseCr => {
            (&lasts(&w.k) | &lasts(&w.l), &firsts(&w.k) & &firsts(&w.l))
        }
    };
    let ids = |set: &BTreeSet<usize>| -> Vec<String> {
        let mut v: Vec<String> = set.iter().map(|&i| rel.id_of(i).to_string()).collect();
        v.sort();
        v
    };
    let uncovered = ids(&(&sources - &both));
    json!({
        "inclusion": "sources must lie in both opposite projections",
        "uncovered": uncovered,
        "sources": ids(&sources),
        "covered_by_both": ids(&both),
    })
}
