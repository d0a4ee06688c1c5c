//! Reports and their table, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wald_core::bounds::BoundState;
use wald_core::engine::{AlphaEntry, BelowWitness, Certainty, InitialSequence};
use wald_core::geometry::Config;
use wald_core::verify::{Outcome, TypeMatch};

use crate::config_file::ConfigFile;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    /// Arguments as given, without the program name.
    pub command: Vec<String>,
    pub inputs: Inputs,
    pub results: Results,
    pub certificates: Vec<Certificate>,
    /// Wall-clock time, only with `--timing`; kept out of `results`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Inputs {
    pub configs: Vec<ConfigSummary>,
    pub max_m: Option<u32>,
    pub mode: String,
    pub primes: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub name: String,
    pub points: usize,
    pub hash: String,
}

impl ConfigSummary {
    pub fn of(z: &Config) -> Self {
        Self {
            name: z.label().to_string(),
            points: z.len(),
            hash: z.canonical_hash(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

/// One term α(I^(m)) with its first difference α_m − α_{m−1}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeqRow {
    pub config: String,
    pub m: u32,
    pub alpha: u32,
    pub diff: u32,
    pub certainty: Certainty,
}

impl SeqRow {
    pub fn rows(seq: &InitialSequence) -> Vec<SeqRow> {
        let diffs = seq.first_differences();
        seq.entries
            .iter()
            .zip(diffs)
            .map(|(e, diff)| SeqRow {
                config: seq.label.clone(),
                m: e.m,
                alpha: e.alpha,
                diff,
                certainty: e.certainty,
            })
            .collect()
    }
}

/// Evidence for one term: why degree α − 1 fails and what was found at α.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub config: String,
    pub m: u32,
    pub alpha: u32,
    pub certainty: Certainty,
    pub below: BelowWitness,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel_hash: Option<String>,
    pub primes: Vec<u64>,
}

impl Certificate {
    pub fn of(config: &str, e: &AlphaEntry) -> Self {
        Self {
            config: config.to_string(),
            m: e.m,
            alpha: e.alpha,
            certainty: e.certainty,
            below: e.below.clone(),
            dim: e.at.dim,
            kernel_hash: e.witness_digest(),
            primes: e.at.primes_used.clone(),
        }
    }

    pub fn all(seq: &InitialSequence) -> Vec<Certificate> {
        seq.entries
            .iter()
            .map(|e| Certificate::of(&seq.label, e))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRow {
    /// `2`, `B` or `A`.
    pub theorem: String,
    pub subject: String,
    pub check: String,
    pub expected: String,
    pub observed: String,
    pub outcome: Outcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Results {
    Alpha {
        config: String,
        m: u32,
        alpha: u32,
        certainty: Certainty,
    },
    Sequence {
        rows: Vec<SeqRow>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        diffs: Option<Vec<u32>>,
        violations: Vec<String>,
    },
    Waldschmidt {
        rows: Vec<SeqRow>,
        bounds: Box<BoundState>,
        violations: Vec<String>,
    },
    Classify {
        config: String,
        verdict: TypeMatch,
    },
    CatalogList {
        names: Vec<String>,
    },
    CatalogEmit {
        config: ConfigFile,
    },
    Checks {
        rows: Vec<CheckRow>,
    },
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("reports serialize");
            out.push(b'\n');
            out
        }
        Format::Csv => csv_bytes(report),
        Format::Table => table(report).into_bytes(),
    }
}

fn csv_bytes(report: &Report) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let res: csv::Result<()> = (|| {
        match &report.results {
            Results::Alpha {
                config,
                m,
                alpha,
                certainty,
            } => {
                w.write_record(["config", "m", "alpha", "certainty"])?;
                w.write_record([
                    config.clone(),
                    m.to_string(),
                    alpha.to_string(),
                    format!("{certainty:?}"),
                ])?;
            }
            Results::Sequence { rows, .. } | Results::Waldschmidt { rows, .. } => {
                for r in rows {
                    w.serialize(r)?;
                }
            }
            Results::Classify { config, verdict } => {
                w.write_record(["config", "verdict"])?;
                w.write_record([config.clone(), verdict.verdict.to_string()])?;
            }
            Results::CatalogList { names } => {
                w.write_record(["name"])?;
                for n in names {
                    w.write_record([n])?;
                }
            }
            Results::CatalogEmit { config } => {
                w.write_record(["name", "x", "y", "z"])?;
                for p in &config.points {
                    let c = serde_json::to_value(p).expect("coordinates serialize");
                    let cells: Vec<String> = c
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().map_or_else(|| v.to_string(), String::from))
                        .collect();
                    w.write_record([config.name.as_str(), &cells[0], &cells[1], &cells[2]])?;
                }
            }
            Results::Checks { rows } => {
                for r in rows {
                    w.serialize(r)?;
                }
            }
        }
        Ok(())
    })();
    res.expect("writing CSV to memory");
    w.into_inner().expect("flushing CSV to memory")
}

/// Left-aligned columns separated by two spaces.
fn columns(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in width.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let mut s = String::new();
        for (i, (c, w)) in cells.iter().zip(&width).enumerate() {
            if i + 1 == cells.len() {
                s.push_str(c);
            } else {
                let _ = write!(s, "{c:<w$}  ");
            }
        }
        s.push('\n');
        s
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

fn certainty(c: Certainty) -> &'static str {
    match c {
        Certainty::Certified => "certified",
        Certainty::ModularConsensus => "consensus",
    }
}

fn seq_table(rows: &[SeqRow]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.m.to_string(),
                r.alpha.to_string(),
                r.diff.to_string(),
                certainty(r.certainty).to_string(),
            ]
        })
        .collect();
    columns(&["m", "alpha", "diff", "certainty"], &cells)
}

fn table(report: &Report) -> String {
    let mut out = String::new();
    if let [one] = report.inputs.configs.as_slice() {
        let _ = writeln!(
            out,
            "config {} ({} points, {})",
            one.name, one.points, one.hash
        );
    }
    match &report.results {
        Results::Alpha {
            m,
            alpha,
            certainty: c,
            ..
        } => {
            let _ = writeln!(out, "alpha(I^({m})) = {alpha}  [{}]", certainty(*c));
        }
        Results::Sequence {
            rows,
            diffs,
            violations,
        } => {
            out.push_str(&seq_table(rows));
            if let Some(d) = diffs {
                let list: Vec<String> = d.iter().map(u32::to_string).collect();
                let _ = writeln!(out, "differences: {}", list.join(","));
            }
            for v in violations {
                let _ = writeln!(out, "violation: {v}");
            }
        }
        Results::Waldschmidt {
            rows,
            bounds,
            violations,
        } => {
            out.push_str(&seq_table(rows));
            let lw = &bounds.lower_witness;
            let _ = writeln!(
                out,
                "lower  {}  ({:?}, k = {}, alpha_k = {})",
                bounds.lower, lw.formula, lw.k, lw.alpha_k
            );
            let uw = &bounds.upper_witness;
            let _ = writeln!(
                out,
                "upper  {}  (alpha_{} = {})",
                bounds.upper, uw.m, uw.alpha_m
            );
            if let Some(p) = &bounds.period {
                let _ = writeln!(
                    out,
                    "period {:?} after {:?}, mean {}, {} repetitions",
                    p.period,
                    p.preperiod,
                    p.mean(),
                    p.repetitions
                );
            }
            let value = bounds
                .value
                .as_ref()
                .map_or("-".to_string(), |v| v.to_string());
            let _ = writeln!(out, "status {}  value {}", bounds.status, value);
            for v in violations {
                let _ = writeln!(out, "violation: {v}");
            }
        }
        Results::Classify { verdict, .. } => {
            let _ = writeln!(out, "verdict {}", verdict.verdict);
            if let Some(l) = &verdict.labeling {
                let _ = writeln!(out, "labels  {}", l.join(" "));
            }
            if let Some(c) = &verdict.conic {
                let cs: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                let _ = writeln!(
                    out,
                    "conic   ({}) on (x², xy, xz, y², yz, z²)",
                    cs.join(", ")
                );
            }
        }
        Results::CatalogList { names } => {
            for n in names {
                let _ = writeln!(out, "{n}");
            }
        }
        Results::CatalogEmit { config } => {
            out = config.to_json();
        }
        Results::Checks { rows } => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.theorem.clone(),
                        r.subject.clone(),
                        r.check.clone(),
                        r.expected.clone(),
                        r.observed.clone(),
                        format!("{:?}", r.outcome),
                    ]
                })
                .collect();
            out.push_str(&columns(
                &["thm", "subject", "check", "expected", "observed", "outcome"],
                &cells,
            ));
            let count = |o| rows.iter().filter(|r| r.outcome == o).count();
            let _ = writeln!(
                out,
                "{} passed, {} failed, {} not applicable",
                count(Outcome::Pass),
                count(Outcome::Fail),
                count(Outcome::NotApplicable)
            );
        }
    }
    if let Some(t) = report.timing {
        let _ = writeln!(out, "elapsed {} ms", t.elapsed_ms);
    }
    out
}
