//! Instance checks of the classification of configurations with small
//! Waldschmidt constant.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{certify, BoundState};
use crate::catalog::{self, CatalogEntry};
use crate::engine::{Engine, ModePolicy};
use crate::error::{Result, WaldError};
use crate::geometry::{abstract_incidence_match, conic_contained, incidence_signature, Config};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Verdict {
    Line,
    NearPencil,
    ConicContained,
    CatalogType(String),
    Unknown,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::CatalogType(name) => write!(f, "CatalogType({name})"),
            other => write!(f, "{other:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeMatch {
    pub verdict: Verdict,
    /// Pattern label of each point, for catalog matches.
    pub labeling: Option<Vec<String>>,
    /// Conic coefficients (x², xy, xz, y², yz, z²) for conic containment.
    #[serde(with = "crate::serde_big::nested_opt")]
    pub conic: Option<Vec<BigInt>>,
}

/// Fixed catalog entries, the comparison set for classification.
fn fixed_entries() -> &'static [CatalogEntry] {
    static ENTRIES: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        catalog::list()
            .iter()
            .filter(|n| !n.ends_with("(s)"))
            .map(|n| catalog::entry(n).expect("shipped realizations validate"))
            .collect()
    })
}

/// Line, near-pencil, conic containment, else the catalog pattern the
/// configuration realizes.
pub fn classify_small(z: &Config) -> TypeMatch {
    let plain = |verdict| TypeMatch {
        verdict,
        labeling: None,
        conic: None,
    };
    let s = z.len();
    let sig = incidence_signature(z);
    let longest = sig.collinear_profile.first().copied().unwrap_or(0);
    if s <= 2 || longest == s {
        return plain(Verdict::Line);
    }
    if longest == s - 1 {
        return plain(Verdict::NearPencil);
    }
    if let (true, coeffs) = conic_contained(z) {
        return TypeMatch {
            verdict: Verdict::ConicContained,
            labeling: None,
            conic: coeffs,
        };
    }
    for e in fixed_entries().iter().filter(|e| e.s == s) {
        if let Some(labels) = abstract_incidence_match(z, &e.pattern) {
            return TypeMatch {
                verdict: Verdict::CatalogType(e.name.clone()),
                labeling: Some(
                    labels
                        .into_iter()
                        .map(|l| e.pattern.labels[l].clone())
                        .collect(),
                ),
                conic: None,
            };
        }
    }
    plain(Verdict::Unknown)
}

/// Longest run of differences equal to 2 and its 1-based start.
pub fn longest_two_run(diffs: &[u32]) -> (usize, Option<usize>) {
    let (mut best, mut best_at, mut run) = (0, None, 0);
    for (i, &d) in diffs.iter().enumerate() {
        run = if d == 2 { run + 1 } else { 0 };
        if run > best {
            best = run;
            best_at = Some(i + 2 - run);
        }
    }
    (best, best_at)
}

/// Runs of this many 2-differences force conic containment.
pub const CONIC_RUN: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RunVerdict {
    Consistent,
    Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoRunReport {
    pub label: String,
    pub window: u32,
    pub diffs: Vec<u32>,
    pub max_run: usize,
    pub position: Option<usize>,
    pub on_conic: bool,
    pub verdict: RunVerdict,
    /// Whether the window is evidence only (no long run seen) or the run
    /// itself was observed.
    pub note: String,
}

pub fn two_run_check(
    engine: &Engine,
    z: &Config,
    horizon: u32,
    policy: ModePolicy,
) -> Result<TwoRunReport> {
    if horizon < 5 {
        return Err(WaldError::Parameter(
            "the window must cover at least 5 terms".into(),
        ));
    }
    let seq = engine.initial_sequence(z, horizon, policy)?;
    Ok(run_report(z, horizon, seq.first_differences()))
}

/// Report for precomputed differences.
pub fn run_report(z: &Config, horizon: u32, diffs: Vec<u32>) -> TwoRunReport {
    let (max_run, position) = longest_two_run(&diffs);
    let on_conic = conic_contained(z).0;
    let long = max_run >= CONIC_RUN;
    let verdict = if long && !on_conic {
        RunVerdict::Violation
    } else {
        RunVerdict::Consistent
    };
    let note = match (long, on_conic) {
        (true, true) => "run of four 2's observed; configuration lies on a conic".to_string(),
        (true, false) => "run of four 2's observed off a conic".to_string(),
        (false, _) => {
            format!("no run of four 2's within m <= {horizon}; evidence for this window only")
        }
    };
    TwoRunReport {
        label: z.label().to_string(),
        window: horizon,
        diffs,
        max_run,
        position,
        on_conic,
        verdict,
        note,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetVerdict {
    /// Index of the dropped point.
    pub dropped: usize,
    pub verdict: TypeMatch,
}

/// Classification of each 8-point complement of a 9-point configuration,
/// ordered by dropped index.
pub fn subset_survey(z: &Config) -> Result<Vec<SubsetVerdict>> {
    if z.len() != 9 {
        return Err(WaldError::Parameter(format!(
            "subset survey needs 9 points, got {}",
            z.len()
        )));
    }
    (0..9)
        .into_par_iter()
        .map(|i| {
            Ok(SubsetVerdict {
                dropped: i,
                verdict: classify_small(&z.without(i)?),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Outcome {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiveHalvesReport {
    pub label: String,
    pub bounds: BoundState,
    pub structure: Option<TypeMatch>,
    pub outcome: Outcome,
}

/// Five halves, the threshold below which nine or more points must lie on
/// a conic or form the nine-point configuration.
pub fn threshold() -> BigRational {
    BigRational::new(5.into(), 2.into())
}

/// On one instance: certified upper bound < 5/2 implies conic containment or
/// the nine-point pattern.
pub fn five_halves_check(
    engine: &Engine,
    z: &Config,
    horizon: u32,
    policy: ModePolicy,
) -> Result<FiveHalvesReport> {
    if z.len() < 9 {
        return Err(WaldError::Parameter(format!(
            "needs at least 9 points, got {}",
            z.len()
        )));
    }
    let (_, bounds) = certify(engine, z, horizon, policy)?;
    let label = z.label().to_string();
    if bounds.upper >= threshold() {
        return Ok(FiveHalvesReport {
            label,
            bounds,
            structure: None,
            outcome: Outcome::NotApplicable,
        });
    }
    let (on_conic, coeffs) = conic_contained(z);
    let structure = if on_conic {
        Some(TypeMatch {
            verdict: Verdict::ConicContained,
            labeling: None,
            conic: coeffs,
        })
    } else {
        let nine = catalog::entry("NINE_17_7")?;
        abstract_incidence_match(z, &nine.pattern).map(|labels| TypeMatch {
            verdict: Verdict::CatalogType(nine.name.clone()),
            labeling: Some(
                labels
                    .into_iter()
                    .map(|l| nine.pattern.labels[l].clone())
                    .collect(),
            ),
            conic: None,
        })
    };
    let outcome = if structure.is_some() {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(FiveHalvesReport {
        label,
        bounds,
        structure,
        outcome,
    })
}
