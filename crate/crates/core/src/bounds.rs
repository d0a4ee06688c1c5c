//! Brackets for the Waldschmidt constant α̂ = inf α(I^(m))/m.
//!
//! The upper side comes from computed terms, the lower side from the
//! Esnault–Viehweg and Chudnovsky inequalities applied to the same terms.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::engine::{sequence_violations, Certainty, Engine, InitialSequence, Mode, ModePolicy};
use crate::error::{Result, WaldError};
use crate::geometry::Config;

fn ratio(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// (α_k + 1)/(k + n − 1), a lower bound for α(I^(m))/m whenever k <= m.
pub fn ev_lower_bound(alpha_k: u32, k: u32, n: u32) -> Result<BigRational> {
    if n < 2 {
        return Err(WaldError::Parameter(format!("ambient dimension {n} < 2")));
    }
    if k == 0 {
        return Err(WaldError::Parameter("k must be at least 1".into()));
    }
    Ok(ratio(alpha_k as u64 + 1, (k + n - 1) as u64))
}

/// (α_1 + n − 1)/n.
pub fn chudnovsky_lower_bound(alpha_1: u32, n: u32) -> Result<BigRational> {
    if n == 0 {
        return Err(WaldError::Parameter(
            "ambient dimension must be positive".into(),
        ));
    }
    Ok(ratio((alpha_1 + n - 1) as u64, n as u64))
}

/// min α_m/m over the computed terms, smallest m on ties. `values[0]` is α_1.
pub fn upper_bound(values: &[u32]) -> Result<(BigRational, u32)> {
    let mut best: Option<(BigRational, u32)> = None;
    for (i, &a) in values.iter().enumerate() {
        let m = i as u32 + 1;
        let q = ratio(a as u64, m as u64);
        if best.as_ref().is_none_or(|(b, _)| q < *b) {
            best = Some((q, m));
        }
    }
    best.ok_or_else(|| WaldError::Parameter("empty sequence".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodGuess {
    pub preperiod: Vec<u32>,
    pub period: Vec<u32>,
    /// Full repetitions of the period after the preperiod.
    pub repetitions: usize,
}

impl PeriodGuess {
    /// (sum π)/ℓ.
    pub fn mean(&self) -> BigRational {
        ratio(
            self.period.iter().map(|&x| x as u64).sum(),
            self.period.len() as u64,
        )
    }

    /// The first `len` differences predicted by the guess.
    pub fn extend(&self, len: usize) -> Vec<u32> {
        let l = self.period.len();
        (0..len)
            .map(|i| match self.preperiod.get(i) {
                Some(&x) => x,
                None => self.period[(i - self.preperiod.len()) % l],
            })
            .collect()
    }
}

/// Shortest period (then shortest preperiod) whose tail repeats it at least
/// twice, with the preperiod no longer than a third of the data.
pub fn detect_period(diffs: &[u32]) -> Option<PeriodGuess> {
    let n = diffs.len();
    for l in 1..=n / 2 {
        for pre in 0..=n / 3 {
            let tail = &diffs[pre..];
            if tail.len() < 2 * l {
                break;
            }
            if tail.iter().enumerate().all(|(i, &x)| x == tail[i % l]) {
                return Some(PeriodGuess {
                    preperiod: diffs[..pre].to_vec(),
                    period: tail[..l].to_vec(),
                    repetitions: tail.len() / l,
                });
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LowerFormula {
    EsnaultViehweg,
    Chudnovsky,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerWitness {
    pub k: u32,
    pub alpha_k: u32,
    pub formula: LowerFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpperWitness {
    pub m: u32,
    pub alpha_m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    ExactCertified,
    PeriodConjectured,
    BoundedOnly,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundState {
    #[serde(with = "crate::serde_big::ratio")]
    pub lower: BigRational,
    pub lower_witness: LowerWitness,
    #[serde(with = "crate::serde_big::ratio")]
    pub upper: BigRational,
    pub upper_witness: UpperWitness,
    pub status: Status,
    #[serde(with = "crate::serde_big::ratio_opt")]
    pub value: Option<BigRational>,
    pub period: Option<PeriodGuess>,
    /// Whether the form realizing the upper bound was exactly verified.
    pub upper_certainty: Certainty,
}

/// Bracket and status from a computed sequence (planar bounds, n = 2).
pub fn bound_state(seq: &InitialSequence) -> Result<BoundState> {
    let values = seq.values();
    let (upper, m) = upper_bound(&values)?;
    // in the plane Chudnovsky coincides with EV at k = 1; it only wins if
    // strictly larger
    let mut lower = ev_lower_bound(values[0], 1, 2)?;
    let mut lower_witness = LowerWitness {
        k: 1,
        alpha_k: values[0],
        formula: LowerFormula::EsnaultViehweg,
    };
    for (i, &a) in values.iter().enumerate().skip(1) {
        let k = i as u32 + 1;
        let b = ev_lower_bound(a, k, 2)?;
        if b > lower {
            lower = b;
            lower_witness = LowerWitness {
                k,
                alpha_k: a,
                formula: LowerFormula::EsnaultViehweg,
            };
        }
    }
    let chud = chudnovsky_lower_bound(values[0], 2)?;
    if chud > lower {
        lower = chud;
        lower_witness = LowerWitness {
            k: 1,
            alpha_k: values[0],
            formula: LowerFormula::Chudnovsky,
        };
    }
    let upper_certainty = seq.entries[m as usize - 1].certainty;
    let upper_witness = UpperWitness {
        m,
        alpha_m: values[m as usize - 1],
    };
    if lower > upper {
        return Err(WaldError::Validation {
            name: seq.label.clone(),
            reason: format!("lower bound {lower} exceeds upper bound {upper}"),
        });
    }
    let period = detect_period(&seq.first_differences());
    let (status, value) = if lower == upper {
        (Status::ExactCertified, Some(upper.clone()))
    } else if let Some(g) = period
        .as_ref()
        .filter(|g| plausible(g, &lower, &upper, values.len()))
    {
        (Status::PeriodConjectured, Some(g.mean()))
    } else {
        (Status::BoundedOnly, None)
    };
    Ok(BoundState {
        lower,
        lower_witness,
        upper,
        upper_witness,
        status,
        value,
        period,
        upper_certainty,
    })
}

/// Period mean inside the bracket, and the extrapolated sequence (to four
/// times the window) still strictly increasing and subadditive.
fn plausible(g: &PeriodGuess, lower: &BigRational, upper: &BigRational, horizon: usize) -> bool {
    let mean = g.mean();
    if mean < *lower || mean > *upper {
        return false;
    }
    let mut acc = 0;
    let values: Vec<u32> = g
        .extend(4 * horizon)
        .into_iter()
        .map(|d| {
            acc += d;
            acc
        })
        .collect();
    sequence_violations(&values).is_empty()
}

/// Computes α(I^(1..=M)) and brackets α̂. A heuristic term that realizes the
/// upper bound is re-established in certified mode before it is used.
pub fn certify(
    engine: &Engine,
    z: &Config,
    horizon: u32,
    policy: ModePolicy,
) -> Result<(InitialSequence, BoundState)> {
    if horizon < 2 {
        return Err(WaldError::Parameter("horizon must be at least 2".into()));
    }
    let mut seq = engine.initial_sequence(z, horizon, policy)?;
    loop {
        let state = bound_state(&seq)?;
        if state.upper_certainty == Certainty::Certified {
            return Ok((seq, state));
        }
        let m = state.upper_witness.m;
        let entry = &mut seq.entries[m as usize - 1];
        let at = engine.system_dimension(z, m, entry.alpha, Mode::Certified)?;
        if at.dim == 0 {
            return Err(WaldError::Inconclusive(format!(
                "modular consensus for alpha({m}) = {} is not confirmed by exact verification",
                entry.alpha
            )));
        }
        entry.certainty = at.certainty;
        entry.at = at;
    }
}
