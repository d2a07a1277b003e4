//! Claim Validity and Job Fit scoring, the Diamond predicate, the
//! Cross-Validation Matrix and per-campaign score statistics.
//!
//! The scorer is pluggable ([`EvidenceScorer`]); everything downstream of
//! a [`ScoreCard`] is independent of how the two scores were produced.

use num_rational::Ratio;
use rust_decimal::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::claimex::{extract_quantities, Claim, Term};
use crate::corpus::{JobSpec, ResponseRecord};
use crate::qgen::question_id;
use crate::text::tokenize;

pub const MAX_SCORE: f64 = 5.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreCard {
    pub applicant_id: String,
    pub claim_validity: f64,
    pub job_fit: f64,
    pub diamond: bool,
}

impl ScoreCard {
    /// Builds a card with scores clamped to `[0, 5]` and the Diamond flag
    /// derived from them.
    pub fn new(applicant_id: impl Into<String>, claim_validity: f64, job_fit: f64) -> Self {
        let claim_validity = claim_validity.clamp(0.0, MAX_SCORE);
        let job_fit = job_fit.clamp(0.0, MAX_SCORE);
        Self {
            applicant_id: applicant_id.into(),
            claim_validity,
            job_fit,
            diamond: is_diamond_scores(claim_validity, job_fit),
        }
    }
}

/// Cross-validated: Claim Validity strictly above 4 and Job Fit exactly 5.
pub fn is_diamond(card: &ScoreCard) -> bool {
    is_diamond_scores(card.claim_validity, card.job_fit)
}

fn is_diamond_scores(claim_validity: f64, job_fit: f64) -> bool {
    claim_validity > 4.0 && job_fit == 5.0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScoreNotice {
    NoClaims,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidityScore {
    pub value: f64,
    pub notice: Option<ScoreNotice>,
}

/// Produces the two quantitative axes for one applicant.
pub trait EvidenceScorer: Send + Sync {
    fn claim_validity(&self, claims: &[Claim], responses: &[ResponseRecord]) -> ValidityScore;
    fn job_fit(&self, claims: &[Claim], job: &JobSpec) -> f64;
}

/// Deterministic lexical rubric.
///
/// Per answered claim: 2 points if the answer repeats one of the claim's
/// quantities, 1 point per claim entity mentioned (at most 2), 1 point if
/// the answer has at least 20 tokens. Unanswered claims score 0. The
/// validity score is the mean over claims.
#[derive(Debug, Clone, Copy, Default)]
pub struct LexicalRubric;

pub const QUANTITY_ECHO_POINTS: u32 = 2;
pub const ENTITY_POINT_CAP: u32 = 2;
pub const MIN_DETAILED_TOKENS: usize = 20;

impl LexicalRubric {
    /// Rubric points (0..=5) one answer earns for one claim.
    pub fn evidence_points(claim: &Claim, answer: &str) -> u32 {
        let tokens = tokenize(answer);
        let answer_quantities = extract_quantities(answer);
        let echo = claim
            .quantities
            .iter()
            .any(|cq| answer_quantities.iter().any(|aq| cq.echoes(aq)));
        let entity_hits = claim
            .entities
            .iter()
            .filter_map(|e| Term::new(e))
            .filter(|t| t.occurs_in(&tokens))
            .count() as u32;
        let mut points = if echo { QUANTITY_ECHO_POINTS } else { 0 };
        points += entity_hits.min(ENTITY_POINT_CAP);
        if tokens.len() >= MIN_DETAILED_TOKENS {
            points += 1;
        }
        points
    }

    /// Best points any response earns for the claim. A response answers a
    /// claim when its question id is the one generated for that claim under
    /// the response's own session seed.
    pub fn claim_points(claim: &Claim, responses: &[ResponseRecord]) -> u32 {
        responses
            .iter()
            .filter(|r| r.question_id == question_id(&claim.claim_id, r.session_seed))
            .map(|r| Self::evidence_points(claim, &r.answer_text))
            .max()
            .unwrap_or(0)
    }
}

impl EvidenceScorer for LexicalRubric {
    fn claim_validity(&self, claims: &[Claim], responses: &[ResponseRecord]) -> ValidityScore {
        if claims.is_empty() {
            return ValidityScore {
                value: 0.0,
                notice: Some(ScoreNotice::NoClaims),
            };
        }
        let total: u32 = claims.iter().map(|c| Self::claim_points(c, responses)).sum();
        let value = (f64::from(total) / claims.len() as f64).clamp(0.0, MAX_SCORE);
        ValidityScore {
            value,
            notice: None,
        }
    }

    fn job_fit(&self, claims: &[Claim], job: &JobSpec) -> f64 {
        score_job_fit(claims, job)
    }
}

pub fn score_claim_validity(claims: &[Claim], responses: &[ResponseRecord]) -> ValidityScore {
    LexicalRubric.claim_validity(claims, responses)
}

/// `5 × matched / required`, rounded half-up to one decimal. A skill
/// matches when a claim lists it as an entity or its text contains it
/// (case-insensitive).
pub fn score_job_fit(claims: &[Claim], job: &JobSpec) -> f64 {
    let required: Vec<String> = job
        .required_skills
        .iter()
        .map(|s| s.trim().to_lowercase())
        .filter(|s| !s.is_empty())
        .collect();
    if required.is_empty() {
        return 0.0;
    }
    let lowered: Vec<String> = claims.iter().map(|c| c.text.to_lowercase()).collect();
    let matched = required
        .iter()
        .filter(|skill| {
            claims.iter().zip(&lowered).any(|(c, text)| {
                text.contains(skill.as_str()) || c.entities.iter().any(|e| e == *skill)
            })
        })
        .count();
    let tenths = round_half_up(Ratio::new(50 * matched as i64, required.len() as i64));
    tenths as f64 / 10.0
}

fn round_half_up(r: Ratio<i64>) -> i64 {
    (r + Ratio::new(1, 2)).floor().to_integer()
}

/// Counts over floor-binned (Claim Validity, Job Fit), bins 0..=5 each.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossValidationMatrix {
    /// `cells[validity_bin][fit_bin]`
    pub cells: [[u64; 6]; 6],
}

pub fn score_bin(score: f64) -> usize {
    if score.is_nan() || score <= 0.0 {
        0
    } else {
        (score.floor() as usize).min(5)
    }
}

impl CrossValidationMatrix {
    pub fn total(&self) -> u64 {
        self.cells.iter().flatten().sum()
    }

    pub fn get(&self, validity_bin: usize, fit_bin: usize) -> u64 {
        self.cells[validity_bin][fit_bin]
    }

    /// Column of cards whose Job Fit landed in bin `fit_bin`.
    pub fn fit_column_total(&self, fit_bin: usize) -> u64 {
        self.cells.iter().map(|row| row[fit_bin]).sum()
    }

    /// Cells that can hold diamonds: validity bins 4 and 5, fit bin 5.
    pub fn diamond_region_total(&self) -> u64 {
        self.cells[4][5] + self.cells[5][5]
    }
}

pub fn build_matrix(cards: &[ScoreCard]) -> CrossValidationMatrix {
    let mut m = CrossValidationMatrix::default();
    for c in cards {
        m.cells[score_bin(c.claim_validity)][score_bin(c.job_fit)] += 1;
    }
    m
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainStats {
    pub mean_cv: f64,
    pub std_cv: f64,
    pub mean_jf: f64,
    pub std_jf: f64,
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("statistics are undefined for zero score cards")]
pub struct EmptyStats;

/// Mean and population standard deviation per axis, rounded half-up to two
/// decimals.
pub fn aggregate_stats(cards: &[ScoreCard]) -> Result<DomainStats, EmptyStats> {
    if cards.is_empty() {
        return Err(EmptyStats);
    }
    let (mean_cv, std_cv) = mean_and_population_std(cards.iter().map(|c| c.claim_validity));
    let (mean_jf, std_jf) = mean_and_population_std(cards.iter().map(|c| c.job_fit));
    Ok(DomainStats {
        mean_cv: round2(mean_cv),
        std_cv: round2(std_cv),
        mean_jf: round2(mean_jf),
        std_jf: round2(std_jf),
        n: cards.len(),
    })
}

fn mean_and_population_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

// Rounds the shortest decimal representation of `x`, so 2.675 -> 2.68.
fn round2(x: f64) -> f64 {
    Decimal::from_str(&x.to_string())
        .ok()
        .map(|d| {
            d.round_dp_with_strategy(2, RoundingStrategy::MidpointAwayFromZero)
                .to_f64()
                .unwrap_or(x)
        })
        .unwrap_or(x)
}
