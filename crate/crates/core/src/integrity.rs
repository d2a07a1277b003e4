//! Linguistic-authenticity metrics and categorical integrity flags.
//!
//! Metrics are computed per applicant over their responses. Flags are
//! reported alongside scores and never feed back into them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CampaignLedger, JobDomain, Rate, UndefinedRate};
use crate::text::statement_spans;

pub use crate::text::tokenize;

pub mod synthetic;

pub const DEFAULT_NGRAM: usize = 3;
pub const DEFAULT_WINDOW: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntegrityError {
    #[error("entropy window must be at least 2 tokens, got {0}")]
    Window(usize),
    #[error("n-gram size must be at least 1")]
    NgramSize,
    #[error("threshold profile for {domain}: {field} must be finite")]
    Threshold { domain: JobDomain, field: &'static str },
}

/// Shannon entropy in bits of the token frequency distribution.
pub fn shannon_entropy<T: AsRef<str>>(tokens: &[T]) -> f64 {
    entropy_of_counts(counts(tokens.iter().map(AsRef::as_ref)), tokens.len())
}

fn counts<K: Eq + Hash>(items: impl Iterator<Item = K>) -> Vec<usize> {
    let mut map: HashMap<K, usize> = HashMap::new();
    for it in items {
        *map.entry(it).or_default() += 1;
    }
    let mut v: Vec<usize> = map.into_values().collect();
    // fixed summation order keeps the result bit-identical across runs
    v.sort_unstable();
    v
}

fn entropy_of_counts(counts: Vec<usize>, total: usize) -> f64 {
    if total == 0 || counts.len() <= 1 {
        return 0.0;
    }
    // H = log2 n − Σ c·log2 c / n, exact for uniform counts
    let n = total as f64;
    let weighted: f64 = counts
        .into_iter()
        .filter(|&c| c > 1)
        .map(|c| c as f64 * (c as f64).log2())
        .sum();
    (n.log2() - weighted / n).max(0.0)
}

fn population_variance(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
}

/// Population variance of per-window entropies over consecutive,
/// non-overlapping windows; a trailing partial window is dropped.
pub fn windowed_entropy_variance<T: AsRef<str>>(
    tokens: &[T],
    window: usize,
) -> Result<f64, IntegrityError> {
    if window < 2 {
        return Err(IntegrityError::Window(window));
    }
    let entropies: Vec<f64> = tokens.chunks_exact(window).map(shannon_entropy).collect();
    if entropies.len() < 2 {
        return Ok(0.0);
    }
    Ok(population_variance(&entropies))
}

/// Token counts of each sentence, using the same boundary rule as claim
/// segmentation.
pub fn sentence_lengths(text: &str) -> Vec<usize> {
    statement_spans(text)
        .iter()
        .map(|s| tokenize(s.slice(text)).len())
        .collect()
}

/// Population variance of sentence lengths (in tokens).
pub fn burst_variance(text: &str) -> f64 {
    let lengths: Vec<f64> = sentence_lengths(text).into_iter().map(|n| n as f64).collect();
    if lengths.len() < 2 {
        return 0.0;
    }
    population_variance(&lengths)
}

/// `1 - distinct/total` over the token n-grams.
pub fn repetition_rate<T: AsRef<str>>(tokens: &[T], n: usize) -> Result<f64, IntegrityError> {
    if n == 0 {
        return Err(IntegrityError::NgramSize);
    }
    if tokens.len() < n {
        return Ok(0.0);
    }
    let grams: Vec<Vec<&str>> = tokens
        .windows(n)
        .map(|w| w.iter().map(AsRef::as_ref).collect())
        .collect();
    let total = grams.len();
    let distinct = grams.into_iter().collect::<HashSet<_>>().len();
    Ok(1.0 - distinct as f64 / total as f64)
}

/// Token trigram shingles; texts shorter than three tokens form a single
/// shingle of all their tokens.
fn shingles(text: &str) -> HashSet<Vec<String>> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        HashSet::new()
    } else if tokens.len() < DEFAULT_NGRAM {
        HashSet::from([tokens])
    } else {
        tokens.windows(DEFAULT_NGRAM).map(<[String]>::to_vec).collect()
    }
}

fn jaccard<T: Eq + Hash>(a: &HashSet<T>, b: &HashSet<T>) -> f64 {
    let union = a.union(b).count();
    if union == 0 {
        return 0.0;
    }
    a.intersection(b).count() as f64 / union as f64
}

/// Maximum pairwise Jaccard similarity of the responses' trigram sets.
pub fn homogeneity<T: AsRef<str>>(responses: &[T]) -> f64 {
    let sets: Vec<_> = responses.iter().map(|r| shingles(r.as_ref())).collect();
    max_pairwise(&sets, &sets, true)
}

/// Maximum Jaccard similarity between any response in `ours` and any in
/// `theirs`.
pub fn cross_homogeneity<T: AsRef<str>, U: AsRef<str>>(ours: &[T], theirs: &[U]) -> f64 {
    let a: Vec<_> = ours.iter().map(|r| shingles(r.as_ref())).collect();
    let b: Vec<_> = theirs.iter().map(|r| shingles(r.as_ref())).collect();
    max_pairwise(&a, &b, false)
}

fn max_pairwise(a: &[HashSet<Vec<String>>], b: &[HashSet<Vec<String>>], same: bool) -> f64 {
    let mut best = 0.0f64;
    for (i, x) in a.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for y in &b[start.min(b.len())..] {
            best = best.max(jaccard(x, y));
        }
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricParams {
    pub ngram: usize,
    pub window: usize,
}

impl Default for MetricParams {
    fn default() -> Self {
        Self {
            ngram: DEFAULT_NGRAM,
            window: DEFAULT_WINDOW,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrityMetrics {
    pub token_count: usize,
    pub sentence_count: usize,
    pub token_entropy: f64,
    pub entropy_variance: f64,
    pub burst_variance: f64,
    pub repetition_rate: f64,
    pub homogeneity: f64,
}

/// Metrics over one applicant's responses. Entropy, repetition and burst
/// variance are taken over the responses joined as one text; homogeneity
/// compares the responses with each other.
pub fn compute_metrics<T: AsRef<str>>(
    responses: &[T],
    params: MetricParams,
) -> Result<IntegrityMetrics, IntegrityError> {
    let joined = responses
        .iter()
        .map(AsRef::as_ref)
        .collect::<Vec<_>>()
        .join("\n");
    let tokens = tokenize(&joined);
    let lengths: Vec<f64> = sentence_lengths(&joined).into_iter().map(|n| n as f64).collect();
    Ok(IntegrityMetrics {
        token_count: tokens.len(),
        sentence_count: lengths.len(),
        token_entropy: shannon_entropy(&tokens),
        entropy_variance: windowed_entropy_variance(&tokens, params.window)?,
        burst_variance: if lengths.len() < 2 { 0.0 } else { population_variance(&lengths) },
        repetition_rate: repetition_rate(&tokens, params.ngram)?,
        homogeneity: homogeneity(responses),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FlagCategory {
    Repetition,
    EntropyCollapse,
    Homogeneity,
}

impl fmt::Display for FlagCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    Low,
    High,
}

/// The metric that crossed its threshold, with the values involved.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub metric: String,
    pub value: f64,
    pub threshold: f64,
    pub snippet: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntegrityFlag {
    pub category: FlagCategory,
    pub applicant_id: String,
    pub evidence: Evidence,
    pub severity: Severity,
}

/// One line of the flag log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlagLogEntry {
    pub applicant_id: String,
    pub category: FlagCategory,
    pub severity: Severity,
    pub metric: String,
    pub value: f64,
    pub threshold: f64,
}

impl From<&IntegrityFlag> for FlagLogEntry {
    fn from(f: &IntegrityFlag) -> Self {
        Self {
            applicant_id: f.applicant_id.clone(),
            category: f.category,
            severity: f.severity,
            metric: f.evidence.metric.clone(),
            value: f.evidence.value,
            threshold: f.evidence.threshold,
        }
    }
}

/// Per-domain flag thresholds.
///
/// `min_tokens` is the smallest response volume on which the entropy and
/// burst-variance checks are run; below it those statistics are dominated
/// by length rather than by style.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdProfile {
    pub domain: JobDomain,
    pub min_entropy: f64,
    pub max_repetition: f64,
    pub max_homogeneity: f64,
    pub min_burst_variance: f64,
    #[serde(default = "default_min_tokens")]
    pub min_tokens: usize,
}

fn default_min_tokens() -> usize {
    40
}

pub const PROFILE_VERSION: &str = "2026-10-1";

impl ThresholdProfile {
    pub fn validate(&self) -> Result<(), IntegrityError> {
        for (field, v) in [
            ("min_entropy", self.min_entropy),
            ("max_repetition", self.max_repetition),
            ("max_homogeneity", self.max_homogeneity),
            ("min_burst_variance", self.min_burst_variance),
        ] {
            if !v.is_finite() {
                return Err(IntegrityError::Threshold {
                    domain: self.domain,
                    field,
                });
            }
        }
        Ok(())
    }

    /// Shipped default for a domain, from `data/thresholds.json`.
    pub fn default_for(domain: JobDomain) -> Self {
        default_profiles()
            .remove(&domain)
            .expect("bundled profiles cover every domain")
    }
}

#[derive(Deserialize)]
struct ProfileFile {
    #[allow(dead_code)]
    version: String,
    profiles: BTreeMap<JobDomain, ThresholdProfile>,
}

/// The bundled, versioned threshold profiles, one per domain.
pub fn default_profiles() -> BTreeMap<JobDomain, ThresholdProfile> {
    let file: ProfileFile = serde_json::from_str(include_str!("../data/thresholds.json"))
        .expect("bundled thresholds parse");
    file.profiles
}

/// Who a flag is about, and a short excerpt to show with it.
#[derive(Debug, Clone, Default)]
pub struct FlagSubject {
    pub applicant_id: String,
    pub snippet: String,
}

fn upper_severity(value: f64, threshold: f64) -> Severity {
    if value >= threshold * 1.5 {
        Severity::High
    } else {
        Severity::Low
    }
}

fn lower_severity(value: f64, threshold: f64) -> Severity {
    if value <= threshold * 0.5 {
        Severity::High
    } else {
        Severity::Low
    }
}

/// Compare metrics with a profile. Flags come out in the order
/// EntropyCollapse, Repetition, Homogeneity. Severity is High when the
/// value is past its threshold by at least half the threshold.
pub fn detect_flags(
    subject: &FlagSubject,
    metrics: &IntegrityMetrics,
    profile: &ThresholdProfile,
) -> Vec<IntegrityFlag> {
    let flag = |category, metric: &str, value: f64, threshold: f64, severity| IntegrityFlag {
        category,
        applicant_id: subject.applicant_id.clone(),
        evidence: Evidence {
            metric: metric.to_string(),
            value,
            threshold,
            snippet: subject.snippet.clone(),
        },
        severity,
    };
    let mut flags = Vec::new();

    let enough_text = metrics.token_count >= profile.min_tokens;
    if enough_text && metrics.token_entropy < profile.min_entropy {
        flags.push(flag(
            FlagCategory::EntropyCollapse,
            "token_entropy",
            metrics.token_entropy,
            profile.min_entropy,
            lower_severity(metrics.token_entropy, profile.min_entropy),
        ));
    } else if enough_text
        && metrics.sentence_count >= 2
        && metrics.burst_variance < profile.min_burst_variance
    {
        flags.push(flag(
            FlagCategory::EntropyCollapse,
            "burst_variance",
            metrics.burst_variance,
            profile.min_burst_variance,
            lower_severity(metrics.burst_variance, profile.min_burst_variance),
        ));
    }
    if metrics.repetition_rate > profile.max_repetition {
        flags.push(flag(
            FlagCategory::Repetition,
            "repetition_rate",
            metrics.repetition_rate,
            profile.max_repetition,
            upper_severity(metrics.repetition_rate, profile.max_repetition),
        ));
    }
    if metrics.homogeneity > profile.max_homogeneity {
        flags.push(flag(
            FlagCategory::Homogeneity,
            "homogeneity",
            metrics.homogeneity,
            profile.max_homogeneity,
            upper_severity(metrics.homogeneity, profile.max_homogeneity),
        ));
    }
    flags
}

/// Share of applicants with at least one flag.
pub fn flag_rate(flags: &[IntegrityFlag], ledger: &CampaignLedger) -> Result<Rate, UndefinedRate> {
    let distinct: HashSet<&str> = flags.iter().map(|f| f.applicant_id.as_str()).collect();
    Rate::new(distinct.len() as u64, ledger.n_total())
}
