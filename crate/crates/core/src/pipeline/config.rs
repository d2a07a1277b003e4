use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{ErrorKind, PipelineError, Stage};
use crate::corpus::JobDomain;
use crate::integrity::{default_profiles, MetricParams, ThresholdProfile, DEFAULT_NGRAM, DEFAULT_WINDOW};
use crate::qgen::DEFAULT_QUESTION_CAP;
use crate::roi::{RoiParams, RoundingMode};

pub const SEED_ENV: &str = "CLAIMGATE_SEED";

/// Which stages run. Each level adds outputs on top of the previous one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CapabilityLevel {
    /// Extraction, question generation, scoring.
    #[serde(alias = "v0.9", alias = "0.9")]
    V09,
    /// Adds ROI analytics.
    #[serde(alias = "v1.0", alias = "1.0")]
    V10,
    /// Adds integrity detection.
    #[serde(alias = "v1.1", alias = "1.1")]
    V11,
}

impl CapabilityLevel {
    pub fn has_roi(self) -> bool {
        self >= CapabilityLevel::V10
    }

    pub fn has_integrity(self) -> bool {
        self >= CapabilityLevel::V11
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Paths {
    pub jobs: PathBuf,
    pub applications: PathBuf,
    pub out_dir: PathBuf,
    /// Template pack; the bundled pack is used when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub templates: Option<PathBuf>,
    /// Directory with `skills.txt`, `credentials.txt`, `outcome_verbs.txt`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gazetteer_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct IntegrityConfig {
    pub ngram: usize,
    pub window: usize,
    /// Also compare each applicant's responses with every other applicant's.
    pub cross_applicant: bool,
}

impl Default for IntegrityConfig {
    fn default() -> Self {
        Self {
            ngram: DEFAULT_NGRAM,
            window: DEFAULT_WINDOW,
            cross_applicant: false,
        }
    }
}

impl IntegrityConfig {
    pub fn metric_params(&self) -> MetricParams {
        MetricParams {
            ngram: self.ngram,
            window: self.window,
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_QUESTION_CAP
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub capability_level: CapabilityLevel,
    pub session_seed: u64,
    #[serde(rename = "roi", default)]
    pub roi_params: RoiParams,
    #[serde(default)]
    pub rounding_mode: RoundingMode,
    /// Overrides for individual domains; the rest use bundled defaults.
    #[serde(rename = "thresholds", default)]
    pub threshold_profiles: BTreeMap<JobDomain, ThresholdProfile>,
    pub paths: Paths,
    #[serde(default = "default_cap")]
    pub max_questions_per_applicant: usize,
    /// Number of candidates forwarded to human review; defaults to the
    /// diamond count.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reviewed_override: Option<u64>,
    #[serde(default)]
    pub integrity: IntegrityConfig,
    /// Directory relative paths are resolved against.
    #[serde(skip)]
    pub base_dir: Option<PathBuf>,
}

impl PipelineConfig {
    pub fn new(capability_level: CapabilityLevel, session_seed: u64, paths: Paths) -> Self {
        Self {
            capability_level,
            session_seed,
            roi_params: RoiParams::default(),
            rounding_mode: RoundingMode::default(),
            threshold_profiles: BTreeMap::new(),
            paths,
            max_questions_per_applicant: DEFAULT_QUESTION_CAP,
            reviewed_override: None,
            integrity: IntegrityConfig::default(),
            base_dir: None,
        }
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let path = path.as_ref();
        let body = fs::read_to_string(path).map_err(|e| {
            PipelineError::new(
                Stage::Load,
                ErrorKind::Io,
                format!("cannot read config {}: {e}", path.display()),
            )
        })?;
        let mut config: Self = serde_json::from_str(&body).map_err(|e| {
            PipelineError::new(
                Stage::Load,
                ErrorKind::Config,
                format!("invalid config {}: {e}", path.display()),
            )
        })?;
        config.base_dir = path.parent().map(Path::to_path_buf);
        config.validate()?;
        Ok(config)
    }

    /// Apply a seed override (the value of `CLAIMGATE_SEED`, if set).
    pub fn apply_seed_override(&mut self, value: Option<&str>) -> Result<(), PipelineError> {
        if let Some(v) = value {
            self.session_seed = v.trim().parse().map_err(|_| {
                PipelineError::new(
                    Stage::Load,
                    ErrorKind::Config,
                    format!("{SEED_ENV} must be an unsigned integer, got `{v}`"),
                )
            })?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let config_err = |m: String| PipelineError::new(Stage::Load, ErrorKind::Config, m);
        self.roi_params
            .validate()
            .map_err(|e| config_err(e.to_string()))?;
        for (domain, p) in &self.threshold_profiles {
            if p.domain != *domain {
                return Err(config_err(format!(
                    "threshold profile keyed {domain} declares domain {}",
                    p.domain
                )));
            }
            p.validate().map_err(|e| config_err(e.to_string()))?;
        }
        if self.integrity.window < 2 || self.integrity.ngram == 0 {
            return Err(config_err(
                "integrity window must be >= 2 and ngram >= 1".into(),
            ));
        }
        Ok(())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        match &self.base_dir {
            Some(base) if p.is_relative() => base.join(p),
            _ => p.to_path_buf(),
        }
    }

    pub fn out_dir(&self) -> PathBuf {
        self.resolve(&self.paths.out_dir)
    }

    pub fn profile(&self, domain: JobDomain) -> ThresholdProfile {
        self.threshold_profiles
            .get(&domain)
            .cloned()
            .unwrap_or_else(|| ThresholdProfile::default_for(domain))
    }

    /// The complete profile map in effect (defaults plus overrides).
    pub fn effective_profiles(&self) -> BTreeMap<JobDomain, ThresholdProfile> {
        let mut all = default_profiles();
        all.extend(self.threshold_profiles.clone());
        all
    }
}
