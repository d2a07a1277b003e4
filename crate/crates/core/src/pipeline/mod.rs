//! End-to-end campaign run: extract → qgen → score → analytics → integrity.
//!
//! Per-applicant stages run in parallel; results are collected in campaign
//! order so every output is a pure function of the inputs and config.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;
use thiserror::Error;

use crate::claimex::{Claim, ClaimExtractor, Gazetteer};
use crate::corpus::{
    completion_rate, load_applications, load_jobs, validate_campaign, Campaign, CampaignLedger,
    JobDomain,
};
use crate::integrity::{self, compute_metrics, cross_homogeneity, detect_flags, FlagSubject, IntegrityFlag, IntegrityMetrics};
use crate::qgen::{generate_questions, TemplatePack, VerificationQuestion};
use crate::roi::{RoiResult, RoiRow};
use crate::score::{aggregate_stats, build_matrix, EvidenceScorer, LexicalRubric, ScoreCard, ScoreNotice};

mod config;
mod report;

pub use config::{CapabilityLevel, IntegrityConfig, Paths, PipelineConfig, SEED_ENV};
pub use report::{emit_reports, inspect_applicant, render_matrix_text, CampaignReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Load,
    Extract,
    Qgen,
    Score,
    Analytics,
    Integrity,
    Emit,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Load => "load",
            Stage::Extract => "extract",
            Stage::Qgen => "qgen",
            Stage::Score => "score",
            Stage::Analytics => "analytics",
            Stage::Integrity => "integrity",
            Stage::Emit => "emit",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Config,
    Io,
}

#[derive(Debug, Clone, Error)]
#[error("{stage} stage failed: {message}")]
pub struct PipelineError {
    pub stage: Stage,
    pub kind: ErrorKind,
    pub message: String,
}

impl PipelineError {
    pub fn new(stage: Stage, kind: ErrorKind, message: impl Into<String>) -> Self {
        Self {
            stage,
            kind,
            message: message.into(),
        }
    }

    /// Process exit code: 2 input, 3 configuration, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self.kind {
            ErrorKind::Input => 2,
            ErrorKind::Config => 3,
            ErrorKind::Io => 4,
        }
    }
}

/// Gazetteer and template pack a run uses.
#[derive(Debug, Clone)]
pub struct Resources {
    pub gazetteer: Gazetteer,
    pub templates: TemplatePack,
}

impl Resources {
    pub fn builtin() -> Self {
        Self {
            gazetteer: Gazetteer::builtin(),
            templates: TemplatePack::builtin(),
        }
    }

    pub fn load(config: &PipelineConfig) -> Result<Self, PipelineError> {
        let gazetteer = match &config.paths.gazetteer_dir {
            Some(dir) => Gazetteer::from_dir(config.resolve(dir))
                .map_err(|e| PipelineError::new(Stage::Load, ErrorKind::Io, e.to_string()))?,
            None => Gazetteer::builtin(),
        };
        let templates = match &config.paths.templates {
            Some(p) => TemplatePack::from_file(config.resolve(p))
                .map_err(|e| PipelineError::new(Stage::Load, ErrorKind::Config, e.to_string()))?,
            None => TemplatePack::builtin(),
        };
        Ok(Self {
            gazetteer,
            templates,
        })
    }
}

/// Everything the run learned about one applicant.
#[derive(Debug, Clone)]
pub struct ApplicantResult {
    pub applicant_id: String,
    pub job_id: String,
    pub domain: JobDomain,
    pub completed: bool,
    pub claims: Vec<Claim>,
    pub questions: Vec<VerificationQuestion>,
    pub card: Option<ScoreCard>,
    pub notice: Option<ScoreNotice>,
    pub metrics: Option<IntegrityMetrics>,
    pub flags: Vec<IntegrityFlag>,
}

#[derive(Debug, Clone)]
pub struct CampaignRun {
    pub report: CampaignReport,
    pub applicants: Vec<ApplicantResult>,
}

pub fn load_campaign(config: &PipelineConfig) -> Result<Campaign, PipelineError> {
    let jobs_path = config.resolve(&config.paths.jobs);
    let apps_path = config.resolve(&config.paths.applications);
    let kind_of = |e: &crate::corpus::CorpusError| match e {
        crate::corpus::CorpusError::Io { .. } => ErrorKind::Io,
        _ => ErrorKind::Input,
    };
    let jobs = load_jobs(&jobs_path)
        .map_err(|e| PipelineError::new(Stage::Load, kind_of(&e), e.to_string()))?;
    let apps = load_applications(&apps_path)
        .map_err(|e| PipelineError::new(Stage::Load, kind_of(&e), e.to_string()))?;
    validate_campaign(jobs, apps).map_err(|errs| {
        let msg = errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
        PipelineError::new(Stage::Load, ErrorKind::Input, msg)
    })
}

/// Load inputs named by the config and analyze them.
pub fn analyze(config: &PipelineConfig) -> Result<CampaignRun, PipelineError> {
    config.validate()?;
    let resources = Resources::load(config)?;
    let campaign = load_campaign(config)?;
    analyze_campaign(&campaign, &resources, config)
}

/// Analyze an already validated campaign. Performs no I/O.
pub fn analyze_campaign(
    campaign: &Campaign,
    resources: &Resources,
    config: &PipelineConfig,
) -> Result<CampaignRun, PipelineError> {
    analyze_with_scorer(campaign, resources, config, &LexicalRubric)
}

pub fn analyze_with_scorer(
    campaign: &Campaign,
    resources: &Resources,
    config: &PipelineConfig,
    scorer: &dyn EvidenceScorer,
) -> Result<CampaignRun, PipelineError> {
    let apps = campaign.applications();

    // extract
    let mut results: Vec<ApplicantResult> = apps
        .par_iter()
        .map(|app| {
            let job = campaign.job(&app.job_id).expect("validated campaign");
            let extractor =
                ClaimExtractor::new(&resources.gazetteer).with_required_skills(&job.required_skills);
            ApplicantResult {
                applicant_id: app.applicant_id.clone(),
                job_id: app.job_id.clone(),
                domain: job.domain,
                completed: app.completed,
                claims: extractor.extract(&app.applicant_id, &app.resume_text),
                questions: Vec::new(),
                card: None,
                notice: None,
                metrics: None,
                flags: Vec::new(),
            }
        })
        .collect();

    // qgen
    let cap = config.max_questions_per_applicant;
    let questions: Vec<_> = results
        .par_iter()
        .map(|r| generate_questions(&r.claims, config.session_seed, &resources.templates, cap))
        .collect::<Result<_, _>>()
        .map_err(|e| PipelineError::new(Stage::Qgen, ErrorKind::Config, e.to_string()))?;
    for (r, qs) in results.iter_mut().zip(questions) {
        r.questions = qs;
    }

    // score: completed applications only; validity over the questioned claims
    results.par_iter_mut().zip(apps.par_iter()).for_each(|(r, app)| {
        if !app.completed {
            return;
        }
        let job = campaign.job(&app.job_id).expect("validated campaign");
        let asked = &r.claims[..r.claims.len().min(cap)];
        let validity = scorer.claim_validity(asked, &app.responses);
        let fit = scorer.job_fit(&r.claims, job);
        r.notice = validity.notice;
        r.card = Some(ScoreCard::new(app.applicant_id.clone(), validity.value, fit));
    });

    // analytics
    let cards: Vec<ScoreCard> = results.iter().filter_map(|r| r.card.clone()).collect();
    let diamonds: Vec<String> = cards
        .iter()
        .filter(|c| c.diamond)
        .map(|c| c.applicant_id.clone())
        .collect();
    let n_total = apps.len() as u64;
    let n_completed = campaign.n_completed();
    let n_diamonds = diamonds.len() as u64;
    let n_reviewed = config.reviewed_override.unwrap_or(n_diamonds);
    let ledger = CampaignLedger::new(n_total, n_completed, n_reviewed, n_diamonds)
        .map_err(|e| PipelineError::new(Stage::Analytics, ErrorKind::Config, e.to_string()))?;
    let matrix = build_matrix(&cards);
    let stats = aggregate_stats(&cards).ok();
    let mut by_domain: BTreeMap<JobDomain, Vec<ScoreCard>> = BTreeMap::new();
    for r in &results {
        if let Some(c) = &r.card {
            by_domain.entry(r.domain).or_default().push(c.clone());
        }
    }
    let domain_stats = by_domain
        .into_iter()
        .filter_map(|(d, cs)| aggregate_stats(&cs).ok().map(|s| (d, s)))
        .collect();

    let (roi, roi_row) = if config.capability_level.has_roi() {
        let roi_err = |e: crate::roi::RoiError| {
            PipelineError::new(Stage::Analytics, ErrorKind::Config, e.to_string())
        };
        let result = RoiResult::compute(n_total, n_reviewed, &config.roi_params, config.rounding_mode)
            .map_err(roi_err)?;
        let row = RoiRow::compute(n_total, n_reviewed, &config.roi_params, config.rounding_mode)
            .map_err(roi_err)?;
        (Some(result), Some(row))
    } else {
        (None, None)
    };

    // integrity
    let (flags, flag_rate, diamond_flag_share) = if config.capability_level.has_integrity() {
        run_integrity(&mut results, campaign, config)?;
        let flags: Vec<IntegrityFlag> = results.iter().flat_map(|r| r.flags.clone()).collect();
        let rate = integrity::flag_rate(&flags, &ledger).ok().map(|r| r.percent_display());
        let flagged: BTreeSet<&str> = flags.iter().map(|f| f.applicant_id.as_str()).collect();
        let share = crate::corpus::Rate::new(
            diamonds.iter().filter(|d| flagged.contains(d.as_str())).count() as u64,
            n_diamonds,
        )
        .ok()
        .map(|r| r.percent_display());
        (Some(flags), rate, share)
    } else {
        (None, None, None)
    };

    let report = CampaignReport {
        ledger,
        completion_rate: completion_rate(&ledger).ok().map(|r| r.percent_display()),
        stats,
        domain_stats,
        matrix,
        diamonds,
        scorecards: cards,
        roi,
        roi_row,
        flags,
        flag_rate,
        diamond_flag_share,
        config_echo: config.clone(),
    };
    Ok(CampaignRun {
        report,
        applicants: results,
    })
}

fn snippet(texts: &[&str]) -> String {
    let first = texts.iter().find(|t| !t.trim().is_empty()).copied().unwrap_or("");
    let mut s: String = first.split_whitespace().collect::<Vec<_>>().join(" ");
    if s.chars().count() > 80 {
        s = s.chars().take(77).collect::<String>() + "...";
    }
    s
}

fn run_integrity(
    results: &mut [ApplicantResult],
    campaign: &Campaign,
    config: &PipelineConfig,
) -> Result<(), PipelineError> {
    let apps = campaign.applications();
    let answers: Vec<Vec<&str>> = apps
        .iter()
        .map(|a| a.responses.iter().map(|r| r.answer_text.as_str()).collect())
        .collect();
    let params = config.integrity.metric_params();

    let computed: Vec<Option<IntegrityMetrics>> = answers
        .par_iter()
        .enumerate()
        .map(|(i, own)| {
            if own.is_empty() {
                return Ok(None);
            }
            let mut m = compute_metrics(own, params)?;
            if config.integrity.cross_applicant {
                let others: Vec<&str> = answers
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .flat_map(|(_, a)| a.iter().copied())
                    .collect();
                m.homogeneity = m.homogeneity.max(cross_homogeneity(own, &others));
            }
            Ok(Some(m))
        })
        .collect::<Result<_, integrity::IntegrityError>>()
        .map_err(|e| PipelineError::new(Stage::Integrity, ErrorKind::Config, e.to_string()))?;

    for ((r, m), own) in results.iter_mut().zip(computed).zip(&answers) {
        if let Some(m) = &m {
            let subject = FlagSubject {
                applicant_id: r.applicant_id.clone(),
                snippet: snippet(own),
            };
            r.flags = detect_flags(&subject, m, &config.profile(r.domain));
        }
        r.metrics = m;
    }
    Ok(())
}

/// Analyze and write every report file into the configured output
/// directory.
pub fn run_pipeline(config: &PipelineConfig) -> Result<(CampaignRun, Vec<PathBuf>), PipelineError> {
    let run = analyze(config)?;
    let files = emit_reports(&run, &config.out_dir())?;
    Ok((run, files))
}
