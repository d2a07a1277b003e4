//! Campaign data model: jobs, applications and responses, JSONL ingestion,
//! referential validation, and the campaign ledger counts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Job family a posting belongs to. Threshold profiles are keyed by it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum JobDomain {
    InternationalSales,
    DomesticSales,
    CreativeDesign,
    Marketing,
    Software,
    Hardware,
    Other,
}

impl JobDomain {
    pub const ALL: [JobDomain; 7] = [
        JobDomain::InternationalSales,
        JobDomain::DomesticSales,
        JobDomain::CreativeDesign,
        JobDomain::Marketing,
        JobDomain::Software,
        JobDomain::Hardware,
        JobDomain::Other,
    ];
}

impl fmt::Display for JobDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub job_id: String,
    pub title: String,
    pub domain: JobDomain,
    pub required_skills: Vec<String>,
    pub description: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResponseRecord {
    pub question_id: String,
    pub answer_text: String,
    pub session_seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApplicationRecord {
    pub applicant_id: String,
    pub job_id: String,
    pub resume_text: String,
    pub responses: Vec<ResponseRecord>,
    pub completed: bool,
}

/// Per-campaign counts that feed completion and ROI figures.
///
/// Construction enforces `diamonds <= reviewed <= completed <= total`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignLedger {
    #[serde(rename = "N_total")]
    n_total: u64,
    n_completed: u64,
    n_reviewed: u64,
    n_diamonds: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LedgerError {
    #[error("ledger ordering violated: diamonds={diamonds} reviewed={reviewed} completed={completed} total={total}")]
    Ordering {
        total: u64,
        completed: u64,
        reviewed: u64,
        diamonds: u64,
    },
}

impl CampaignLedger {
    pub fn new(
        n_total: u64,
        n_completed: u64,
        n_reviewed: u64,
        n_diamonds: u64,
    ) -> Result<Self, LedgerError> {
        if n_diamonds <= n_reviewed && n_reviewed <= n_completed && n_completed <= n_total {
            Ok(Self {
                n_total,
                n_completed,
                n_reviewed,
                n_diamonds,
            })
        } else {
            Err(LedgerError::Ordering {
                total: n_total,
                completed: n_completed,
                reviewed: n_reviewed,
                diamonds: n_diamonds,
            })
        }
    }

    /// Ledger for a campaign where only completion counts are known.
    pub fn with_completion(n_total: u64, n_completed: u64) -> Result<Self, LedgerError> {
        Self::new(n_total, n_completed, 0, 0)
    }

    pub fn n_total(&self) -> u64 {
        self.n_total
    }
    pub fn n_completed(&self) -> u64 {
        self.n_completed
    }
    pub fn n_reviewed(&self) -> u64 {
        self.n_reviewed
    }
    pub fn n_diamonds(&self) -> u64 {
        self.n_diamonds
    }
}

/// An exact fraction `numerator / denominator` with `denominator > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rate {
    pub numerator: u64,
    pub denominator: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("rate is undefined for an empty campaign (N_total = 0)")]
pub struct UndefinedRate;

impl Rate {
    pub fn new(numerator: u64, denominator: u64) -> Result<Self, UndefinedRate> {
        if denominator == 0 {
            return Err(UndefinedRate);
        }
        Ok(Self {
            numerator,
            denominator,
        })
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / self.denominator as f64
    }

    /// The fraction scaled by `10^decimals`, rounded half-up, as an integer.
    pub fn scaled_half_up(&self, decimals: u32) -> u128 {
        let scale = 10u128.pow(decimals);
        let num = self.numerator as u128 * scale;
        let den = self.denominator as u128;
        (2 * num + den) / (2 * den)
    }

    /// Fraction rounded half-up to `decimals` places, e.g. `0.256`.
    pub fn rounded(&self, decimals: u32) -> f64 {
        self.scaled_half_up(decimals) as f64 / 10f64.powi(decimals as i32)
    }

    /// Percentage rounded half-up to one decimal, e.g. `"25.6%"`.
    pub fn percent_display(&self) -> String {
        let tenths = self.scaled_half_up(3);
        format!("{}.{}%", tenths / 10, tenths % 10)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.percent_display())
    }
}

/// Fraction of applicants that finished the verification Q&A.
pub fn completion_rate(ledger: &CampaignLedger) -> Result<Rate, UndefinedRate> {
    Rate::new(ledger.n_completed, ledger.n_total)
}

/// A parse failure on one line of an applications file (1-based line number).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for LineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.field {
            Some(field) => write!(f, "line {}: field `{}`: {}", self.line, field, self.message),
            None => write!(f, "line {}: {}", self.line, self.message),
        }
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{} malformed line(s) in {path}: {}", errors.len(), join_errors(errors))]
    Parse { path: PathBuf, errors: Vec<LineError> },
    #[error("invalid jobs file {path}: {message}")]
    Jobs { path: PathBuf, message: String },
}

fn join_errors(errors: &[LineError]) -> String {
    errors
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Read an applications JSONL file. Blank lines are skipped; every other
/// line must hold exactly one application object. All malformed lines are
/// collected before failing.
pub fn load_applications(path: impl AsRef<Path>) -> Result<Vec<ApplicationRecord>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_applications(&text).map_err(|errors| CorpusError::Parse {
        path: path.to_path_buf(),
        errors,
    })
}

pub fn parse_applications(text: &str) -> Result<Vec<ApplicationRecord>, Vec<LineError>> {
    let mut records = Vec::new();
    let mut errors = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_application_line(line, idx + 1) {
            Ok(rec) => records.push(rec),
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(records)
    } else {
        Err(errors)
    }
}

fn parse_application_line(line: &str, lineno: usize) -> Result<ApplicationRecord, LineError> {
    let err = |field: Option<&str>, message: String| LineError {
        line: lineno,
        field: field.map(str::to_owned),
        message,
    };
    let value: Value = serde_json::from_str(line).map_err(|e| err(None, e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| err(None, "expected a JSON object".into()))?;

    let string_field = |name: &str| -> Result<String, LineError> {
        match obj.get(name) {
            None => Err(err(Some(name), "missing".into())),
            Some(Value::String(s)) => Ok(s.clone()),
            Some(_) => Err(err(Some(name), "expected a string".into())),
        }
    };
    let applicant_id = string_field("applicant_id")?;
    let job_id = string_field("job_id")?;
    let resume_text = string_field("resume_text")?;
    let responses = match obj.get("responses") {
        None => return Err(err(Some("responses"), "missing".into())),
        Some(v) => Vec::<ResponseRecord>::deserialize(v)
            .map_err(|e| err(Some("responses"), e.to_string()))?,
    };
    let completed = match obj.get("completed") {
        None => return Err(err(Some("completed"), "missing".into())),
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(err(Some("completed"), "expected a boolean".into())),
    };
    if applicant_id.is_empty() {
        return Err(err(Some("applicant_id"), "must be non-empty".into()));
    }
    if completed && responses.is_empty() {
        return Err(err(
            Some("responses"),
            "completed application has no responses".into(),
        ));
    }
    Ok(ApplicationRecord {
        applicant_id,
        job_id,
        resume_text,
        responses,
        completed,
    })
}

/// Serialize applications back to JSONL (one object per line, trailing newline).
pub fn to_jsonl(apps: &[ApplicationRecord]) -> String {
    let mut out = String::new();
    for app in apps {
        out.push_str(&serde_json::to_string(app).expect("application serializes"));
        out.push('\n');
    }
    out
}

pub fn load_jobs(path: impl AsRef<Path>) -> Result<Vec<JobSpec>, CorpusError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|e| CorpusError::Jobs {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("job has an empty job_id")]
    EmptyJobId,
    #[error("job `{0}` lists no required skills")]
    NoRequiredSkills(String),
    #[error("job `{0}` is defined more than once")]
    DuplicateJob(String),
    #[error("applicant `{applicant_id}` references unknown job `{job_id}`")]
    DanglingJob { applicant_id: String, job_id: String },
    #[error("applicant id `{0}` appears more than once")]
    DuplicateApplicant(String),
}

/// A referentially consistent, immutable campaign.
#[derive(Debug, Clone)]
pub struct Campaign {
    jobs: BTreeMap<String, JobSpec>,
    applications: Vec<ApplicationRecord>,
}

impl Campaign {
    pub fn jobs(&self) -> impl Iterator<Item = &JobSpec> {
        self.jobs.values()
    }

    pub fn job(&self, job_id: &str) -> Option<&JobSpec> {
        self.jobs.get(job_id)
    }

    pub fn applications(&self) -> &[ApplicationRecord] {
        &self.applications
    }

    pub fn len(&self) -> usize {
        self.applications.len()
    }

    pub fn is_empty(&self) -> bool {
        self.applications.is_empty()
    }

    pub fn n_completed(&self) -> u64 {
        self.applications.iter().filter(|a| a.completed).count() as u64
    }
}

/// Check jobs and applications against each other. Every problem is
/// reported individually.
pub fn validate_campaign(
    jobs: Vec<JobSpec>,
    apps: Vec<ApplicationRecord>,
) -> Result<Campaign, Vec<ValidationError>> {
    let mut errors = Vec::new();
    let mut job_map = BTreeMap::new();
    for job in jobs {
        if job.job_id.is_empty() {
            errors.push(ValidationError::EmptyJobId);
            continue;
        }
        if job.required_skills.iter().all(|s| s.trim().is_empty()) {
            errors.push(ValidationError::NoRequiredSkills(job.job_id.clone()));
        }
        if job_map.contains_key(&job.job_id) {
            errors.push(ValidationError::DuplicateJob(job.job_id.clone()));
            continue;
        }
        job_map.insert(job.job_id.clone(), job);
    }

    let mut seen = BTreeSet::new();
    let mut reported_dupes = BTreeSet::new();
    for app in &apps {
        if !job_map.contains_key(&app.job_id) {
            errors.push(ValidationError::DanglingJob {
                applicant_id: app.applicant_id.clone(),
                job_id: app.job_id.clone(),
            });
        }
        if !seen.insert(app.applicant_id.as_str()) && reported_dupes.insert(app.applicant_id.as_str())
        {
            errors.push(ValidationError::DuplicateApplicant(app.applicant_id.clone()));
        }
    }

    if errors.is_empty() {
        Ok(Campaign {
            jobs: job_map,
            applications: apps,
        })
    } else {
        Err(errors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn job(id: &str) -> JobSpec {
        JobSpec {
            job_id: id.into(),
            title: "Engineer".into(),
            domain: JobDomain::Software,
            required_skills: vec!["rust".into()],
            description: String::new(),
        }
    }

    fn app(id: &str, job_id: &str) -> ApplicationRecord {
        ApplicationRecord {
            applicant_id: id.into(),
            job_id: job_id.into(),
            resume_text: "• Built things".into(),
            responses: vec![],
            completed: false,
        }
    }

    #[test]
    fn completion_rates_match_reported_percentages() {
        let cases = [(39, 10, "25.6%", 0.256), (8, 2, "25.0%", 0.25), (13, 7, "53.8%", 0.538)];
        for (total, done, shown, frac) in cases {
            let ledger = CampaignLedger::with_completion(total, done).unwrap();
            let rate = completion_rate(&ledger).unwrap();
            assert_eq!(rate.percent_display(), shown);
            assert_eq!(rate.rounded(3), frac);
        }
        let zero = CampaignLedger::with_completion(8, 0).unwrap();
        assert_eq!(completion_rate(&zero).unwrap().value(), 0.0);
    }

    #[test]
    fn completion_rate_of_empty_campaign_is_undefined() {
        let ledger = CampaignLedger::with_completion(0, 0).unwrap();
        assert_eq!(completion_rate(&ledger), Err(UndefinedRate));
    }

    #[test]
    fn ledger_rejects_broken_ordering() {
        assert!(CampaignLedger::new(10, 5, 6, 1).is_err());
        assert!(CampaignLedger::new(10, 11, 0, 0).is_err());
        assert!(CampaignLedger::new(10, 5, 2, 3).is_err());
        assert!(CampaignLedger::new(10, 5, 3, 3).is_ok());
    }

    #[test]
    fn empty_applications_text_gives_empty_list() {
        assert_eq!(parse_applications("").unwrap(), vec![]);
    }

    #[test]
    fn missing_applicant_id_names_line_and_field() {
        let line = r#"{"job_id":"j","resume_text":"","responses":[],"completed":false}"#;
        let errs = parse_applications(line).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert_eq!(errs[0].line, 1);
        assert_eq!(errs[0].field.as_deref(), Some("applicant_id"));
    }

    #[test]
    fn malformed_lines_are_all_collected() {
        let text = "not json\n\n{\"applicant_id\":\"a\",\"job_id\":\"j\",\"resume_text\":\"\",\"responses\":[],\"completed\":true}\n";
        let errs = parse_applications(text).unwrap_err();
        assert_eq!(errs.iter().map(|e| e.line).collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(errs[1].field.as_deref(), Some("responses"));
    }

    #[test]
    fn empty_answer_text_is_accepted() {
        let line = r#"{"applicant_id":"a","job_id":"j","resume_text":"x","responses":[{"question_id":"q","answer_text":"","session_seed":1}],"completed":true}"#;
        let apps = parse_applications(line).unwrap();
        assert_eq!(apps[0].responses[0].answer_text, "");
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_applications("/definitely/not/here.jsonl").unwrap_err();
        assert!(matches!(err, CorpusError::Io { .. }));
    }

    #[test]
    fn validation_accepts_simple_campaign() {
        let c = validate_campaign(vec![job("j1")], vec![app("a1", "j1")]).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn validation_reports_dangling_job() {
        let errs = validate_campaign(vec![job("j1")], vec![app("a1", "X")]).unwrap_err();
        assert_eq!(
            errs,
            vec![ValidationError::DanglingJob {
                applicant_id: "a1".into(),
                job_id: "X".into()
            }]
        );
        assert!(errs[0].to_string().contains("`X`"));
    }

    #[test]
    fn validation_reports_duplicate_applicant() {
        let errs =
            validate_campaign(vec![job("j1")], vec![app("a1", "j1"), app("a1", "j1")]).unwrap_err();
        assert_eq!(errs, vec![ValidationError::DuplicateApplicant("a1".into())]);
    }

    #[test]
    fn validation_reports_each_problem() {
        let mut bad = job("j2");
        bad.required_skills.clear();
        let errs = validate_campaign(
            vec![job("j1"), bad],
            vec![app("a1", "nope"), app("a2", "j1"), app("a2", "j1")],
        )
        .unwrap_err();
        assert_eq!(errs.len(), 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn completion_rate_monotone_in_completed(total in 1u64..10_000, a in 0u64..10_000, b in 0u64..10_000) {
                let (lo, hi) = (a.min(b).min(total), a.max(b).min(total));
                let r_lo = completion_rate(&CampaignLedger::with_completion(total, lo).unwrap()).unwrap();
                let r_hi = completion_rate(&CampaignLedger::with_completion(total, hi).unwrap()).unwrap();
                prop_assert!(r_lo.value() <= r_hi.value());
                prop_assert!(r_lo.scaled_half_up(3) <= r_hi.scaled_half_up(3));
            }

            #[test]
            fn jsonl_round_trip(ids in proptest::collection::vec("[a-z0-9]{1,8}", 0..6), text in "\\PC{0,40}") {
                let apps: Vec<ApplicationRecord> = ids.iter().map(|id| ApplicationRecord {
                    applicant_id: id.clone(),
                    job_id: "j".into(),
                    resume_text: text.clone(),
                    responses: vec![ResponseRecord { question_id: "q".into(), answer_text: text.clone(), session_seed: 3 }],
                    completed: true,
                }).collect();
                let back = parse_applications(&to_jsonl(&apps)).unwrap();
                prop_assert_eq!(back, apps);
            }
        }
    }
}
