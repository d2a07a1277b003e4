use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use tempfile::NamedTempFile;

use super::{ApplicantResult, CampaignRun, ErrorKind, PipelineConfig, PipelineError, Stage};
use crate::corpus::{CampaignLedger, JobDomain};
use crate::integrity::{FlagLogEntry, IntegrityFlag};
use crate::roi::{RoiResult, RoiRow, ROI_CSV_HEADER};
use crate::score::{CrossValidationMatrix, DomainStats, ScoreCard};

#[derive(Debug, Clone, Serialize)]
pub struct CampaignReport {
    pub ledger: CampaignLedger,
    /// `None` for an empty campaign.
    pub completion_rate: Option<String>,
    pub stats: Option<DomainStats>,
    pub domain_stats: BTreeMap<JobDomain, DomainStats>,
    pub matrix: CrossValidationMatrix,
    pub diamonds: Vec<String>,
    pub scorecards: Vec<ScoreCard>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub roi: Option<RoiResult>,
    #[serde(skip)]
    pub roi_row: Option<RoiRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<IntegrityFlag>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flag_rate: Option<String>,
    /// Share of diamonds carrying at least one flag.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diamond_flag_share: Option<String>,
    pub config_echo: PipelineConfig,
}

/// 6×6 count grid, validity bins 5→0 top-down, fit bins 0→5 left-right.
/// Cells in the Diamond region (validity bins 4–5, fit bin 5) are bracketed.
pub fn render_matrix_text(matrix: &CrossValidationMatrix) -> String {
    let width = matrix
        .cells
        .iter()
        .flatten()
        .map(|c| c.to_string().len())
        .max()
        .unwrap_or(1)
        + 2;
    let mut out = String::new();
    out.push_str("Cross-Validation Matrix (Claim Validity x Job Fit)\n");
    out.push_str("rows: Claim Validity bin, columns: Job Fit bin, [n] = Diamond region\n\n");
    let _ = write!(out, "{:<6}", "CV\\JF");
    for fit in 0..6 {
        let _ = write!(out, " {:>width$}", fit, width = width);
    }
    out.push('\n');
    for validity in (0..6).rev() {
        let _ = write!(out, "{:<6}", validity);
        for fit in 0..6 {
            let n = matrix.cells[validity][fit];
            let cell = if validity >= 4 && fit == 5 {
                format!("[{n}]")
            } else {
                n.to_string()
            };
            let _ = write!(out, " {:>width$}", cell, width = width);
        }
        out.push('\n');
    }
    let _ = writeln!(out, "\ntotal {}", matrix.total());
    out
}

fn scorecards_csv(cards: &[ScoreCard]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["applicant_id", "claim_validity", "job_fit", "diamond"])?;
    for c in cards {
        w.write_record([
            c.applicant_id.clone(),
            c.claim_validity.to_string(),
            c.job_fit.to_string(),
            c.diamond.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn jsonl<T: Serialize>(items: impl IntoIterator<Item = T>) -> String {
    let mut out = String::new();
    for it in items {
        out.push_str(&serde_json::to_string(&it).expect("serializable"));
        out.push('\n');
    }
    out
}

pub const REPORT_FILES: [&str; 7] = [
    "report.json",
    "scorecards.csv",
    "matrix.txt",
    "claims.jsonl",
    "questions.jsonl",
    "roi.csv",
    "flags.jsonl",
];

fn render_files(run: &CampaignRun) -> Result<Vec<(&'static str, String)>, PipelineError> {
    let report = &run.report;
    let emit_err = |m: String| PipelineError::new(Stage::Emit, ErrorKind::Io, m);
    let mut files = Vec::new();
    let mut json = serde_json::to_string_pretty(report).map_err(|e| emit_err(e.to_string()))?;
    json.push('\n');
    files.push(("report.json", json));
    files.push((
        "scorecards.csv",
        scorecards_csv(&report.scorecards).map_err(|e| emit_err(e.to_string()))?,
    ));
    files.push(("matrix.txt", render_matrix_text(&report.matrix)));
    files.push((
        "claims.jsonl",
        jsonl(run.applicants.iter().flat_map(|a| a.claims.iter())),
    ));
    files.push((
        "questions.jsonl",
        jsonl(run.applicants.iter().flat_map(|a| a.questions.iter())),
    ));
    if let Some(row) = &report.roi_row {
        files.push(("roi.csv", format!("{ROI_CSV_HEADER}\n{}\n", row.csv_line())));
    }
    if let Some(flags) = &report.flags {
        files.push(("flags.jsonl", jsonl(flags.iter().map(FlagLogEntry::from))));
    }
    Ok(files)
}

/// Write all report files into `out_dir`. Each file is staged in a
/// temporary file in the same directory and renamed into place; on failure
/// nothing from this call is left behind. Files for stages that did not run
/// (e.g. `roi.csv` below V10) are removed.
pub fn emit_reports(run: &CampaignRun, out_dir: &Path) -> Result<Vec<PathBuf>, PipelineError> {
    let io_err = |m: String| PipelineError::new(Stage::Emit, ErrorKind::Io, m);
    fs::create_dir_all(out_dir)
        .map_err(|e| io_err(format!("cannot create {}: {e}", out_dir.display())))?;

    let files = render_files(run)?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, body) in &files {
        let mut tmp = NamedTempFile::new_in(out_dir)
            .map_err(|e| io_err(format!("cannot write in {}: {e}", out_dir.display())))?;
        tmp.write_all(body.as_bytes())
            .and_then(|_| tmp.flush())
            .map_err(|e| io_err(format!("cannot write {name}: {e}")))?;
        staged.push((out_dir.join(name), tmp));
    }

    let mut written: Vec<PathBuf> = Vec::new();
    for (dest, tmp) in staged {
        if let Err(e) = tmp.persist(&dest) {
            for p in &written {
                let _ = fs::remove_file(p);
            }
            return Err(io_err(format!("cannot rename into {}: {}", dest.display(), e.error)));
        }
        written.push(dest);
    }
    for stale in REPORT_FILES {
        if !files.iter().any(|(n, _)| *n == stale) {
            let p = out_dir.join(stale);
            if p.exists() {
                fs::remove_file(&p).map_err(|e| io_err(format!("cannot remove {}: {e}", p.display())))?;
            }
        }
    }
    Ok(written)
}

/// Audit view of one applicant: claims, generated questions, scores and
/// flags.
pub fn inspect_applicant(run: &CampaignRun, applicant_id: &str) -> Option<String> {
    let a = run.applicants.iter().find(|a| a.applicant_id == applicant_id)?;
    Some(render_applicant(a))
}

fn render_applicant(a: &ApplicantResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "applicant {}  job {} ({})", a.applicant_id, a.job_id, a.domain);
    let _ = writeln!(out, "completed: {}", a.completed);
    let _ = writeln!(out, "\nclaims ({}):", a.claims.len());
    for c in &a.claims {
        let _ = writeln!(out, "  [{}] {} {}", c.kind, c.claim_id, c.text);
        if !c.quantities.is_empty() {
            let qs: Vec<String> = c
                .quantities
                .iter()
                .map(|q| format!("{} ({:?})", q.raw, q.unit))
                .collect();
            let _ = writeln!(out, "      quantities: {}", qs.join(", "));
        }
        if !c.entities.is_empty() {
            let _ = writeln!(out, "      entities: {}", c.entities.join(", "));
        }
    }
    let _ = writeln!(out, "\nquestions ({}):", a.questions.len());
    for q in &a.questions {
        let _ = writeln!(out, "  {} [{}]\n      {}", q.question_id, q.template_id, q.prompt);
    }
    out.push_str("\nscores: ");
    match &a.card {
        Some(c) => {
            let _ = writeln!(
                out,
                "claim validity {:.2}, job fit {:.1}, diamond {}",
                c.claim_validity, c.job_fit, c.diamond
            );
        }
        None => out.push_str("not scored (application not completed)\n"),
    }
    if let Some(n) = &a.notice {
        let _ = writeln!(out, "notice: {n:?}");
    }
    if let Some(m) = &a.metrics {
        let _ = writeln!(
            out,
            "\nintegrity: entropy {:.3} bits, entropy variance {:.3}, burst variance {:.2}, repetition {:.3}, homogeneity {:.3} ({} tokens, {} sentences)",
            m.token_entropy, m.entropy_variance, m.burst_variance, m.repetition_rate, m.homogeneity, m.token_count, m.sentence_count
        );
        if a.flags.is_empty() {
            out.push_str("flags: none\n");
        }
        for f in &a.flags {
            let _ = writeln!(
                out,
                "flag: {} ({:?}) {} = {:.3} vs threshold {:.3}: \"{}\"",
                f.category, f.severity, f.evidence.metric, f.evidence.value, f.evidence.threshold, f.evidence.snippet
            );
        }
    }
    out
}
