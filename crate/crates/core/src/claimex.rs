//! Claim extraction: split a résumé into statements, pull out quantities
//! and gazetteer entities, and classify each statement into a claim kind.
//!
//! Everything here is a pure function of the input text and the
//! (immutable) gazetteers, so identical résumés always yield identical
//! claim lists.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::text::{self, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimKind {
    Skill,
    Metric,
    Outcome,
    Credential,
    Experience,
}

impl ClaimKind {
    pub const ALL: [ClaimKind; 5] = [
        ClaimKind::Skill,
        ClaimKind::Metric,
        ClaimKind::Outcome,
        ClaimKind::Credential,
        ClaimKind::Experience,
    ];
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum QuantityUnit {
    Percent,
    Currency,
    Count,
    Duration,
    Other,
}

/// A number found in a statement, with the exact text it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: Decimal,
    pub unit: QuantityUnit,
    pub raw: String,
}

impl Quantity {
    /// Re-parse a raw slice produced by [`extract_quantities`]. Returns
    /// `None` unless the whole slice is exactly one quantity.
    pub fn parse_raw(raw: &str) -> Option<(Decimal, QuantityUnit)> {
        let mut found = extract_quantities(raw);
        if found.len() == 1 && found[0].raw == raw {
            let q = found.pop()?;
            Some((q.value, q.unit))
        } else {
            None
        }
    }

    /// Whether `other` reports the same figure (units must agree unless one
    /// side is unclassified).
    pub fn echoes(&self, other: &Quantity) -> bool {
        self.value == other.value
            && (self.unit == other.unit
                || self.unit == QuantityUnit::Other
                || other.unit == QuantityUnit::Other)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim_id: String,
    pub kind: ClaimKind,
    pub text: String,
    pub quantities: Vec<Quantity>,
    pub entities: Vec<String>,
    pub span: Span,
}

/// Claim ids are derived from the applicant and the statement span only.
pub fn claim_id(applicant_id: &str, span: Span) -> String {
    format!("{applicant_id}:{}-{}", span.start, span.end)
}

/// Statement spans (character offsets) of a résumé.
pub fn segment_statements(resume_text: &str) -> Vec<Span> {
    text::statement_spans(resume_text)
}

fn number_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r"(?:(?P<cur>[$€£¥])\s?)?(?P<num>\d{1,3}(?:,\d{3})+(?:\.\d+)?|\d+(?:\.\d+)?)")
            .expect("valid regex")
    })
}

fn suffix_res() -> &'static [(QuantityUnit, Regex); 3] {
    static RES: OnceLock<[(QuantityUnit, Regex); 3]> = OnceLock::new();
    RES.get_or_init(|| {
        [
            (
                QuantityUnit::Percent,
                Regex::new(r"^(?:\s?%|\s?(?i:percent|per cent)\b)").unwrap(),
            ),
            (
                QuantityUnit::Duration,
                Regex::new(r"^[\s-]+(?i:years?|yrs?|months?|weeks?|days?|hours?|hrs?|minutes?|mins?|quarters?)\b")
                    .unwrap(),
            ),
            (
                QuantityUnit::Count,
                Regex::new(r"^\+?\s+\p{L}[\p{L}\-]*").unwrap(),
            ),
        ]
    })
}

const COUNT_STOPWORDS: &[&str] = &[
    "a", "an", "and", "or", "the", "to", "of", "in", "on", "at", "by", "for", "with", "from", "per",
    "than", "as", "is", "was", "were", "are", "vs", "x",
];

fn multiplier(rest: &str) -> Option<(Decimal, usize)> {
    let mut it = rest.chars();
    let c = it.next()?;
    let factor = match c {
        'k' | 'K' => Decimal::from(1_000),
        'm' | 'M' => Decimal::from(1_000_000),
        'b' | 'B' => Decimal::from(1_000_000_000),
        _ => return None,
    };
    match it.next() {
        Some(n) if n.is_alphanumeric() => None,
        _ => Some((factor, c.len_utf8())),
    }
}

/// Recognize percents (`30%`), currency (`$4,667`, `$1.2M`), durations
/// (`3 years`), counts (`12 reports`); any other numeral is `Other`.
/// Values are exact decimals taken from the text.
pub fn extract_quantities(statement: &str) -> Vec<Quantity> {
    let mut out = Vec::new();
    let mut pos = 0;
    while let Some(m) = number_re().captures_at(statement, pos) {
        let whole = m.get(0).unwrap();
        let num = m.name("num").unwrap();
        pos = whole.end().max(pos + 1);

        let glued_before = statement[..whole.start()]
            .chars()
            .next_back()
            .is_some_and(|c| c.is_alphanumeric() || c == '.' || c == ',');
        if glued_before {
            continue;
        }
        let rest = &statement[num.end()..];
        let glued_after = rest.chars().next().is_some_and(|c| c.is_alphanumeric());

        let digits: String = num.as_str().chars().filter(|&c| c != ',').collect();
        let Ok(mut value) = Decimal::from_str(&digits) else {
            continue;
        };

        let (unit, end) = if m.name("cur").is_some() {
            match multiplier(rest) {
                Some((factor, len)) => {
                    value *= factor;
                    (QuantityUnit::Currency, num.end() + len)
                }
                None if glued_after => continue,
                None => (QuantityUnit::Currency, num.end()),
            }
        } else if glued_after {
            // "3rd", "10x", "5G": not a quantity we can read.
            continue;
        } else {
            classify_suffix(num.as_str(), rest)
                .map(|(unit, len)| (unit, num.end() + len))
                .unwrap_or((QuantityUnit::Other, num.end()))
        };

        pos = pos.max(end);
        out.push(Quantity {
            value: value.normalize(),
            unit,
            raw: statement[whole.start()..end].to_string(),
        });
    }
    out
}

fn classify_suffix(num: &str, rest: &str) -> Option<(QuantityUnit, usize)> {
    for (unit, re) in suffix_res() {
        let Some(m) = re.find(rest) else { continue };
        if *unit == QuantityUnit::Count {
            let word = m.as_str().trim_start_matches(['+']).trim().to_lowercase();
            let looks_like_year = num.len() == 4 && (num.starts_with("19") || num.starts_with("20"));
            if num.contains('.') || looks_like_year || COUNT_STOPWORDS.contains(&word.as_str()) {
                return None;
            }
        }
        return Some((*unit, m.end()));
    }
    None
}

/// A gazetteer term: its canonical spelling and its token sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub name: String,
    tokens: Vec<String>,
}

impl Term {
    pub fn new(raw: &str) -> Option<Self> {
        let tokens = text::tokenize(raw);
        if tokens.is_empty() {
            return None;
        }
        Some(Self {
            name: tokens.join(" "),
            tokens,
        })
    }

    /// Does the term occur as a contiguous token run in `haystack`?
    pub fn occurs_in(&self, haystack: &[String]) -> bool {
        self.first_position(haystack).is_some()
    }

    fn first_position(&self, haystack: &[String]) -> Option<usize> {
        haystack
            .windows(self.tokens.len())
            .position(|w| w == self.tokens.as_slice())
    }
}

#[derive(Debug, Error)]
pub enum GazetteerError {
    #[error("cannot read gazetteer {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Parse a gazetteer file body: one term per line, `#` starts a comment.
pub fn parse_terms(body: &str) -> Vec<Term> {
    body.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .filter_map(Term::new)
        .collect()
}

/// Skill, credential and outcome-verb term lists.
#[derive(Debug, Clone)]
pub struct Gazetteer {
    pub skills: Vec<Term>,
    pub credentials: Vec<Term>,
    pub outcome_verbs: Vec<Term>,
}

impl Gazetteer {
    pub fn builtin() -> Self {
        Self {
            skills: parse_terms(include_str!("../data/skills.txt")),
            credentials: parse_terms(include_str!("../data/credentials.txt")),
            outcome_verbs: parse_terms(include_str!("../data/outcome_verbs.txt")),
        }
    }

    /// Load `skills.txt`, `credentials.txt` and `outcome_verbs.txt` from a
    /// directory.
    pub fn from_dir(dir: impl AsRef<Path>) -> Result<Self, GazetteerError> {
        let dir = dir.as_ref();
        let read = |name: &str| {
            let path = dir.join(name);
            fs::read_to_string(&path)
                .map(|body| parse_terms(&body))
                .map_err(|source| GazetteerError::Io {
                    path: path.display().to_string(),
                    source,
                })
        };
        Ok(Self {
            skills: read("skills.txt")?,
            credentials: read("credentials.txt")?,
            outcome_verbs: read("outcome_verbs.txt")?,
        })
    }
}

/// Rule-based extractor bound to a gazetteer and a role's required skills.
#[derive(Debug, Clone)]
pub struct ClaimExtractor<'g> {
    gazetteer: &'g Gazetteer,
    required_skills: Vec<Term>,
}

impl<'g> ClaimExtractor<'g> {
    pub fn new(gazetteer: &'g Gazetteer) -> Self {
        Self {
            gazetteer,
            required_skills: Vec::new(),
        }
    }

    pub fn with_required_skills<S: AsRef<str>>(mut self, skills: &[S]) -> Self {
        self.required_skills = skills.iter().filter_map(|s| Term::new(s.as_ref())).collect();
        self
    }

    /// Classify one statement. Precedence is Metric > Credential > Skill >
    /// Outcome > Experience.
    pub fn classify_claim(&self, statement: &str) -> ClaimKind {
        let tokens = text::tokenize(statement);
        self.classify_parts(&tokens, !extract_quantities(statement).is_empty())
    }

    fn classify_parts(&self, tokens: &[String], has_quantity: bool) -> ClaimKind {
        let any = |terms: &[Term]| terms.iter().any(|t| t.occurs_in(tokens));
        if has_quantity {
            ClaimKind::Metric
        } else if any(&self.gazetteer.credentials) {
            ClaimKind::Credential
        } else if any(&self.required_skills) || any(&self.gazetteer.skills) {
            ClaimKind::Skill
        } else if any(&self.gazetteer.outcome_verbs) {
            ClaimKind::Outcome
        } else {
            ClaimKind::Experience
        }
    }

    /// Skill and credential terms (including required skills) found in the
    /// statement, ordered by first occurrence, deduplicated.
    pub fn entities(&self, tokens: &[String]) -> Vec<String> {
        let mut hits: Vec<(usize, &str)> = self
            .required_skills
            .iter()
            .chain(&self.gazetteer.skills)
            .chain(&self.gazetteer.credentials)
            .filter_map(|t| t.first_position(tokens).map(|p| (p, t.name.as_str())))
            .collect();
        hits.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.len().cmp(&a.1.len())));
        let mut out: Vec<String> = Vec::new();
        for (_, name) in hits {
            if !out.iter().any(|e| e == name) {
                out.push(name.to_string());
            }
        }
        out
    }

    pub fn extract(&self, applicant_id: &str, resume_text: &str) -> Vec<Claim> {
        segment_statements(resume_text)
            .into_iter()
            .map(|span| {
                let statement = span.slice(resume_text);
                let tokens = text::tokenize(statement);
                let quantities = extract_quantities(statement);
                let kind = self.classify_parts(&tokens, !quantities.is_empty());
                Claim {
                    claim_id: claim_id(applicant_id, span),
                    kind,
                    text: statement.to_string(),
                    quantities,
                    entities: self.entities(&tokens),
                    span,
                }
            })
            .collect()
    }
}
