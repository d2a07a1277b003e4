//! Seeded verification-question generation.
//!
//! Template choice for a claim is `mix(claim_id, seed) mod k`, where `k` is
//! the number of templates applicable to the claim kind and
//!
//! ```text
//! mix(claim_id, seed) = splitmix64(fnv1a64(utf8(claim_id)) XOR seed)
//! ```
//!
//! FNV-1a uses offset basis `0xcbf29ce484222325` and prime `0x100000001b3`;
//! splitmix64 is the finalizer from Steele et al. with increment
//! `0x9e3779b97f4a7c15`. Both are fixed so other implementations can
//! reproduce question sets exactly.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::claimex::{Claim, ClaimKind};

pub const DEFAULT_QUESTION_CAP: usize = 10;

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, &b| (h ^ u64::from(b)).wrapping_mul(FNV_PRIME))
}

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn selection_hash(claim_id: &str, session_seed: u64) -> u64 {
    splitmix64(fnv1a64(claim_id.as_bytes()) ^ session_seed)
}

/// Question ids are a pure function of the claim and the session seed.
pub fn question_id(claim_id: &str, session_seed: u64) -> String {
    format!("q:{claim_id}@{session_seed}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionTemplate {
    pub template_id: String,
    pub applicable_kinds: Vec<ClaimKind>,
    pub pattern: String,
}

impl QuestionTemplate {
    pub fn applies_to(&self, kind: ClaimKind) -> bool {
        self.applicable_kinds.contains(&kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationQuestion {
    pub question_id: String,
    pub claim_id: String,
    pub template_id: String,
    pub prompt: String,
    pub session_seed: u64,
}

#[derive(Debug, Error)]
pub enum QgenError {
    #[error("no question template applies to {0} claims")]
    NoTemplate(ClaimKind),
    #[error("template `{0}`: pattern must contain {{claim_text}}")]
    MissingClaimText(String),
    #[error("template `{0}`: applicable_kinds is empty")]
    NoKinds(String),
    #[error("cannot read template pack {path}: {message}")]
    Pack { path: String, message: String },
}

/// A validated set of templates.
#[derive(Debug, Clone)]
pub struct TemplatePack {
    templates: Vec<QuestionTemplate>,
}

impl TemplatePack {
    pub fn new(templates: Vec<QuestionTemplate>) -> Result<Self, QgenError> {
        for t in &templates {
            if !t.pattern.contains("{claim_text}") {
                return Err(QgenError::MissingClaimText(t.template_id.clone()));
            }
            if t.applicable_kinds.is_empty() {
                return Err(QgenError::NoKinds(t.template_id.clone()));
            }
        }
        Ok(Self { templates })
    }

    pub fn builtin() -> Self {
        let templates = serde_json::from_str(include_str!("../data/templates.json"))
            .expect("bundled template pack parses");
        Self::new(templates).expect("bundled template pack is valid")
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, QgenError> {
        let path = path.as_ref();
        let pack_err = |message: String| QgenError::Pack {
            path: path.display().to_string(),
            message,
        };
        let body = fs::read_to_string(path).map_err(|e| pack_err(e.to_string()))?;
        let templates = serde_json::from_str(&body).map_err(|e| pack_err(e.to_string()))?;
        Self::new(templates)
    }

    pub fn templates(&self) -> &[QuestionTemplate] {
        &self.templates
    }

    /// Every claim kind must have at least one template.
    pub fn check_coverage(&self) -> Result<(), QgenError> {
        for kind in ClaimKind::ALL {
            if !self.templates.iter().any(|t| t.applies_to(kind)) {
                return Err(QgenError::NoTemplate(kind));
            }
        }
        Ok(())
    }
}

pub fn select_template<'p>(
    claim: &Claim,
    session_seed: u64,
    pool: &'p [QuestionTemplate],
) -> Result<&'p QuestionTemplate, QgenError> {
    let applicable: Vec<&QuestionTemplate> =
        pool.iter().filter(|t| t.applies_to(claim.kind)).collect();
    if applicable.is_empty() {
        return Err(QgenError::NoTemplate(claim.kind));
    }
    let idx = selection_hash(&claim.claim_id, session_seed) % applicable.len() as u64;
    Ok(applicable[idx as usize])
}

/// Fill a template from a claim. `{quantity}` and `{entity}` take the
/// claim's first quantity / entity; when absent the placeholder is removed
/// and the surrounding whitespace normalized.
pub fn render_question(
    claim: &Claim,
    template: &QuestionTemplate,
    session_seed: u64,
) -> VerificationQuestion {
    let mut prompt = template.pattern.replace("{claim_text}", &claim.text);
    let mut elided = false;
    for (placeholder, value) in [
        ("{quantity}", claim.quantities.first().map(|q| q.raw.as_str())),
        ("{entity}", claim.entities.first().map(String::as_str)),
    ] {
        if prompt.contains(placeholder) {
            match value {
                Some(v) => prompt = prompt.replace(placeholder, v),
                None => {
                    prompt = prompt.replace(placeholder, "");
                    elided = true;
                }
            }
        }
    }
    if elided {
        prompt = normalize_spacing(&prompt);
    }
    VerificationQuestion {
        question_id: question_id(&claim.claim_id, session_seed),
        claim_id: claim.claim_id.clone(),
        template_id: template.template_id.clone(),
        prompt,
        session_seed,
    }
}

fn normalize_spacing(s: &str) -> String {
    let collapsed = s.split_whitespace().collect::<Vec<_>>().join(" ");
    let mut out = String::with_capacity(collapsed.len());
    for c in collapsed.chars() {
        if matches!(c, ',' | '.' | '?' | '!' | ';' | ':' | ')') && out.ends_with(' ') {
            out.pop();
        }
        out.push(c);
    }
    out.replace("( ", "(").replace("()", "").trim().to_string()
}

/// One question per claim, for at most `cap` claims, in claim order.
pub fn generate_questions(
    claims: &[Claim],
    session_seed: u64,
    pack: &TemplatePack,
    cap: usize,
) -> Result<Vec<VerificationQuestion>, QgenError> {
    claims
        .iter()
        .take(cap)
        .map(|c| {
            let t = select_template(c, session_seed, pack.templates())?;
            Ok(render_question(c, t, session_seed))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::claimex::{ClaimExtractor, Gazetteer};
    use crate::text::Span;

    fn claim(kind: ClaimKind, text: &str) -> Claim {
        Claim {
            claim_id: "app-1:0-10".into(),
            kind,
            text: text.into(),
            quantities: vec![],
            entities: vec![],
            span: Span { start: 0, end: 10 },
        }
    }

    fn template(id: &str, pattern: &str) -> QuestionTemplate {
        QuestionTemplate {
            template_id: id.into(),
            applicable_kinds: vec![ClaimKind::Metric, ClaimKind::Experience],
            pattern: pattern.into(),
        }
    }

    #[test]
    fn mixing_function_reference_values() {
        // splitmix64 reference outputs for a generator seeded with 0.
        assert_eq!(splitmix64(0), 0xe220_a839_7b1d_cdaf);
        assert_eq!(splitmix64(0x9e37_79b9_7f4a_7c15), 0x6e78_9e6a_a1b9_65f4);
        assert_eq!(fnv1a64(b""), FNV_OFFSET);
        assert_eq!(fnv1a64(b"a"), 0xaf63_dc4c_8601_ec8c);
    }

    #[test]
    fn single_applicable_template_always_chosen() {
        let pool = vec![template("only", "{claim_text}")];
        let c = claim(ClaimKind::Metric, "x");
        for seed in 0..50 {
            assert_eq!(select_template(&c, seed, &pool).unwrap().template_id, "only");
        }
    }

    #[test]
    fn missing_kind_is_configuration_error() {
        let pool = vec![template("t", "{claim_text}")];
        let err = select_template(&claim(ClaimKind::Credential, "x"), 1, &pool).unwrap_err();
        assert!(matches!(err, QgenError::NoTemplate(ClaimKind::Credential)));
        assert!(err.to_string().contains("Credential"));
    }

    #[test]
    fn selection_varies_over_seeds() {
        let pool: Vec<_> = (0..8).map(|i| template(&format!("t{i}"), "{claim_text}")).collect();
        let c = claim(ClaimKind::Metric, "x");
        let distinct: std::collections::BTreeSet<_> = (0..100)
            .map(|s| select_template(&c, s, &pool).unwrap().template_id.clone())
            .collect();
        assert!(distinct.len() >= 2);
        assert_eq!(
            select_template(&c, 5, &pool).unwrap(),
            select_template(&c, 5, &pool).unwrap()
        );
    }

    #[test]
    fn selection_is_close_to_uniform() {
        for k in [2usize, 3, 4, 8] {
            let pool: Vec<_> = (0..k).map(|i| template(&format!("t{i}"), "{claim_text}")).collect();
            let c = claim(ClaimKind::Metric, "x");
            let mut counts = vec![0usize; k];
            for seed in 0..10_000 {
                let t = select_template(&c, seed, &pool).unwrap();
                let idx: usize = t.template_id[1..].parse().unwrap();
                counts[idx] += 1;
            }
            for n in counts {
                let share = n as f64 / 10_000.0;
                assert!((share - 1.0 / k as f64).abs() <= 0.05, "k={k} share={share}");
            }
        }
    }

    #[test]
    fn direct_substitution() {
        let t = template("t", "Describe how you achieved: {claim_text}");
        let q = render_question(&claim(ClaimKind::Metric, "Increased ARR by 30%"), &t, 9);
        assert_eq!(q.prompt, "Describe how you achieved: Increased ARR by 30%");
        assert_eq!(q.question_id, "q:app-1:0-10@9");
    }

    #[test]
    fn absent_placeholder_is_elided() {
        let t = template("t", "How did you reach {quantity} here? {claim_text}");
        let q = render_question(&claim(ClaimKind::Experience, "Ran events"), &t, 1);
        assert_eq!(q.prompt, "How did you reach here? Ran events");
        let t = template("t", "Regarding \"{claim_text}\": the {quantity} figure, explain.");
        let q = render_question(&claim(ClaimKind::Experience, "Ran events"), &t, 1);
        assert_eq!(q.prompt, "Regarding \"Ran events\": the figure, explain.");
        assert!(!q.prompt.contains("  "));
    }

    #[test]
    fn rendering_is_byte_identical() {
        let g = Gazetteer::builtin();
        let claims = ClaimExtractor::new(&g).extract("a", "• Grew pipeline 25% with Salesforce");
        let pack = TemplatePack::builtin();
        let t = select_template(&claims[0], 42, pack.templates()).unwrap();
        let a = render_question(&claims[0], t, 42);
        let b = render_question(&claims[0], t, 42);
        assert_eq!(a, b);
        assert!(!a.prompt.contains('{'));
    }

    #[test]
    fn builtin_pack_covers_every_kind_four_times() {
        let pack = TemplatePack::builtin();
        pack.check_coverage().unwrap();
        for kind in ClaimKind::ALL {
            let n = pack.templates().iter().filter(|t| t.applies_to(kind)).count();
            assert!(n >= 4, "{kind}: {n}");
        }
    }

    #[test]
    fn pack_validation() {
        assert!(matches!(
            TemplatePack::new(vec![template("bad", "no placeholder")]),
            Err(QgenError::MissingClaimText(_))
        ));
        let mut t = template("t", "{claim_text}");
        t.applicable_kinds.clear();
        assert!(matches!(TemplatePack::new(vec![t]), Err(QgenError::NoKinds(_))));
    }

    #[test]
    fn generation_respects_cap() {
        let g = Gazetteer::builtin();
        let resume: String = (0..15).map(|i| format!("• Shipped release {i}\n")).collect();
        let claims = ClaimExtractor::new(&g).extract("a", &resume);
        let qs = generate_questions(&claims, 3, &TemplatePack::builtin(), DEFAULT_QUESTION_CAP).unwrap();
        assert_eq!(qs.len(), 10);
        assert_eq!(qs[0].claim_id, claims[0].claim_id);
    }
}
