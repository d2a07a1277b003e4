use claimgate_core::integrity::synthetic::calibration_corpus;
use claimgate_core::integrity::{compute_metrics, detect_flags, FlagSubject, MetricParams};
use claimgate_core::{JobDomain, ThresholdProfile};

#[test]
fn default_profiles_recover_templated_share_across_seeds() {
    let params = MetricParams { ngram: 3, window: 50 };
    for seed in 1..=8 {
        let corpus = calibration_corpus(1000, 0.12, seed);
        let metrics: Vec<_> = corpus.iter().map(|r| compute_metrics(&[&r.text], params).unwrap()).collect();
        for domain in JobDomain::ALL {
            let profile = ThresholdProfile::default_for(domain);
            let flagged: Vec<bool> = corpus
                .iter()
                .zip(&metrics)
                .filter(|(r, m)| {
                    let subject = FlagSubject {
                        applicant_id: r.applicant_id.clone(),
                        snippet: String::new(),
                    };
                    !detect_flags(&subject, m, &profile).is_empty()
                })
                .map(|(r, _)| r.templated)
                .collect();
            let rate = flagged.len() as f64 / 1000.0;
            let precision = flagged.iter().filter(|t| **t).count() as f64 / flagged.len() as f64;
            assert!((0.10..=0.14).contains(&rate), "seed {seed} {domain}: rate {rate}");
            assert!(precision >= 0.9, "seed {seed} {domain}: precision {precision}");
        }
    }
}

#[test]
fn short_texts_are_never_flagged_for_entropy() {
    let params = MetricParams { ngram: 3, window: 50 };
    let m = compute_metrics(&["Yes. I did."], params).unwrap();
    let subject = FlagSubject::default();
    let flags = detect_flags(&subject, &m, &ThresholdProfile::default_for(JobDomain::Other));
    assert!(flags.is_empty(), "{flags:?}");
}
