//! Labelled synthetic response corpus used to calibrate the default
//! threshold profiles.
//!
//! Human-style responses are built by shuffling a pool of hand-written
//! sentences with varied length and vocabulary. Templated responses repeat
//! one rigid sentence frame with a few slot fillers, which is the pattern
//! the integrity flags target.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticResponse {
    pub applicant_id: String,
    pub text: String,
    pub templated: bool,
}

const HUMAN_SENTENCES: &[&str] = &[
    "Honestly the first month was rough because nobody had documented the deploy scripts.",
    "I sat with the support team for a week to see which tickets kept coming back.",
    "We missed the first deadline.",
    "My manager pushed back hard on the idea, so I built a small prototype over a weekend to prove the point.",
    "The old reporting job ran overnight and failed quietly about once a week.",
    "I rewrote it in smaller pieces and added alerts so someone would actually notice.",
    "That alone saved the finance folks a lot of manual checking at month end.",
    "Not everything worked.",
    "Our first attempt at caching made stale prices show up for customers in Brazil, which was embarrassing.",
    "I learned to ask for the ugliest real data before designing anything.",
    "The client in Rotterdam wanted weekly calls, and I kept a shared notebook of every promise we made them.",
    "Eventually the renewal came through at a higher tier than the year before.",
    "Two colleagues left mid-project and I picked up their half-finished migration.",
    "It took longer than I hoped because the schema had drifted in odd ways.",
    "I paired with a junior engineer on most of it and she ended up owning the rollout.",
    "We measured everything against the previous quarter instead of guessing.",
    "Some weeks I spent more time in spreadsheets than in code, which surprised me.",
    "The trade show in Lyon was chaotic, our booth arrived a day late and half the brochures were in the wrong language.",
    "Still, we came home with forty solid leads.",
    "I followed up with each of them personally within three days.",
    "A few turned into pilots, most went nowhere, and one became our biggest account that year.",
    "When the vendor changed their API without notice, I wrote a thin adapter so the rest of the code didn't care.",
    "I would do the testing differently now.",
    "Back then we relied on a handful of end to end checks that took forty minutes to run.",
    "Now I push for quick unit tests first and only a few slow ones.",
    "The redesign started from interviews with twelve shop owners rather than from our own assumptions.",
    "Several of them printed invoices by hand, which changed how we thought about the export screen.",
    "I argued for dropping two features nobody used, and after some grumbling the team agreed.",
    "Load times went down noticeably once we stopped shipping the giant icon font.",
    "My favourite part was watching a customer finish the checkout without asking us anything.",
    "The hardest conversation was telling sales that the promised date was not realistic.",
    "We agreed on a smaller first release and a clear list of what would follow.",
    "During the outage I kept a running timeline in the incident channel so people joining late could catch up.",
    "Afterwards we wrote a blameless review and fixed three of the five root causes within a month.",
    "The lab furnace drifted by several degrees over long runs, so I logged every batch by hand for a while.",
    "Comparing those notes with the film thickness data showed the drift clearly.",
    "I presented the findings to the process group, nervous but well prepared.",
    "They adopted a recalibration step that is still used today.",
    "Most of my campaigns were small, scrappy and tested on real audiences before we spent real money.",
    "The one that went viral was, frankly, a happy accident built on a joke from our intern.",
];

const TEMPLATE_FRAMES: &[&str] = &[
    "I leveraged {a} to drive {b} and deliver measurable value for the organization.",
    "By utilizing {a}, I was able to drive {b} and deliver measurable value for the team.",
    "I consistently leveraged {a} to ensure {b} and deliver measurable value for stakeholders.",
];

const SLOT_A: &[&str] = &["best practices", "data driven insights", "cross functional collaboration", "innovative solutions"];
const SLOT_B: &[&str] = &["operational excellence", "strategic alignment", "continuous improvement", "business impact"];

fn human_text(rng: &mut ChaCha8Rng) -> String {
    let n = rng.gen_range(4..=7);
    let picked: Vec<&str> = HUMAN_SENTENCES.choose_multiple(rng, n).copied().collect();
    picked.join(" ")
}

fn templated_text(rng: &mut ChaCha8Rng) -> String {
    let frame = TEMPLATE_FRAMES.choose(rng).expect("frames");
    let n = rng.gen_range(5..=8);
    (0..n)
        .map(|_| {
            frame
                .replace("{a}", SLOT_A.choose(rng).expect("slot"))
                .replace("{b}", SLOT_B.choose(rng).expect("slot"))
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// `size` single-response applicants, of which `round(size * templated_share)`
/// are templated, in a seeded random order.
pub fn calibration_corpus(size: usize, templated_share: f64, seed: u64) -> Vec<SyntheticResponse> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_templated = (size as f64 * templated_share).round() as usize;
    let mut labels: Vec<bool> = (0..size).map(|i| i < n_templated).collect();
    labels.shuffle(&mut rng);
    labels
        .into_iter()
        .enumerate()
        .map(|(i, templated)| SyntheticResponse {
            applicant_id: format!("syn-{i:04}"),
            text: if templated {
                templated_text(&mut rng)
            } else {
                human_text(&mut rng)
            },
            templated,
        })
        .collect()
}
