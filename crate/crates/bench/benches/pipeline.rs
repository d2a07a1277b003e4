use std::hint::black_box;
use std::path::Path;

use criterion::{criterion_group, criterion_main, Criterion};

use claimgate_core::pipeline::{analyze_campaign, load_campaign, Resources};
use claimgate_core::roi::sensitivity_table;
use claimgate_core::{CapabilityLevel, PipelineConfig, RoiParams};

fn campaign(c: &mut Criterion) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/campaign/config.json");
    let config = PipelineConfig::from_file(path).expect("fixture config");
    let campaign = load_campaign(&config).expect("fixture campaign");
    let resources = Resources::builtin();

    let mut group = c.benchmark_group("analyze_fixture");
    for level in [CapabilityLevel::V09, CapabilityLevel::V11] {
        let mut cfg = config.clone();
        cfg.capability_level = level;
        group.bench_function(format!("{level:?}"), |b| {
            b.iter(|| analyze_campaign(black_box(&campaign), &resources, &cfg).unwrap())
        });
    }
    group.finish();
}

fn roi(c: &mut Criterion) {
    let p = RoiParams::default();
    let volumes: Vec<u64> = (1..=100).map(|v| v * 50).collect();
    c.bench_function("roi/sensitivity_100_rows", |b| b.iter(|| sensitivity_table(black_box(&volumes), &p)));
}

criterion_group!(benches, campaign, roi);
criterion_main!(benches);
