//! Criterion benchmarks for claimgate; see `benches/`.
