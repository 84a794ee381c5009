//! Criterion benchmarks for the exact pipelines; see `benches/pipeline.rs`.
