//! Criterion benchmarks for `chlab-core`; see `benches/pipeline.rs`.
