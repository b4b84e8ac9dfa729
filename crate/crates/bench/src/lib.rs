//! Criterion benchmarks for the interrogation pipeline live in `benches/`.
