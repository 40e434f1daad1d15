//! Criterion benchmarks for twistor-core live in `benches/`.
