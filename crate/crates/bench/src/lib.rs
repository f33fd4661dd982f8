//! Criterion benchmarks for `ellipsoidal-core`; see `benches/`.
