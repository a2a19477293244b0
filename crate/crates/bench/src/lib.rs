//! Criterion benchmarks for `posetblock-core`; see `benches/`.
