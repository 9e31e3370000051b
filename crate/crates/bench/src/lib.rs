//! Criterion benchmarks for `amc-core`; see `benches/`.
