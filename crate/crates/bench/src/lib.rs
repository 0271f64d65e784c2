//! Criterion benchmarks for `dtm-core`; see `benches/solver.rs`.
