//! Criterion benchmarks for `tridice-core`; see `benches/`.
