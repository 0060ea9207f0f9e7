//! Criterion benchmarks for the eigentree kernels; see `benches/`.
