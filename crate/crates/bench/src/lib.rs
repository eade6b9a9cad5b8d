//! Criterion benchmarks for qcorr-core live in `benches/`.
