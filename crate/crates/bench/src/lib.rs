//! Criterion benchmarks for the plumbline core live under `benches/`.
