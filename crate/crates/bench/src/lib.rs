//! Benchmarks for the wusq engine; see `benches/`.
