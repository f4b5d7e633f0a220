//! Benchmarks for `nilcox-core` live in `benches/`.
