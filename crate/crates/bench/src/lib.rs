//! Benchmark-only crate; see `benches/reductions.rs`.
