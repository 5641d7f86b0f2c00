//! Benchmark harness crate; see `benches/core_ops.rs`.
