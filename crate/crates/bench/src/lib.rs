//! Bench-only crate; see the `benches/` targets.
