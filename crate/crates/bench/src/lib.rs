//! Criterion benchmarks for the engines live in `benches/`; run them with
//! `cargo bench -p cayley-forge-bench`.
