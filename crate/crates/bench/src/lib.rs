//! Criterion benchmarks for the minimization engine; see `benches/`.
//! The counter-based harness lives in `kmin_core::bench`, this crate only
//! adds wall-clock measurements.
