//! Benchmark-host crate; the measurements live in `benches/correlator.rs`
//! and run against `duosc-core` directly. The library target is
//! intentionally empty.
