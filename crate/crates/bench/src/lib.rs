//! Empty library target; this package exists for its Criterion benches
//! (see `benches/pipeline.rs`).
