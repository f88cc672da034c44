// benchmark-only crate; see benches/engine.rs
