pub mod arrangement;
pub mod containment;
pub mod invariants;
pub mod render;
