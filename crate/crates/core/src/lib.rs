//! Essential surfaces and exceptional Dehn surgeries of two-bridge links
//! L([r, s]), computed from minimal edge-paths in the Floyd-Hatcher diagrams.

pub mod classify;
pub mod farey;
pub mod invariants;
pub mod oracle;
pub mod paths;
