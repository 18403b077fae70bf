//! Library surface of the `wreath` CLI: the group-description grammar and
//! the output encoders, kept separate from the binary so they can be tested
//! directly.

pub mod output;
pub mod spec;
