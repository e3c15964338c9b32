//! Spec parsing, report shapes and command bodies behind the `aszeta`
//! binary.

pub mod commands;
pub mod report;
pub mod spec;
