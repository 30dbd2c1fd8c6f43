//! Batch front end for `zipsections`: problem files in, JSON or tables out.

pub mod emit;
pub mod problem;
pub mod run;
pub mod selftest;
