#![no_std]
//! Exact computation of global sections of automorphic vector bundles on
//! stacks of G-zips.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exactmath;
pub mod rootdata;
pub mod zipdatum;
pub mod prep;
pub mod sections;
pub mod corpus;
