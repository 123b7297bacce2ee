//! File formats, report emission, random suites and the reproduction
//! targets behind the `indcomplex` command.

pub mod edgelist;
pub mod pipeline;
pub mod reproduce;
pub mod suites;
