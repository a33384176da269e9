//! IO, file formats, and run drivers for the vertex separator toolkit.
//! The algorithmic core lives in `vsp-core`; this crate adds everything
//! that needs an operating system: parsers, the wall clock, parallel
//! drivers, record emission, benchmarking, and instance generators.

pub mod bench;
pub mod costs;
pub mod dimacs;
pub mod instances;
pub mod mm;
pub mod records;
pub mod report;
pub mod run;
