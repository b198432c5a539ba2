//! Modular decomposition, transitive orientation extension, sunflower
//! simultaneous orientation, and partial / simultaneous representations of
//! permutation and circular permutation graphs.
//!
//! Every fast algorithm in this crate has a brute-force counterpart in
//! [`oracle`] that the test suites compare against.

pub mod cli;
pub mod cperm;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod mdecomp;
pub mod oracle;
pub mod orient;
pub mod perm;
pub mod pqtree;
pub mod reductions;
pub mod simorient;
pub mod twosat;

mod lca;
mod radix;

pub use error::{Error, Result};
pub use graph::{Graph, Orientation, PartialOrientation, SunflowerInstance};
