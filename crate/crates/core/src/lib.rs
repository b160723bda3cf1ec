//! Zero-error capacity bounds for graphs and digraphs under the Mycielski
//! construction.

pub mod bitset;
pub mod capacity;
pub mod certificates;
pub mod chromatic;
pub mod clique;
pub mod constructions;
pub mod error;
pub mod families;
pub mod formula;
pub mod fractional;
pub mod graph;
pub mod linalg;
pub mod lp;
pub mod mycielski;
pub mod products;
pub mod report;
pub mod source;
pub mod theta;

pub use error::{Error, Result};
pub use graph::{AnyGraph, Digraph, Graph};
