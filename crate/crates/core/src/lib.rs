//! Nonbacktracking walk generating functions on weighted directed and
//! temporal graphs.

pub mod cli;
pub mod edge;
pub mod error;
pub mod graph;
pub mod node;
pub mod oracle;
pub mod rank;
pub mod sparse;
pub mod temporal;

pub use edge::{CoefficientSeries, EdgeCentralityPlan};
pub use error::{Error, Result};
pub use graph::{Edge, LineGraphDecomposition, WeightedGraph};
pub use sparse::SparseMatrix;
pub use temporal::{BacktrackRegime, GlobalDecomposition, TemporalGraph};
