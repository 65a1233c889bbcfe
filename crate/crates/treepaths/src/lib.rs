//! Exact counts of paths of each length in perfect m-ary trees.
//!
//! `exactcount` holds the closed forms over unbounded integers, `oracle`
//! builds the trees explicitly and counts by BFS, and `treeio` handles
//! edge-list input, classification, and histogram output. The closed forms
//! and the oracle are independent routes to the same numbers; the test
//! suites and the `verify` CLI command hold them against each other.

pub mod exactcount;
pub mod oracle;
pub mod treeio;

pub use exactcount::{Count, FormulaError, PathLength, RootedShape, UnrootedShape};
pub use oracle::{DistanceHistogram, ExplicitTree, OracleError};
pub use treeio::{ParseError, TreeClassification};
