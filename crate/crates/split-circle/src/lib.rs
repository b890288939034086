//! Recognition of circle graphs inside split graphs.
//!
//! A split graph is a graph whose vertex set partitions into a clique `K`
//! and a stable set `S`; a circle graph is the intersection graph of chords
//! of a circle. This crate decides whether a split graph is a circle graph
//! and produces, on success, an explicit chord model and, on failure, a
//! minimal forbidden induced subgraph witness. Every structured procedure
//! is backed by brute-force oracles that make the whole pipeline
//! cross-checkable at small sizes.
//!
//! The main entry point is [`recognize::recognize`]. See the `examples/`
//! directory for runnable walkthroughs of each capability and the
//! `splitcircle` binary for the command-line interface.

pub mod canon;
pub mod cases;
pub mod catalog;
pub mod chord;
pub mod error;
pub mod families;
pub mod graph;
pub mod matrix;
pub mod model;
pub mod oracle;
pub mod ordering;
pub mod patterns;
pub mod recognize;
pub mod selfcheck;
pub mod split;
pub mod svg;
pub mod twonested;

pub use chord::{interlacement, ChordModel};
pub use graph::{Embedding, Graph};
pub use matrix::{BitMatrix, Color, EnrichedMatrix, RowLabel};
pub use recognize::{recognize, Verdict, VerdictStatus};
pub use split::{detect_case, split_partition, CaseKind, SplitPartition};


