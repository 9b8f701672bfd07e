//! Exact Sprague-Grundy and misère analysis for two Nim variants played on
//! combinatorial shapes:
//!
//! * **PNim**: positions are integer partitions; a move removes any
//!   positive number of rows or columns from one Young diagram (the
//!   survivors merge).
//! * **RNim**: positions are hyperrectangles; a move shrinks one side of
//!   one box, and a box with a zero side is spent.
//!
//! Both games are disjunctive sums of their single-component forms. The
//! crate computes exact values with a memoized engine, cross-checks every
//! closed formula against an independent brute-force oracle, selects
//! optimal moves under normal and misère play, classifies both games in
//! the Conway-Gurvich-Ho hierarchy, and reproduces the known tables of
//! heavy and Grundy-value-2 partitions.
//!
//! Start with [`Engine`] for values, [`strategy`] for moves, and
//! [`verify::verify_suite`] for the whole checklist. The `examples/`
//! directory has one runnable program per capability, and the `nimshape`
//! binary exposes the same features as subcommands.

pub mod cli;
pub mod closed_forms;
pub mod engine;
pub mod explore;
pub mod hyperrect;
pub mod oracle;
pub mod parse;
pub mod partition;
pub mod play;
pub mod position;
pub mod strategy;
pub mod verify;

pub use engine::{longest_play, mex, Convention, Engine, EngineError, GrundyPair, MemoTable};
pub use hyperrect::{HyperrectMove, Hyperrectangle};
pub use partition::{partitions_of, Axis, Partition, PartitionMove};
pub use position::{MoveDescriptor, Ruleset, SumPosition};
