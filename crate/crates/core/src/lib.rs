//! Degree sequences realizable by a simple graph that contains a spanning
//! union of `(h+1)`-cliques on consecutive labels.
//!
//! * [`checker`] decides realizability exactly.
//! * [`realizer`] builds a witness graph by edge exchanges.
//! * [`verify`] checks witnesses.
//! * [`oracle`] enumerates realizations by brute force at small `n`.
//! * [`factorize`] splits the clique factor into `h` perfect matchings (odd `h`).
//! * [`cli`] is the command-line front end.

pub mod checker;
pub mod cli;
pub mod factorize;
pub mod graph;
pub mod oracle;
pub mod realizer;
pub mod sequence;
pub mod verify;

pub use checker::{BoundBreakdown, FailureKind, Verdict};
pub use graph::{GraphError, LabelledGraph};
pub use realizer::{realize, EngineReport, RealizeError, RealizeOptions};
pub use sequence::{DegreeSequence, FactorShape, SequenceError};
pub use verify::{is_h_spanning, verify_realization, VerifyReport};
