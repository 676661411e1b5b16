//! Stackable structures on finitely generated groups.
//!
//! A stackable structure on a group `G` with inverse-closed generating set `A`
//! consists of a prefix-closed set of normal forms together with a bounded
//! *stacking map* that sends every non-tree edge of the Cayley graph to a short
//! path between the same endpoints, in such a way that iterating the map
//! terminates. From that data the crate derives:
//!
//! * normal forms by the stacking reduction ([`stacking::stacking_reduce`]),
//! * a solution of the word problem ([`stacking::word_problem`]),
//! * van Kampen diagrams for trivial words ([`vankampen::DiagramBuilder`]),
//! * finite checks of the flow-function axioms on Cayley balls
//!   ([`stacking::verify_flow_properties`]).
//!
//! Concrete structures live in [`builtin`] and are selected by name through
//! the [`registry`].

pub mod builtin;
pub mod cayley;
mod error;
pub mod registry;
pub mod rewriting;
pub mod stacking;
pub mod vankampen;
pub mod words;

pub use cayley::{Ball, EdgeClass, NormalFormOracle};
pub use error::{Error, Result};
pub use registry::{BuildContext, StructureFactory, StructureRegistry};
pub use rewriting::RewritingSystem;
pub use stacking::{FlowFunction, StackingStructure};
pub use vankampen::VanKampenDiagram;
pub use words::{Alphabet, Letter, Presentation, Word};

/// Default number of rewriting steps allowed in a single reduction.
pub const DEFAULT_BUDGET: usize = 1_000_000;

/// Default cap on the number of group elements in a Cayley ball.
pub const DEFAULT_MEMORY_CAP: usize = 1_000_000;
