//! Bounds and domain filtering for stretch-counting sequence constraints.
//!
//! A chain of variables, a stretch relation C and a neighbor relation B
//! define a count: the number of maximal runs of C along the chain, where
//! every consecutive pair must satisfy B. This crate filters the domains of
//! the chain and of the count variable against each other:
//!
//! * [`propagator::propagate`] runs coherence pruning, per-position count
//!   tables and interval filtering to a fixpoint,
//! * [`stretch`] builds the prefix and suffix count tables, dispatching to
//!   linear-time sweeps from [`fast`] for the built-in relation families,
//! * [`catalog`] rewrites the classic `change`, `smooth` and
//!   `increasing_nvalue` constraints into the core form,
//! * [`oracle`] holds brute-force enumeration references the tests compare
//!   against,
//! * [`random`] draws seeded instances from named families,
//! * [`instance`] reads and writes the JSON wire form.
//!
//! Filtering is sound for every monotonic neighbor relation and exact for
//! the families where reachable counts form intervals; see
//! [`catalog::continuity_tag`].

pub mod binrel;
pub mod catalog;
pub mod domain;
pub mod fast;
pub mod instance;
pub mod oracle;
pub mod propagator;
pub mod random;
pub mod stretch;

pub use binrel::{BinRel, PruneError, RelKind};
pub use catalog::{CatalogSpec, ContinuityTag, Reformulation};
pub use domain::Domain;
pub use instance::{Instance, ParseError, Problem};
pub use propagator::{propagate, Propagation, Status};
pub use stretch::{PairMode, StretchTable};
