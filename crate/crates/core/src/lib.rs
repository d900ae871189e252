//! Finite lattices and their dual TiRS digraphs.
//!
//! A finite lattice `L` is represented by its maximal disjoint filter-ideal
//! pairs (MDFIPs), which become the vertices of a reflexive digraph `G_L`.
//! The lattice is recovered as the lattice `ℂ(G)` of maximal partial
//! E-preserving maps into the two-element graph. Around that round trip the
//! crate provides decision procedures for the lattice conditions (semimodularity
//! variants, semidistributivity, meet-distributivity, modularity) and the
//! digraph conditions that mirror them, plus an exhaustive small-lattice
//! enumerator and a campaign engine that evaluates every registered
//! implication over the catalog.
//!
//! ```
//! use tirs::{duality, fixtures};
//!
//! let n5 = fixtures::n5();
//! let g = duality::dual_digraph(&n5);
//! assert_eq!(g.vertex_count(), 3);
//! assert!(duality::roundtrip_lattice(&n5).unwrap());
//! ```

pub mod bits;
pub mod convex;
pub mod digraph;
pub mod duality;
pub mod enumeration;
mod error;
pub mod fixtures;
pub mod harness;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod properties;

pub use convex::ClosureSystem;
pub use digraph::{Digraph, Pattern};
pub use duality::{Mdfip, PartialTwoMap};
pub use error::{Bound, Error, Result};
pub use lattice::FiniteLattice;
pub use properties::{Property, PropertyReport};
