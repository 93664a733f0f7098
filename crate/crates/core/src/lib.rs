//! Exact combinatorics of plane trees and lattice paths around the butterfly
//! decomposition of doubly rooted plane trees.
//!
//! The crate is organized bottom-up:
//!
//! * [`trees`] holds plane trees with their vertex addresses and the
//!   decorated variants such as doubly rooted trees and chains.
//! * [`lattice_paths`] holds Dyck and Schröder paths with their free versions
//!   and segment decompositions into flaw blocks.
//! * [`bijections`] builds the constructive correspondences between them.
//! * [`involutions`] has the two parity-reversing involutions.
//! * [`series`], [`counting`], [`riordan`] and [`asymptotics`] do the exact
//!   generating-function work.
//! * [`verify`] certifies all of the above exhaustively at a given size.
//!
//! ```
//! use butterfly_core::bijections::{drt_to_free_dyck, free_dyck_to_drt};
//! use butterfly_core::trees::DoublyRootedTree;
//!
//! let drt: DoublyRootedTree = "(())();0/0".parse().unwrap();
//! let path = drt_to_free_dyck(&drt);
//! assert_eq!(free_dyck_to_drt(&path).unwrap(), drt);
//! ```

pub mod asymptotics;
pub mod bijections;
pub mod counting;
pub mod error;
pub mod involutions;
pub mod lattice_paths;
pub mod limits;
pub mod riordan;
pub mod series;
pub mod trees;
pub mod verify;

pub use error::{ButterflyError, Result};
pub use lattice_paths::{Alphabet, Constraint, LatticePath, Step};
pub use limits::Limits;
pub use series::Series;
pub use trees::{DoublyRootedTree, KColoredTree, LeafColoredTree, PlaneTree, VertexId};
