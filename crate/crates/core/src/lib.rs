#![allow(clippy::needless_range_loop)]

pub mod conformance;
pub mod document;
pub mod error;
pub mod fd;
pub mod galois;
pub mod graph;
pub mod lattice;
pub mod points;
pub mod quasiorbit;
pub mod spectrum;
pub mod topo;

pub use error::{Error, Result};
pub use lattice::{Elem, FiniteLattice, FinitePoset, SetLattice};
pub use points::PointSet;
