//! Quiver mutation engine: exchange-matrix mutation, canonical
//! forms, mutation-class enumeration and the finiteness decision, block
//! decompositions, exact seed mutation over Laurent polynomials, a catalog
//! of named quivers and a suite of machine-checked claims about them.

pub mod blocks;
pub mod canon;
pub mod catalog;
pub mod error;
pub mod io;
pub mod laurent;
pub mod mutclass;
pub mod quiver;
pub mod seeds;
pub mod verify;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm, Canonicalizer};
pub use error::{AssemblyError, CatalogError, QuiverError, SearchError, SeedError};
pub use quiver::{Quiver, VertexSet};
