//! Combinatorial tools for the diameter of pure simplicial complexes and
//! multicomplexes.

pub mod bounds;
pub mod caps;
pub mod clm;
pub mod complex;
pub mod constructions;
pub mod decomposability;
pub mod diameter;
pub mod error;
pub mod experiments;
pub mod nonrevisiting;

pub use complex::{Face, Facet, Graph, Multiset, PureComplex, PureMulticomplex, VertexId};
pub use error::{Error, Result};
