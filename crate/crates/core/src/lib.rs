//! Construction, validation, analysis, transformation and exhaustive
//! enumeration of elliptic triangulations of the 2-sphere and of discs.
//!
//! A triangulation is *elliptic* when every vertex degree is at most six;
//! boundary vertices of a disc count their incident edges plus two. The
//! crate provides the combinatorial data model (`surface`), degree and type
//! analysis (`analysis`), constructive patch machinery (`builder`),
//! closed-form counts (`formulas`), local rewrites and gluings
//! (`rewrites`), the embedded table fixtures (`catalog`), isomorph-free
//! exhaustive generation (`enumerate`) and the existence atlas (`atlas`).

pub mod analysis;
pub mod atlas;
pub mod builder;
pub mod catalog;
pub mod enumerate;
pub mod export;
pub mod formulas;
pub mod rewrites;
pub mod surface;

pub use surface::{ClosedTriangulation, Patch, Surface, VertexId};
