//! Quivers, admissible relations and the finite-dimensional algebras they present.

mod algebra;
mod quiver;

pub use algebra::{build_algebra, FiniteDimAlgebra, Sparse};
pub use quiver::{enumerate_paths, Arrow, Path, Quiver, RelationElem};
