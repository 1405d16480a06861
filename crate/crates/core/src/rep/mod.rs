//! Left modules as quiver representations: Hom spaces, covers, syzygies,
//! Ext, the `Hom(−, A)` duality and Krull–Schmidt decomposition.

mod decompose;
mod hom;
mod module;
mod resolution;

pub use decompose::{decompose, decompose_with_embeddings, is_indecomposable, is_local_endomorphism_ring, Summand};
pub use hom::{hom_basis, is_isomorphic, HomSpace};
pub use module::{Alg, Morphism, Quotient, Representation};
pub use resolution::{ext, Cover, Ext1Space, ExtResult, ShortExact};
pub(crate) use resolution::right_multiplication;
