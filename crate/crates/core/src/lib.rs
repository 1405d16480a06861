//! Gorenstein projective modules, stable categories and the K-theory of
//! their Waldhausen structure, over finite-dimensional quiver algebras.

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod gorenstein;
pub mod ktheory;
pub mod morita;
pub mod presentation;
pub mod rep;
pub mod stable;
pub mod waldhausen;

pub use error::{Error, Result};
