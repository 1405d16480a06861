//! The shipped algebra files, embedded at compile time.

use std::sync::Arc;

use crate::cli::{parse, AlgebraFile};
use crate::error::{Error, Result};
use crate::exactla::Fp;
use crate::presentation::FiniteDimAlgebra;

pub const NAMES: [&str; 6] = ["example61A", "example61B", "example62A", "example62B", "kx2", "semisimple2"];

pub fn text(name: &str) -> Option<&'static str> {
    Some(match name {
        "example61A" => include_str!("../algebras/example61A.alg"),
        "example61B" => include_str!("../algebras/example61B.alg"),
        "example62A" => include_str!("../algebras/example62A.alg"),
        "example62B" => include_str!("../algebras/example62B.alg"),
        "kx2" => include_str!("../algebras/kx2.alg"),
        "semisimple2" => include_str!("../algebras/semisimple2.alg"),
        _ => return None,
    })
}

pub fn file(name: &str) -> Result<AlgebraFile> {
    let t = text(name).ok_or_else(|| Error::InvalidQuiver(format!("no shipped algebra named {name}")))?;
    parse(t)
}

/// A shipped algebra over `GF(p)`; `None` keeps the declared field.
pub fn algebra(name: &str, p: Option<u64>) -> Result<Arc<FiniteDimAlgebra<Fp>>> {
    let f = file(name)?;
    let p = p.unwrap_or(f.field.characteristic);
    if p == 0 {
        return Err(Error::InvalidField(format!("{name} is declared over QQ")));
    }
    let field = crate::exactla::FieldSpec::prime(p)?;
    Ok(Arc::new(f.build(Fp::new(field.characteristic), f.max_len())?))
}
