//! Exact linear algebra over prime fields and the rationals, plus integer
//! Smith normal form for abelian group presentations.

pub mod field;
pub mod mat;
pub mod matz;

pub use field::{Field, FieldSpec, Fp, Rationals};
pub use mat::{EchelonSpace, Mat, Rref};
pub use matz::{group_from_presentation, smith_normal_form, AbelianGroupDescription, MatZ, Smith};

/// `(rank, kernel basis)` of `m`; see [`Mat::rank_kernel`].
pub fn rank_kernel<F: Field>(m: &Mat<F>) -> (usize, Vec<Vec<F::Elem>>) {
    m.rank_kernel()
}

/// A solution of `a x = b` if one exists.
pub fn solve<F: Field>(a: &Mat<F>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    a.solve(b)
}
