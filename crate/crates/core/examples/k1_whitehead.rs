//! K1: Whitehead reduction of invertible matrices over a local ring, and the
//! Gorenstein K1 of the shipped algebras over several fields.

use gorenstein_k::corpus;
use gorenstein_k::exactla::Fp;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, DEFAULT_ITER_CAP};
use gorenstein_k::ktheory::{elementary, k1_gorenstein, ring_identity, ring_matrix_mul, whitehead_reduce};
use gorenstein_k::stable::FinDimRing;

fn main() -> gorenstein_k::Result<()> {
    // Λ = F_3[t]/(t²); M = diag(1 + t, 2) · E_01(t)
    let r = FinDimRing::truncated_polynomial(&Fp::new(3), 2);
    let mut d = ring_identity(&r, 2);
    d[0][0] = r.add(&r.one(), &r.basis(1));
    d[1][1] = r.scalar(&2);
    let m = ring_matrix_mul(&r, &d, &elementary(&r, 2, 0, 1, &r.basis(1)));
    println!("class of M in K1(Λ) = Λ^×: {:?}", whitehead_reduce(&r, &m)?.unit);

    for q in [3, 5, 7] {
        let a = corpus::algebra("example61A", Some(q))?;
        let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP)?;
        let k1 = k1_gorenstein(&a, &c)?;
        println!("example61A over GF({q}): K1 = {}", k1.group.map(|g| g.to_string()).unwrap_or("?".into()));
    }
    Ok(())
}
