//! Representations over k[x]/(x²): projectives, simples, Hom, Ext and
//! Krull–Schmidt decomposition.

use gorenstein_k::corpus;
use gorenstein_k::rep::{decompose, ext, hom_basis, Representation};

fn main() -> gorenstein_k::Result<()> {
    let a = corpus::algebra("kx2", None)?;
    let p = Representation::projective(&a, 0);
    let s = Representation::simple(&a, 0);
    println!("P has dims {:?}, S has dims {:?}", p.dims(), s.dims());
    println!("dim Hom(P, S) = {}", hom_basis(&p, &s).dim());
    println!("dim Hom(S, P) = {}", hom_basis(&s, &p).dim());
    for n in 1..=3 {
        println!("dim Ext^{n}(S, S) = {}", ext(&s, &s, n)?.dimension);
    }
    let m = Representation::direct_sum_all(&a, &[s.clone(), p.clone(), s]);
    for part in decompose(&m)? {
        println!("summand {:?} x{} (projective: {})", part.module.dims(), part.multiplicity, part.module.is_projective());
    }
    Ok(())
}
