//! The stable category: morphisms modulo projectives, weak equivalences
//! (stable isomorphisms) and the stable endomorphism ring.

use gorenstein_k::corpus;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, GpModule, DEFAULT_ITER_CAP};
use gorenstein_k::rep::{hom_basis, Representation};
use gorenstein_k::stable::{is_weakly_equivalent, stable_end_algebra, stable_hom};

fn main() -> gorenstein_k::Result<()> {
    let a = corpus::algebra("example61A", None)?;
    let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP)?;
    let g = &c.items[0];
    println!("Hom(G, G) has dimension {}", hom_basis(g, g).dim());
    println!("stable Hom(G, G) has dimension {}", stable_hom(g, g)?.dim());

    let p = Representation::projective(&a, 1);
    let gp = GpModule::certify(g.module().direct_sum(&p), &c.report, c.report.bound)?;
    let w = is_weakly_equivalent(g, &gp)?;
    println!("G ~ G + P: {} (witness found: {})", w.equivalent, w.witness.is_some());
    let zero = GpModule::projective(Representation::zero(&a))?;
    println!("G ~ 0: {}", is_weakly_equivalent(g, &zero)?.equivalent);

    let end = stable_end_algebra(g)?;
    println!("stable End(G): dimension {}, local: {}", end.dim(), end.ring.is_local()?);
    Ok(())
}
