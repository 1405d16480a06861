//! Homological dimensions and the catalog of indecomposable Gorenstein
//! projectives for every shipped algebra.

use gorenstein_k::corpus;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, DEFAULT_ITER_CAP};

fn main() -> gorenstein_k::Result<()> {
    for name in corpus::NAMES {
        let a = corpus::algebra(name, None)?;
        let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP)?;
        let r = &c.report;
        println!(
            "{name}: dim {}, gldim {}, injdim {} / {}, {:?}",
            a.dim(),
            r.global_dim,
            r.self_inj_dim_left,
            r.self_inj_dim_right,
            r.is_gorenstein
        );
        println!("    {:?}", c.verdict);
        for g in &c.items {
            println!("    G with dims {:?} ({:?})", g.module().dims(), g.verdict().certificate);
        }
    }
    Ok(())
}
