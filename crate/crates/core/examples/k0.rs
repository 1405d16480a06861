//! K0 of the Gorenstein projectives, from relations harvested out of
//! short exact sequences, with the relations that produced it.

use gorenstein_k::corpus;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, DEFAULT_ITER_CAP};
use gorenstein_k::ktheory::k0_gorenstein;

fn main() -> gorenstein_k::Result<()> {
    for name in ["kx2", "example61A", "example61B", "example62A"] {
        let a = corpus::algebra(name, None)?;
        let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP)?;
        let k0 = k0_gorenstein(&a, &c, 0)?;
        println!("{name}: K0 = {} on generators {:?}", k0.group, k0.group.generators);
        let mut rows: Vec<Vec<i64>> = k0.relations.iter().map(|r| r.row()).filter(|r| r.iter().any(|&x| x != 0)).collect();
        rows.sort();
        rows.dedup();
        println!("    {} sequences harvested, distinct nonzero relations {rows:?}", k0.relations.len());
    }
    Ok(())
}
