//! The finite Waldhausen model: K0 from exhaustive S_2 enumeration, the
//! S_3 face identities and the gluing axiom on random ladders.

use gorenstein_k::corpus;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, DEFAULT_ITER_CAP};
use gorenstein_k::ktheory::k0_gorenstein;
use gorenstein_k::waldhausen::{build_wdata, gluing_check, k0_oracle, s2_faces, s3_check, weak_class_names};

fn main() -> gorenstein_k::Result<()> {
    for name in ["kx2", "example61A"] {
        let a = corpus::algebra(name, None)?;
        let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP)?;
        let d = build_wdata(&c, &a, 2, 0)?;
        println!("{name}: {} objects, {} cofibrations, weak classes {:?}", d.objects.len(), d.cofibrations.len(), weak_class_names(&d));
        println!("    {} 2-simplices", s2_faces(&d).len());
        println!("    oracle K0 = {}, harvested K0 = {}", k0_oracle(&d), k0_gorenstein(&a, &c, 0)?.group);
        let s3 = s3_check(&d, 50, 1)?;
        println!("    S_3: {} flags, {} failures", s3.flags_checked, s3.failures.len());
        let g = gluing_check(&d, 50, 1)?;
        println!("    gluing: {} ladders, {} counterexamples", g.trials, g.counterexamples.len());
    }
    Ok(())
}
