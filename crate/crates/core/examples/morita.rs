//! Bimodules and stable equivalences of Morita type over k[x]/(x²).

use gorenstein_k::corpus;
use gorenstein_k::morita::{check_frobenius_bimodule, check_semt, check_unit_counit_pd, tensor, Bimodule};
use gorenstein_k::rep::Representation;

fn main() -> gorenstein_k::Result<()> {
    let a = corpus::algebra("kx2", None)?;
    let m = Bimodule::regular(&a).direct_sum(&Bimodule::projective(&a, &a, 0, 0))?;
    println!("M = A + Ae⊗eA has dimension {}", m.total_dim());
    let f = check_frobenius_bimodule(&m)?;
    println!("Frobenius: {} (duals of dimension {} and {})", f.is_frobenius, f.left_dual_dim, f.right_dual_dim);

    let s = Representation::simple(&a, 0);
    println!("M ⊗ S has dims {:?}", tensor(&m, &s)?.dims());

    let semt = check_semt(&m, &m)?;
    println!("N ⊗ M ≅ A ⊕ P: {}, complement of dimension {}", semt.passed(), semt.left.complement().total_dim());
    let xs = vec![s, Representation::regular(&a)];
    let u = check_unit_counit_pd(&m, &m, &xs, &xs)?;
    for c in &u.unit {
        println!("    cokernel dims {:?}, projective: {}", c.dims, c.projective);
    }
    println!("unit/counit check passed: {}", u.passed());
    Ok(())
}
