//! Compare the invariants of two algebras, analyzing both concurrently.
//!
//!     cargo run --example compare [a.alg b.alg]

use gorenstein_k::analysis::Options;
use gorenstein_k::cli::load_algebra;
use gorenstein_k::exactla::AbelianGroupDescription;
use gorenstein_k::morita::compare_invariants;

fn main() -> gorenstein_k::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (x, y) = match args.as_slice() {
        [x, y] => (x.as_str(), y.as_str()),
        _ => ("example61A", "example61B"),
    };
    let a = load_algebra(x.as_ref(), None, None)?;
    let b = load_algebra(y.as_ref(), None, None)?;
    let c = compare_invariants(&a, &b, &Options::default())?;
    for row in [&c.left, &c.right] {
        let show = |g: &Option<_>| g.as_ref().map_or("not determined".to_string(), |g: &AbelianGroupDescription| g.to_string());
        let (k0, k1) = (show(&row.k0), show(&row.k1));
        println!("{:>12}: dim {:>2}, {:?}, {} GP classes, K0 {k0}, K1 {k1}", row.algebra, row.dim, row.cm, row.gp_classes);
    }
    println!("all invariants equal: {}", c.all_equal());
    Ok(())
}
