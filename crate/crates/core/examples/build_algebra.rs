//! Parse an algebra description, build the quotient kQ/I and look at it.
//!
//!     cargo run --example build_algebra [file.alg]

use std::sync::Arc;

use gorenstein_k::cli::{load_file, parse};
use gorenstein_k::exactla::Fp;
use gorenstein_k::presentation::enumerate_paths;

const TEXT: &str = "\
algebra cyclic3 over GF(5)
vertices 1 2 3
arrow a : 1 -> 2
arrow b : 2 -> 3
arrow c : 3 -> 1
relation c*b*a = 0
relation a*c*b = 0
relation b*a*c = 0
";

fn main() -> gorenstein_k::Result<()> {
    let file = match std::env::args().nth(1) {
        Some(path) => load_file(path.as_ref())?,
        None => parse(TEXT)?,
    };
    print!("canonical form:\n{}", file.to_text());
    let a = Arc::new(file.build(Fp::new(file.field.characteristic), 16)?);
    println!("dimension {}, monomial: {}", a.dim(), a.is_monomial());
    let q = a.quiver();
    let paths: Vec<String> = enumerate_paths(q, 2).iter().map(|p| p.written(q)).collect();
    println!("paths of length <= 2 in the quiver: {}", paths.join(", "));
    println!("associative: {}", a.check_associativity());
    println!("opposite has dimension {}", a.opposite().dim());
    Ok(())
}
