use std::sync::Arc;
use std::time::Instant;

use gorenstein_k::corpus;
use gorenstein_k::exactla::Fp;
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, GPCatalog, DEFAULT_ITER_CAP};
use gorenstein_k::ktheory::k0_gorenstein;
use gorenstein_k::presentation::FiniteDimAlgebra;
use gorenstein_k::rep::Representation;
use gorenstein_k::waldhausen::{build_wdata, build_wdata_with, gluing_check, k0_oracle, s2_faces, s3_check};

fn setup(name: &str) -> (Arc<FiniteDimAlgebra<Fp>>, GPCatalog<Fp>) {
    let a = corpus::algebra(name, None).unwrap();
    let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP).unwrap();
    (a, c)
}

#[test]
fn dual_numbers_universe_and_faces() {
    let (a, c) = setup("kx2");
    let t = Instant::now();
    let d = build_wdata(&c, &a, 2, 0).unwrap();
    eprintln!("kx2 build {:?}, {} objects, {} cofibrations", t.elapsed(), d.objects.len(), d.cofibrations.len());
    // 0, k, R, k², k⊕R, R²
    assert_eq!(d.objects.len(), 6);
    assert_eq!(d.weak_classes.len(), 3);
    let k = d.canonical(&Representation::simple(&a, 0)).unwrap().unwrap();
    let r = d.canonical(&Representation::regular(&a)).unwrap().unwrap();
    let z = d.zero_object();
    let faces = s2_faces(&d);
    assert!(faces.contains(&(k, r, k)), "socle embedding");
    assert!(faces.contains(&(z, r, r)));
    let kk = d.canonical(&Representation::simple(&a, 0).direct_sum(&Representation::simple(&a, 0))).unwrap().unwrap();
    assert!(faces.contains(&(k, kk, k)), "split");
    let g = k0_oracle(&d);
    assert_eq!(g.free_rank, 0);
    assert_eq!(g.invariant_factors_u64(), vec![2]);
}

#[test]
fn oracle_agrees_with_harvesting() {
    for name in ["example61A", "example62A", "kx2", "semisimple2"] {
        let (a, c) = setup(name);
        let t = Instant::now();
        let d = build_wdata(&c, &a, 2, 0).unwrap();
        let oracle = k0_oracle(&d);
        let k0 = k0_gorenstein(&a, &c, 0).unwrap().group;
        eprintln!("{name}: oracle {oracle}, harvested {k0} ({:?})", t.elapsed());
        assert!(oracle.same_group(&k0), "{name}");
    }
}

#[test]
fn cm_free_objects_are_all_weakly_trivial() {
    let (a, c) = setup("example62A");
    let d = build_wdata(&c, &a, 2, 0).unwrap();
    assert_eq!(d.weak_classes.len(), 1);
    assert!(k0_oracle(&d).is_trivial());
}

#[test]
fn weak_classes_of_example61a_are_multiplicities() {
    let (a, c) = setup("example61A");
    let d = build_wdata(&c, &a, 2, 0).unwrap();
    let mut ms: Vec<usize> = d.weak_classes.iter().map(|k| k[0]).collect();
    ms.sort();
    assert_eq!(ms, vec![0, 1, 2]);
}

#[test]
fn cokernel_choice_does_not_change_the_oracle() {
    for name in ["kx2", "example61A"] {
        let (a, c) = setup(name);
        let plain = k0_oracle(&build_wdata(&c, &a, 2, 0).unwrap());
        for t in [1u64, 7, 99] {
            let twisted = build_wdata_with(&c, &a, 2, 0, Some(t)).unwrap();
            assert_eq!(k0_oracle(&twisted), plain, "{name} twist {t}");
        }
    }
}

#[test]
fn s3_identities() {
    for name in ["kx2", "example61A"] {
        let (a, c) = setup(name);
        let d = build_wdata(&c, &a, 2, 0).unwrap();
        let r = s3_check(&d, 60, 3).unwrap();
        assert!(r.flags_checked > 0);
        assert!(r.failures.is_empty(), "{name}: {:?}", r.failures);
    }
}

#[test]
fn gluing_on_small_ladders() {
    for name in ["kx2", "example61A"] {
        let (a, c) = setup(name);
        let d = build_wdata(&c, &a, 2, 0).unwrap();
        let t = Instant::now();
        let r = gluing_check(&d, 40, 11).unwrap();
        eprintln!("{name} gluing {:?}", t.elapsed());
        assert!(r.counterexamples.is_empty(), "{name}: {:?}", r.counterexamples);
    }
}
