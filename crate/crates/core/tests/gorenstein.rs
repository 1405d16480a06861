use std::sync::Arc;

use gorenstein_k::corpus;
use gorenstein_k::exactla::Fp;
use gorenstein_k::gorenstein::{
    default_dim_cap, dimension_report, gp_catalog, is_gp, CatalogVerdict, Dim, GPStatus, GorensteinStatus,
    DEFAULT_BOUND, DEFAULT_ITER_CAP,
};
use gorenstein_k::presentation::FiniteDimAlgebra;
use gorenstein_k::rep::{is_isomorphic, Representation};

fn alg(name: &str) -> Arc<FiniteDimAlgebra<Fp>> {
    corpus::algebra(name, None).unwrap()
}

fn catalog(name: &str) -> gorenstein_k::gorenstein::GPCatalog<Fp> {
    let a = alg(name);
    gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP).unwrap()
}

#[test]
fn reports() {
    for name in corpus::NAMES {
        let a = alg(name);
        let r = dimension_report(&a, DEFAULT_BOUND);
        eprintln!("{name}: {r:?}");
        if let Dim::Exact(g) = r.global_dim {
            match r.is_gorenstein {
                GorensteinStatus::Yes(d) => assert!(d <= g),
                other => panic!("{name}: finite global dimension but {other:?}"),
            }
        }
    }
    assert_eq!(dimension_report(&alg("kx2"), 6).is_gorenstein, GorensteinStatus::Yes(0));
    assert_eq!(dimension_report(&alg("semisimple2"), 6).global_dim, Dim::Exact(0));
}

#[test]
fn example61a_catalog() {
    let a = alg("example61A");
    let c = catalog("example61A");
    assert_eq!(c.report.is_gorenstein, GorensteinStatus::Yes(2));
    assert_eq!(c.verdict, CatalogVerdict::CMFinite);
    assert_eq!(c.items.len(), 1);
    let p = a.quiver().path_from_written(&["beta", "alpha"]).unwrap();
    let g = Representation::left_ideal(&a, &a.path_element(&p));
    assert!(is_isomorphic(&c.items[0], &g).unwrap().is_some());
}

#[test]
fn other_catalogs() {
    let k = catalog("kx2");
    assert_eq!(k.verdict, CatalogVerdict::CMFinite);
    assert_eq!(k.items.len(), 1);
    assert_eq!(k.items[0].total_dim(), 1);

    let c = catalog("example62A");
    assert!(c.report.global_dim.exact().is_some());
    assert_eq!(c.verdict, CatalogVerdict::CMFree);
    assert!(catalog("semisimple2").items.is_empty());
}

#[test]
fn simples_over_61a_are_not_gp() {
    let a = alg("example61A");
    let r = dimension_report(&a, DEFAULT_BOUND);
    let s = Representation::simple(&a, 0);
    let v = is_gp(&s, &r, DEFAULT_BOUND).unwrap();
    assert_eq!(v.status, GPStatus::NotGP);
}
