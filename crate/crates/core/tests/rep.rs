use std::sync::Arc;

use gorenstein_k::corpus;
use gorenstein_k::exactla::{Field, Fp, Mat};
use gorenstein_k::presentation::FiniteDimAlgebra;
use gorenstein_k::rep::{decompose, ext, hom_basis, is_isomorphic, Representation};

fn alg(name: &str) -> Arc<FiniteDimAlgebra<Fp>> {
    corpus::algebra(name, None).unwrap()
}

fn path_elem(a: &Arc<FiniteDimAlgebra<Fp>>, word: &[&str]) -> Vec<u64> {
    let p = a.quiver().path_from_written(word).unwrap();
    a.path_element(&p)
}

#[test]
fn projectives_add_up_to_the_algebra() {
    let a = alg("example61A");
    assert_eq!(a.dim(), 9);
    let total: usize = (0..2).map(|v| Representation::projective(&a, v).total_dim()).sum();
    assert_eq!(total, 9);
    let k = alg("kx2");
    assert_eq!(Representation::projective(&k, 0).total_dim(), 2);
    let s = alg("semisimple2");
    assert_eq!(Representation::projective(&s, 1).dims(), &[0, 1]);
}

#[test]
fn yoneda_dimensions() {
    for name in ["example61A", "example61B", "example62A", "kx2"] {
        let a = alg(name);
        let reg = Representation::regular(&a);
        let m = reg.direct_sum(&Representation::simple(&a, 0));
        for v in 0..a.vertex_count() {
            let p = Representation::projective(&a, v);
            assert_eq!(hom_basis(&p, &m).dim(), m.dim_at(v), "{name} vertex {v}");
        }
    }
}

#[test]
fn small_hom_spaces() {
    let a = alg("example61A");
    assert_eq!(hom_basis(&Representation::simple(&a, 0), &Representation::simple(&a, 1)).dim(), 0);
    let k = alg("kx2");
    let s = Representation::simple(&k, 0);
    let r = Representation::regular(&k);
    assert_eq!(hom_basis(&s, &r).dim(), 1);
}

#[test]
fn isomorphism_tests() {
    let a = alg("example61A");
    let p1 = Representation::projective(&a, 0);
    let p2 = Representation::projective(&a, 1);
    assert!(is_isomorphic(&p1, &p1).unwrap().is_some());
    assert!(is_isomorphic(&p1, &p2).unwrap().is_none());
    // a scrambled copy of P(1) ⊕ S(2) is still isomorphic
    let f = *a.field();
    let m = p1.direct_sum(&Representation::simple(&a, 1));
    let g: Vec<Mat<Fp>> = m
        .dims()
        .iter()
        .map(|&d| {
            let mut x = Mat::identity(&f, d);
            for i in 0..d {
                for j in 0..d {
                    if i < j {
                        x.set(i, j, f.from_i64((i + 2 * j) as i64));
                    }
                }
            }
            x
        })
        .collect();
    let maps: Vec<Mat<Fp>> = a
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, ar)| g[ar.target].mul(m.map(i)).mul(&g[ar.source].inverse().unwrap()))
        .collect();
    let n = Representation::new(a.clone(), m.dims().to_vec(), maps).unwrap();
    let w = is_isomorphic(&m, &n).unwrap().expect("isomorphic");
    assert!(m.is_morphism_to(&n, &w) && w.is_iso());
}

#[test]
fn decompositions() {
    let a = alg("example61A");
    let p1 = Representation::projective(&a, 0);
    let d = decompose(&p1.direct_sum(&p1)).unwrap();
    assert_eq!(d.len(), 1);
    assert_eq!(d[0].multiplicity, 2);
    assert!(is_isomorphic(&d[0].module, &p1).unwrap().is_some());

    let s = Representation::simple(&a, 1);
    let d = decompose(&s).unwrap();
    assert_eq!((d.len(), d[0].multiplicity), (1, 1));

    let k = alg("kx2");
    let reg = Representation::regular(&k);
    let simple = Representation::simple(&k, 0);
    let d = decompose(&reg.direct_sum(&simple)).unwrap();
    assert_eq!(d.len(), 2);
    assert_eq!(d[0].module.total_dim(), 1);
    assert_eq!(d[1].module.total_dim(), 2);
    assert!(d.iter().all(|s| s.multiplicity == 1));
}

#[test]
fn covers_and_syzygies() {
    let a = alg("example61A");
    for v in 0..2 {
        let p = Representation::projective(&a, v);
        let c = p.projective_cover();
        assert_eq!(c.projective.total_dim(), p.total_dim());
        assert!(p.syzygy(1).is_zero());
        let s = Representation::simple(&a, v);
        let cs = s.projective_cover();
        assert!(is_isomorphic(&cs.projective, &p).unwrap().is_some());
        assert!(cs.epi.is_surjective());
    }
    let k = alg("kx2");
    let s = Representation::simple(&k, 0);
    assert!(is_isomorphic(&s.syzygy(1), &s).unwrap().is_some());
    assert_eq!(s.projective_cover().projective.total_dim(), 2);
}

#[test]
fn ext_groups() {
    let k = alg("kx2");
    let s = Representation::simple(&k, 0);
    let e = ext(&s, &s, 1).unwrap();
    assert_eq!(e.dimension, 1);
    assert!(is_isomorphic(&e.representatives[0], &Representation::regular(&k)).unwrap().is_some());
    assert_eq!(ext(&s, &s, 0).unwrap().dimension, hom_basis(&s, &s).dim());

    let a = alg("example61A");
    let p = Representation::projective(&a, 1);
    for n in 1..4 {
        assert_eq!(ext(&p, &Representation::simple(&a, 0), n).unwrap().dimension, 0);
    }
}

#[test]
fn ext_middle_terms_are_exact() {
    let a = alg("example61A");
    let f = *a.field();
    for v in 0..2 {
        let m = Representation::simple(&a, v);
        let n = Representation::regular(&a);
        let e = m.ext1(&n).unwrap();
        for i in 0..e.dim() {
            let mut c = vec![0; e.dim()];
            c[i] = f.one();
            let ses = e.middle_term(&c);
            assert!(n.is_morphism_to(&ses.middle, &ses.inc));
            assert!(ses.middle.is_morphism_to(&m, &ses.proj));
            assert!(ses.inc.is_injective() && ses.proj.is_surjective());
            assert!(ses.proj.after(&ses.inc).is_zero());
            assert_eq!(ses.middle.total_dim(), m.total_dim() + n.total_dim());
        }
    }
}

#[test]
fn star_of_projectives_and_of_the_cyclic_ideal() {
    let a = alg("example61A");
    let op = a.opposite();
    for v in 0..2 {
        let st = Representation::projective(&a, v).star();
        let expected = Representation::projective(&op, v);
        assert!(is_isomorphic(&st, &expected).unwrap().is_some());
    }
    assert!(Representation::zero(&a).star().is_zero());
    let g = Representation::left_ideal(&a, &path_elem(&a, &["beta", "alpha"]));
    assert_eq!(g.dims(), &[1, 1]);
    let right = Representation::left_ideal(&op, &path_elem(&a, &["beta", "alpha"]));
    assert!(is_isomorphic(&g.star(), &right).unwrap().is_some());
    // total reflexivity
    let back = g.star().star().over(&a);
    assert!(is_isomorphic(&back, &g).unwrap().is_some());
}
