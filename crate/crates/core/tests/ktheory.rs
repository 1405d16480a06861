use std::sync::Arc;

use gorenstein_k::corpus;
use gorenstein_k::exactla::{Field, Fp};
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, GPCatalog, DEFAULT_ITER_CAP};
use gorenstein_k::ktheory::{
    elementary, k0_gorenstein, k1_gorenstein, ring_identity, ring_matrix_inverse, ring_matrix_mul,
    whitehead_reduce, RingMatrix,
};
use gorenstein_k::presentation::FiniteDimAlgebra;
use gorenstein_k::stable::FinDimRing;
use proptest::prelude::*;

fn alg(name: &str) -> Arc<FiniteDimAlgebra<Fp>> {
    corpus::algebra(name, None).unwrap()
}

fn cat(a: &Arc<FiniteDimAlgebra<Fp>>) -> GPCatalog<Fp> {
    gp_catalog(a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP).unwrap()
}

/// Leibniz expansion; independent of the elimination in the library.
fn leibniz(r: &FinDimRing<Fp>, m: &RingMatrix<u64>) -> Vec<u64> {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = r.zero();
    loop {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = r.one();
        for i in 0..n {
            term = r.mul(&term, &m[i][perm[i]]);
        }
        total = if inversions % 2 == 0 { r.add(&total, &term) } else { r.sub(&total, &term) };
        // next permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| perm[k] < perm[k + 1]) else { break };
        let l = (k + 1..n).rev().find(|&l| perm[k] < perm[l]).unwrap();
        perm.swap(k, l);
        perm[k + 1..].reverse();
    }
    total
}

#[test]
fn k0_of_the_dual_numbers() {
    let a = alg("kx2");
    let k0 = k0_gorenstein(&a, &cat(&a), 0).unwrap();
    assert_eq!(k0.group.free_rank, 0);
    assert_eq!(k0.group.invariant_factors_u64(), vec![2]);
}

#[test]
fn k0_of_cm_free_algebras_is_trivial() {
    for name in ["example62A", "example62B", "semisimple2"] {
        let a = alg(name);
        let c = cat(&a);
        assert!(c.items.is_empty(), "{name}");
        assert!(k0_gorenstein(&a, &c, 0).unwrap().group.is_trivial(), "{name}");
        assert!(k1_gorenstein(&a, &c).unwrap().group.unwrap().is_trivial(), "{name}");
    }
}

#[test]
fn k0_of_example61a() {
    // the sequence 0 → G → A e_1 → G → 0 forces 2[G] = 0
    let a = alg("example61A");
    let k0 = k0_gorenstein(&a, &cat(&a), 0).unwrap();
    assert_eq!(k0.group.generators.len(), 1);
    assert!(k0.relations.iter().any(|r| r.row() == vec![-2]));
}

#[test]
fn harvested_rows_reverify() {
    let a = alg("kx2");
    let c = cat(&a);
    let g = c.items[0].module().clone();
    let e = g.ext1(&g).unwrap();
    let f = *a.field();
    for i in 1..f.order().unwrap() {
        let ses = e.middle_term(&[f.element(i)]);
        assert!(ses.inc.is_injective() && ses.proj.is_surjective());
        assert!(ses.proj.after(&ses.inc).is_zero());
        assert_eq!(ses.middle.total_dim(), 2 * g.total_dim());
        assert!(ses.middle.is_projective());
    }
}

#[test]
fn k1_examples() {
    let a = alg("example61A");
    let k1 = k1_gorenstein(&a, &cat(&a)).unwrap();
    assert_eq!(k1.order, Some(4));
    assert_eq!(k1.group.unwrap().invariant_factors_u64(), vec![4]);

    let k = alg("kx2");
    let k1 = k1_gorenstein(&k, &cat(&k)).unwrap();
    assert_eq!(k1.order, Some(2));
}

#[test]
fn whitehead_basics() {
    let f = Fp::new(5);
    let r = FinDimRing::truncated_polynomial(&f, 2);
    let u = r.add(&r.scalar(&2), &r.basis(1));
    let mut d = ring_identity(&r, 2);
    d[0][0] = u.clone();
    assert_eq!(whitehead_reduce(&r, &d).unwrap().unit, u);
    let e = elementary(&r, 3, 0, 2, &r.add(&r.scalar(&3), &r.basis(1)));
    assert_eq!(whitehead_reduce(&r, &e).unwrap().unit, r.one());
    let v = r.scalar(&3);
    let mut dv = ring_identity(&r, 2);
    dv[0][0] = u.clone();
    dv[1][1] = v.clone();
    assert_eq!(whitehead_reduce(&r, &dv).unwrap().unit, r.mul(&u, &v));
    // singular
    let mut s = ring_identity(&r, 2);
    s[1][1] = r.basis(1);
    assert!(whitehead_reduce(&r, &s).is_err());
}

fn ring_strategy() -> impl Strategy<Value = Vec<u64>> {
    proptest::collection::vec(0u64..3, 2)
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = RingMatrix<u64>> {
    proptest::collection::vec(proptest::collection::vec(ring_strategy(), n), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_matches_leibniz(m in matrix_strategy(3)) {
        let f = Fp::new(3);
        let r = FinDimRing::truncated_polynomial(&f, 2);
        let det = leibniz(&r, &m);
        match whitehead_reduce(&r, &m) {
            Ok(c) => prop_assert_eq!(c.unit, det),
            Err(_) => {
                prop_assert!(!r.is_unit(&det));
                prop_assert!(ring_matrix_inverse(&r, &m).is_none());
            }
        }
    }

    #[test]
    fn reduction_is_multiplicative(m in matrix_strategy(3), n in matrix_strategy(3)) {
        let f = Fp::new(3);
        let r = FinDimRing::truncated_polynomial(&f, 2);
        if let (Ok(a), Ok(b)) = (whitehead_reduce(&r, &m), whitehead_reduce(&r, &n)) {
            let mn = ring_matrix_mul(&r, &m, &n);
            prop_assert_eq!(whitehead_reduce(&r, &mn).unwrap().unit, r.mul(&a.unit, &b.unit));
        }
    }

    #[test]
    fn elementary_factors_do_not_change_the_class(m in matrix_strategy(3), i in 0usize..3, j in 0usize..3, l in ring_strategy(), left in any::<bool>()) {
        prop_assume!(i != j);
        let f = Fp::new(3);
        let r = FinDimRing::truncated_polynomial(&f, 2);
        if let Ok(c) = whitehead_reduce(&r, &m) {
            let e = elementary(&r, 3, i, j, &l);
            let p = if left { ring_matrix_mul(&r, &e, &m) } else { ring_matrix_mul(&r, &m, &e) };
            prop_assert_eq!(whitehead_reduce(&r, &p).unwrap().unit, c.unit);
        }
    }

    #[test]
    fn k0_is_independent_of_harvest_seed(seed in any::<u64>()) {
        let a = alg("kx2");
        let c = cat(&a);
        let x = k0_gorenstein(&a, &c, seed).unwrap();
        prop_assert_eq!(x.group.invariant_factors_u64(), vec![2]);
    }
}

#[test]
fn relation_order_does_not_matter() {
    use gorenstein_k::exactla::{group_from_presentation, MatZ};
    use num_bigint::BigInt;
    let a = alg("kx2");
    let k0 = k0_gorenstein(&a, &cat(&a), 0).unwrap();
    let mut rows: Vec<Vec<BigInt>> = k0.relations.iter().map(|r| r.row().into_iter().map(BigInt::from).collect()).collect();
    rows.reverse();
    let n = k0.group.generators.len();
    let g = group_from_presentation(&k0.group.generators, &MatZ::from_rows(rows, n));
    assert!(g.same_group(&k0.group));
}
