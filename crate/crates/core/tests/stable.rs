use std::sync::Arc;

use gorenstein_k::corpus;
use gorenstein_k::exactla::{Field, Fp};
use gorenstein_k::gorenstein::{default_dim_cap, gp_catalog, GpModule, DEFAULT_ITER_CAP};
use gorenstein_k::presentation::FiniteDimAlgebra;
use gorenstein_k::rep::{hom_basis, Representation};
use gorenstein_k::stable::{is_weakly_equivalent, stable_end_algebra, stable_hom, FinDimRing};
use proptest::prelude::*;

fn alg(name: &str) -> Arc<FiniteDimAlgebra<Fp>> {
    corpus::algebra(name, None).unwrap()
}

fn g61() -> GpModule<Fp> {
    let a = alg("example61A");
    let c = gp_catalog(&a, default_dim_cap(a.dim()), DEFAULT_ITER_CAP).unwrap();
    c.items[0].clone()
}

#[test]
fn projective_sources_are_stably_zero() {
    let a = alg("example61A");
    let m = Representation::regular(&a).direct_sum(&Representation::simple(&a, 1));
    for v in 0..2 {
        assert_eq!(stable_hom(&Representation::projective(&a, v), &m).unwrap().dim(), 0);
    }
}

#[test]
fn stable_hom_of_simple_over_dual_numbers() {
    // the only composite k → regular → k is zero, so nothing is killed
    let k = alg("kx2");
    let s = Representation::simple(&k, 0);
    let h = stable_hom(&s, &s).unwrap();
    assert_eq!(h.dim(), 1);
    assert_eq!(hom_basis(&s, &s).dim(), 1);
}

#[test]
fn stable_end_of_the_cyclic_ideal_is_the_field() {
    let g = g61();
    assert_eq!(stable_hom(&g, &g).unwrap().dim(), 1);
    let e = stable_end_algebra(&g).unwrap();
    assert_eq!(e.dim(), 1);
    assert!(e.ring.check_associativity() && e.ring.check_unit());
    assert!(!e.ring.is_zero(&e.ring.one()));

    let p = GpModule::projective(Representation::projective(g.algebra(), 0)).unwrap();
    assert_eq!(stable_end_algebra(&p).unwrap().dim(), 0);
}

#[test]
fn weak_equivalences() {
    let g = g61();
    let a = g.algebra().clone();
    let p0 = Representation::projective(&a, 0);
    let gp = GpModule::projective(p0.clone()).unwrap();
    let sum = g.module().direct_sum(&p0);
    let report = gorenstein_k::gorenstein::dimension_report(&a, 6);
    let sum = GpModule::certify(sum, &report, 6).unwrap();
    let w = is_weakly_equivalent(&g, &sum).unwrap();
    assert!(w.equivalent && w.witness.is_some());

    let zero = GpModule::projective(Representation::zero(&a)).unwrap();
    assert!(is_weakly_equivalent(&gp, &zero).unwrap().equivalent);
    assert!(!is_weakly_equivalent(&g, &gp).unwrap().equivalent);
}

#[test]
fn truncated_polynomial_rings() {
    let f = Fp::new(3);
    let r = FinDimRing::truncated_polynomial(&f, 3);
    assert!(r.check_associativity() && r.is_commutative());
    assert!(r.is_local().unwrap());
    let (n, g) = r.unit_group(1 << 16).unwrap().unwrap();
    // (F_3[t]/t^3)^× ≅ F_3^× × (1 + tF_3[t]) ≅ Z/2 × Z/3 × Z/3
    assert_eq!(n, 18);
    assert_eq!(g.invariant_factors_u64(), vec![3, 6]);
    let x = r.add(&r.one(), &r.basis(1));
    let y = r.inverse(&x).unwrap();
    assert_eq!(r.mul(&x, &y), r.one());
    assert!(r.inverse(&r.basis(1)).is_none());

    let prod = {
        // F_3 × F_3 as the diagonal algebra
        let z = f.zero();
        let o = f.one();
        let t = vec![vec![vec![o, z], vec![z, z]], vec![vec![z, z], vec![z, o]]];
        FinDimRing::new(&f, t, vec![o, o])
    };
    assert!(!prod.is_local().unwrap());
}

fn gp_pool() -> Vec<Representation<Fp>> {
    let g = g61();
    let a = g.algebra().clone();
    vec![g.module().clone(), Representation::projective(&a, 0), Representation::projective(&a, 1)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn stable_hom_is_additive(i in 0usize..3, j in 0usize..3, k in 0usize..3) {
        let pool = gp_pool();
        let (m, m2, n) = (&pool[i], &pool[j], &pool[k]);
        let lhs = stable_hom(&m.direct_sum(m2), n).unwrap().dim();
        let rhs = stable_hom(m, n).unwrap().dim() + stable_hom(m2, n).unwrap().dim();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn witness_agrees_with_stripping(xs in proptest::collection::vec(0usize..3, 0..3),
                                     ys in proptest::collection::vec(0usize..3, 0..3)) {
        let pool = gp_pool();
        let a = pool[1].algebra().clone();
        let report = gorenstein_k::gorenstein::dimension_report(&a, 6);
        let build = |v: &[usize]| {
            let parts: Vec<_> = v.iter().map(|&i| pool[i].clone()).collect();
            GpModule::certify(Representation::direct_sum_all(&a, &parts), &report, 6).unwrap()
        };
        let (x, y) = (build(&xs), build(&ys));
        let w = is_weakly_equivalent(&x, &y).unwrap();
        prop_assert_eq!(w.equivalent, w.witness.is_some());
        let gx = xs.iter().filter(|&&i| i == 0).count();
        let gy = ys.iter().filter(|&&i| i == 0).count();
        prop_assert_eq!(w.equivalent, gx == gy);
    }

    #[test]
    fn stable_end_is_associative(n in 1usize..3) {
        let g = g61();
        let parts = vec![g.module().clone(); n];
        let a = g.algebra().clone();
        let report = gorenstein_k::gorenstein::dimension_report(&a, 6);
        let m = GpModule::certify(Representation::direct_sum_all(&a, &parts), &report, 6).unwrap();
        let e = stable_end_algebra(&m).unwrap();
        prop_assert_eq!(e.dim(), n * n);
        prop_assert!(e.ring.check_associativity() && e.ring.check_unit());
    }
}

#[test]
fn units_of_the_field() {
    let f = Fp::new(5);
    let r = FinDimRing::ground(&f);
    let (n, g) = r.unit_group(1 << 16).unwrap().unwrap();
    assert_eq!(n, 4);
    assert_eq!(g.invariant_factors_u64(), vec![4]);
    assert!(r.is_unit(&r.scalar(&f.from_i64(2))));
}
