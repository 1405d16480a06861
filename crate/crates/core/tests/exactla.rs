use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use gorenstein_k::exactla::{
    group_from_presentation, rank_kernel, smith_normal_form, solve, Field, FieldSpec, Fp, Mat, MatZ, Rationals,
};

fn fp(p: u64, rows: &[Vec<i64>]) -> Mat<Fp> {
    Mat::from_i64(&Fp::new(p), rows)
}

fn mat_vec(m: &Mat<Fp>, v: &[u64]) -> Vec<u64> {
    m.mul_vec(v)
}

#[test]
fn rank_kernel_examples() {
    let (r, k) = rank_kernel(&Mat::identity(&Fp::new(5), 3));
    assert_eq!((r, k.len()), (3, 0));
    let (r, k) = rank_kernel(&Mat::zeros(&Fp::new(5), 2, 3));
    assert_eq!((r, k.len()), (0, 3));
    let (r, k) = rank_kernel(&fp(5, &[vec![1, 2], vec![2, 4]]));
    assert_eq!(r, 1);
    assert_eq!(k, vec![vec![3, 1]]);
}

#[test]
fn solve_examples() {
    let f = Fp::new(7);
    assert_eq!(solve(&Mat::identity(&f, 2), &[3, 4]), Some(vec![3, 4]));
    assert_eq!(solve(&Mat::zeros(&f, 2, 2), &[1, 0]), None);
    assert_eq!(solve(&fp(7, &[vec![2, 0], vec![0, 3]]), &[1, 1]), Some(vec![4, 5]));
}

#[test]
fn rationals_are_exact() {
    let q = Rationals;
    let m = Mat::from_i64(&q, &[vec![2, 1], vec![1, 3]]);
    let x = solve(&m, &[q.one(), q.zero()]).unwrap();
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    assert_eq!(x, vec![r(3, 5), r(-1, 5)]);
    assert_eq!(FieldSpec::rationals().to_string(), "QQ");
    assert!(FieldSpec::prime(9).is_err());
}

fn check_snf(m: &MatZ) {
    let s = smith_normal_form(m);
    assert_eq!(s.u.mul(m).mul(&s.v), s.s);
    assert!(s.s.is_diagonal());
    assert!(s.u.det().abs().is_one());
    assert!(s.v.det().abs().is_one());
    let d = s.diagonal();
    for w in d.windows(2) {
        assert!(!w[0].is_negative());
        if !w[0].is_zero() {
            assert!((&w[1] % &w[0]).is_zero(), "{d:?}");
        } else {
            assert!(w[1].is_zero());
        }
    }
}

#[test]
fn smith_examples() {
    let s = smith_normal_form(&MatZ::identity(2));
    assert_eq!(s.diagonal(), vec![BigInt::one(), BigInt::one()]);
    let m = MatZ::from_i64(&[vec![2, 0], vec![0, 3]], 2);
    check_snf(&m);
    assert_eq!(smith_normal_form(&m).diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    let g = group_from_presentation(&["g".into()], &MatZ::from_i64(&[vec![2]], 1));
    assert_eq!(g.invariant_factors, vec![BigInt::from(2)]);
    assert_eq!(g.to_string(), "Z/2");
}

#[test]
fn presentation_examples() {
    let g = group_from_presentation(&["g".into()], &MatZ::zeros(0, 1));
    assert_eq!((g.free_rank, g.invariant_factors.len()), (1, 0));
    let g = group_from_presentation(&["a".into(), "b".into()], &MatZ::from_i64(&[vec![1, -1]], 2));
    assert_eq!((g.free_rank, g.invariant_factors.len()), (1, 0));
    assert_eq!(g.generators, vec!["a".to_string(), "b".to_string()]);
}

#[test]
fn no_overflow() {
    // entries far beyond 64 bits
    let big = BigInt::from(u64::MAX) * BigInt::from(u64::MAX);
    let m = MatZ::from_rows(vec![vec![big.clone(), BigInt::zero()], vec![BigInt::zero(), big.clone() * 2]], 2);
    check_snf(&m);
    let g = group_from_presentation(&["a".into(), "b".into()], &m);
    assert_eq!(g.order(), Some(&big * &big * 2));
}

/// Order of `Z^n / rowspace(rows)` by brute force: with `D` the absolute
/// value of a nonzero maximal minor, `D·Z^n` lies in the lattice, so the
/// quotient is `(Z/D)^n` modulo the subgroup generated by the rows.
fn coset_count(rows: &[Vec<i64>], n: usize) -> Option<u64> {
    assert_eq!(n, 2);
    let mut d = 0i64;
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let m = rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0];
            if m != 0 {
                d = m.abs();
                break;
            }
        }
        if d != 0 {
            break;
        }
    }
    if d == 0 {
        return None;
    }
    let md = |x: i64| x.rem_euclid(d);
    let mut seen: HashSet<(i64, i64)> = HashSet::from([(0, 0)]);
    let mut stack = vec![(0, 0)];
    while let Some((a, b)) = stack.pop() {
        for r in rows {
            let next = (md(a + r[0]), md(b + r[1]));
            if seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Some((d * d) as u64 / seen.len() as u64)
}

fn small_field() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7)]
}

fn matrix(max: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-3i64..4, r * c)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_kernel(p in small_field(), (r, c, data) in matrix(5)) {
        let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
        let m = fp(p, &rows);
        let (rank, ker) = rank_kernel(&m);
        prop_assert_eq!(rank + ker.len(), c);
        for v in &ker {
            prop_assert!(mat_vec(&m, v).iter().all(|&x| x == 0));
        }
        // canonical: reversing the rows does not change the basis
        let rev: Vec<Vec<i64>> = rows.iter().rev().cloned().collect();
        prop_assert_eq!(rank_kernel(&fp(p, &rev)).1, ker);
        prop_assert_eq!(m.transpose().rank(), rank);
        prop_assert!(rank <= r.min(c));
    }

    #[test]
    fn solve_agrees_with_rank(p in small_field(), (r, c, data) in matrix(4), b in prop::collection::vec(0u64..7, 4)) {
        let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
        let m = fp(p, &rows);
        let b: Vec<u64> = b[..r].iter().map(|x| x % p).collect();
        let aug = m.hstack(&Mat::from_columns(&Fp::new(p), r, &[b.clone()]));
        match solve(&m, &b) {
            Some(x) => {
                prop_assert_eq!(mat_vec(&m, &x), b);
                prop_assert_eq!(aug.rank(), m.rank());
            }
            None => prop_assert_eq!(aug.rank(), m.rank() + 1),
        }
    }

    #[test]
    fn smith_certificate((r, c, data) in matrix(4)) {
        let rows: Vec<Vec<i64>> = data.chunks(c).map(<[i64]>::to_vec).collect();
        check_snf(&MatZ::from_i64(&rows, c));
        let _ = r;
    }

    #[test]
    fn cokernel_order_matches_cosets(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 2), 1..4)) {
        let names = vec!["a".to_string(), "b".to_string()];
        let g = group_from_presentation(&names, &MatZ::from_i64(&rows, 2));
        for d in &g.invariant_factors {
            prop_assert!(*d >= BigInt::from(2));
        }
        for w in g.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        match coset_count(&rows, 2) {
            Some(n) if n <= 512 => prop_assert_eq!(g.order().and_then(|o| o.to_u64()), Some(n)),
            Some(_) => {}
            None => prop_assert!(g.free_rank > 0),
        }
    }
}
