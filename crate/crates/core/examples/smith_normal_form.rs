//! Exact linear algebra: kernels over F_p and abelian groups from integer
//! presentations.

use gorenstein_k::exactla::{group_from_presentation, rank_kernel, smith_normal_form, Fp, Mat, MatZ};

fn main() {
    let m = Mat::from_i64(&Fp::new(7), &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]]);
    let (rank, kernel) = rank_kernel(&m);
    println!("rank {rank}, kernel {kernel:?}");

    let rel = MatZ::from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]], 3);
    let s = smith_normal_form(&rel);
    println!("diagonal {:?}", s.diagonal());
    let g = group_from_presentation(&["a".into(), "b".into(), "c".into()], &rel);
    println!("Z^3 / relations = {g}");
}
