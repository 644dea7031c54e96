use proptest::prelude::*;
use stratakit::exactla::{Field, Gf2, Gf3, Matrix, Rational, Subspace};

fn gf3_matrix(max: usize) -> impl Strategy<Value = Matrix<Gf3>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(0u64..3, r * c)
            .prop_map(move |v| Matrix::from_vec(r, c, v.into_iter().map(Gf3::new).collect()))
    })
}

fn q_matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max, 1..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..5, r * c).prop_map(move |v| Matrix::from_i64(r, c, &v))
    })
}

/// All vectors of `F^n` for a finite field.
fn all_vectors<F: Field>(n: usize) -> Vec<Vec<F>> {
    let elems = F::elements().unwrap();
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |x| {
                    let mut w = v.clone();
                    w.push(x.clone());
                    w
                })
            })
            .collect();
    }
    out
}

fn solve_matches_enumeration<F: Field>(a: &Matrix<F>, b: &[F]) {
    let bm = Matrix::from_vec(b.len(), 1, b.to_vec());
    let solutions: Vec<Vec<F>> = all_vectors::<F>(a.cols())
        .into_iter()
        .filter(|x| a.transpose().apply(x) == b)
        .collect();
    match Matrix::solve(a, &bm) {
        None => assert!(solutions.is_empty()),
        Some(s) => {
            let x = s.particular.transpose().row_vec(0);
            assert!(solutions.contains(&x));
            let q = F::elements().unwrap().len();
            assert_eq!(solutions.len(), q.pow(s.kernel.rows() as u32));
            for k in s.kernel.row_iter() {
                assert!(a.transpose().apply(k).iter().all(|v| v.is_zero()));
            }
        }
    }
}

proptest! {
    #[test]
    fn rref_is_idempotent(m in gf3_matrix(5)) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix);
    }

    #[test]
    fn rref_is_idempotent_over_q(m in q_matrix(4)) {
        let r = m.rref();
        prop_assert_eq!(r.matrix.rref().matrix, r.matrix);
    }

    #[test]
    fn rank_nullity(m in q_matrix(5)) {
        let k = m.kernel();
        prop_assert_eq!(m.cols(), m.rank() + k.rows());
        prop_assert!((&m * &k.transpose()).is_zero());
    }

    #[test]
    fn dimension_formula(a in gf3_matrix(4), b in gf3_matrix(4)) {
        let n = a.cols();
        let b = if b.cols() == n { b } else { Matrix::zeros(1, n) };
        let u = Subspace::row_space(&a);
        let v = Subspace::row_space(&b);
        let s = u.sum(&v).unwrap();
        let i = u.intersection(&v).unwrap();
        prop_assert_eq!(u.dim() + v.dim(), s.dim() + i.dim());
        prop_assert!(u.contains_subspace(&i) && v.contains_subspace(&i));
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&v));
    }

    #[test]
    fn quotient_is_consistent(a in gf3_matrix(4)) {
        let u = Subspace::row_space(&a);
        let q = u.quotient();
        prop_assert_eq!(&q.section * &q.projection, Matrix::identity(a.cols() - u.dim()));
        prop_assert!((u.basis() * &q.projection).is_zero());
        prop_assert_eq!(q.projection.rank(), a.cols() - u.dim());
    }

    #[test]
    fn solve_agrees_with_enumeration_gf2(
        rows in 1usize..4, cols in 1usize..5, seed in prop::collection::vec(0u64..2, 24)
    ) {
        let a = Matrix::from_vec(rows, cols, seed[..rows * cols].iter().map(|&v| Gf2::new(v)).collect());
        let b: Vec<Gf2> = seed[20..20 + rows].iter().map(|&v| Gf2::new(v)).collect();
        solve_matches_enumeration(&a, &b);
    }

    #[test]
    fn solve_agrees_with_enumeration_gf3(
        rows in 1usize..4, cols in 1usize..5, seed in prop::collection::vec(0u64..3, 24)
    ) {
        let a = Matrix::from_vec(rows, cols, seed[..rows * cols].iter().map(|&v| Gf3::new(v)).collect());
        let b: Vec<Gf3> = seed[20..20 + rows].iter().map(|&v| Gf3::new(v)).collect();
        solve_matches_enumeration(&a, &b);
    }
}
