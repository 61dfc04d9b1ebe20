use bihamil_core::matrix::{self, ExactMatrix};
use bihamil_core::univariate;
use bihamil_core::Gq;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix_strategy(max_rows: usize, max_cols: usize) -> impl Strategy<Value = ExactMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        // sparse entries make rank deficiency common
        prop::collection::vec(prop_oneof![3 => Just((0i64, 0i64)), 2 => (-3i64..=3, -2i64..=2)], r * c)
            .prop_map(move |v| ExactMatrix::from_fn(r, c, |i, j| Gq::from_ints(v[i * c + j].0, v[i * c + j].1)))
    })
}

/// Rank by cofactor expansion: the size of the largest nonzero minor.
fn rank_by_minors(m: &ExactMatrix) -> usize {
    fn det(m: &ExactMatrix, rows: &[usize], cols: &[usize]) -> Gq {
        if rows.len() == 1 {
            return m[(rows[0], cols[0])].clone();
        }
        let mut acc = Gq::zero();
        for (idx, &c) in cols.iter().enumerate() {
            let e = &m[(rows[0], c)];
            if e.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = e * &det(m, &rows[1..], &rest);
            if idx % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }
    for k in (1..=m.rows().min(m.cols())).rev() {
        for rows in subsets(m.rows(), k) {
            for cols in subsets(m.cols(), k) {
                if !det(m, &rows, &cols).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn rank_agrees_with_minors(m in matrix_strategy(4, 4)) {
        let r = rank_by_minors(&m);
        prop_assert_eq!(m.rank(), r);
        prop_assert_eq!(m.rref().1.len(), r);
    }

    #[test]
    fn rank_nullity(m in matrix_strategy(5, 6)) {
        let k = matrix::kernel_basis(&m);
        prop_assert_eq!(m.rank() + k.len(), m.cols());
        for v in &k {
            prop_assert!(matrix::is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn rank_is_stable_under_transpose_and_conjugation(m in matrix_strategy(5, 6)) {
        let r = m.rank();
        prop_assert_eq!(m.transpose().rank(), r);
        prop_assert_eq!(m.conjugate().rank(), r);
    }

    #[test]
    fn double_annihilator(m in matrix_strategy(4, 5)) {
        let sub = m.row_vectors();
        let ann = matrix::annihilator(&sub, m.cols());
        let back = matrix::annihilator(&ann, m.cols());
        let d = matrix::span_dim(&sub, m.cols());
        prop_assert_eq!(back.len(), d);
        prop_assert_eq!(matrix::span_dim(&[sub, back].concat(), m.cols()), d);
    }

    #[test]
    fn intersection_dimension_formula(a in matrix_strategy(4, 5), b in matrix_strategy(4, 5)) {
        prop_assume!(a.cols() == b.cols());
        let (va, vb) = (a.row_vectors(), b.row_vectors());
        let n = a.cols();
        let inter = matrix::intersect_subspaces(&va, &vb).unwrap();
        let sum = matrix::sum_subspaces(&va, &vb, n);
        prop_assert_eq!(
            inter.len() + sum.len(),
            matrix::span_dim(&va, n) + matrix::span_dim(&vb, n)
        );
        for v in &inter {
            prop_assert!(matrix::in_span(&va, v, n) && matrix::in_span(&vb, v, n));
        }
    }

    #[test]
    fn sparse_kernel_matches_dense(m in matrix_strategy(5, 6)) {
        let rows = m
            .row_vectors()
            .into_iter()
            .map(|r| r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect())
            .collect();
        let k = matrix::sparse_kernel(rows, m.cols());
        prop_assert_eq!(k.len(), m.cols() - m.rank());
        prop_assert_eq!(matrix::span_dim(&k, m.cols()), k.len());
        for v in &k {
            prop_assert!(matrix::is_zero_vector(&m.mul_vec(v)));
        }
    }

    #[test]
    fn characteristic_polynomial_annihilates(m in matrix_strategy(4, 4)) {
        prop_assume!(m.is_square());
        let p = univariate::char_poly(&m);
        let n = m.rows();
        // Cayley-Hamilton
        let mut acc = ExactMatrix::zeros(n, n);
        let mut power = ExactMatrix::identity(n);
        for c in &p {
            acc = acc.add(&power.scale(c));
            power = power.mul(&m);
        }
        prop_assert!(acc.is_zero());
        prop_assert_eq!(p[0].clone(), if n % 2 == 0 { m.determinant() } else { -m.determinant() });
    }
}
