//! Property tests for the exact linear algebra layer.

mod common;

use ccoh::abelian::{cokernel_group, groups_isomorphic};
use ccoh::linalg::{kernel_basis, smith_normal_form, solve_preimage};
use ccoh::scalar::Fp;
use ccoh::{FieldMatrix, Int, IntegerMatrix};
use common::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn int_matrix(max: usize, bound: i64) -> impl Strategy<Value = IntegerMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c).prop_map(move |v| IntegerMatrix::from_i64_rows(&v.chunks(c).map(|x| x.to_vec()).collect::<Vec<_>>()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_factorization(m in int_matrix(8, 50)) {
        let s = smith_normal_form(&m);
        prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d_matrix());
        prop_assert_eq!(s.u.mul(&s.u_inv), IntegerMatrix::identity(m.rows()));
        prop_assert!(is_unimodular(&s.v));
        prop_assert!(s.diag.windows(2).all(|w| (&w[1] % &w[0]).is_zero()));
    }

    #[test]
    fn snf_matches_determinantal_divisors(m in int_matrix(4, 9)) {
        prop_assert_eq!(smith_normal_form(&m).diag, determinantal_invariants(&m));
    }

    #[test]
    fn cokernel_is_basis_independent(m in int_matrix(7, 20), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = rand_unimodular(&mut rng, m.rows(), 4 * m.rows());
        let b = rand_unimodular(&mut rng, m.cols(), 4 * m.cols());
        let (x, y) = (cokernel_group(&m).group, cokernel_group(&a.mul(&m).mul(&b)).group);
        prop_assert!(groups_isomorphic(&x, &y));
        prop_assert_eq!(x, y);
    }

    #[test]
    fn preimage_of_an_image(m in int_matrix(6, 10), x in prop::collection::vec(-10i64..=10, 6)) {
        let x: Vec<Int> = x[..m.cols()].iter().map(|&v| Int::from(v)).collect();
        let b = m.mul_vec(&x);
        let y = solve_preimage(&m, &b).expect("b lies in the image");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn kernel_is_annihilated(m in int_matrix(6, 5)) {
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + smith_normal_form(&m).rank(), m.cols());
    }

    #[test]
    fn rank_nullity_over_f3(v in prop::collection::vec(0i64..3, 30)) {
        let m: FieldMatrix<3> = FieldMatrix::from_vec(5, 6, v.into_iter().map(Fp::<3>::new).collect());
        let k = kernel_basis(&m);
        prop_assert!(m.mul(&k).is_zero());
        prop_assert_eq!(k.cols() + smith_normal_form(&m).rank(), 6);
    }
}
