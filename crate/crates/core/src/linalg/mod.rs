//! Exact dense linear algebra over Euclidean domains.

mod echelon;
mod matrix;
mod snf;

pub use echelon::{row_echelon, Echelon};
pub use matrix::{axpy, is_zero_vec, Matrix};
pub use snf::{smith_normal_form, Snf};

use crate::scalar::Scalar;

/// Basis of the null space `{x : M x = 0}` as the columns of the result.
/// The basis is saturated: it spans every integral solution.
pub fn kernel_basis<T: Scalar>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.cols();
    let ech = row_echelon(m.transpose().to_rows(), m.rows(), true);
    let rank = ech.rank();
    let tr = ech.transform.expect("transform tracked");
    let cols: Vec<Vec<T>> = tr[rank..].to_vec();
    Matrix::from_columns(&cols, n)
}

/// Some `x` with `M x = b`, or `None` when the system has no solution.
pub fn solve_preimage<T: Scalar>(m: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    smith_normal_form(m).solve(b)
}

/// Echelon basis of the lattice spanned by the columns of `m`.
pub fn column_lattice<T: Scalar>(m: &Matrix<T>) -> Echelon<T> {
    row_echelon(m.transpose().to_rows(), m.rows(), false)
}

/// Echelon basis of the lattice spanned by the given vectors.
pub fn lattice_of<T: Scalar>(gens: &[Vec<T>], width: usize) -> Echelon<T> {
    row_echelon(gens.to_vec(), width, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type M = Matrix<BigInt>;

    fn check_snf(m: &M) -> Snf<BigInt> {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d_matrix());
        assert_eq!(s.u.mul(&s.u_inv), M::identity(m.rows()));
        for w in s.diag.windows(2) {
            assert!(w[1].divisible_by(&w[0]));
        }
        assert!(s.diag.iter().all(|d| d > &BigInt::from(0)));
        s
    }

    #[test]
    fn snf_small_examples() {
        let s = check_snf(&M::from_i64_rows(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diag, vec![BigInt::from(2), BigInt::from(4)]);
        let s = check_snf(&M::identity(3));
        assert_eq!(s.diag, vec![BigInt::from(1); 3]);
        let s = check_snf(&M::zeros(2, 3));
        assert!(s.diag.is_empty());
        check_snf(&M::zeros(0, 4));
        check_snf(&M::zeros(3, 0));
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis(&M::from_i64_rows(&[vec![2, -1]]));
        assert_eq!(k.cols(), 1);
        let v = k.column(0);
        let sign = if v[0] < BigInt::from(0) { -1 } else { 1 };
        assert_eq!(v, vec![BigInt::from(sign), BigInt::from(2 * sign)]);
        assert_eq!(kernel_basis(&M::from_i64_rows(&[vec![2, 1], vec![1, 1]])).cols(), 0);
        assert_eq!(kernel_basis(&M::zeros(1, 2)).cols(), 2);
        assert_eq!(kernel_basis(&M::zeros(0, 3)).cols(), 3);
    }

    #[test]
    fn solve_examples() {
        let m = M::from_i64_rows(&[vec![2]]);
        assert_eq!(solve_preimage(&m, &[BigInt::from(4)]), Some(vec![BigInt::from(2)]));
        assert_eq!(solve_preimage(&m, &[BigInt::from(3)]), None);
        let b = vec![BigInt::from(5), BigInt::from(-7)];
        assert_eq!(solve_preimage(&M::identity(2), &b), Some(b));
    }

    #[test]
    fn field_elimination() {
        use crate::scalar::Fp;
        let m = Matrix::<Fp<2>>::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.u.mul(&m).mul(&s.v), s.d_matrix());
        let k = kernel_basis(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }
}
