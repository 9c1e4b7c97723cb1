//! Fraction-free (Bareiss) elimination: determinant and rank.

use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exact determinant by Bareiss elimination.
pub fn det<T: Scalar>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let mut a: Vec<Vec<T>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = T::one();
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    negate = !negate;
                }
                None => return Ok(T::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][k] = T::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Rank over the rationals by fraction-free row echelon reduction.
pub fn rank<T: Scalar>(m: &Matrix<T>) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<T>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = a[i][j].clone() * a[r][c].clone() - a[i][c].clone() * a[r][j].clone();
                a[i][j] = v / prev.clone();
            }
            a[i][c] = T::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{IntMatrix, SmallMatrix};
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn cofactor(m: &SmallMatrix) -> i64 {
        let n = m.rows();
        if n == 1 {
            return m[(0, 0)];
        }
        (0..n)
            .map(|j| {
                let minor = SmallMatrix::from_fn(n - 1, n - 1, |a, b| {
                    m[(a + 1, if b < j { b } else { b + 1 })]
                });
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[(0, j)] * cofactor(&minor)
            })
            .sum()
    }

    #[test]
    fn small_cases() {
        assert_eq!(det(&SmallMatrix::identity(3)).unwrap(), 1);
        let m = SmallMatrix::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(det(&m).unwrap(), -1);
        assert_eq!(rank(&SmallMatrix::zeros(2, 2)), 0);
        let r = SmallMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(rank(&r), 1);
        assert!(det(&r).is_err());
    }

    #[test]
    fn big_entries() {
        let m = IntMatrix::from_i64_rows(&[&[i64::MAX, 1], &[1, i64::MAX]]);
        let expect = BigInt::from(i64::MAX) * BigInt::from(i64::MAX) - 1;
        assert_eq!(det(&m).unwrap(), expect);
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = SmallMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-3i64..=3, n * n)
                .prop_map(move |v| SmallMatrix::new(n, n, v).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn bareiss_matches_cofactor(m in small_matrix(5)) {
            prop_assert_eq!(det(&m).unwrap(), cofactor(&m));
        }

        #[test]
        fn rank_full_iff_det_nonzero(m in small_matrix(5)) {
            let full = rank(&m) == m.rows();
            prop_assert_eq!(full, cofactor(&m) != 0);
        }
    }
}
