//! Rational Gauss-Jordan elimination: inverses, reduced echelon forms and
//! integer nullspace bases.

use super::det::rank;
use super::{to_rat, Matrix};
use crate::error::{Error, Result};
use crate::{Int, IntMatrix, Rat, RatMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Reduced row echelon form together with the pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rat>> = (0..rows).map(|i| m.row(i).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v = &*v * &inv;
        }
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                if !a[r][j].is_zero() {
                    let d = &f * &a[r][j];
                    a[i][j] = &a[i][j] - d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = Matrix::from_rows(a).expect("shape preserved");
    (out, pivots)
}

pub fn inverse_rat(m: &RatMatrix) -> Result<RatMatrix> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let aug = m.hstack(&RatMatrix::identity(n))?;
    let (red, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return Err(Error::Singular(format!("{n}x{n} matrix has rank < {n}")));
    }
    Ok(red.submatrix(0, n, n, n))
}

/// Exact inverse of an integer matrix; `Error::Singular` when `det = 0`.
pub fn inverse(m: &IntMatrix) -> Result<RatMatrix> {
    inverse_rat(&to_rat(m))
}

/// Integer nullspace basis: primitive vectors, first nonzero entry positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelBasis {
    pub vectors: Vec<Vec<Int>>,
}

impl KernelBasis {
    pub fn dimension(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether every vector is annihilated by `m`.
    pub fn annihilated_by(&self, m: &IntMatrix) -> bool {
        self.vectors
            .iter()
            .all(|v| m.mul_vec(v).is_ok_and(|w| w.iter().all(Zero::is_zero)))
    }

    /// Whether both bases span the same rational subspace.
    pub fn same_span(&self, other: &KernelBasis) -> bool {
        if self.dimension() != other.dimension() {
            return false;
        }
        if self.is_empty() {
            return true;
        }
        let a = vectors_as_rows(&self.vectors);
        let mut all = self.vectors.clone();
        all.extend(other.vectors.iter().cloned());
        let b = vectors_as_rows(&all);
        rank(&a) == self.dimension() && rank(&b) == self.dimension()
    }
}

fn vectors_as_rows(vs: &[Vec<Int>]) -> IntMatrix {
    IntMatrix::from_rows(vs.to_vec()).expect("equal-length vectors")
}

/// Scale a rational vector to a primitive integer vector whose first nonzero
/// entry is positive. Returns the zero vector unchanged.
pub fn primitive(v: &[Rat]) -> Vec<Int> {
    let lcm = v.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<Int> = v.iter().map(|x| (x * Rat::from_integer(lcm.clone())).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[Int]) -> Vec<Int> {
    let g = v.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = v.iter().find(|x| !x.is_zero()).map_or(Int::one(), |x| x.signum());
    v.iter().map(|x| x / &g * &sign).collect()
}

/// Primitive integer basis of the rational nullspace of `m`.
pub fn kernel(m: &IntMatrix) -> KernelBasis {
    kernel_rat(&to_rat(m))
}

pub fn kernel_rat(m: &RatMatrix) -> KernelBasis {
    let cols = m.cols();
    let (red, pivots) = rref(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let vectors = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); cols];
            v[f] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -red[(row, f)].clone();
            }
            primitive(&v)
        })
        .collect();
    KernelBasis { vectors }
}
