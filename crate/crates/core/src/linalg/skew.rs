//! Canonical form of skew-symmetric integer matrices under unimodular
//! congruence: `Lᵗ J L = Diag(d₁·J₂, …, d_k·J₂, 0, …, 0)` with `d₁ | d₂ | …`.

use super::det::det;
use super::matrix::Matrix;
use crate::error::{Error, Result};
use crate::{Int, IntMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewForm {
    /// Unimodular `L` with `Lᵗ J L` canonical.
    pub transform: IntMatrix,
    pub block_values: Vec<Int>,
    pub corank: usize,
}

impl SkewForm {
    pub fn size(&self) -> usize {
        self.transform.rows()
    }

    /// The block-diagonal matrix `Diag((0 d; −d 0), …, 0)`.
    pub fn canonical_matrix(&self) -> IntMatrix {
        canonical_from_blocks(&self.block_values, self.size())
    }

    /// Number of blocks equal to `v`.
    pub fn count(&self, v: i64) -> usize {
        let v = Int::from(v);
        self.block_values.iter().filter(|d| **d == v).count()
    }

    /// Checks unimodularity, the congruence identity and the divisor chain.
    pub fn certify(&self, j: &IntMatrix) -> bool {
        let unimodular = det(&self.transform).is_ok_and(|d| d.abs().is_one());
        let congruent = &(&self.transform.transpose() * j) * &self.transform
            == self.canonical_matrix();
        let chain = self
            .block_values
            .windows(2)
            .all(|w| w[1].is_multiple_of(&w[0]))
            && self.block_values.iter().all(Signed::is_positive);
        unimodular && congruent && chain && 2 * self.block_values.len() + self.corank == self.size()
    }
}

pub fn canonical_from_blocks(values: &[Int], size: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(size, size);
    for (i, d) in values.iter().enumerate() {
        m[(2 * i, 2 * i + 1)] = d.clone();
        m[(2 * i + 1, 2 * i)] = -d.clone();
    }
    m
}

struct Reducer {
    w: Vec<Vec<Int>>,
    l: Vec<Vec<Int>>,
    n: usize,
}

impl Reducer {
    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        self.w.swap(a, b);
        for row in self.w.iter_mut().chain(self.l.iter_mut()) {
            row.swap(a, b);
        }
    }

    fn negate(&mut self, a: usize) {
        for v in self.w[a].iter_mut() {
            *v = -&*v;
        }
        for row in self.w.iter_mut().chain(self.l.iter_mut()) {
            row[a] = -&row[a];
        }
    }

    /// `col_dst += c·col_src` together with the matching row operation.
    fn add(&mut self, src: usize, dst: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for row in self.w.iter_mut().chain(self.l.iter_mut()) {
            let v = &row[src] * c;
            row[dst] += v;
        }
        for k in 0..self.n {
            let v = &self.w[src][k] * c;
            self.w[dst][k] += v;
        }
    }

    fn min_entry(&self, from: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for a in from..self.n {
            for b in a + 1..self.n {
                let v = self.w[a][b].abs();
                if !v.is_zero() && best.as_ref().is_none_or(|(_, _, m)| v < *m) {
                    best = Some((a, b, v));
                }
            }
        }
        best.map(|(a, b, _)| (a, b))
    }

    fn run(&mut self) -> Vec<Int> {
        let mut values = Vec::new();
        let mut p = 0;
        while p + 1 < self.n {
            let Some((a, b)) = self.min_entry(p) else {
                break;
            };
            self.swap(p, a);
            self.swap(p + 1, b);
            if self.w[p][p + 1].is_negative() {
                self.negate(p + 1);
            }
            let d = self.w[p][p + 1].clone();
            let mut dirty = false;
            for k in p + 2..self.n {
                let q = self.w[p][k].div_floor(&d);
                self.add(p + 1, k, &-q);
                let q = self.w[p + 1][k].div_floor(&d);
                self.add(p, k, &q);
                dirty |= !self.w[p][k].is_zero() || !self.w[p + 1][k].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (p + 2..self.n)
                .flat_map(|a| (a + 1..self.n).map(move |b| (a, b)))
                .find(|&(a, b)| !self.w[a][b].is_multiple_of(&d));
            if let Some((a, _)) = offender {
                self.add(a, p, &Int::one());
                continue;
            }
            values.push(d);
            p += 2;
        }
        values
    }
}

/// Reduce a skew-symmetric integer matrix to its canonical block form.
pub fn skew_normal_form(j: &IntMatrix) -> Result<SkewForm> {
    if !j.is_skew() {
        return Err(Error::NotSkew);
    }
    let n = j.rows();
    let mut red = Reducer {
        w: (0..n).map(|i| j.row(i).to_vec()).collect(),
        l: (0..n)
            .map(|i| (0..n).map(|k| if i == k { Int::one() } else { Int::zero() }).collect())
            .collect(),
        n,
    };
    let block_values = red.run();
    let corank = n - 2 * block_values.len();
    let transform = Matrix::from_rows(red.l).expect("square transform");
    Ok(SkewForm {
        transform,
        block_values,
        corank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::SmallMatrix;
    use proptest::prelude::*;

    fn big(m: &SmallMatrix) -> IntMatrix {
        m.map(|&v| Int::from(v))
    }

    #[test]
    fn already_canonical() {
        let j = big(&SmallMatrix::from_i64_rows(&[&[0, 1], &[-1, 0]]));
        let f = skew_normal_form(&j).unwrap();
        assert_eq!(f.block_values, vec![Int::one()]);
        assert_eq!(f.corank, 0);
        assert!(f.transform.is_identity());
    }

    #[test]
    fn divisor_chain_is_enforced() {
        let j = big(&SmallMatrix::from_i64_rows(&[
            &[0, 2, 0, 0],
            &[-2, 0, 0, 0],
            &[0, 0, 0, 3],
            &[0, 0, -3, 0],
        ]));
        let f = skew_normal_form(&j).unwrap();
        assert_eq!(f.block_values, vec![Int::one(), Int::from(6)]);
        assert!(f.certify(&j));
    }

    #[test]
    fn non_skew_rejected() {
        let j = big(&SmallMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]));
        assert_eq!(skew_normal_form(&j), Err(Error::NotSkew));
    }

    fn skew(max: usize) -> impl Strategy<Value = IntMatrix> {
        (1..=max).prop_flat_map(|n| {
            prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
                IntMatrix::from_fn(n, n, |i, j| {
                    if i < j {
                        Int::from(v[i * n + j])
                    } else if i > j {
                        -Int::from(v[j * n + i])
                    } else {
                        Int::zero()
                    }
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn certified_and_fixpoint(j in skew(8)) {
            let f = skew_normal_form(&j).unwrap();
            prop_assert!(f.certify(&j));
            let c = f.canonical_matrix();
            let again = skew_normal_form(&c).unwrap();
            prop_assert_eq!(&again.block_values, &f.block_values);
            prop_assert!(again.transform.is_identity());
            if f.corank == 0 {
                let prod = f.block_values.iter().fold(Int::one(), |p, d| p * d * d);
                prop_assert_eq!(prod, det(&j).unwrap().abs());
            }
        }
    }
}
