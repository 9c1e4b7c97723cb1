//! Quantum-seed data: `Λ = 𝕋ᵗH𝕋`, the left reduction `K·H = [[I, Y], [0, 0]]`
//! and certified compatible pairs `Λ·B̃ = (−2·I_c ; 0)`.

use crate::error::{Error, Result};
use crate::families::{build_h, build_t_basis, FamilyKind, FamilySpec};
use crate::linalg::{block_assemble, inverse, inverse_rat, rank, rref, to_int, to_rat};
use crate::{Int, IntMatrix, Rat, RatMatrix};
use num_traits::Zero;

/// `Λ = 𝕋ᵗ H 𝕋`, the quasi-commutation matrix of the initial minors.
pub fn build_lambda(spec: &FamilySpec) -> Result<IntMatrix> {
    if spec.kind == FamilyKind::Extended {
        return Err(Error::Unsupported("Λ is defined for the n×r families only".into()));
    }
    let h = build_h(spec)?;
    let (t, _) = build_t_basis(spec.n, spec.r);
    Ok(&(&t.transpose() * &h) * &t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftReduction {
    pub k: RatMatrix,
    /// `(size − s) × s`; `None` when `s = 0`.
    pub y: Option<RatMatrix>,
    pub s: usize,
    /// Column order bringing the pivots first; the identity for every named
    /// family checked so far.
    pub permutation: Vec<usize>,
}

impl LeftReduction {
    pub fn is_identity_permutation(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Whether `K·H·P = [[I, Y], [0, 0]]` holds exactly.
    pub fn verify(&self, h: &IntMatrix) -> bool {
        let size = h.rows();
        let c = size - self.s;
        let kh = (&self.k * &to_rat(h)).select_columns(&self.permutation);
        let mut expect = RatMatrix::zeros(size, size);
        expect.set_block(0, 0, &RatMatrix::identity(c).submatrix(0, 0, c, c));
        if let Some(y) = &self.y {
            expect.set_block(0, c, y);
        }
        if c == 0 {
            return kh.is_zero();
        }
        kh == expect
    }
}

/// Row-reduce `h` alongside the identity. Pivots are taken from the earliest
/// row with a nonzero entry; non-pivot columns are moved behind the pivots.
pub fn left_reduce(h: &IntMatrix) -> Result<LeftReduction> {
    if !h.is_square() {
        return Err(Error::NotSquare {
            rows: h.rows(),
            cols: h.cols(),
        });
    }
    let size = h.rows();
    let aug = to_rat(h).hstack(&RatMatrix::identity(size))?;
    let (red, pivots) = rref(&aug);
    let pivots: Vec<usize> = pivots.into_iter().filter(|&p| p < size).collect();
    let c = pivots.len();
    let s = size - c;
    let k = red.submatrix(0, size, size, size);
    if s == 0 {
        return Ok(LeftReduction {
            k,
            y: None,
            s,
            permutation: (0..size).collect(),
        });
    }
    let mut permutation = pivots.clone();
    permutation.extend((0..size).filter(|j| !pivots.contains(j)));
    let y = if c == 0 {
        None
    } else {
        let kh = (&k * &to_rat(h)).select_columns(&permutation);
        Some(kh.submatrix(0, c, c, s))
    };
    Ok(LeftReduction {
        k,
        y,
        s,
        permutation,
    })
}

/// The upper block-triangular change of basis `[[a, b], [0, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockParams {
    pub a: RatMatrix,
    pub b: RatMatrix,
    pub d: RatMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    pub lambda: IntMatrix,
    /// `size × c`.
    pub b_tilde: RatMatrix,
    pub c: usize,
    pub basis_change: RatMatrix,
    /// How the basis change was chosen, for output metadata.
    pub params_note: String,
    pub family: FamilySpec,
}

impl CompatiblePair {
    /// `Λ·B̃ = (−2·I_c ; 0)` exactly.
    pub fn certify(&self) -> bool {
        certify_columns(&self.lambda, &self.b_tilde, &(0..self.c).collect::<Vec<_>>())
    }

    pub fn lambda_is_skew(&self) -> bool {
        self.lambda.is_skew()
    }
}

/// Column `k` of `Λ·B` equals `−2·e_{positions[k]}`.
fn certify_columns(lambda: &IntMatrix, b: &RatMatrix, positions: &[usize]) -> bool {
    if b.cols() != positions.len() || lambda.cols() != b.rows() {
        return false;
    }
    let prod = &to_rat(lambda) * b;
    let minus_two = Rat::from_integer(Int::from(-2));
    (0..prod.rows()).all(|i| {
        (0..prod.cols()).all(|k| {
            let want = if positions[k] == i {
                minus_two.clone()
            } else {
                Rat::zero()
            };
            prod[(i, k)] == want
        })
    })
}

/// Default parameters: `a`, `d` the diagonal blocks of `𝕋`, `b = −Y·d`.
pub fn default_block_params(spec: &FamilySpec, red: &LeftReduction) -> BlockParams {
    let size = spec.n * spec.r;
    let c = size - red.s;
    let (t, _) = build_t_basis(spec.n, spec.r);
    let t = to_rat(&t);
    let a = t.submatrix(0, 0, c, c);
    let d = t.submatrix(c, c, red.s, red.s);
    let y = red.y.clone().unwrap_or_else(|| RatMatrix::zeros(c.max(1), red.s));
    let b = -&(&y * &d);
    BlockParams { a, b, d }
}

pub fn compatible_pair(spec: &FamilySpec, params: Option<BlockParams>) -> Result<CompatiblePair> {
    let h = build_h(spec)?;
    if spec.kind == FamilyKind::Extended {
        return Err(Error::Unsupported("compatible pairs for the extended family".into()));
    }
    let size = h.rows();
    let red = left_reduce(&h)?;
    let c = size - red.s;
    if c == 0 {
        return Err(Error::Precondition(format!("H vanishes for {spec}; no mutable directions")));
    }

    let (basis, note) = if red.s == 0 {
        let t = match &params {
            Some(p) => p.a.clone(),
            None => to_rat(&build_t_basis(spec.n, spec.r).0),
        };
        let note = if params.is_some() { "a supplied" } else { "full rank: basis T, K = H^-1" };
        (t, note.to_string())
    } else {
        let p = params.clone().unwrap_or_else(|| default_block_params(spec, &red));
        check_params(&p, &red, c)?;
        let basis = block_assemble(&[
            vec![p.a.clone(), p.b.clone()],
            vec![RatMatrix::zeros(red.s, c), p.d.clone()],
        ])?;
        let note = if params.is_some() {
            "a, b, d supplied; b = -Y d verified"
        } else {
            "a, d = diagonal blocks of T; b = -Y d"
        };
        (basis, note.to_string())
    };

    let k = if red.s == 0 { inverse(&h)? } else { red.k.clone() };
    let (basis, k) = if red.is_identity_permutation() {
        (basis, k)
    } else {
        let p = permutation_matrix(&red.permutation);
        (&p * &basis, k)
    };
    let basis_inv = inverse_rat(&basis)?;
    let lambda_r = &(&basis.transpose() * &to_rat(&h)) * &basis;
    let lambda = to_int(&lambda_r)
        .ok_or_else(|| Error::Unsupported(format!("Λ for the chosen basis of {spec} is not integral")))?;
    let g = &(&basis_inv * &k) * &basis_inv.transpose();
    let two = Rat::from_integer(Int::from(2));
    let b_full = g.transpose().scale(&two);
    let b_tilde = b_full.submatrix(0, 0, size, c);
    let pair = CompatiblePair {
        lambda,
        b_tilde,
        c,
        basis_change: basis,
        params_note: note,
        family: spec.clone(),
    };
    if !pair.certify() {
        return Err(Error::Verification(format!("Λ·B̃ ≠ (−2I ; 0) for {spec}")));
    }
    Ok(pair)
}

fn permutation_matrix(perm: &[usize]) -> RatMatrix {
    let n = perm.len();
    RatMatrix::from_fn(n, n, |i, j| if perm[j] == i { Rat::from_integer(Int::from(1)) } else { Rat::zero() })
}

fn check_params(p: &BlockParams, red: &LeftReduction, c: usize) -> Result<()> {
    let s = red.s;
    if p.a.rows() != c || !p.a.is_square() || p.d.rows() != s || !p.d.is_square() {
        return Err(Error::Dimension(format!("a must be {c}x{c} and d {s}x{s}")));
    }
    if p.b.rows() != c || p.b.cols() != s {
        return Err(Error::Dimension(format!("b must be {c}x{s}")));
    }
    if inverse_rat(&p.a).is_err() || inverse_rat(&p.d).is_err() {
        return Err(Error::Precondition("a and d must be invertible".into()));
    }
    if let Some(y) = &red.y {
        let residual = &p.b + &(y * &p.d);
        if !residual.is_zero() {
            return Err(Error::Precondition(format!("b != -Y d; residual b + Y d =\n{residual}")));
        }
    }
    Ok(())
}

/// The `n + r − 1` covariant minors `χ_{n1}, …, χ_{nr}, χ_{n−1,r}, …, χ_{1r}`.
pub fn default_frozen(n: usize, r: usize) -> Vec<(usize, usize)> {
    let mut f: Vec<(usize, usize)> = (1..=r).map(|j| (n, j)).collect();
    f.extend((1..n).rev().map(|a| (a, r)));
    f
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedPair {
    pub lambda: IntMatrix,
    pub b: RatMatrix,
    /// Basis positions (0-based) of the retained columns.
    pub mutable: Vec<usize>,
    pub frozen: Vec<(usize, usize)>,
}

impl TruncatedPair {
    pub fn certify(&self) -> bool {
        certify_columns(&self.lambda, &self.b, &self.mutable)
    }
}

/// Keep only the `B̃` columns of mutable positions and re-certify them.
pub fn truncate_nonmutable(pair: &CompatiblePair, frozen: &[(usize, usize)]) -> Result<TruncatedPair> {
    let (n, r) = (pair.family.n, pair.family.r);
    let mut positions = Vec::new();
    for &(a, j) in frozen {
        if !(1..=n).contains(&a) || !(1..=r).contains(&j) {
            return Err(Error::Precondition(format!("frozen minor ({a},{j}) outside {n}x{r}")));
        }
        positions.push((a - 1) * r + j - 1);
    }
    let mutable: Vec<usize> = (0..pair.c).filter(|p| !positions.contains(p)).collect();
    if mutable.is_empty() {
        return Err(Error::Precondition("no mutable column left after freezing".into()));
    }
    let truncated = TruncatedPair {
        lambda: pair.lambda.clone(),
        b: pair.b_tilde.select_columns(&mutable),
        mutable,
        frozen: frozen.to_vec(),
    };
    if !truncated.certify() {
        return Err(Error::Verification("truncated pair fails Λ·B = −2·selection".into()));
    }
    Ok(truncated)
}

/// `rank(Λ)`, equal to `rank(H)` since `𝕋` is unimodular.
pub fn lambda_rank(spec: &FamilySpec) -> Result<usize> {
    Ok(rank(&build_lambda(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_by_one_lambda_is_zero() {
        assert!(build_lambda(&FamilySpec::dd(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn full_rank_reduction_is_inverse() {
        let h = build_h(&FamilySpec::dd(2, 2)).unwrap();
        let red = left_reduce(&h).unwrap();
        assert_eq!(red.s, 0);
        assert!((&red.k * &to_rat(&h)).is_identity());
    }

    #[test]
    fn singular_reductions_have_shape() {
        for spec in [FamilySpec::dd(3, 3), FamilySpec::frt(2, 2)] {
            let h = build_h(&spec).unwrap();
            let red = left_reduce(&h).unwrap();
            assert!(red.verify(&h), "{spec}");
            assert!(red.is_identity_permutation());
        }
        assert_eq!(left_reduce(&build_h(&FamilySpec::dd(3, 3)).unwrap()).unwrap().s, 1);
        assert_eq!(left_reduce(&build_h(&FamilySpec::frt(2, 2)).unwrap()).unwrap().s, 2);
    }

    #[test]
    fn rejects_bad_params() {
        let spec = FamilySpec::dd(3, 3);
        let red = left_reduce(&build_h(&spec).unwrap()).unwrap();
        let mut p = default_block_params(&spec, &red);
        p.b = &p.b + &RatMatrix::from_fn(8, 1, |i, _| if i == 0 { Rat::from_integer(Int::from(1)) } else { Rat::zero() });
        assert!(matches!(compatible_pair(&spec, Some(p)), Err(Error::Precondition(_))));
    }

    #[test]
    fn truncation_edges() {
        let pair = compatible_pair(&FamilySpec::dd(4, 4), None).unwrap();
        let same = truncate_nonmutable(&pair, &[]).unwrap();
        assert_eq!(same.b, pair.b_tilde);
        let all: Vec<(usize, usize)> = (1..=4).flat_map(|a| (1..=4).map(move |j| (a, j))).collect();
        assert!(truncate_nonmutable(&pair, &all).is_err());
        let t = truncate_nonmutable(&pair, &default_frozen(4, 4)).unwrap();
        assert_eq!((t.b.rows(), t.b.cols()), (16, 9));
    }
}
