//! Structural building blocks, defining matrices `H` for every family, the
//! change of basis `𝕋`, and the block-elimination artifacts `F`, `K₂`, `H₄`.
//!
//! Indices follow the basis `(α, j)` in lexicographic order with the row
//! index `α ∈ 1..=n` varying slowest; `H` is an `n × n` grid of `r × r` blocks.

use crate::error::{Error, Result};
use crate::linalg::{block_assemble, inverse_rat, to_int, to_rat};
use crate::{Int, IntMatrix, RatMatrix};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyKind {
    #[serde(rename = "frt")]
    Frt,
    #[serde(rename = "dd")]
    DipperDonkin,
    #[serde(rename = "c1")]
    CombinedI,
    #[serde(rename = "c2")]
    CombinedII,
    #[serde(rename = "ext")]
    Extended,
    #[serde(rename = "custom")]
    Custom,
}

impl FamilyKind {
    pub const NAMED: [FamilyKind; 4] = [
        FamilyKind::DipperDonkin,
        FamilyKind::Frt,
        FamilyKind::CombinedI,
        FamilyKind::CombinedII,
    ];

    pub fn code(self) -> &'static str {
        match self {
            FamilyKind::Frt => "frt",
            FamilyKind::DipperDonkin => "dd",
            FamilyKind::CombinedI => "c1",
            FamilyKind::CombinedII => "c2",
            FamilyKind::Extended => "ext",
            FamilyKind::Custom => "custom",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "frt" => FamilyKind::Frt,
            "dd" | "dipper-donkin" => FamilyKind::DipperDonkin,
            "c1" => FamilyKind::CombinedI,
            "c2" => FamilyKind::CombinedII,
            "ext" | "extended" => FamilyKind::Extended,
            "custom" => FamilyKind::Custom,
            other => return Err(Error::InvalidSpec(format!("unknown family `{other}`"))),
        })
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Algebra family plus dimensions. Custom families carry `A` (skew) and `M`;
/// `N = −Mᵗ` is always derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub n: usize,
    pub r: usize,
    pub a: Option<IntMatrix>,
    pub m: Option<IntMatrix>,
}

impl FamilySpec {
    pub fn named(kind: FamilyKind, n: usize, r: usize) -> Self {
        FamilySpec {
            kind,
            n,
            r,
            a: None,
            m: None,
        }
    }

    pub fn dd(n: usize, r: usize) -> Self {
        Self::named(FamilyKind::DipperDonkin, n, r)
    }

    pub fn frt(n: usize, r: usize) -> Self {
        Self::named(FamilyKind::Frt, n, r)
    }

    pub fn c1(n: usize, r: usize) -> Self {
        Self::named(FamilyKind::CombinedI, n, r)
    }

    pub fn c2(n: usize, r: usize) -> Self {
        Self::named(FamilyKind::CombinedII, n, r)
    }

    pub fn ext(n: usize, r: usize) -> Self {
        Self::named(FamilyKind::Extended, n, r)
    }

    pub fn custom(n: usize, a: IntMatrix, m: IntMatrix) -> Result<Self> {
        let spec = FamilySpec {
            kind: FamilyKind::Custom,
            n,
            r: a.rows(),
            a: Some(a),
            m: Some(m),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.r == 0 {
            return Err(Error::InvalidSpec("n and r must be at least 1".into()));
        }
        if self.kind == FamilyKind::Custom {
            let (Some(a), Some(m)) = (&self.a, &self.m) else {
                return Err(Error::InvalidSpec("custom family needs A and M".into()));
            };
            if a.rows() != self.r || m.rows() != self.r || !a.is_square() || !m.is_square() {
                return Err(Error::InvalidSpec(format!("A and M must be {0}x{0}", self.r)));
            }
            if !a.is_skew() {
                return Err(Error::InvalidSpec("A is not skew-symmetric".into()));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        match self.kind {
            FamilyKind::Extended => self.n * self.r + self.n + self.r,
            _ => self.n * self.r,
        }
    }

    /// The diagonal block `A` and upper block `M`.
    pub fn blocks(&self) -> Result<(IntMatrix, IntMatrix)> {
        self.validate()?;
        let r = self.r;
        let mr = structural(Structural::M, r)?;
        let nr = structural(Structural::N, r)?;
        Ok(match self.kind {
            FamilyKind::DipperDonkin => (IntMatrix::zeros(r, r), mr),
            FamilyKind::Frt => (-(&mr + &nr), IntMatrix::identity(r)),
            FamilyKind::CombinedI => (&mr + &nr, mr),
            FamilyKind::CombinedII => (&mr + &nr, nr),
            FamilyKind::Custom => (self.a.clone().unwrap(), self.m.clone().unwrap()),
            FamilyKind::Extended => {
                return Err(Error::Unsupported(
                    "the extended matrix is not of (A, M) block form".into(),
                ))
            }
        })
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(n={}, r={})", self.kind, self.n, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structural {
    /// Upper triangular, `−1` on and above the diagonal.
    N,
    /// `−Nᵗ`: lower triangular ones.
    M,
    /// Cyclic shift with a sign: `T − E_{r1}`.
    S,
    /// `N⁻¹M`: super-diagonal ones, last row `−1`.
    X,
    /// Nilpotent shift `Σ E_{i,i+1}`.
    T,
    /// Last row of ones.
    P,
    /// Last row of ones (the column-side twin of `P`).
    Q,
    /// `I + Σ_{1 ≤ 2i+1 < n} E_{n,2i+1}`.
    U,
    /// Last column `(…, 1, −1, 1)` alternating upward from `E_{nn}`.
    ETilde,
    /// Matrix unit `E_{ij}` (1-based).
    Unit(usize, usize),
}

/// Emit a structural matrix of the given size.
pub fn structural(kind: Structural, size: usize) -> Result<IntMatrix> {
    if size == 0 {
        return Err(Error::Precondition("structural matrices need size >= 1".into()));
    }
    let one = Int::one;
    let zero = Int::zero;
    let last = size - 1;
    let m = match kind {
        Structural::N => IntMatrix::from_fn(size, size, |i, j| if j >= i { -one() } else { zero() }),
        Structural::M => IntMatrix::from_fn(size, size, |i, j| if i >= j { one() } else { zero() }),
        Structural::T => IntMatrix::from_fn(size, size, |i, j| if j == i + 1 { one() } else { zero() }),
        Structural::S => {
            let mut s = structural(Structural::T, size)?;
            s[(last, 0)] -= 1;
            s
        }
        Structural::X => IntMatrix::from_fn(size, size, |i, j| {
            if i == last {
                -one()
            } else if j == i + 1 {
                one()
            } else {
                zero()
            }
        }),
        Structural::P | Structural::Q => {
            IntMatrix::from_fn(size, size, |i, _| if i == last { one() } else { zero() })
        }
        Structural::U => IntMatrix::from_fn(size, size, |i, j| {
            if i == j || (i == last && j < last && j % 2 == 0) {
                one()
            } else {
                zero()
            }
        }),
        Structural::ETilde => IntMatrix::from_fn(size, size, |i, j| {
            if j != last {
                zero()
            } else if (last - i).is_multiple_of(2) {
                one()
            } else {
                -one()
            }
        }),
        Structural::Unit(i, j) => {
            if i == 0 || j == 0 || i > size || j > size {
                return Err(Error::Precondition(format!("E_({i},{j}) outside size {size}")));
            }
            IntMatrix::unit(size, i, j)
        }
    };
    Ok(m)
}

/// `n × n` block matrix with `diag` on the diagonal, `upper` above, `lower` below.
pub fn block_toeplitz(n: usize, diag: &IntMatrix, upper: &IntMatrix, lower: &IntMatrix) -> IntMatrix {
    let grid: Vec<Vec<IntMatrix>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match a.cmp(&b) {
                    std::cmp::Ordering::Equal => diag.clone(),
                    std::cmp::Ordering::Less => upper.clone(),
                    std::cmp::Ordering::Greater => lower.clone(),
                })
                .collect()
        })
        .collect();
    block_assemble(&grid).expect("uniform blocks")
}

/// Defining matrix `H`; the extended family dispatches to [`build_h_extended`].
pub fn build_h(spec: &FamilySpec) -> Result<IntMatrix> {
    if spec.kind == FamilyKind::Extended {
        spec.validate()?;
        return Ok(build_h_extended(spec.n, spec.r));
    }
    let (a, m) = spec.blocks()?;
    let n_block = -m.transpose();
    Ok(block_toeplitz(spec.n, &a, &m, &n_block))
}

/// Defining matrix of the extended algebra: the `Z` block uses `2·M_r`, followed
/// by `r` column-operator rows and `n` row-operator rows.
pub fn build_h_extended(n: usize, r: usize) -> IntMatrix {
    let nr = n * r;
    let size = nr + r + n;
    let mb = structural(Structural::M, r).expect("r >= 1").scale(&Int::from(2));
    let z = block_toeplitz(n, &IntMatrix::zeros(r, r), &mb, &-mb.transpose());
    let mut h = IntMatrix::zeros(size, size);
    h.set_block(0, 0, &z);
    for alpha in 0..n {
        for s in 0..r {
            let zrow = alpha * r + s;
            let c = nr + s;
            let rr = nr + r + alpha;
            h[(zrow, c)] = Int::one();
            h[(c, zrow)] = -Int::one();
            h[(zrow, rr)] = Int::one();
            h[(rr, zrow)] = -Int::one();
        }
    }
    h
}

/// `𝕋` (block `(α, β)` equal to `T^{β−α}` for `β ≥ α`) and its inverse.
pub fn build_t_basis(n: usize, r: usize) -> (IntMatrix, IntMatrix) {
    let t = structural(Structural::T, r).expect("r >= 1");
    let zero = IntMatrix::zeros(r, r);
    let id = IntMatrix::identity(r);
    let mut tt = Vec::with_capacity(n);
    let mut tinv = Vec::with_capacity(n);
    for a in 0..n {
        tt.push(
            (0..n)
                .map(|b| if b >= a { t.pow((b - a) as u32) } else { zero.clone() })
                .collect(),
        );
        tinv.push(
            (0..n)
                .map(|b| {
                    if b == a {
                        id.clone()
                    } else if b == a + 1 {
                        -&t
                    } else {
                        zero.clone()
                    }
                })
                .collect(),
        );
    }
    (
        block_assemble(&tt).expect("uniform blocks"),
        block_assemble(&tinv).expect("uniform blocks"),
    )
}

/// Blocks shared by the elimination: `A`, `M`, `N`, `(A−N)⁻¹` and `X`.
pub struct Elimination {
    pub a: RatMatrix,
    pub m: RatMatrix,
    pub n: RatMatrix,
    pub a_n_inv: RatMatrix,
    pub x: RatMatrix,
}

impl Elimination {
    pub fn new(spec: &FamilySpec) -> Result<Self> {
        let (a, m) = spec.blocks()?;
        let n = -m.transpose();
        let (a, m, n) = (to_rat(&a), to_rat(&m), to_rat(&n));
        let a_n_inv = inverse_rat(&(&a - &n))
            .map_err(|_| Error::Singular("A - N is not invertible".into()))?;
        let x = &a_n_inv * &(&a - &m);
        Ok(Elimination { a, m, n, a_n_inv, x })
    }

    /// `I + X + … + X^{k−1}`.
    pub fn geometric(&self, k: usize) -> RatMatrix {
        let r = self.x.rows();
        let mut sum = RatMatrix::zeros(r, r);
        let mut p = RatMatrix::identity(r);
        for _ in 0..k {
            sum = &sum + &p;
            p = &p * &self.x;
        }
        sum
    }
}

/// `F = (M − N Xⁿ)(I − X)⁻¹`.
pub fn build_f(spec: &FamilySpec) -> Result<RatMatrix> {
    let e = Elimination::new(spec)?;
    let r = spec.r;
    let i_x = &RatMatrix::identity(r) - &e.x;
    let inv = inverse_rat(&i_x).map_err(|_| Error::Singular("I - X is not invertible".into()))?;
    let f = &(&e.m - &(&e.n * &e.x.pow(spec.n as u32))) * &inv;
    if spec.kind != FamilyKind::Custom && to_int(&f).is_none() {
        return Err(Error::Verification(format!("F is not integral for {spec}")));
    }
    Ok(f)
}

/// `F` through the series `(A − N) + N(I + X + … + X^{n−1})`, which needs no
/// inverse of `I − X`.
pub fn build_f_series(spec: &FamilySpec) -> Result<RatMatrix> {
    let e = Elimination::new(spec)?;
    Ok(&(&e.a - &e.n) + &(&e.n * &e.geometric(spec.n)))
}

/// `K₂` and `H₄ = K₂·H`: the block elimination bringing `H` to identity
/// diagonal blocks with a single nontrivial last block column.
pub fn build_k2_h4(spec: &FamilySpec) -> Result<(RatMatrix, RatMatrix)> {
    let e = Elimination::new(spec)?;
    let (n, r) = (spec.n, spec.r);
    let f = build_f_series(spec)?;
    let id = RatMatrix::identity(r);
    let zero = RatMatrix::zeros(r, r);
    let xp = |k: usize| e.x.pow(k as u32);
    let an = &e.a_n_inv;

    let mut k2 = vec![vec![zero.clone(); n]; n];
    let mut h4 = vec![vec![zero.clone(); n]; n];
    for a in 1..n {
        k2[a - 1][a - 1] = an.clone();
        for b in a + 1..n {
            k2[a - 1][b - 1] = &(&xp(b - a) - &xp(b - a - 1)) * an;
        }
        k2[a - 1][n - 1] = -&(&xp(n - 1 - a) * an);
        h4[a - 1][a - 1] = id.clone();
        h4[a - 1][n - 1] = -&xp(n - a);
    }
    let an_n = an * &e.n;
    for b in 1..n {
        k2[n - 1][b - 1] = -&(&(&an_n * &xp(b - 1)) * an);
    }
    k2[n - 1][n - 1] = &(&id + &(&an_n * &e.geometric(n - 1))) * an;
    h4[n - 1][n - 1] = an * &f;
    Ok((block_assemble(&k2)?, block_assemble(&h4)?))
}
