//! Closed-form evaluators: coranks, determinants, inverses of `H` and `Λ`,
//! the partial left inverse, kernels, center generators, block-diagonal
//! counts and degrees at roots of unity. Each evaluator is meant to be
//! checked against the generic routines in [`crate::linalg`].

use crate::error::{Error, Result};
use crate::families::{
    build_f_series, build_h, build_k2_h4, build_t_basis, structural, Elimination, FamilyKind,
    FamilySpec, Structural,
};
use crate::linalg::solve::primitive_int;
use crate::linalg::{
    block_assemble, det, inverse_rat, kernel, kernel_rat, skew_normal_form, to_int,
    to_int_checked, to_rat, KernelBasis,
};
use crate::{Int, IntMatrix, Rat, RatMatrix};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

fn gcd(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

fn rs(kind: Structural, r: usize) -> RatMatrix {
    to_rat(&structural(kind, r).expect("r >= 1"))
}

fn half() -> Rat {
    Rat::new(Int::one(), Int::from(2))
}

/// Power with negative exponents through the exact inverse.
fn rpow(m: &RatMatrix, e: i64) -> RatMatrix {
    if e >= 0 {
        m.pow(e as u32)
    } else {
        inverse_rat(m).expect("invertible base").pow((-e) as u32)
    }
}

fn named_only(spec: &FamilySpec) -> Result<()> {
    match spec.kind {
        FamilyKind::Custom | FamilyKind::Extended => Err(Error::Unsupported(format!(
            "no closed form for {}; use the exact oracle",
            spec.kind
        ))),
        _ => Ok(()),
    }
}

/// Assemble from the blocks with `α ≥ β` (1-based); the strictly upper blocks
/// are `−(block_{βα})ᵗ`.
fn skew_from_lower(n: usize, lower: impl Fn(usize, usize) -> RatMatrix) -> RatMatrix {
    let mut rows: Vec<Vec<Option<RatMatrix>>> = vec![vec![None; n]; n];
    for a in 1..=n {
        for b in 1..=a {
            rows[a - 1][b - 1] = Some(lower(a, b));
        }
    }
    let grid: Vec<Vec<RatMatrix>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match &rows[a][b] {
                    Some(m) => m.clone(),
                    None => -rows[b][a].as_ref().expect("lower block").transpose(),
                })
                .collect()
        })
        .collect();
    block_assemble(&grid).expect("uniform blocks")
}

fn full_grid(n: usize, block: impl Fn(usize, usize) -> RatMatrix) -> RatMatrix {
    let grid: Vec<Vec<RatMatrix>> = (1..=n)
        .map(|a| (1..=n).map(|b| block(a, b)).collect())
        .collect();
    block_assemble(&grid).expect("uniform blocks")
}

/// `s = gcd(n, r)` with cofactors `(x, y)`.
fn frt_split(n: usize, r: usize) -> (usize, usize, usize) {
    let s = gcd(n, r);
    (s, n / s, r / s)
}

pub fn frt_is_singular(n: usize, r: usize) -> bool {
    let (_, x, y) = frt_split(n, r);
    x % 2 == 1 && y % 2 == 1
}

/// Closed-form corank of `H` for the named families.
pub fn corank_closed(spec: &FamilySpec) -> Result<usize> {
    named_only(spec)?;
    let (n, r) = (spec.n, spec.r);
    Ok(match spec.kind {
        FamilyKind::DipperDonkin => gcd(n - 1, r + 1) - 1,
        FamilyKind::Frt => {
            if frt_is_singular(n, r) {
                gcd(n, r)
            } else {
                0
            }
        }
        _ => gcd(n + 1, r + 1) - 1,
    })
}

/// Closed-form determinant of `H`; `None` when no closed value is available.
///
/// The combined families reduce to `det F` (times a sign for the second
/// one), evaluated on the `r × r` matrix `F` rather than on `H`.
pub fn det_closed(spec: &FamilySpec) -> Result<Option<Int>> {
    named_only(spec)?;
    if corank_closed(spec)? > 0 {
        return Ok(Some(Int::zero()));
    }
    let (n, r) = (spec.n, spec.r);
    Ok(match spec.kind {
        FamilyKind::DipperDonkin => Some(Int::one()),
        FamilyKind::Frt => {
            let s = gcd(n, r);
            Some(Int::from(2).pow(((r - 1) * (n - 1) + s - 1) as u32))
        }
        FamilyKind::CombinedI | FamilyKind::CombinedII => {
            let f = to_int_checked(&build_f_series(spec)?, "F")?;
            let d = det(&f)?;
            if spec.kind == FamilyKind::CombinedII && (r * (n - 1)) % 2 == 1 {
                Some(-d)
            } else {
                Some(d)
            }
        }
        _ => None,
    })
}

/// Closed-form routes to `H⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseRoute {
    /// Block formula in terms of `X`, `F` and `(A − N)⁻¹`; any invertible `H`.
    General,
    /// Dipper-Donkin, `n = r` even: entries depend on `(b − a) mod (r + 1)`.
    DdResidues,
    /// Dipper-Donkin, `n = r + 1`.
    DdShifted,
    /// FRT full rank: blocks in powers of `S`.
    FrtBlocks,
    /// FRT, `n = r + 1`: half-integer blocks `½(S^k − S^{k−1})`.
    FrtShifted,
}

impl InverseRoute {
    pub fn applies(self, spec: &FamilySpec) -> bool {
        let (n, r) = (spec.n, spec.r);
        let full = corank_closed(spec).is_ok_and(|c| c == 0);
        match self {
            InverseRoute::General => !matches!(spec.kind, FamilyKind::Extended),
            InverseRoute::DdResidues => spec.kind == FamilyKind::DipperDonkin && n == r && n % 2 == 0,
            InverseRoute::DdShifted => spec.kind == FamilyKind::DipperDonkin && n == r + 1,
            InverseRoute::FrtBlocks => spec.kind == FamilyKind::Frt && full,
            InverseRoute::FrtShifted => spec.kind == FamilyKind::Frt && n == r + 1,
        }
    }
}

/// Most specific applicable route for a spec.
pub fn inverse_route(spec: &FamilySpec) -> InverseRoute {
    [
        InverseRoute::DdResidues,
        InverseRoute::DdShifted,
        InverseRoute::FrtShifted,
        InverseRoute::FrtBlocks,
    ]
    .into_iter()
    .find(|route| route.applies(spec))
    .unwrap_or(InverseRoute::General)
}

pub fn inverse_h_closed(spec: &FamilySpec) -> Result<RatMatrix> {
    inverse_h_via(spec, inverse_route(spec))
}

pub fn inverse_h_via(spec: &FamilySpec, route: InverseRoute) -> Result<RatMatrix> {
    if !route.applies(spec) {
        return Err(Error::NotApplicable(format!("{route:?} does not cover {spec}")));
    }
    let (n, r) = (spec.n, spec.r);
    match route {
        InverseRoute::General => inverse_general(spec),
        InverseRoute::DdResidues => {
            let size = n * r;
            let modulus = (r + 1) as i64;
            let value = |d: i64| -> Rat {
                let class = match d.rem_euclid(modulus) {
                    0 => modulus,
                    c => c,
                };
                Rat::from_integer(Int::from(match class {
                    1 => 0,
                    c if c % 2 == 1 => 1,
                    _ => -1,
                }))
            };
            Ok(RatMatrix::from_fn(size, size, |a, b| match a.cmp(&b) {
                std::cmp::Ordering::Equal => Rat::zero(),
                std::cmp::Ordering::Less => value((b - a) as i64),
                std::cmp::Ordering::Greater => -value((a - b) as i64),
            }))
        }
        InverseRoute::DdShifted => {
            let x = rs(Structural::X, r);
            let i_t = &RatMatrix::identity(r) - &rs(Structural::T, r);
            Ok(skew_from_lower(n, |a, b| {
                if a == b {
                    &(&RatMatrix::identity(r) + &rpow(&x, -1)) * &i_t
                } else {
                    &rpow(&x, b as i64 - a as i64 - 1) * &i_t
                }
            }))
        }
        InverseRoute::FrtBlocks => {
            let s = rs(Structural::S, r);
            let id = RatMatrix::identity(r);
            let inv = inverse_rat(&(&id + &s.pow(n as u32)))?;
            let i_s = &id - &s;
            let i_s2 = &i_s * &i_s;
            let h = half();
            Ok(full_grid(n, |a, b| {
                let m = match a.cmp(&b) {
                    std::cmp::Ordering::Equal => &(&i_s * &(&id + &s.pow(n as u32 - 1))) * &inv,
                    std::cmp::Ordering::Greater => {
                        &(&rpow(&s, (n + b) as i64 - a as i64 - 1) * &i_s2) * &inv
                    }
                    std::cmp::Ordering::Less => {
                        -&(&(&rpow(&s, b as i64 - a as i64 - 1) * &i_s2) * &inv)
                    }
                };
                m.scale(&h)
            }))
        }
        InverseRoute::FrtShifted => {
            let s = rs(Structural::S, r);
            let h = half();
            Ok(full_grid(n, |a, b| {
                let d = b as i64 - a as i64;
                match a.cmp(&b) {
                    std::cmp::Ordering::Equal => RatMatrix::zeros(r, r),
                    std::cmp::Ordering::Greater => (&rpow(&s, d + 1) - &rpow(&s, d)).scale(&h),
                    std::cmp::Ordering::Less => (&rpow(&s, d) - &rpow(&s, d - 1)).scale(&h),
                }
            }))
        }
    }
}

fn inverse_general(spec: &FamilySpec) -> Result<RatMatrix> {
    let e = Elimination::new(spec)?;
    let n = spec.n;
    let r = spec.r;
    let f = build_f_series(spec)?;
    let f_inv = inverse_rat(&f).map_err(|_| Error::NotApplicable(format!("F is singular for {spec}")))?;
    let xp = |k: usize| e.x.pow(k as u32);
    let core = |a: usize, b: usize| &(&(&xp(n - a) * &f_inv) * &e.n) * &xp(b - 1);
    Ok(skew_from_lower(n, |a, b| {
        if a == b {
            &(&RatMatrix::identity(r) - &core(a, a)) * &e.a_n_inv
        } else {
            -&(&core(a, b) * &e.a_n_inv)
        }
    }))
}

/// Closed-form routes to `Λ⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaInverseRoute {
    /// Dipper-Donkin, any full-rank `(n, r)`.
    DdGeneral,
    /// Dipper-Donkin, `n = r` even.
    DdEven,
    /// FRT full rank.
    FrtFullRank,
    /// `Λ⁻¹_{αβ} = H⁻¹_{αβ} − H⁻¹_{α,β+1}Tᵗ − T H⁻¹_{α+1,β} + T H⁻¹_{α+1,β+1} Tᵗ`
    /// applied to the closed-form `H⁻¹`.
    Conjugated,
}

impl LambdaInverseRoute {
    pub fn applies(self, spec: &FamilySpec) -> bool {
        let full = corank_closed(spec).is_ok_and(|c| c == 0);
        match self {
            LambdaInverseRoute::DdGeneral => spec.kind == FamilyKind::DipperDonkin && full,
            LambdaInverseRoute::DdEven => {
                spec.kind == FamilyKind::DipperDonkin && spec.n == spec.r && spec.n.is_multiple_of(2)
            }
            LambdaInverseRoute::FrtFullRank => spec.kind == FamilyKind::Frt && full,
            LambdaInverseRoute::Conjugated => {
                matches!(spec.kind, FamilyKind::DipperDonkin | FamilyKind::Frt) && full
            }
        }
    }
}

pub fn lambda_inverse_route(spec: &FamilySpec) -> Option<LambdaInverseRoute> {
    [
        LambdaInverseRoute::DdEven,
        LambdaInverseRoute::DdGeneral,
        LambdaInverseRoute::FrtFullRank,
    ]
    .into_iter()
    .find(|route| route.applies(spec))
}

pub fn inverse_lambda_closed(spec: &FamilySpec) -> Result<RatMatrix> {
    let route = lambda_inverse_route(spec)
        .ok_or_else(|| Error::NotApplicable(format!("no closed form for the inverse of Λ of {spec}")))?;
    inverse_lambda_via(spec, route)
}

pub fn inverse_lambda_via(spec: &FamilySpec, route: LambdaInverseRoute) -> Result<RatMatrix> {
    if !route.applies(spec) {
        return Err(Error::NotApplicable(format!("{route:?} does not cover {spec}")));
    }
    let (n, r) = (spec.n, spec.r);
    let id = RatMatrix::identity(r);
    let t = rs(Structural::T, r);
    let tt = t.transpose();
    let err = RatMatrix::unit(r, r, r);
    match route {
        LambdaInverseRoute::DdGeneral => {
            let x = rs(Structural::X, r);
            let w = &inverse_rat(&(&x - &x.pow(n as u32)))? * &(&id - &x);
            let p_n = -&(&x.pow(n as u32 - 1) * &w);
            Ok(skew_from_lower(n, |a, b| {
                if a == n && b == n {
                    &(&p_n + &id) * &(&id - &t)
                } else if a == n && b + 1 == n {
                    &(&id - &tt) - &(&(&p_n + &id) * &err)
                } else if a == n {
                    &(&x.pow(b as u32) * &w) * &err
                } else if a == b {
                    &tt - &t
                } else {
                    let v = (&x.pow((n + b - a) as u32) * &w)[(r - 1, r - 1)].clone();
                    if a == b + 1 {
                        &(&id - &tt) + &err.scale(&(v - Rat::one()))
                    } else {
                        err.scale(&v)
                    }
                }
            }))
        }
        LambdaInverseRoute::DdEven => {
            let x = rs(Structural::X, r);
            let even_sum = |from: usize, to: usize| {
                (from..=to)
                    .step_by(2)
                    .fold(RatMatrix::zeros(r, r), |acc, k| &acc + &x.pow(k as u32))
            };
            let p_n = -&even_sum(0, r - 2);
            let tail = even_sum(2, r);
            Ok(skew_from_lower(n, |a, b| {
                if a == n && b == n {
                    &(&p_n + &id) * &(&id - &t)
                } else if a == n && b + 1 == n {
                    &(&id - &tt) - &(&(&p_n + &id) * &err)
                } else if a == n {
                    &(&x.pow(b as u32) * &tail) * &err
                } else if a == b {
                    &tt - &t
                } else if a == b + 1 {
                    &id - &tt
                } else if (a - b) % 2 == 0 {
                    -&err
                } else {
                    err.clone()
                }
            }))
        }
        LambdaInverseRoute::FrtFullRank => {
            let hinv = inverse_h_via(spec, InverseRoute::FrtBlocks)?;
            let hb = |a: usize, b: usize| hinv.block(a - 1, b - 1, r);
            let s = rs(Structural::S, r);
            let e1r = RatMatrix::unit(r, 1, r);
            let inv = inverse_rat(&(&id + &s.pow(n as u32)))?;
            let i_s = &id - &s;
            let h = half();
            Ok(skew_from_lower(n, |a, b| {
                if a == n && b == n {
                    hb(n, n)
                } else if a == n && b + 1 == n {
                    let first = &(&(&id + &rpow(&s, n as i64 - 1)) * &inv) * &(&e1r + &err);
                    -&(&first + &(&rpow(&s, -1) - &id)).scale(&h)
                } else if a == n {
                    -&(&(&(&(&s.pow(b as u32) * &i_s) * &i_s) * &inv) * &e1r).scale(&h)
                } else if a == b {
                    (&tt - &t).scale(&h)
                } else if a == b + 1 {
                    let v = hb(a, b)[(0, 0)].clone();
                    &err.scale(&v) - &(&(&tt - &id) + &err).scale(&h)
                } else {
                    err.scale(&hb(a, b)[(0, 0)])
                }
            }))
        }
        LambdaInverseRoute::Conjugated => {
            let hinv = inverse_h_closed(spec)?;
            let hb = |a: usize, b: usize| {
                if a > n || b > n {
                    RatMatrix::zeros(r, r)
                } else {
                    hinv.block(a - 1, b - 1, r)
                }
            };
            Ok(full_grid(n, |a, b| {
                let m = &hb(a, b) - &(&hb(a, b + 1) * &tt);
                let m = &m - &(&t * &hb(a + 1, b));
                &m + &(&(&t * &hb(a + 1, b + 1)) * &tt)
            }))
        }
    }
}

/// The matrix `Z_n` with `Z_n K₂ H` equal to [`zkh_expected`] for Dipper-Donkin
/// `n = r` odd, together with that product.
pub fn partial_left_inverse_dd(n: usize) -> Result<(IntMatrix, IntMatrix)> {
    if n.is_multiple_of(2) {
        return Err(Error::Precondition(format!(
            "n = r = {n} is even; H is invertible there"
        )));
    }
    let spec = FamilySpec::dd(n, n);
    let x = structural(Structural::X, n)?;
    let t = structural(Structural::T, n)?;
    let u = structural(Structural::U, n)?;
    let i_t_inv = to_int_checked(&crate::linalg::inverse(&(&IntMatrix::identity(n) + &t))?, "(I+T)^-1")?;
    let v = &(&i_t_inv * &u) * &x;
    let zero = IntMatrix::zeros(n, n);
    let grid: Vec<Vec<IntMatrix>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    if b == n {
                        &x.pow((n - a) as u32) * &v
                    } else if a == b {
                        IntMatrix::identity(n)
                    } else {
                        zero.clone()
                    }
                })
                .collect()
        })
        .collect();
    let z = block_assemble(&grid)?;
    let (k2, _) = build_k2_h4(&spec)?;
    let h = to_rat(&build_h(&spec)?);
    let prod = &(&to_rat(&z) * &k2) * &h;
    Ok((z, to_int_checked(&prod, "Z K2 H")?))
}

/// Identity except for the last block column `−X^{n−α}Ẽ_n` and corner `I − Ẽ_n`.
pub fn zkh_expected(n: usize) -> Result<IntMatrix> {
    let x = structural(Structural::X, n)?;
    let e = structural(Structural::ETilde, n)?;
    let grid: Vec<Vec<IntMatrix>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    if b == n && a == n {
                        &IntMatrix::identity(n) - &e
                    } else if b == n {
                        -&(&x.pow((n - a) as u32) * &e)
                    } else if a == b {
                        IntMatrix::identity(n)
                    } else {
                        IntMatrix::zeros(n, n)
                    }
                })
                .collect()
        })
        .collect();
    block_assemble(&grid)
}

/// Kernels of `H` and `Λ` built from a basis of `ker F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelPair {
    pub h: KernelBasis,
    pub lambda: KernelBasis,
    /// The `r`-vectors the kernels are generated from.
    pub seeds: Vec<Vec<Int>>,
}

/// Basis of `ker F`: explicit vectors for Dipper-Donkin with `n ≤ r` and for
/// FRT with `n ≤ r`, the exact nullspace of `F` elsewhere.
pub fn f_kernel_vectors(spec: &FamilySpec) -> Result<Vec<Vec<Int>>> {
    named_only(spec)?;
    if corank_closed(spec)? == 0 {
        return Ok(Vec::new());
    }
    let (n, r) = (spec.n, spec.r);
    let unit = |i: usize| -> Vec<Int> {
        let mut e = vec![Int::zero(); r];
        e[i - 1] = Int::one();
        e
    };
    let add = |acc: &mut Vec<Int>, v: &[Int], c: i64| {
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b * c;
        }
    };
    match spec.kind {
        FamilyKind::DipperDonkin if n <= r => {
            let s = gcd(n - 1, r + 1);
            let xz = (r + 1) / s;
            Ok((1..s)
                .map(|i| {
                    let mut v = vec![Int::zero(); r];
                    for k in 0..xz {
                        add(&mut v, &unit(i + k * s), 1);
                    }
                    for k in 1..xz {
                        add(&mut v, &unit(k * s), -1);
                    }
                    v
                })
                .collect())
        }
        FamilyKind::Frt if n <= r => {
            let (s, _, y) = frt_split(n, r);
            Ok((1..=s)
                .map(|i| {
                    let mut v = vec![Int::zero(); r];
                    for l in 0..y {
                        add(&mut v, &unit(i + l * s), if l % 2 == 0 { 1 } else { -1 });
                    }
                    v
                })
                .collect())
        }
        _ => Ok(kernel_rat(&build_f_series(spec)?).vectors),
    }
}

pub fn kernel_closed(spec: &FamilySpec) -> Result<KernelPair> {
    let seeds = f_kernel_vectors(spec)?;
    if seeds.is_empty() {
        return Ok(KernelPair {
            h: KernelBasis { vectors: vec![] },
            lambda: KernelBasis { vectors: vec![] },
            seeds,
        });
    }
    let (n, r) = (spec.n, spec.r);
    let e = Elimination::new(spec)?;
    let x = to_int_checked(&e.x, "X")?;
    let t = structural(Structural::T, r)?;
    let x_t = &x - &t;
    let mut hs = Vec::new();
    let mut ls = Vec::new();
    for v in &seeds {
        let mut a = vec![Int::zero(); n * r];
        let mut b = vec![Int::zero(); n * r];
        for c in 1..=n {
            let pos = (n - c) * r;
            let ac = x.pow((c - 1) as u32).mul_vec(v)?;
            let bc = if c == 1 {
                v.clone()
            } else {
                (&x_t * &x.pow((c - 2) as u32)).mul_vec(v)?
            };
            a[pos..pos + r].clone_from_slice(&ac);
            b[pos..pos + r].clone_from_slice(&bc);
        }
        hs.push(primitive_int(&a));
        ls.push(primitive_int(&b));
    }
    Ok(KernelPair {
        h: KernelBasis { vectors: hs },
        lambda: KernelBasis { vectors: ls },
        seeds,
    })
}

/// A central monomial `∏ χ_{αj}^{e_{αj}}` of the quasi-polynomial minor algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterGenerator {
    /// Exponents indexed like the basis `(α, j)`.
    pub exponents: Vec<Int>,
    pub label: String,
}

impl CenterGenerator {
    fn from_factors(n: usize, r: usize, sym: &str, factors: &[(usize, usize, i64)]) -> Self {
        let mut exponents = vec![Int::zero(); n * r];
        for &(a, j, e) in factors {
            if (1..=n).contains(&a) && (1..=r).contains(&j) {
                exponents[(a - 1) * r + j - 1] += e;
            }
        }
        Self::from_exponents(n, r, sym, exponents)
    }

    fn from_exponents(_n: usize, r: usize, sym: &str, exponents: Vec<Int>) -> Self {
        let label = monomial_label(r, sym, &exponents);
        CenterGenerator { exponents, label }
    }
}

pub fn monomial_label(r: usize, sym: &str, exponents: &[Int]) -> String {
    let parts: Vec<String> = exponents
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(idx, e)| {
            let (a, j) = (idx / r + 1, idx % r + 1);
            if e.is_one() {
                format!("{sym}[{a},{j}]")
            } else {
                format!("{sym}[{a},{j}]^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn sign(k: usize) -> i64 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Generators of the center of the Laurent quasi-polynomial algebra of the
/// minors `χ_{αj}`, as exponent vectors over the `(α, j)` basis.
pub fn center_generators(spec: &FamilySpec) -> Result<Vec<CenterGenerator>> {
    if !matches!(spec.kind, FamilyKind::DipperDonkin | FamilyKind::Frt) {
        return Err(Error::Unsupported(format!("center generators for {}", spec.kind)));
    }
    let (n, r) = (spec.n, spec.r);
    if corank_closed(spec)? == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    match spec.kind {
        FamilyKind::DipperDonkin if n == r && n % 2 == 1 => {
            let mut f: Vec<(usize, usize, i64)> = (1..=n).map(|g| (g, n, sign(g))).collect();
            f.extend((1..n).map(|k| (n, k, sign(k))));
            out.push(CenterGenerator::from_factors(n, r, "chi", &f));
        }
        FamilyKind::DipperDonkin if n <= r => {
            let s = gcd(n - 1, r + 1);
            let x = (n - 1) / s;
            let xz = (r + 1) / s;
            for i in 1..s {
                let mut f = Vec::new();
                for k in 0..x {
                    f.push((n - 1 - k * s, r, -1));
                    if n - 1 > i + k * s {
                        f.push((n - 1 - i - k * s, r, 1));
                    }
                }
                for j in 1..xz {
                    f.push((n, j * s, -1));
                }
                for l in 0..xz {
                    f.push((n, i + l * s, 1));
                }
                out.push(CenterGenerator::from_factors(n, r, "chi", &f));
            }
        }
        FamilyKind::Frt => {
            let (s, x, y) = frt_split(n, r);
            for i in 1..=s {
                let mut f = Vec::new();
                if n >= r {
                    for l in 0..x {
                        f.push((i + l * s, r, sign(l)));
                    }
                    for k in 0..y {
                        if r > i + k * s {
                            f.push((n, r - i - k * s, -sign(k)));
                        }
                    }
                } else {
                    for l in 0..y {
                        f.push((n, i + l * s, sign(l)));
                    }
                    for k in 0..x {
                        if n > i + k * s {
                            f.push((n - i - k * s, r, -sign(k)));
                        }
                    }
                }
                out.push(CenterGenerator::from_factors(n, r, "xi", &f));
            }
        }
        _ => {
            for b in kernel_closed(spec)?.lambda.vectors {
                out.push(CenterGenerator::from_exponents(n, r, "chi", b));
            }
        }
    }
    Ok(out)
}

/// Numbers of `(0 d; −d 0)` blocks of each size in the canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCountReport {
    pub ones: usize,
    pub twos: usize,
    pub fours: usize,
    pub corank: usize,
    /// Product of the squared block values.
    pub det_d: Int,
}

impl BlockCountReport {
    fn new(ones: usize, twos: usize, fours: usize, corank: usize) -> Self {
        let det_d = Int::from(4).pow(twos as u32) * Int::from(16).pow(fours as u32);
        BlockCountReport {
            ones,
            twos,
            fours,
            corank,
            det_d,
        }
    }

    /// Counts read off a computed canonical form; `None` if some block value
    /// is not 1, 2 or 4.
    pub fn observed(form: &crate::linalg::SkewForm) -> Option<Self> {
        let (o, t, f) = (form.count(1), form.count(2), form.count(4));
        if o + t + f != form.block_values.len() {
            return None;
        }
        Some(Self::new(o, t, f, form.corank))
    }
}

pub fn block_counts_closed(spec: &FamilySpec) -> Result<BlockCountReport> {
    let (n, r) = (spec.n, spec.r);
    match spec.kind {
        FamilyKind::Custom => Err(Error::Unsupported("block counts for custom families".into())),
        FamilyKind::Extended => {
            let s = gcd(n, r);
            Ok(BlockCountReport::new(
                n + r - 1,
                ((n - 1) * (r - 1) + 1 - s) / 2,
                0,
                s,
            ))
        }
        FamilyKind::Frt => {
            let (s, _, _) = frt_split(n, r);
            let d0 = (n + r - 1) / 2;
            let corank = corank_closed(spec)?;
            let fours = if corank == 0 { (s - 1) / 2 } else { 0 };
            let pairs = (n * r - corank) / 2;
            let ones = d0.min(pairs);
            let twos = pairs - ones - fours;
            Ok(BlockCountReport::new(ones, twos, fours, corank))
        }
        _ => {
            let corank = corank_closed(spec)?;
            Ok(BlockCountReport::new((n * r - corank) / 2, 0, 0, corank))
        }
    }
}

/// Degree at a primitive `m`-th root of unity: `∏ m / gcd(d_i, m)` over the
/// nontrivial blocks of the canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree {
    pub m: u64,
    pub value: Int,
    pub warning: Option<String>,
}

pub fn degree_from_blocks(values: &[Int], m: u64) -> Int {
    let mm = Int::from(m);
    values
        .iter()
        .fold(Int::one(), |acc, d| acc * (&mm / d.gcd(&mm)))
}

pub fn degree_at_root(spec: &FamilySpec, m: u64) -> Result<Degree> {
    if m < 2 {
        return Err(Error::Precondition("root order m must be at least 2".into()));
    }
    let form = skew_normal_form(&build_h(spec)?)?;
    Ok(Degree {
        m,
        value: degree_from_blocks(&form.block_values, m),
        warning: m.is_multiple_of(2).then(|| {
            "even root order: parity effects are not modelled by the gcd formula".to_string()
        }),
    })
}

/// Determinant of the corner blocks used by the regular FRT count: `det F_S`.
pub fn det_f(spec: &FamilySpec) -> Result<Int> {
    let f = build_f_series(spec)?;
    let f = to_int(&f).ok_or_else(|| Error::Verification("F is not integral".into()))?;
    det(&f)
}

/// Exact kernel of `H` (oracle side, for comparisons).
pub fn kernel_oracle(spec: &FamilySpec) -> Result<KernelBasis> {
    Ok(kernel(&build_h(spec)?))
}

/// `𝕋⁻¹` applied to a vector.
pub fn apply_t_inverse(n: usize, r: usize, v: &[Int]) -> Result<Vec<Int>> {
    let (_, ti) = build_t_basis(n, r);
    ti.mul_vec(v)
}
