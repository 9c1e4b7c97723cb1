use super::minors::{family_minor, Family, MinorId, MonomialMap};
use super::poly::{NCPoly, PqAlgebra};
use crate::error::{Error, Result};
use crate::families::{build_h, FamilyKind, FamilySpec};
use crate::{Int, IntMatrix};
use num_traits::Zero;
use rayon::prelude::*;

/// Default cap on the order of minors handled symbolically.
pub const DEFAULT_SYMBOLIC_CAP: usize = 3;

/// `λ` with `u·v = q^λ·v·u`.
pub fn q_exponent(alg: &PqAlgebra, u: &NCPoly, v: &NCPoly) -> Result<i64> {
    if u.is_zero() || v.is_zero() {
        return Err(Error::Precondition("q_exponent of a zero polynomial".into()));
    }
    let uv = alg.mul(u, v);
    let vu = alg.mul(v, u);
    uv.shift_relative_to(&vu).ok_or(Error::NotQCommuting)
}

/// Exponent units: the Dipper-Donkin twist lives in `q²`, so its exponents
/// are halved to match `H_D`.
fn unit(spec: &FamilySpec) -> i64 {
    if spec.kind == FamilyKind::DipperDonkin {
        2
    } else {
        1
    }
}

/// `Λ` from pairwise `q`-commutation of the family minors, computed in the
/// twisted algebra.
pub fn lambda_symbolic(spec: &FamilySpec, cap: usize) -> Result<IntMatrix> {
    lambda_symbolic_family(spec, cap, Family::Plus)
}

pub fn lambda_symbolic_family(spec: &FamilySpec, cap: usize, family: Family) -> Result<IntMatrix> {
    let (n, r) = (spec.n, spec.r);
    if n.min(r) > cap {
        return Err(Error::Precondition(format!(
            "minors of order {} exceed the symbolic cap {cap}",
            n.min(r)
        )));
    }
    let map = MonomialMap::for_spec(spec)?;
    let alg = PqAlgebra::new(n, r);
    let map_ref = (!map.is_trivial()).then_some(&map);
    let chis: Vec<NCPoly> = (1..=n)
        .flat_map(|a| (1..=r).map(move |j| (a, j)))
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&(a, j)| family_minor(&alg, a, j, family, map_ref))
        .collect::<Result<_>>()?;
    let size = n * r;
    let pairs: Vec<(usize, usize)> = (0..size).flat_map(|i| (i + 1..size).map(move |j| (i, j))).collect();
    let u = unit(spec);
    let vals: Vec<i64> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let e = q_exponent(&alg, &chis[i], &chis[j])?;
            if e % u != 0 {
                return Err(Error::Verification(format!("exponent {e} not a multiple of {u}")));
            }
            Ok(e / u)
        })
        .collect::<Result<_>>()?;
    let mut out = IntMatrix::zeros(size, size);
    for (&(i, j), v) in pairs.iter().zip(vals) {
        out[(i, j)] = Int::from(v);
        out[(j, i)] = Int::from(-v);
    }
    Ok(out)
}

/// `Λ_{αj,βk} = Σ H_{(α−y, j−y), (β−x, k−x)}` over the diagonals of the two
/// minors.
pub fn lambda_via_diagonals(spec: &FamilySpec) -> Result<IntMatrix> {
    let h = build_h(spec)?;
    let (n, r) = (spec.n, spec.r);
    if h.rows() != n * r {
        return Err(Error::Unsupported("diagonal sums need an n·r basis".into()));
    }
    let diag = |a: usize, j: usize| -> Vec<usize> {
        MinorId::vplus(a, j).diagonal().map(|(b, k)| (b - 1) * r + k - 1).collect()
    };
    let diags: Vec<Vec<usize>> = (1..=n).flat_map(|a| (1..=r).map(move |j| (a, j))).map(|(a, j)| diag(a, j)).collect();
    Ok(IntMatrix::from_fn(n * r, n * r, |p, q| {
        let mut s = Int::zero();
        for &x in &diags[p] {
            for &y in &diags[q] {
                s += &h[(x, y)];
            }
        }
        s
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nc::minors::quantum_minor_xi;

    #[test]
    fn simple_exponents() {
        let alg = PqAlgebra::new(2, 2);
        let z11 = alg.z(1, 1).unwrap();
        assert_eq!(q_exponent(&alg, &z11, &alg.z(1, 2).unwrap()).unwrap(), 1);
        assert_eq!(q_exponent(&alg, &z11, &z11).unwrap(), 0);
        let xi = quantum_minor_xi(&alg, &MinorId::vplus(2, 2)).unwrap();
        assert_eq!(q_exponent(&alg, &z11, &xi).unwrap(), 0);
        assert!(q_exponent(&alg, &alg.zero(), &z11).is_err());
        let sum = &z11 + &alg.z(2, 2).unwrap();
        assert_eq!(q_exponent(&alg, &sum, &alg.z(1, 2).unwrap()), Err(Error::NotQCommuting));
    }

    #[test]
    fn one_row_is_h() {
        let spec = FamilySpec::frt(1, 3);
        assert_eq!(lambda_via_diagonals(&spec).unwrap(), build_h(&spec).unwrap());
    }

    #[test]
    fn cap_enforced() {
        assert!(lambda_symbolic(&FamilySpec::frt(4, 4), 3).is_err());
    }
}
