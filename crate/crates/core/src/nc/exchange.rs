//! The three-term exchange relation `X·X' = q^a X_o D + q^c Y_L Y_R` between
//! minors obtained by dropping first/last rows and columns.

use super::minors::{quantum_minor, MinorId, MonomialMap};
use super::poly::{NCPoly, PqAlgebra};
use crate::error::{Error, Result};
use crate::families::FamilySpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductOrder {
    /// `X_b · X_t`.
    BottomTop,
    /// `X_t · X_b`.
    TopBottom,
}

impl std::fmt::Display for ProductOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ProductOrder::BottomTop => "Xb*Xt",
            ProductOrder::TopBottom => "Xt*Xb",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeSolution {
    pub order: ProductOrder,
    pub a: i64,
    pub c: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeReport {
    /// The first ordering that solves, searched `X_b·X_t` then `X_t·X_b`.
    pub solution: ExchangeSolution,
    /// Every ordering that admits a solution.
    pub all: Vec<ExchangeSolution>,
    /// `R` then `C` exponents of `X_o⁻¹ D⁻¹ Y_L Y_R`.
    pub rc_balance: Vec<i64>,
}

impl ExchangeReport {
    pub fn balanced(&self) -> bool {
        self.rc_balance.iter().all(|&e| e == 0)
    }
}

/// The six minors `X_t, X_b, X_o, D, Y_L, Y_R` of a configuration.
pub struct ExchangeMinors {
    pub xt: NCPoly,
    pub xb: NCPoly,
    pub xo: NCPoly,
    pub d: NCPoly,
    pub yl: NCPoly,
    pub yr: NCPoly,
}

fn rc_exponents(p: &NCPoly) -> Result<Vec<i64>> {
    let (re, ce) = p
        .rc_part()
        .ok_or_else(|| Error::Verification("minor terms carry different R/C parts".into()))?;
    Ok(re.into_iter().chain(ce).collect())
}

pub fn exchange_minors(alg: &PqAlgebra, id: &MinorId, map: Option<&MonomialMap>) -> Result<ExchangeMinors> {
    let m = id.order();
    if m < 2 {
        return Err(Error::Precondition("exchange relations need a minor of order at least 2".into()));
    }
    let minor = |rows: &[usize], cols: &[usize]| -> Result<NCPoly> {
        if rows.is_empty() {
            return Ok(alg.one());
        }
        quantum_minor(alg, &MinorId::new(rows.to_vec(), cols.to_vec())?, map)
    };
    let (rl, rr, ro) = (&id.rows[1..], &id.rows[..m - 1], &id.rows[1..m - 1]);
    let (cl, cr, co) = (&id.cols[1..], &id.cols[..m - 1], &id.cols[1..m - 1]);
    Ok(ExchangeMinors {
        xt: minor(rl, cl)?,
        xb: minor(rr, cr)?,
        xo: minor(ro, co)?,
        d: minor(&id.rows, &id.cols)?,
        yl: minor(rr, cl)?,
        yr: minor(rl, cr)?,
    })
}

/// Solve `P = q^a·U + q^c·V` for integers `a`, `c`, reading one exponent off
/// a monomial private to `U` (or `V`) and the other off the residual.
fn solve_two_terms(p: &NCPoly, u: &NCPoly, v: &NCPoly) -> Option<(i64, i64)> {
    if let Some((m, cu)) = u.terms().find(|(m, _)| v.coefficient(m).is_zero()) {
        let a = p.coefficient(m).shift_relative_to(cu)?;
        let c = (p - &u.shift(a)).shift_relative_to(v)?;
        return Some((a, c));
    }
    let (m, cv) = v.terms().find(|(m, _)| u.coefficient(m).is_zero())?;
    let c = p.coefficient(m).shift_relative_to(cv)?;
    let a = (p - &v.shift(c)).shift_relative_to(u)?;
    Some((a, c))
}

pub fn exchange_check(rows: &[usize], cols: &[usize], spec: &FamilySpec) -> Result<ExchangeReport> {
    let id = MinorId::new(rows.to_vec(), cols.to_vec())?;
    let map = MonomialMap::for_spec(spec)?;
    let alg = PqAlgebra::new(spec.n, spec.r);
    let map_ref = (!map.is_trivial()).then_some(&map);
    let x = exchange_minors(&alg, &id, map_ref)?;
    let u = alg.mul(&x.xo, &x.d);
    let v = alg.mul(&x.yl, &x.yr);
    let mut all = Vec::new();
    for order in [ProductOrder::BottomTop, ProductOrder::TopBottom] {
        let p = match order {
            ProductOrder::BottomTop => alg.mul(&x.xb, &x.xt),
            ProductOrder::TopBottom => alg.mul(&x.xt, &x.xb),
        };
        if let Some((a, c)) = solve_two_terms(&p, &u, &v) {
            all.push(ExchangeSolution { order, a, c });
        }
    }
    let solution = all
        .first()
        .cloned()
        .ok_or_else(|| Error::Verification(format!("no exchange relation for rows {rows:?}, cols {cols:?}")))?;
    let e = |p: &NCPoly| rc_exponents(p);
    let (eo, ed, el, er) = (e(&x.xo)?, e(&x.d)?, e(&x.yl)?, e(&x.yr)?);
    let rc_balance = (0..eo.len()).map(|i| el[i] + er[i] - eo[i] - ed[i]).collect();
    Ok(ExchangeReport {
        solution,
        all,
        rc_balance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frt_two_by_two() {
        let rep = exchange_check(&[1, 2], &[1, 2], &FamilySpec::frt(2, 2)).unwrap();
        assert_eq!(rep.solution, ExchangeSolution { order: ProductOrder::BottomTop, a: 0, c: 1 });
        assert!(rep.all.contains(&ExchangeSolution { order: ProductOrder::TopBottom, a: 0, c: -1 }));
        assert!(rep.balanced());
    }

    #[test]
    fn frt_spread_columns() {
        let rep = exchange_check(&[1, 2], &[1, 3], &FamilySpec::frt(2, 3)).unwrap();
        assert_eq!((rep.solution.a, rep.solution.c), (0, 1));
    }

    #[test]
    fn order_one_rejected() {
        assert!(exchange_check(&[1], &[1], &FamilySpec::frt(2, 2)).is_err());
    }
}
