//! Named pass/fail checks comparing closed forms and constructions against
//! independent oracles.

use crate::closed::{
    center_generators, inverse_h_closed, inverse_lambda_closed, inverse_route, kernel_closed,
    lambda_inverse_route,
};
use crate::error::Result;
use crate::families::{build_h, FamilyKind, FamilySpec};
use crate::linalg::{inverse, kernel, rank};
use crate::nc::exchange::exchange_check;
use crate::nc::lambda::{lambda_symbolic, lambda_via_diagonals, q_exponent};
use crate::nc::minors::{family_minor, quantum_minor_xi, quantum_minor_xi_by_columns, Family, MinorId, MonomialMap};
use crate::nc::PqAlgebra;
use crate::seeds::{build_lambda, compatible_pair, default_frozen, truncate_nonmutable};
use num_traits::Zero;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    fn new(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            check: check.into(),
            passed,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}: {}", self.check, self.detail)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Inverse,
    Lambda,
    Minors,
    Seeds,
    Kernel,
    Exchange,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Inverse,
        Check::Lambda,
        Check::Minors,
        Check::Seeds,
        Check::Kernel,
        Check::Exchange,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }

    pub fn name(self) -> &'static str {
        match self {
            Check::Inverse => "inverse",
            Check::Lambda => "lambda",
            Check::Minors => "minors",
            Check::Seeds => "seeds",
            Check::Kernel => "kernel",
            Check::Exchange => "exchange",
        }
    }
}

pub fn run_check(check: Check, spec: &FamilySpec, cap: usize) -> Result<Verdict> {
    match check {
        Check::Inverse => verify_inverse(spec),
        Check::Lambda => verify_lambda(spec, cap),
        Check::Minors => verify_minors(spec, cap),
        Check::Seeds => verify_seeds(spec),
        Check::Kernel => verify_kernel(spec),
        Check::Exchange => verify_exchange(spec, cap),
    }
}

/// Closed-form `H⁻¹` and `Λ⁻¹` against exact inversion.
pub fn verify_inverse(spec: &FamilySpec) -> Result<Verdict> {
    let h = build_h(spec)?;
    let Ok(oracle) = inverse(&h) else {
        let refused = inverse_h_closed(spec).is_err();
        return Ok(Verdict::new("inverse", refused, "H is singular; closed form refuses"));
    };
    let route = inverse_route(spec);
    let closed = inverse_h_closed(spec)?;
    let mut ok = closed == oracle;
    let mut detail = format!("H^-1 via {route:?} {}", if ok { "= oracle" } else { "!= oracle" });
    if let Some(lroute) = lambda_inverse_route(spec) {
        let l_oracle = inverse(&build_lambda(spec)?)?;
        let l_ok = inverse_lambda_closed(spec)? == l_oracle;
        ok &= l_ok;
        detail.push_str(&format!("; Lambda^-1 via {lroute:?} {}", if l_ok { "= oracle" } else { "!= oracle" }));
    }
    Ok(Verdict::new("inverse", ok, detail))
}

/// `𝕋ᵗH𝕋`, diagonal sums and (within the cap) the symbolic engine agree.
pub fn verify_lambda(spec: &FamilySpec, cap: usize) -> Result<Verdict> {
    let l = build_lambda(spec)?;
    let diag = lambda_via_diagonals(spec)?;
    let mut ok = l == diag && l.is_skew() && rank(&l) == rank(&build_h(spec)?);
    let mut detail = format!("T^t H T {} diagonal sums", if l == diag { "=" } else { "!=" });
    let symbolic = matches!(spec.kind, FamilyKind::Frt | FamilyKind::DipperDonkin) && spec.n.min(spec.r) <= cap;
    if symbolic {
        let s = lambda_symbolic(spec, cap)?;
        ok &= s == l;
        detail.push_str(&format!("; symbolic {}", if s == l { "=" } else { "!=" }));
    } else {
        detail.push_str("; symbolic skipped");
    }
    Ok(Verdict::new("lambda", ok, detail))
}

/// Minors are bar-fixed, both expansions agree, and the family pairwise
/// `q`-commutes.
pub fn verify_minors(spec: &FamilySpec, cap: usize) -> Result<Verdict> {
    let (n, r) = (spec.n, spec.r);
    if n.min(r) > cap {
        return Ok(Verdict::new("minors", true, format!("skipped: order {} above cap {cap}", n.min(r))));
    }
    let map = MonomialMap::for_spec(spec)?;
    let map_ref = (!map.is_trivial()).then_some(&map);
    let alg = PqAlgebra::new(n, r);
    let mut chis = Vec::new();
    for a in 1..=n {
        for j in 1..=r {
            let id = MinorId::vplus(a, j);
            let xi = quantum_minor_xi(&alg, &id)?;
            if xi != quantum_minor_xi_by_columns(&alg, &id)? {
                return Ok(Verdict::new("minors", false, format!("expansions differ for {id:?}")));
            }
            let chi = family_minor(&alg, a, j, Family::Plus, map_ref)?;
            if alg.bar(&chi) != chi {
                return Ok(Verdict::new("minors", false, format!("chi[{a},{j}] not bar-fixed")));
            }
            chis.push(chi);
        }
    }
    for (i, u) in chis.iter().enumerate() {
        for v in &chis[i + 1..] {
            if q_exponent(&alg, u, v).is_err() {
                return Ok(Verdict::new("minors", false, "a family pair fails to q-commute"));
            }
        }
    }
    Ok(Verdict::new("minors", true, format!("{} minors bar-fixed and pairwise q-commuting", n * r)))
}

/// Certified compatible pair and its default truncation.
pub fn verify_seeds(spec: &FamilySpec) -> Result<Verdict> {
    let pair = compatible_pair(spec, None)?;
    let ok = pair.certify() && pair.lambda_is_skew();
    let t = truncate_nonmutable(&pair, &default_frozen(spec.n, spec.r));
    let (t_ok, t_detail) = match &t {
        Ok(t) => (t.certify(), format!("truncated B {}x{}", t.b.rows(), t.b.cols())),
        Err(e) => (false, format!("truncation failed: {e}")),
    };
    let size = pair.lambda.rows();
    Ok(Verdict::new(
        "seeds",
        ok && t_ok,
        format!("Lambda*B = (-2I_{} ; 0_{}x{}); {t_detail}", pair.c, size - pair.c, pair.c),
    ))
}

/// Closed-form kernels and centers against the exact nullspaces.
pub fn verify_kernel(spec: &FamilySpec) -> Result<Verdict> {
    let h = build_h(spec)?;
    let l = build_lambda(spec)?;
    let kp = kernel_closed(spec)?;
    let oh = kernel(&h);
    let ol = kernel(&l);
    let mut ok = kp.h.annihilated_by(&h) && kp.lambda.annihilated_by(&l);
    ok &= kp.h.same_span(&oh) && kp.lambda.same_span(&ol);
    let has_centers = matches!(spec.kind, FamilyKind::Frt | FamilyKind::DipperDonkin);
    let centers = if has_centers { center_generators(spec)? } else { Vec::new() };
    for g in &centers {
        ok &= l.mul_vec(&g.exponents)?.iter().all(Zero::is_zero);
    }
    ok &= !has_centers || centers.len() == ol.dimension();
    Ok(Verdict::new(
        "kernel",
        ok,
        format!("corank {}, {} center generators", oh.dimension(), centers.len()),
    ))
}

fn pairs(k: usize) -> Vec<[usize; 2]> {
    (1..=k).flat_map(|a| (a + 1..=k).map(move |b| [a, b])).collect()
}

/// Every 2×2 configuration solves the exchange relation with a zero R/C
/// balance; FRT additionally yields `(a, c) = (0, 1)`.
pub fn verify_exchange(spec: &FamilySpec, cap: usize) -> Result<Verdict> {
    let (n, r) = (spec.n, spec.r);
    if n < 2 || r < 2 {
        return Ok(Verdict::new("exchange", true, "no 2x2 configurations"));
    }
    if n.max(r) > cap.max(3) {
        return Ok(Verdict::new("exchange", true, format!("skipped: {n}x{r} above cap")));
    }
    let mut count = 0;
    for rows in pairs(n) {
        for cols in pairs(r) {
            let rep = exchange_check(&rows, &cols, spec)?;
            let frt_ok = spec.kind != FamilyKind::Frt || (rep.solution.a, rep.solution.c) == (0, 1);
            if !rep.balanced() || !frt_ok {
                return Ok(Verdict::new(
                    "exchange",
                    false,
                    format!("rows {rows:?} cols {cols:?}: {:?}", rep.solution),
                ));
            }
            count += 1;
        }
    }
    Ok(Verdict::new("exchange", true, format!("{count} configurations solved")))
}
