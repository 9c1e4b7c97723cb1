use super::laurent::Laurent;
use super::poly::{NCPoly, PqAlgebra};
use crate::error::{Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::Int;

/// Row and column sets of a quantum minor, 1-based and strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinorId {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl MinorId {
    pub fn new(rows: Vec<usize>, cols: Vec<usize>) -> Result<Self> {
        let inc = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if rows.len() != cols.len() || rows.is_empty() || !inc(&rows) || !inc(&cols) {
            return Err(Error::Precondition(format!(
                "minor needs equal-size strictly increasing index sets, got {rows:?} x {cols:?}"
            )));
        }
        Ok(MinorId { rows, cols })
    }

    pub fn order(&self) -> usize {
        self.rows.len()
    }

    fn check(&self, n: usize, r: usize) -> Result<()> {
        if self.rows.iter().any(|&a| a == 0 || a > n) || self.cols.iter().any(|&j| j == 0 || j > r) {
            return Err(Error::Precondition(format!(
                "minor {self:?} does not fit a {n}x{r} matrix"
            )));
        }
        Ok(())
    }

    /// The largest minor whose rows are `≤ α` and columns `≤ j`, anchored at
    /// `(α, j)`.
    pub fn vplus(a: usize, j: usize) -> Self {
        let (rows, cols) = if a >= j {
            ((a - j + 1..=a).collect(), (1..=j).collect())
        } else {
            ((1..=a).collect(), (j - a + 1..=j).collect())
        };
        MinorId { rows, cols }
    }

    /// The mirror family anchored at `(α, j)` with rows `≥ α`, columns `≥ j`.
    pub fn vminus(a: usize, j: usize, n: usize, r: usize) -> Self {
        let m = (n - a + 1).min(r - j + 1);
        MinorId {
            rows: (a..a + m).collect(),
            cols: (j..j + m).collect(),
        }
    }

    /// Diagonal positions `(α_i, j_i)`.
    pub fn diagonal(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().copied().zip(self.cols.iter().copied())
    }
}

/// Which broken line a minor family follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Plus,
    Minus,
}

/// The `R`/`C` monomials `M_{αj}` twisting `W_{αj} = Z_{αj} M_{αj}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    pub n: usize,
    pub r: usize,
    /// Indexed by `(α−1)·r + (j−1)`.
    pub r_exp: Vec<Vec<i64>>,
    pub c_exp: Vec<Vec<i64>>,
}

impl MonomialMap {
    pub fn trivial(n: usize, r: usize) -> Self {
        MonomialMap {
            n,
            r,
            r_exp: vec![vec![0; n]; n * r],
            c_exp: vec![vec![0; r]; n * r],
        }
    }

    /// `M_{αj} = R_{α+1}⋯R_n · C_{j+1}⁻¹⋯C_r⁻¹`.
    pub fn dipper_donkin(n: usize, r: usize) -> Self {
        let mut m = MonomialMap::trivial(n, r);
        for a in 1..=n {
            for j in 1..=r {
                let idx = (a - 1) * r + j - 1;
                m.r_exp[idx] = (1..=n).map(|b| i64::from(b > a)).collect();
                m.c_exp[idx] = (1..=r).map(|k| -i64::from(k > j)).collect();
            }
        }
        m
    }

    pub fn from_fn(n: usize, r: usize, f: impl Fn(usize, usize) -> (Vec<i64>, Vec<i64>)) -> Result<Self> {
        let mut m = MonomialMap::trivial(n, r);
        for a in 1..=n {
            for j in 1..=r {
                let (re, ce) = f(a, j);
                if re.len() != n || ce.len() != r {
                    return Err(Error::Dimension(format!("M[{a},{j}] exponent lengths")));
                }
                m.r_exp[(a - 1) * r + j - 1] = re;
                m.c_exp[(a - 1) * r + j - 1] = ce;
            }
        }
        Ok(m)
    }

    pub fn for_spec(spec: &FamilySpec) -> Result<Self> {
        match spec.kind {
            FamilyKind::Frt => Ok(MonomialMap::trivial(spec.n, spec.r)),
            FamilyKind::DipperDonkin => Ok(MonomialMap::dipper_donkin(spec.n, spec.r)),
            k => Err(Error::Unsupported(format!("no monomial twist for the {k} family"))),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.r_exp.iter().chain(&self.c_exp).all(|v| v.iter().all(|&e| e == 0))
    }

    fn idx(&self, a: usize, j: usize) -> usize {
        (a - 1) * self.r + j - 1
    }

    /// `Φ_{αj}^{βi}` with `M_{αj} Z_{βi} = q^Φ Z_{βi} M_{αj}`.
    pub fn phi(&self, a: usize, j: usize, b: usize, i: usize) -> i64 {
        let k = self.idx(a, j);
        self.r_exp[k][b - 1] + self.c_exp[k][i - 1]
    }

    /// Summed exponents of `M_{α₁j₁}⋯M_{α_m j_m}` over the diagonal of `id`.
    pub fn diagonal_exponents(&self, id: &MinorId) -> (Vec<i64>, Vec<i64>) {
        let mut re = vec![0; self.n];
        let mut ce = vec![0; self.r];
        for (a, j) in id.diagonal() {
            let k = self.idx(a, j);
            re.iter_mut().zip(&self.r_exp[k]).for_each(|(x, y)| *x += y);
            ce.iter_mut().zip(&self.c_exp[k]).for_each(|(x, y)| *x += y);
        }
        (re, ce)
    }

    fn exps(&self, a: usize, j: usize) -> Vec<i64> {
        let k = self.idx(a, j);
        self.r_exp[k].iter().chain(&self.c_exp[k]).copied().collect()
    }
}

/// First violated structural identity of a monomial map, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapViolation {
    pub rule: &'static str,
    pub witness: String,
}

impl std::fmt::Display for MapViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} violated at {}", self.rule, self.witness)
    }
}

pub fn validate_monomial_map(map: &MonomialMap) -> std::result::Result<(), MapViolation> {
    let (n, r) = (map.n, map.r);
    for a in 1..=n {
        for j in 1..=r {
            for g in 1..=n - a {
                for k in 1..=r - j {
                    let lhs: Vec<i64> = map.exps(a, j).iter().zip(map.exps(a + g, j + k)).map(|(x, y)| x + y).collect();
                    let rhs: Vec<i64> = map.exps(a, j + k).iter().zip(map.exps(a + g, j)).map(|(x, y)| x + y).collect();
                    if lhs != rhs {
                        return Err(MapViolation {
                            rule: "M[a,j]M[a+g,j+k] = M[a,j+k]M[a+g,j]",
                            witness: format!("a={a}, j={j}, g={g}, k={k}"),
                        });
                    }
                }
            }
        }
    }
    for a in 1..=n {
        for j in 1..=r {
            let sep: Vec<i64> = (0..n + r)
                .map(|t| map.exps(a, j)[t] - map.exps(a, 1)[t] - map.exps(1, j)[t] + map.exps(1, 1)[t])
                .collect();
            if sep.iter().any(|&e| e != 0) {
                return Err(MapViolation {
                    rule: "M[a,j] factors as a row part times a column part",
                    witness: format!("a={a}, j={j}"),
                });
            }
        }
    }
    for a in 1..=n {
        for j in 1..=r {
            let p = map.phi(a, j, a, j);
            if p != 0 {
                return Err(MapViolation {
                    rule: "Phi[a,j][a,j] = 0",
                    witness: format!("a={a}, j={j}, Phi={p}"),
                });
            }
        }
    }
    check_psi(map)
}

fn permutations(s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(s - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, s - 1);
            out.push(q);
        }
    }
    out
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    if s == 0 {
        return vec![vec![]];
    }
    if n < s {
        return vec![];
    }
    let mut out = subsets(n - 1, s);
    for mut v in subsets(n - 1, s - 1) {
        v.push(n);
        out.push(v);
    }
    out
}

/// Both conjugation exponents are independent of the permutation.
fn check_psi(map: &MonomialMap) -> std::result::Result<(), MapViolation> {
    let (n, r) = (map.n, map.r);
    for s in 2..=n.min(r).min(4) {
        let perms = permutations(s);
        for rows in subsets(n, s).into_iter().take(6) {
            for cols in subsets(r, s).into_iter().take(6) {
                for b in 1..=n {
                    for t in 1..=r {
                        let psi = |p: &[usize]| -> i64 {
                            (0..s).map(|i| map.phi(b, t, rows[i], cols[p[i]])).sum()
                        };
                        let phi = |p: &[usize]| -> i64 {
                            (0..s).map(|i| map.phi(rows[i], cols[p[i]], b, t)).sum()
                        };
                        let (psi0, phi0) = (psi(&perms[0]), phi(&perms[0]));
                        for p in &perms[1..] {
                            if psi(p) != psi0 || phi(p) != phi0 {
                                return Err(MapViolation {
                                    rule: "conjugation exponent independent of the permutation",
                                    witness: format!("rows {rows:?}, cols {cols:?}, sigma {p:?}, (b,t)=({b},{t})"),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

fn minus_q_pow(l: usize) -> Laurent {
    let sign = if l.is_multiple_of(2) { 1 } else { -1 };
    Laurent::monomial(Int::from(sign), l as i64)
}

/// `ξ = Σ_σ (−q)^{ℓ(σ)} Z_{α₁ j_{σ(1)}} ⋯ Z_{α_m j_{σ(m)}}`.
pub fn quantum_minor_xi(alg: &PqAlgebra, id: &MinorId) -> Result<NCPoly> {
    id.check(alg.n, alg.r)?;
    let m = id.order();
    let mut out = alg.zero();
    for p in permutations(m) {
        let factors = (0..m)
            .map(|i| alg.z(id.rows[i], id.cols[p[i]]))
            .collect::<Result<Vec<_>>>()?;
        out = &out + &alg.product(&factors).scale(&minus_q_pow(inversions(&p)));
    }
    Ok(out)
}

/// The column-ordered expansion `Σ_τ (−q)^{ℓ(τ)} Z_{α_{τ(1)} j₁} ⋯ Z_{α_{τ(m)} j_m}`.
pub fn quantum_minor_xi_by_columns(alg: &PqAlgebra, id: &MinorId) -> Result<NCPoly> {
    id.check(alg.n, alg.r)?;
    let m = id.order();
    let mut out = alg.zero();
    for p in permutations(m) {
        let factors = (0..m)
            .map(|i| alg.z(id.rows[p[i]], id.cols[i]))
            .collect::<Result<Vec<_>>>()?;
        out = &out + &alg.product(&factors).scale(&minus_q_pow(inversions(&p)));
    }
    Ok(out)
}

/// The bar-invariant minor `χ` of the twisted algebra: `ξ·(M_{α₁j₁}⋯M_{α_m j_m})`
/// rescaled by the unique power of `q` making it bar-fixed. Without a map this
/// is `ξ` itself.
pub fn quantum_minor(alg: &PqAlgebra, id: &MinorId, map: Option<&MonomialMap>) -> Result<NCPoly> {
    let xi = quantum_minor_xi(alg, id)?;
    let Some(map) = map else { return Ok(xi) };
    if (map.n, map.r) != (alg.n, alg.r) {
        return Err(Error::Dimension("monomial map and algebra sizes differ".into()));
    }
    let (re, ce) = map.diagonal_exponents(id);
    let tilde = alg.mul(&xi, &alg.rc(&re, &ce)?);
    bar_normalize(alg, &tilde)
}

/// `q^{−a}·x` with `a` chosen so the result is bar-fixed.
pub fn bar_normalize(alg: &PqAlgebra, x: &NCPoly) -> Result<NCPoly> {
    let k = alg
        .bar(x)
        .shift_relative_to(x)
        .ok_or_else(|| Error::Verification("bar(x) is not a power of q times x".into()))?;
    if k % 2 != 0 {
        return Err(Error::Verification(format!("bar(x) = q^{k} x has odd exponent")));
    }
    let out = x.shift(k / 2);
    debug_assert_eq!(alg.bar(&out), out);
    Ok(out)
}

/// `χ_{αj}` of the chosen family, twisted by `map`.
pub fn family_minor(
    alg: &PqAlgebra,
    a: usize,
    j: usize,
    family: Family,
    map: Option<&MonomialMap>,
) -> Result<NCPoly> {
    let id = match family {
        Family::Plus => MinorId::vplus(a, j),
        Family::Minus => MinorId::vminus(a, j, alg.n, alg.r),
    };
    quantum_minor(alg, &id, map)
}
