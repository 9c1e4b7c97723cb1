//! Polynomials in the algebra generated by `Z_{αj}` (FRT relations) and the
//! mutually commuting Laurent operators `R_α`, `C_j`.
//!
//! Normal form: a `Z`-word sorted lexicographically by `(α, j)` followed by an
//! `R`/`C` monomial, with a coefficient in `ℤ[q, q⁻¹]`.

use super::laurent::Laurent;
use crate::error::{Error, Result};
use crate::Int;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

/// Generator `Z_{αj}`, 1-based.
pub type Gen = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    pub word: Vec<Gen>,
    pub r_exp: Vec<i64>,
    pub c_exp: Vec<i64>,
}

impl Monomial {
    pub fn unit(n: usize, r: usize) -> Self {
        Monomial {
            word: Vec::new(),
            r_exp: vec![0; n],
            c_exp: vec![0; r],
        }
    }

    pub fn is_sorted(&self) -> bool {
        self.word.windows(2).all(|w| w[0] <= w[1])
    }

    /// `q`-exponent picked up by moving this monomial's `R`/`C` part to the
    /// right of `word`.
    fn rc_past(&self, word: &[Gen]) -> i64 {
        word.iter().map(|&(b, i)| self.r_exp[b - 1] + self.c_exp[i - 1]).sum()
    }

    pub fn has_rc(&self) -> bool {
        self.r_exp.iter().chain(&self.c_exp).any(|&e| e != 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    n: usize,
    r: usize,
    terms: BTreeMap<Monomial, Laurent>,
}

impl NCPoly {
    pub fn zero(n: usize, r: usize) -> Self {
        NCPoly {
            n,
            r,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(n: usize, r: usize, c: Laurent) -> Self {
        let mut p = NCPoly::zero(n, r);
        p.add_term(Monomial::unit(n, r), &c);
        p
    }

    pub fn one(n: usize, r: usize) -> Self {
        NCPoly::scalar(n, r, Laurent::one())
    }

    /// Terms as given, without straightening; see [`PqAlgebra::normal_form`].
    pub fn from_terms(n: usize, r: usize, terms: Vec<(Laurent, Monomial)>) -> Self {
        let mut p = NCPoly::zero(n, r);
        for (c, m) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.n, self.r)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Laurent)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Laurent {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: Monomial, c: &Laurent) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Laurent) -> Self {
        let mut out = NCPoly::zero(self.n, self.r);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    pub fn shift(&self, k: i64) -> Self {
        self.scale(&Laurent::q_pow(k))
    }

    /// Common `R`/`C` exponents when every term carries the same ones.
    pub fn rc_part(&self) -> Option<(Vec<i64>, Vec<i64>)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        it.all(|m| m.r_exp == first.r_exp && m.c_exp == first.c_exp)
            .then(|| (first.r_exp.clone(), first.c_exp.clone()))
    }

    /// `k` with `self = q^k · other`, if any.
    pub fn shift_relative_to(&self, other: &NCPoly) -> Option<i64> {
        let (m, c) = other.terms.iter().next()?;
        let k = self.terms.get(m)?.shift_relative_to(c)?;
        (other.shift(k) == *self).then_some(k)
    }

    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(Monomial::is_sorted)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, o: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&Laurent::constant(-1))
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, o: &NCPoly) -> NCPoly {
        self + &(-o)
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, o: &NCPoly) -> NCPoly {
        PqAlgebra::new(self.n, self.r).mul(self, o)
    }
}

/// The ambient algebra for an `n × r` quantum matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PqAlgebra {
    pub n: usize,
    pub r: usize,
}

impl PqAlgebra {
    pub fn new(n: usize, r: usize) -> Self {
        PqAlgebra { n, r }
    }

    pub fn one(&self) -> NCPoly {
        NCPoly::one(self.n, self.r)
    }

    pub fn zero(&self) -> NCPoly {
        NCPoly::zero(self.n, self.r)
    }

    pub fn scalar(&self, c: Laurent) -> NCPoly {
        NCPoly::scalar(self.n, self.r, c)
    }

    pub fn z(&self, a: usize, j: usize) -> Result<NCPoly> {
        self.check_gen((a, j))?;
        let mut m = Monomial::unit(self.n, self.r);
        m.word.push((a, j));
        Ok(NCPoly::from_terms(self.n, self.r, vec![(Laurent::one(), m)]))
    }

    /// `∏ R_α^{r_exp[α]} ∏ C_j^{c_exp[j]}`.
    pub fn rc(&self, r_exp: &[i64], c_exp: &[i64]) -> Result<NCPoly> {
        if r_exp.len() != self.n || c_exp.len() != self.r {
            return Err(Error::Dimension(format!(
                "R/C exponents need lengths {} and {}",
                self.n, self.r
            )));
        }
        let m = Monomial {
            word: Vec::new(),
            r_exp: r_exp.to_vec(),
            c_exp: c_exp.to_vec(),
        };
        Ok(NCPoly::from_terms(self.n, self.r, vec![(Laurent::one(), m)]))
    }

    pub fn r_op(&self, a: usize, e: i64) -> Result<NCPoly> {
        if !(1..=self.n).contains(&a) {
            return Err(Error::Precondition(format!("R[{a}] outside 1..{}", self.n)));
        }
        let mut re = vec![0; self.n];
        re[a - 1] = e;
        self.rc(&re, &vec![0; self.r])
    }

    pub fn c_op(&self, j: usize, e: i64) -> Result<NCPoly> {
        if !(1..=self.r).contains(&j) {
            return Err(Error::Precondition(format!("C[{j}] outside 1..{}", self.r)));
        }
        let mut ce = vec![0; self.r];
        ce[j - 1] = e;
        self.rc(&vec![0; self.n], &ce)
    }

    fn check_gen(&self, (a, j): Gen) -> Result<()> {
        if (1..=self.n).contains(&a) && (1..=self.r).contains(&j) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "unknown generator Z[{a},{j}] for a {}x{} matrix",
                self.n, self.r
            )))
        }
    }

    fn check(&self, x: &NCPoly) -> Result<()> {
        if x.dims() != (self.n, self.r) {
            return Err(Error::Dimension(format!(
                "polynomial over {:?}, algebra {}x{}",
                x.dims(),
                self.n,
                self.r
            )));
        }
        for m in x.terms.keys() {
            if m.r_exp.len() != self.n || m.c_exp.len() != self.r {
                return Err(Error::Dimension("R/C exponent vector length".into()));
            }
            for &g in &m.word {
                self.check_gen(g)?;
            }
        }
        Ok(())
    }

    /// Straighten every word.
    pub fn normal_form(&self, x: &NCPoly) -> Result<NCPoly> {
        self.check(x)?;
        let mut out = self.zero();
        for (m, c) in &x.terms {
            for (w, k) in straighten(&m.word) {
                let mono = Monomial {
                    word: w,
                    r_exp: m.r_exp.clone(),
                    c_exp: m.c_exp.clone(),
                };
                out.add_term(mono, &(c * &k));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        let mut out = self.zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                let shift = m1.rc_past(&m2.word);
                let coef = (c1 * c2).shift(shift);
                let mut word = m1.word.clone();
                word.extend_from_slice(&m2.word);
                let r_exp: Vec<i64> = m1.r_exp.iter().zip(&m2.r_exp).map(|(a, b)| a + b).collect();
                let c_exp: Vec<i64> = m1.c_exp.iter().zip(&m2.c_exp).map(|(a, b)| a + b).collect();
                for (w, k) in straighten(&word) {
                    let mono = Monomial {
                        word: w,
                        r_exp: r_exp.clone(),
                        c_exp: c_exp.clone(),
                    };
                    out.add_term(mono, &(&coef * &k));
                }
            }
        }
        out
    }

    pub fn product(&self, factors: &[NCPoly]) -> NCPoly {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, x: &NCPoly, k: u32) -> NCPoly {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, x))
    }

    /// The anti-automorphism with `q ↦ q⁻¹` fixing every `Z`, `R`, `C`.
    pub fn bar(&self, x: &NCPoly) -> NCPoly {
        let mut out = self.zero();
        for (m, c) in &x.terms {
            let rev: Vec<Gen> = m.word.iter().rev().copied().collect();
            let coef = c.bar().shift(m.rc_past(&rev));
            for (w, k) in straighten(&rev) {
                let mono = Monomial {
                    word: w,
                    r_exp: m.r_exp.clone(),
                    c_exp: m.c_exp.clone(),
                };
                out.add_term(mono, &(&coef * &k));
            }
        }
        out
    }

    /// Inverse of an `R`/`C` monomial.
    pub fn rc_inverse(&self, x: &NCPoly) -> Result<NCPoly> {
        let (m, c) = match x.terms.iter().next() {
            Some(t) if x.len() == 1 => t,
            _ => return Err(Error::Precondition("only R/C monomials are inverted".into())),
        };
        let (unit, k) = c
            .as_monomial()
            .ok_or_else(|| Error::Precondition("coefficient is not a unit".into()))?;
        if !m.word.is_empty() || !(unit == &Int::from(1) || unit == &Int::from(-1)) {
            return Err(Error::Precondition("only R/C monomials are inverted".into()));
        }
        let neg = |v: &[i64]| v.iter().map(|e| -e).collect::<Vec<_>>();
        let inv = self.rc(&neg(&m.r_exp), &neg(&m.c_exp))?;
        Ok(inv.scale(&Laurent::monomial(unit.clone(), -k)))
    }
}

/// Rewrite a `Z`-word into sorted words using
/// `Z_{αk}Z_{αj} = q⁻¹Z_{αj}Z_{αk}` (j<k), `Z_{βj}Z_{αj} = q⁻¹Z_{αj}Z_{βj}` (α<β),
/// `Z_{βl}Z_{αj} = Z_{αj}Z_{βl}` (α<β, l<j) and
/// `Z_{βl}Z_{αj} = Z_{αj}Z_{βl} − (q−q⁻¹)Z_{αl}Z_{βj}` (α<β, j<l).
pub fn straighten(word: &[Gen]) -> Vec<(Vec<Gen>, Laurent)> {
    let mut done: BTreeMap<Vec<Gen>, Laurent> = BTreeMap::new();
    let mut stack: Vec<(Vec<Gen>, Laurent)> = vec![(word.to_vec(), Laurent::one())];
    while let Some((w, c)) = stack.pop() {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1]) else {
            let e = done.entry(w.clone()).or_default();
            *e += &c;
            if e.is_zero() {
                done.remove(&w);
            }
            continue;
        };
        let (b, a) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        if a.0 == b.0 || a.1 == b.1 {
            stack.push((swapped, c.shift(-1)));
        } else if a.1 > b.1 {
            stack.push((swapped, c));
        } else {
            let mut extra = w;
            extra[i] = (a.0, b.1);
            extra[i + 1] = (b.0, a.1);
            stack.push((extra, -&(&c * &Laurent::q_minus_q_inv())));
            stack.push((swapped, c));
        }
    }
    done.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> PqAlgebra {
        PqAlgebra::new(2, 2)
    }

    #[test]
    fn row_relation() {
        let a = alg();
        let lhs = a.mul(&a.z(1, 2).unwrap(), &a.z(1, 1).unwrap());
        let rhs = a.mul(&a.z(1, 1).unwrap(), &a.z(1, 2).unwrap()).shift(-1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cross_relation() {
        let a = alg();
        let z = |i, j| a.z(i, j).unwrap();
        let lhs = a.mul(&z(2, 2), &z(1, 1));
        let corr = a.mul(&z(1, 2), &z(2, 1)).scale(&Laurent::q_minus_q_inv());
        assert_eq!(lhs, &a.mul(&z(1, 1), &z(2, 2)) - &corr);
        assert_eq!(a.mul(&z(2, 1), &z(1, 2)), a.mul(&z(1, 2), &z(2, 1)));
    }

    #[test]
    fn row_operator() {
        let a = alg();
        let lhs = a.mul(&a.r_op(1, 1).unwrap(), &a.z(1, 1).unwrap());
        let rhs = a.mul(&a.z(1, 1).unwrap(), &a.r_op(1, 1).unwrap()).shift(1);
        assert_eq!(lhs, rhs);
        let c = a.mul(&a.c_op(2, -1).unwrap(), &a.z(1, 2).unwrap());
        assert_eq!(c, a.mul(&a.z(1, 2).unwrap(), &a.c_op(2, -1).unwrap()).shift(-1));
    }

    #[test]
    fn unknown_generator() {
        assert!(alg().z(3, 1).is_err());
        let bad = NCPoly::from_terms(
            2,
            2,
            vec![(
                Laurent::one(),
                Monomial {
                    word: vec![(1, 5)],
                    r_exp: vec![0; 2],
                    c_exp: vec![0; 2],
                },
            )],
        );
        assert!(alg().normal_form(&bad).is_err());
    }

    #[test]
    fn bar_examples() {
        let a = alg();
        let qz = a.z(1, 1).unwrap().shift(1);
        assert_eq!(a.bar(&qz), a.z(1, 1).unwrap().shift(-1));
        let p = a.mul(&a.z(1, 1).unwrap(), &a.z(2, 2).unwrap());
        assert_eq!(a.bar(&p), a.mul(&a.z(2, 2).unwrap(), &a.z(1, 1).unwrap()));
        let rz = a.mul(&a.r_op(1, 1).unwrap(), &a.z(1, 1).unwrap());
        assert_eq!(a.bar(&a.bar(&rz)), rz);
    }
}
