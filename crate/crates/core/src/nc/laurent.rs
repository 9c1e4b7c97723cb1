use crate::Int;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Element of `ℤ[q, q⁻¹]`, stored as exponent → nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<i64, Int>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(Int::one(), 0)
    }

    pub fn q_pow(k: i64) -> Self {
        Laurent::monomial(Int::one(), k)
    }

    pub fn constant(c: impl Into<Int>) -> Self {
        Laurent::monomial(c.into(), 0)
    }

    pub fn monomial(c: Int, k: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Laurent { terms }
    }

    /// `q − q⁻¹`.
    pub fn q_minus_q_inv() -> Self {
        &Laurent::q_pow(1) - &Laurent::q_pow(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coefficient(&self, k: i64) -> Int {
        self.terms.get(&k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn add_term(&mut self, k: i64, c: &Int) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Int::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `q ↦ q⁻¹`.
    pub fn bar(&self) -> Self {
        Laurent {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// `k` with `self = q^k · other`, if any.
    pub fn shift_relative_to(&self, other: &Laurent) -> Option<i64> {
        let k = self.min_degree()? - other.min_degree()?;
        (other.shift(k) == *self).then_some(k)
    }

    /// `(c, k)` when `self = c·q^k`.
    pub fn as_monomial(&self) -> Option<(&Int, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        self.terms.iter().next().map(|(&k, c)| (c, k))
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, o: &Laurent) {
        for (&k, c) in &o.terms {
            self.add_term(k, c);
        }
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        self + &(-o)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &o.terms {
                out.add_term(a + b, &(x * y));
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let op = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{op}{}*q^{k}", c.abs())?;
        }
        Ok(())
    }
}
