//! Text form `coef*q^k * Z[a,j]Z[b,l] * R[a]^e * C[j]^e`, terms joined by ` + `.

use super::laurent::Laurent;
use super::poly::{NCPoly, PqAlgebra};
use crate::error::{Error, Result};
use crate::Int;
use std::str::FromStr;

pub fn format_poly(p: &NCPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = Vec::new();
    for (m, c) in p.terms() {
        let mut tail = String::new();
        if !m.word.is_empty() {
            tail.push_str(" * ");
            for (a, j) in &m.word {
                tail.push_str(&format!("Z[{a},{j}]"));
            }
        }
        for (a, e) in m.r_exp.iter().enumerate().filter(|(_, e)| **e != 0) {
            tail.push_str(&format!(" * R[{}]^{e}", a + 1));
        }
        for (j, e) in m.c_exp.iter().enumerate().filter(|(_, e)| **e != 0) {
            tail.push_str(&format!(" * C[{}]^{e}", j + 1));
        }
        for (k, coef) in c.terms() {
            out.push(format!("{coef}*q^{k}{tail}"));
        }
    }
    out.join(" + ")
}

fn bad(s: &str) -> Error {
    Error::Parse(format!("cannot read `{s}`"))
}

fn bracketed(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| bad(s)))
        .collect()
}

fn power(s: &str, head: char) -> Result<(usize, i64)> {
    let rest = s.strip_prefix(head).and_then(|r| r.strip_prefix('[')).ok_or_else(|| bad(s))?;
    let (idx, exp) = rest.split_once(']').ok_or_else(|| bad(s))?;
    let idx = idx.trim().parse::<usize>().map_err(|_| bad(s))?;
    let exp = match exp.trim() {
        "" => 1,
        e => e.strip_prefix('^').ok_or_else(|| bad(s))?.trim().parse::<i64>().map_err(|_| bad(s))?,
    };
    Ok((idx, exp))
}

fn factor(alg: &PqAlgebra, tok: &str) -> Result<NCPoly> {
    let t = tok.trim();
    if t.is_empty() {
        return Err(bad(tok));
    }
    if let Ok(c) = Int::from_str(t) {
        return Ok(alg.scalar(Laurent::monomial(c, 0)));
    }
    if t == "q" {
        return Ok(alg.scalar(Laurent::q_pow(1)));
    }
    if let Some(k) = t.strip_prefix("q^") {
        let k = k.trim().parse::<i64>().map_err(|_| bad(t))?;
        return Ok(alg.scalar(Laurent::q_pow(k)));
    }
    if t.starts_with('R') {
        let (a, e) = power(t, 'R')?;
        return alg.r_op(a, e);
    }
    if t.starts_with('C') {
        let (j, e) = power(t, 'C')?;
        return alg.c_op(j, e);
    }
    if t.starts_with('Z') {
        let mut acc = alg.one();
        for piece in t.split('Z').skip(1) {
            let inner = piece
                .trim()
                .strip_prefix('[')
                .and_then(|p| p.strip_suffix(']'))
                .ok_or_else(|| bad(t))?;
            let idx = bracketed(inner)?;
            if idx.len() != 2 {
                return Err(bad(t));
            }
            acc = alg.mul(&acc, &alg.z(idx[0], idx[1])?);
        }
        return Ok(acc);
    }
    Err(bad(t))
}

/// Read a polynomial, multiplying factors in the order written.
pub fn parse_poly(alg: &PqAlgebra, s: &str) -> Result<NCPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(alg.zero());
    }
    let mut out = alg.zero();
    for term in s.split('+') {
        let mut acc = alg.one();
        for tok in term.split('*') {
            acc = alg.mul(&acc, &factor(alg, tok)?);
        }
        out = &out + &acc;
    }
    Ok(out)
}
