//! Exponent vectors and exponent bound vectors.
//!
//! Variables are numbered `1..=n` in every public API; the exponent slice is
//! stored 0-based.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monomial `x^u`, stored as its exponent vector `u ∈ N^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The monomial `1` in `n` variables.
    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= n, "variable index {i} out of range 1..={n}");
        let mut exps = vec![0; n];
        exps[i - 1] = 1;
        Monomial { exps }
    }

    /// `x_i^d` (1-based).
    pub fn var_power(n: usize, i: usize, d: u32) -> Self {
        let mut m = Self::var(n, i);
        m.exps[i - 1] = d;
        m
    }

    /// The squarefree monomial `x_F` for a 1-based vertex set `F`.
    pub fn squarefree(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut exps = vec![0; n];
        for i in support {
            exps[i - 1] = 1;
        }
        Monomial { exps }
    }

    /// Squarefree monomial from a 0-based bitmask over the variables.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Monomial {
            exps: (0..n).map(|i| ((mask >> i) & 1) as u32).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x_i` (1-based).
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i - 1]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// `supp(u)` as 1-based indices.
    pub fn support(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Support as a 0-based bitmask. Only meaningful for `n <= 64`.
    pub fn support_mask(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1 << i))
    }

    /// `m(u)`: the largest index with a nonzero exponent, `None` for `u = 0`.
    pub fn max_index(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i + 1)
    }

    /// `m(u)`, rejecting the zero vector.
    pub fn m_index(&self) -> Result<usize> {
        self.max_index()
            .ok_or_else(|| Error::input("m(u) is undefined for the monomial 1"))
    }

    /// `l(u)`: number of indices `i < m(u)` with `u_i = a_i - 1`.
    pub fn l_value(&self, bound: &BoundVector) -> Result<usize> {
        bound.check_len(self.nvars())?;
        if !bound.bounds(self) {
            return Err(Error::input(format!(
                "monomial {self} is not strictly bounded by ({bound})"
            )));
        }
        let m = self.m_index()?;
        Ok((1..m)
            .filter(|&i| bound.get(i).is_cap(self.exponent(i)))
            .count())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.nvars(), other.nvars());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `x_i · x^u` (1-based).
    pub fn times_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i - 1] += 1;
        Monomial { exps }
    }

    /// `x^u / x_i`, or `None` when `x_i` does not divide.
    pub fn div_var(&self, i: usize) -> Option<Monomial> {
        if self.exps[i - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[i - 1] -= 1;
        Some(Monomial { exps })
    }

    /// The exchange `x_j · x^u / x_i`; `None` if `x_i` does not divide.
    pub fn exchange(&self, i: usize, j: usize) -> Option<Monomial> {
        self.div_var(i).map(|m| m.times_var(j))
    }

    /// Canonical order: total degree, then exponent vectors with larger
    /// leading exponents first (so `x1^2 < x1x2 < x2^2`).
    pub fn canonical_cmp(&self, other: &Monomial) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// All monomials of total degree `d` in `n` variables, in descending lex order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(0, d, &mut vec![0; n], &mut out);
    out
}

/// A single entry `a_i` of a bound vector: an integer `>= 2` or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bound {
    Finite(u32),
    Infinite,
}

impl Bound {
    /// `e < a_i`.
    pub fn admits(self, e: u32) -> bool {
        match self {
            Bound::Finite(a) => e < a,
            Bound::Infinite => true,
        }
    }

    /// `e = a_i - 1`; never true for an infinite bound.
    pub fn is_cap(self, e: u32) -> bool {
        match self {
            Bound::Finite(a) => e + 1 == a,
            Bound::Infinite => false,
        }
    }

    /// `e < a_i - 1`.
    pub fn below_cap(self, e: u32) -> bool {
        match self {
            Bound::Finite(a) => e + 1 < a,
            Bound::Infinite => true,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Finite(a) => write!(f, "{a}"),
            Bound::Infinite => write!(f, "inf"),
        }
    }
}

/// The vector `a = (a_1, ..., a_n)` with `2 <= a_i <= inf`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundVector(Vec<Bound>);

impl BoundVector {
    pub fn new(bounds: Vec<Bound>) -> Result<Self> {
        if let Some(b) = bounds
            .iter()
            .find(|b| matches!(b, Bound::Finite(a) if *a < 2))
        {
            return Err(Error::input(format!("bound entries must be >= 2, got {b}")));
        }
        Ok(BoundVector(bounds))
    }

    /// `(inf, ..., inf)`: a-stability becomes ordinary stability.
    pub fn infinite(n: usize) -> Self {
        BoundVector(vec![Bound::Infinite; n])
    }

    /// `(2, ..., 2)`: a-stability becomes squarefree stability.
    pub fn squarefree(n: usize) -> Self {
        BoundVector(vec![Bound::Finite(2); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `a_i` (1-based).
    pub fn get(&self, i: usize) -> Bound {
        self.0[i - 1]
    }

    pub fn entries(&self) -> &[Bound] {
        &self.0
    }

    /// True when `u_i < a_i` for every `i`.
    pub fn bounds(&self, u: &Monomial) -> bool {
        self.0.iter().zip(u.exps()).all(|(b, &e)| b.admits(e))
    }

    pub(crate) fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for BoundVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|b| b.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BoundVector {
    type Err = Error;

    /// Parses comma-separated entries such as `2,3,inf`.
    fn from_str(s: &str) -> Result<Self> {
        let bounds = s
            .split(',')
            .map(|t| match t.trim() {
                "inf" | "infinity" | "∞" => Ok(Bound::Infinite),
                t => t
                    .parse::<u32>()
                    .map(Bound::Finite)
                    .map_err(|_| Error::input(format!("bad bound entry {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        BoundVector::new(bounds)
    }
}

impl Serialize for BoundVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
