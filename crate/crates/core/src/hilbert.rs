//! Hilbert series of monomial quotients `S/I`, written as `N(t) / (1-t)^n`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use serde::{Serialize, Serializer};

use crate::betti::binomial;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;

/// Dense integer polynomial in `t`; no trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly(Vec<i64>);

impl IntPoly {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPoly(coeffs)
    }

    pub fn zero() -> Self {
        IntPoly(Vec::new())
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `t^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        IntPoly(c)
    }

    /// `1 - t^k`
    pub fn one_minus_t_pow(k: usize) -> Self {
        Self::one() - Self::monomial(k)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.0);
        IntPoly(c)
    }

    /// `self / (1 - t)` when the division is exact.
    pub fn div_one_minus_t(&self) -> Option<IntPoly> {
        if self.eval_at_one() != 0 {
            return None;
        }
        let mut acc = 0;
        let q = self
            .0
            .iter()
            .take(self.0.len().saturating_sub(1))
            .map(|&c| {
                acc += c;
                acc
            })
            .collect();
        Some(IntPoly::new(q))
    }

    /// Largest `k` with `(1-t)^k | self`, and the cofactor. Zero is rejected.
    pub fn split_one_minus_t(&self) -> Option<(usize, IntPoly)> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(next) = cur.div_one_minus_t() {
            cur = next;
            k += 1;
        }
        Some((k, cur))
    }
}

impl Add for IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: IntPoly) -> IntPoly {
        let len = self.0.len().max(rhs.0.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    write!(f, "t")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// Variable to split on: most frequent among generators that are not pure
/// powers, lowest index on ties. `None` when every generator is a pure power.
pub fn pivot_variable(ideal: &MonomialIdeal) -> Option<usize> {
    let mut counts = vec![0usize; ideal.nvars()];
    for g in ideal.gens().iter().filter(|g| g.support().len() > 1) {
        for v in g.support() {
            counts[v - 1] += 1;
        }
    }
    let best = *counts.iter().max()?;
    (best > 0).then(|| counts.iter().position(|&c| c == best).unwrap() + 1)
}

/// `N(t)` with `H_{S/I}(t) = N(t) / (1-t)^n`, by the recursion
/// `N(I) = N(I + (x_i)) + t · N(I : x_i)`.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> IntPoly {
    if ideal.is_unit() {
        return IntPoly::zero();
    }
    match pivot_variable(ideal) {
        None => ideal.gens().iter().fold(IntPoly::one(), |acc, g| {
            &acc * &IntPoly::one_minus_t_pow(g.degree() as usize)
        }),
        Some(i) => {
            let sum = ideal.sum_with_variable(i).expect("pivot in range");
            let colon = ideal.colon_by_variable(i).expect("pivot in range");
            hilbert_numerator(&sum) + hilbert_numerator(&colon).shift(1)
        }
    }
}

/// `dim_K (S/I)_d` for `d = 0..=max_degree`.
pub fn hilbert_function(ideal: &MonomialIdeal, max_degree: u32) -> Vec<i64> {
    let num = hilbert_numerator(ideal);
    let n = ideal.nvars() as i64;
    (0..=max_degree as usize)
        .map(|d| {
            (0..=d)
                .map(|k| {
                    let ways = if n == 0 {
                        (d == k) as u64
                    } else {
                        binomial((d - k) as i64 + n - 1, n - 1)
                    };
                    num.coeff(k) * ways as i64
                })
                .sum()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSummary {
    pub numerator: IntPoly,
    pub dim: usize,
    pub codim: usize,
    /// `e(S/I) = Q(1)`.
    pub multiplicity: i64,
    /// `Q(t)` with `N(t) = Q(t) (1-t)^codim` and `Q(1) ≠ 0`.
    pub reduced_numerator: IntPoly,
}

pub fn summarize(ideal: &MonomialIdeal) -> Result<HilbertSummary> {
    let numerator = hilbert_numerator(ideal);
    let (codim, reduced) = numerator.split_one_minus_t().ok_or(Error::UnitIdeal)?;
    Ok(HilbertSummary {
        dim: ideal.nvars() - codim,
        codim,
        multiplicity: reduced.eval_at_one(),
        reduced_numerator: reduced,
        numerator,
    })
}

/// Hilbert series of `(0 :_{S/I} x_i) = (I : x_i)/I` as a polynomial, or
/// `None` when that module has infinite length.
pub fn annihilator_series(ideal: &MonomialIdeal, i: usize) -> Result<Option<IntPoly>> {
    let colon = ideal.colon_by_variable(i)?;
    let mut diff = hilbert_numerator(ideal) - hilbert_numerator(&colon);
    for _ in 0..ideal.nvars() {
        match diff.div_one_minus_t() {
            Some(q) => diff = q,
            None => return Ok(None),
        }
    }
    Ok(Some(diff))
}

/// Whether `x_i` has a finite-length annihilator on `S/I` (is almost regular).
pub fn finite_length_colon(ideal: &MonomialIdeal, i: usize) -> Result<bool> {
    Ok(annihilator_series(ideal, i)?.is_some())
}
