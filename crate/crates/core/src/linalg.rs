//! Sparse integer matrices and their rank over `Q` (or optionally `F_p`).
//!
//! Rank over `Q` uses fraction-free elimination. Entries are arbitrary
//! precision; elimination first runs on checked `i64` arithmetic and restarts
//! on `BigInt` only if an intermediate value overflows.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Below this extent in both directions, elimination runs on dense rows.
const DENSE_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    /// Row-major; each row sorted by column, with no stored zeros.
    data: Vec<Vec<(usize, BigInt)>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            row.push((i, BigInt::one()));
        }
        m
    }

    /// Duplicate positions are summed; zero results are dropped.
    pub fn from_triplets<T: Into<BigInt>>(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Result<Self> {
        let mut acc: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::input(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            *acc[r].entry(c).or_default() += v.into();
        }
        let data = acc
            .into_iter()
            .map(|row| {
                let mut row: Vec<(usize, BigInt)> =
                    row.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged dense matrix"));
        }
        Self::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.data[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|pos| self.data[r][pos].1.clone())
            .unwrap_or_default()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != other.rows {
            return Err(Error::input(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = Vec::with_capacity(self.rows);
        for row in &self.data {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    *acc.entry(*c).or_default() += a * b;
                }
            }
            let mut out: Vec<(usize, BigInt)> =
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
            out.sort_by_key(|(c, _)| *c);
            data.push(out);
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Permutes rows and columns: entry `(r, c)` moves to `(row_perm[r], col_perm[c])`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> ExactMatrix {
        let triplets = self.data.iter().enumerate().flat_map(|(r, row)| {
            row.iter()
                .map(move |(c, v)| (row_perm[r], col_perm[*c], v.clone()))
        });
        Self::from_triplets(self.rows, self.cols, triplets).expect("permutation stays in range")
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let dense = self.rows < DENSE_LIMIT && self.cols < DENSE_LIMIT;
        if let Some(small) = self.small_rows() {
            let fast = if dense {
                dense_rank(self.densify(&small))
            } else {
                sparse_rank(small)
            };
            if let Some(r) = fast {
                return r;
            }
        }
        let big = self.data.clone();
        if dense {
            dense_rank(self.densify(&big))
        } else {
            sparse_rank(big)
        }
        .expect("BigInt elimination cannot overflow")
    }

    /// Rank over the prime field `F_p`. Not used for exact results.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        assert!((2..1 << 32).contains(&p), "prime must fit in 32 bits");
        let pb = BigInt::from(p);
        let rows: Vec<Vec<(usize, u64)>> = self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter_map(|(c, v)| {
                        let r = v.mod_floor(&pb).to_u64().unwrap();
                        (r != 0).then_some((*c, r))
                    })
                    .collect()
            })
            .collect();
        let mut pivots: HashMap<usize, Vec<(usize, u64)>> = HashMap::new();
        let mut rank = 0;
        for mut row in rows {
            while let Some(&(c, lead)) = row.first() {
                match pivots.get(&c) {
                    Some(piv) => {
                        // piv is monic
                        let factor = lead;
                        row = merge(&row, piv, |a, b| {
                            let v = (a + p - (factor * b) % p) % p;
                            (v != 0).then_some(v)
                        });
                    }
                    None => {
                        let inv = mod_pow(lead, p - 2, p);
                        let monic = row.iter().map(|&(k, v)| (k, v * inv % p)).collect();
                        pivots.insert(c, monic);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }

    fn small_rows(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .map(|(c, v)| v.to_i64().map(|x| (*c, x)))
                    .collect()
            })
            .collect()
    }

    fn densify<T: Scalar>(&self, rows: &[Vec<(usize, T)>]) -> Vec<Vec<T>> {
        rows.iter()
            .map(|row| {
                let mut out = vec![T::nil(); self.cols];
                for (c, v) in row {
                    out[*c] = v.clone();
                }
                out
            })
            .collect()
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Merges two sorted sparse rows entrywise; `f(a, b)` returns `None` for zero.
fn merge<T: Clone + Default, F>(a: &[(usize, T)], b: &[(usize, T)], mut f: F) -> Vec<(usize, T)>
where
    F: FnMut(T, T) -> Option<T>,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (col, x, y) = match (a.get(i), b.get(j)) {
            (Some((ca, va)), Some((cb, vb))) if ca == cb => {
                i += 1;
                j += 1;
                (*ca, va.clone(), vb.clone())
            }
            (Some((ca, va)), Some((cb, _))) if ca < cb => {
                i += 1;
                (*ca, va.clone(), T::default())
            }
            (Some((ca, va)), None) => {
                i += 1;
                (*ca, va.clone(), T::default())
            }
            (_, Some((cb, vb))) => {
                j += 1;
                (*cb, T::default(), vb.clone())
            }
            (None, None) => unreachable!(),
        };
        if let Some(v) = f(x, y) {
            out.push((col, v));
        }
    }
    out
}

/// The integer operations elimination needs. `None` signals overflow.
trait Scalar: Clone + Default {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    /// `a*x - b*y`
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn exact_div(&self, d: &Self) -> Option<Self>;
    /// Non-negative gcd.
    fn gcd(&self, other: &Self) -> Option<Self>;
    fn is_unit(&self) -> bool;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        debug_assert_eq!(self % d, 0);
        self.checked_div(*d)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        i64::try_from(self.unsigned_abs().gcd(&other.unsigned_abs())).ok()
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn exact_div(&self, d: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % d)));
        Some(self / d)
    }
    fn gcd(&self, other: &Self) -> Option<Self> {
        Some(Integer::gcd(self, other))
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

/// Incremental echelon form keyed by leading column. Each new row is reduced
/// against existing pivots by integer cross-multiplication and then divided
/// by its content.
fn sparse_rank<T: Scalar>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        while let Some((c, lead)) = row.first().cloned() {
            let Some(piv) = pivots.get(&c) else {
                pivots.insert(c, row);
                rank += 1;
                break;
            };
            let plead = &piv[0].1;
            let g = lead.gcd(plead)?;
            let row_mul = plead.exact_div(&g)?;
            let piv_mul = lead.exact_div(&g)?;
            let mut overflow = false;
            row = merge(&row, piv, |x, y| {
                match T::cross(&row_mul, &x, &piv_mul, &y) {
                    Some(v) if v.is_nil() => None,
                    Some(v) => Some(v),
                    None => {
                        overflow = true;
                        None
                    }
                }
            });
            if overflow {
                return None;
            }
            let content = row.iter().try_fold(T::nil(), |acc, (_, v)| acc.gcd(v))?;
            if !content.is_nil() && !content.is_unit() {
                for (_, v) in row.iter_mut() {
                    *v = v.exact_div(&content)?;
                }
            }
        }
    }
    Some(rank)
}

/// Bareiss elimination with column skipping.
fn dense_rank<T: Scalar>(mut m: Vec<Vec<T>>) -> Option<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev: Option<T> = None;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_nil()) else {
            continue;
        };
        m.swap(r, p);
        let (top, rest) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..cols {
                let v = T::cross(&pivot_row[c], &row[j], &factor, &pivot_row[j])?;
                row[j] = match &prev {
                    Some(d) => v.exact_div(d)?,
                    None => v,
                };
            }
            row[c] = T::nil();
        }
        prev = Some(m[r][c].clone());
        r += 1;
    }
    Some(r)
}
