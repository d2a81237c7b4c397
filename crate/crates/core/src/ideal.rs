use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::{monomials_of_degree, Monomial};

/// A monomial ideal, held as its minimal generating set `G(I)`.
///
/// Generators are kept in canonical order (see [`Monomial::canonical_cmp`]),
/// so two ideals are equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
    squarefree: bool,
}

impl MonomialIdeal {
    /// Builds `G(I)` from an arbitrary generating set.
    pub fn new(n: usize, raw: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        let raw: Vec<Monomial> = raw.into_iter().collect();
        if let Some(bad) = raw.iter().find(|g| g.nvars() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.nvars(),
            });
        }
        Ok(Self::minimalize(n, raw))
    }

    pub(crate) fn minimalize(n: usize, mut raw: Vec<Monomial>) -> Self {
        raw.sort_by(|a, b| a.canonical_cmp(b));
        raw.dedup();
        let mut gens: Vec<Monomial> = Vec::with_capacity(raw.len());
        for g in raw {
            if !gens.iter().any(|h| h.divides(&g)) {
                gens.push(g);
            }
        }
        let squarefree = gens.iter().all(Monomial::is_squarefree);
        MonomialIdeal {
            n,
            gens,
            squarefree,
        }
    }

    pub fn zero(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: Vec::new(),
            squarefree: true,
        }
    }

    pub fn unit(n: usize) -> Self {
        MonomialIdeal {
            n,
            gens: vec![Monomial::one(n)],
            squarefree: true,
        }
    }

    /// Parses exponent rows; convenience for tests and literals.
    pub fn from_rows(n: usize, rows: &[&[u32]]) -> Result<Self> {
        Self::new(n, rows.iter().map(|r| Monomial::new(r.to_vec())))
    }

    /// `(x_i : i in vars)`, 1-based.
    pub fn variables(n: usize, vars: impl IntoIterator<Item = usize>) -> Self {
        Self::minimalize(n, vars.into_iter().map(|i| Monomial::var(n, i)).collect())
    }

    pub fn nvars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.squarefree
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.gens.last().map(Monomial::degree)
    }

    /// `a(I)`: the smallest generator degree.
    pub fn initial_degree(&self) -> Option<u32> {
        self.gens.first().map(Monomial::degree)
    }

    /// Membership: some generator divides `m`.
    pub fn contains(&self, m: &Monomial) -> bool {
        debug_assert_eq!(m.nvars(), self.n);
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn try_contains(&self, m: &Monomial) -> Result<bool> {
        if m.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: m.nvars(),
            });
        }
        Ok(self.contains(m))
    }

    /// True when every generator of `self` lies in `other`.
    pub fn is_subideal_of(&self, other: &MonomialIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// `I_<d>`: the ideal generated by all degree-`d` monomials of `I`.
    pub fn component(&self, d: u32) -> MonomialIdeal {
        let mut out = BTreeSet::new();
        for g in self.gens.iter().filter(|g| g.degree() <= d) {
            for m in monomials_of_degree(self.n, d - g.degree()) {
                out.insert(g.mul(&m).exps().to_vec());
            }
        }
        Self::minimalize(self.n, out.into_iter().map(Monomial::new).collect())
    }

    /// `I_{<=k}`: generated by the elements of `I` of degree at most `k`.
    pub fn truncate(&self, k: u32) -> MonomialIdeal {
        MonomialIdeal {
            n: self.n,
            gens: self
                .gens
                .iter()
                .filter(|g| g.degree() <= k)
                .cloned()
                .collect(),
            squarefree: self.squarefree,
        }
        .recache()
    }

    fn recache(mut self) -> Self {
        self.squarefree = self.gens.iter().all(Monomial::is_squarefree);
        self
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n {
            return Err(Error::input(format!(
                "variable index {i} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }

    /// `I : x_i`.
    pub fn colon_by_variable(&self, i: usize) -> Result<MonomialIdeal> {
        self.check_var(i)?;
        let gens = self
            .gens
            .iter()
            .map(|g| g.div_var(i).unwrap_or_else(|| g.clone()))
            .collect();
        Ok(Self::minimalize(self.n, gens))
    }

    /// `I + (x_i)`.
    pub fn sum_with_variable(&self, i: usize) -> Result<MonomialIdeal> {
        self.check_var(i)?;
        let mut gens = self.gens.clone();
        gens.push(Monomial::var(self.n, i));
        Ok(Self::minimalize(self.n, gens))
    }

    /// `(I + (x_v : v in V)) / (x_v : v in V)`, re-indexed to the surviving
    /// variables in their original order.
    pub fn kill_variables(&self, killed: &[usize]) -> Result<MonomialIdeal> {
        for &v in killed {
            self.check_var(v)?;
        }
        let keep: Vec<usize> = (1..=self.n).filter(|v| !killed.contains(v)).collect();
        let gens = self
            .gens
            .iter()
            .filter(|g| killed.iter().all(|&v| g.exponent(v) == 0))
            .map(|g| Monomial::new(keep.iter().map(|&v| g.exponent(v)).collect()))
            .collect();
        Ok(Self::minimalize(keep.len(), gens))
    }

    /// Every monomial of `I` of total degree exactly `d`.
    pub fn monomials_in_degree(&self, d: u32) -> Vec<Monomial> {
        monomials_of_degree(self.n, d)
            .into_iter()
            .filter(|m| self.contains(m))
            .collect()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// JSON form: `{"n": 3, "generators": [[2,0,0],[1,1,0]]}`.
#[derive(Serialize, Deserialize)]
struct IdealJson {
    n: usize,
    generators: Vec<Vec<i64>>,
}

impl MonomialIdeal {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: IdealJson = serde_json::from_str(text)?;
        let mut gens = Vec::with_capacity(raw.generators.len());
        for (k, row) in raw.generators.iter().enumerate() {
            if row.len() != raw.n {
                return Err(Error::input(format!(
                    "generator {k} has {} exponents, expected {}",
                    row.len(),
                    raw.n
                )));
            }
            let exps = row
                .iter()
                .map(|&e| {
                    u32::try_from(e).map_err(|_| {
                        Error::input(format!("generator {k} has invalid exponent {e}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            gens.push(Monomial::new(exps));
        }
        MonomialIdeal::new(raw.n, gens)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serialization cannot fail")
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealJson {
            n: self.n,
            generators: self
                .gens
                .iter()
                .map(|g| g.exps().iter().map(|&e| e as i64).collect())
                .collect(),
        }
        .serialize(s)
    }
}
