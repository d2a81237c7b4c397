//! Simplicial complexes on `[n]`, stored by facets as vertex bitmasks.
//!
//! Two degenerate complexes are kept apart: the *void* complex has no faces
//! at all, while the *empty* complex `{∅}` has exactly the empty face. The
//! Alexander dual of the full simplex is void.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const MAX_VERTICES: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    /// `None` is the void complex.
    facets: Option<Vec<u64>>,
}

/// Face counts `f_{-1}, f_0, ..., f_{dim}`; index 0 holds `f_{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_k` for `k >= -1`.
    pub fn get(&self, k: i64) -> u64 {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }
}

fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| (mask >> i) & 1 == 1)
}

/// Keeps only inclusion-minimal sets.
fn minimal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}

fn maximal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (std::cmp::Reverse(s.count_ones()), *s));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & s == s) {
            kept.push(s);
        }
    }
    kept.sort_by_key(|s| (s.count_ones(), *s));
    kept
}

/// Minimal transversals of a hypergraph, built edge by edge.
fn minimal_transversals(edges: &[u64]) -> Vec<u64> {
    let mut current = vec![0u64];
    for &e in edges {
        let mut next = Vec::new();
        for &t in &current {
            if t & e != 0 {
                next.push(t);
            } else {
                next.extend(bits(e).map(|v| t | (1 << v)));
            }
        }
        current = minimal_sets(next);
    }
    current
}

impl SimplicialComplex {
    /// Builds a complex from 1-based vertex lists; non-maximal faces are dropped.
    pub fn new(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            let mut mask = 0u64;
            for &v in f {
                if v == 0 || v > n {
                    return Err(Error::input(format!("vertex {v} outside 1..={n}")));
                }
                mask |= 1 << (v - 1);
            }
            masks.push(mask);
        }
        Self::from_masks(n, masks)
    }

    pub fn from_masks(n: usize, masks: Vec<u64>) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::input(format!(
                "at most {MAX_VERTICES} vertices are supported, got {n}"
            )));
        }
        if masks.iter().any(|&m| m & !full_mask(n) != 0) {
            return Err(Error::input("facet uses a vertex outside [n]"));
        }
        if masks.is_empty() {
            return Ok(Self::void(n));
        }
        Ok(SimplicialComplex {
            n,
            facets: Some(maximal_sets(masks)),
        })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: None }
    }

    /// The complex `{∅}`.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Some(vec![0]),
        }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Some(vec![full_mask(n)]),
        }
    }

    pub fn nvertices(&self) -> usize {
        self.n
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_none()
    }

    pub fn is_full_simplex(&self) -> bool {
        matches!(&self.facets, Some(f) if f.len() == 1 && f[0] == full_mask(self.n))
    }

    /// Neither void nor the full simplex.
    pub fn is_proper(&self) -> bool {
        !self.is_void() && !self.is_full_simplex()
    }

    /// Every singleton `{i}` is a face.
    pub fn is_full_vertex_set(&self) -> bool {
        self.vertex_mask() == full_mask(self.n)
    }

    pub fn vertex_mask(&self) -> u64 {
        self.facet_masks().iter().fold(0, |acc, f| acc | f)
    }

    /// Facets as bitmasks; empty for the void complex.
    pub fn facet_masks(&self) -> &[u64] {
        self.facets.as_deref().unwrap_or(&[])
    }

    /// Facets as sorted 1-based vertex lists.
    pub fn facets(&self) -> Option<Vec<Vec<usize>>> {
        self.facets.as_ref().map(|fs| {
            fs.iter()
                .map(|&f| bits(f).map(|v| v + 1).collect())
                .collect()
        })
    }

    pub fn contains_face(&self, face: u64) -> bool {
        self.facet_masks().iter().any(|&f| f & face == face)
    }

    /// All faces, ordered by size then by mask.
    pub fn faces(&self) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for &f in self.facet_masks() {
            // submask enumeration
            let mut s = f;
            loop {
                out.insert((s.count_ones(), s));
                if s == 0 {
                    break;
                }
                s = (s - 1) & f;
            }
        }
        out.into_iter().map(|(_, s)| s).collect()
    }

    /// `dim(Δ)`; `None` for the void complex, `-1` for `{∅}`.
    pub fn dimension(&self) -> Option<i64> {
        self.facet_masks()
            .iter()
            .map(|f| f.count_ones() as i64 - 1)
            .max()
    }

    pub fn f_vector(&self) -> FVector {
        let Some(dim) = self.dimension() else {
            return FVector(Vec::new());
        };
        let mut counts = vec![0u64; (dim + 2) as usize];
        for face in self.faces() {
            counts[face.count_ones() as usize] += 1;
        }
        FVector(counts)
    }

    /// `f_{d-1}`: the number of faces of maximal dimension.
    pub fn facet_count_top(&self) -> u64 {
        let top = self.dimension().map(|d| d + 1).unwrap_or(0) as u32;
        self.facet_masks()
            .iter()
            .filter(|f| f.count_ones() == top)
            .count() as u64
    }

    /// `Δ_W`: faces contained in `W`.
    pub fn restriction(&self, w: u64) -> SimplicialComplex {
        match &self.facets {
            None => self.clone(),
            Some(fs) => SimplicialComplex {
                n: self.n,
                facets: Some(maximal_sets(fs.iter().map(|f| f & w).collect())),
            },
        }
    }

    /// Minimal non-faces, as bitmasks.
    pub fn minimal_nonfaces(&self) -> Vec<u64> {
        let full = full_mask(self.n);
        let complements: Vec<u64> = self.facet_masks().iter().map(|f| full & !f).collect();
        minimal_transversals(&complements)
    }

    /// `Δ* = {F : F^c ∉ Δ}`.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let full = full_mask(self.n);
        let dual: Vec<u64> = self.minimal_nonfaces().iter().map(|g| full & !g).collect();
        if dual.is_empty() {
            return Self::void(self.n);
        }
        SimplicialComplex {
            n: self.n,
            facets: Some(maximal_sets(dual)),
        }
    }

    /// `I_Δ`, generated by the minimal non-faces. The void complex gives the
    /// unit ideal.
    pub fn stanley_reisner_ideal(&self) -> MonomialIdeal {
        let gens = self
            .minimal_nonfaces()
            .into_iter()
            .map(|g| Monomial::from_mask(self.n, g))
            .collect();
        MonomialIdeal::minimalize(self.n, gens)
    }

    /// The complex whose Stanley–Reisner ideal is `I`.
    pub fn from_ideal(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::input(format!("ideal {ideal} is not squarefree")));
        }
        let n = ideal.nvars();
        if n > MAX_VERTICES {
            return Err(Error::input(format!("too many variables ({n})")));
        }
        let edges: Vec<u64> = ideal.gens().iter().map(Monomial::support_mask).collect();
        let full = full_mask(n);
        let facets: Vec<u64> = minimal_transversals(&edges)
            .into_iter()
            .map(|t| full & !t)
            .collect();
        Self::from_masks(n, facets)
    }

    /// `{x_{F^c} : F a facet}`, which generate `I_{Δ*}`.
    pub fn facet_duality_generators(&self) -> Result<Vec<Monomial>> {
        if !self.is_proper() {
            return Err(Error::input(
                "facet duality needs a proper complex (not void, not the full simplex)",
            ));
        }
        let full = full_mask(self.n);
        Ok(self
            .facet_masks()
            .iter()
            .map(|f| Monomial::from_mask(self.n, full & !f))
            .collect())
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    n: usize,
    facets: Option<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// `{"n": 3, "facets": [[1,3],[2,3]]}`; `"facets": null` is the void complex.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ComplexJson = serde_json::from_str(text)?;
        match raw.facets {
            None => Ok(Self::void(raw.n)),
            Some(fs) if fs.is_empty() => Err(Error::input(
                "an empty facet list is ambiguous; use null for the void complex or [[]] for {∅}",
            )),
            Some(fs) => Self::new(raw.n, &fs),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serialization cannot fail")
    }
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ComplexJson {
            n: self.n,
            facets: self.facets(),
        }
        .serialize(s)
    }
}

/// Records which `(variable, copy)` pair each polarized variable stands for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationMap {
    /// Entry `k` is the `(i, c)` (both 1-based) behind new variable `k + 1`.
    pub pairs: Vec<(usize, u32)>,
}

impl PolarizationMap {
    /// New 1-based index of `x_{i,c}`.
    pub fn index_of(&self, i: usize, c: u32) -> Option<usize> {
        self.pairs.iter().position(|&p| p == (i, c)).map(|k| k + 1)
    }
}

/// Replaces each `x_i^e` by `x_{i,1} ··· x_{i,e}`. The result lives in
/// `Σ_i max_g g_i` variables ordered `x_{1,1}, .., x_{1,e_1}, x_{2,1}, ...`.
pub fn polarize(ideal: &MonomialIdeal) -> (MonomialIdeal, PolarizationMap) {
    let n = ideal.nvars();
    let maxes: Vec<u32> = (1..=n)
        .map(|i| {
            ideal
                .gens()
                .iter()
                .map(|g| g.exponent(i))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let pairs: Vec<(usize, u32)> = (1..=n)
        .flat_map(|i| (1..=maxes[i - 1]).map(move |c| (i, c)))
        .collect();
    let new_n = pairs.len();
    let mut offsets = vec![0usize; n];
    for i in 1..n {
        offsets[i] = offsets[i - 1] + maxes[i - 1] as usize;
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut exps = vec![0u32; new_n];
            for i in 0..n {
                for c in 0..g.exps()[i] as usize {
                    exps[offsets[i] + c] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    (
        MonomialIdeal::minimalize(new_n, gens),
        PolarizationMap { pairs },
    )
}
