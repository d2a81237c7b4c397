//! Finite chain complexes over `Q` and reduced simplicial homology.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::ExactMatrix;
use crate::simplicial::SimplicialComplex;

/// `C_lo <- C_{lo+1} <- ... <- C_hi`, with `boundaries[k]: C_{lo+k+1} -> C_{lo+k}`
/// stored as a `dim C_{lo+k} x dim C_{lo+k+1}` matrix.
#[derive(Clone, Debug)]
pub struct FiniteChainComplex {
    lowest: i64,
    dims: Vec<usize>,
    boundaries: Vec<ExactMatrix>,
}

impl FiniteChainComplex {
    /// Checks shapes and `∂ ∘ ∂ = 0`.
    pub fn new(lowest: i64, dims: Vec<usize>, boundaries: Vec<ExactMatrix>) -> Result<Self> {
        let cx = Self::from_parts(lowest, dims, boundaries)?;
        for (k, pair) in cx.boundaries.windows(2).enumerate() {
            if !pair[0].mul(&pair[1])?.is_zero() {
                return Err(Error::ChainComplex(format!(
                    "boundary maps in degrees {} and {} do not compose to zero",
                    lowest + k as i64 + 1,
                    lowest + k as i64 + 2
                )));
            }
        }
        Ok(cx)
    }

    /// Shape checks only; for builders that produce `∂∂ = 0` by construction.
    pub(crate) fn from_parts(
        lowest: i64,
        dims: Vec<usize>,
        boundaries: Vec<ExactMatrix>,
    ) -> Result<Self> {
        if dims.is_empty() {
            if !boundaries.is_empty() {
                return Err(Error::ChainComplex(
                    "boundaries without chain groups".into(),
                ));
            }
        } else if boundaries.len() + 1 != dims.len() {
            return Err(Error::ChainComplex(format!(
                "{} chain groups need {} boundary maps, got {}",
                dims.len(),
                dims.len() - 1,
                boundaries.len()
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[k] || b.cols() != dims[k + 1] {
                return Err(Error::ChainComplex(format!(
                    "boundary out of degree {} is {}x{}, expected {}x{}",
                    lowest + k as i64 + 1,
                    b.rows(),
                    b.cols(),
                    dims[k],
                    dims[k + 1]
                )));
            }
        }
        Ok(FiniteChainComplex {
            lowest,
            dims,
            boundaries,
        })
    }

    pub fn lowest_degree(&self) -> i64 {
        self.lowest
    }

    pub fn chain_dims(&self) -> &[usize] {
        &self.dims
    }

    /// `dim H_k = dim C_k - rank ∂_k - rank ∂_{k+1}`, aligned with `chain_dims`.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(ExactMatrix::rank).collect();
        (0..self.dims.len())
            .map(|k| {
                let out = if k > 0 { ranks[k - 1] } else { 0 };
                let inc = ranks.get(k).copied().unwrap_or(0);
                self.dims[k] - out - inc
            })
            .collect()
    }

    pub fn chain_euler_characteristic(&self) -> i64 {
        alternating_sum(self.lowest, &self.dims)
    }
}

pub fn alternating_sum(lowest: i64, dims: &[usize]) -> i64 {
    dims.iter()
        .enumerate()
        .map(|(k, &d)| {
            let sign = if (lowest + k as i64).rem_euclid(2) == 0 {
                1
            } else {
                -1
            };
            sign * d as i64
        })
        .sum()
}

/// Augmented simplicial chain complex, starting at `C_{-1} = Q·∅`.
pub fn simplicial_chain_complex(cx: &SimplicialComplex) -> FiniteChainComplex {
    faces_chain_complex(&cx.faces())
}

/// Chain complex of a downward-closed face list.
pub(crate) fn faces_chain_complex(faces: &[u64]) -> FiniteChainComplex {
    let top = faces.iter().map(|f| f.count_ones() as usize).max();
    let Some(top) = top else {
        return FiniteChainComplex::from_parts(-1, Vec::new(), Vec::new()).unwrap();
    };
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect())
        .collect();
    let dims: Vec<usize> = by_size.iter().map(Vec::len).collect();
    let boundaries = (1..=top)
        .map(|s| {
            let trip = by_size[s].iter().enumerate().flat_map(|(col, &f)| {
                let index = &index[s - 1];
                (0..64)
                    .filter(move |v| (f >> v) & 1 == 1)
                    .enumerate()
                    .map(move |(pos, v)| {
                        let sign = if pos % 2 == 0 { 1i64 } else { -1 };
                        (index[&(f & !(1 << v))], col, sign)
                    })
            });
            ExactMatrix::from_triplets(dims[s - 1], dims[s], trip).unwrap()
        })
        .collect();
    FiniteChainComplex::from_parts(-1, dims, boundaries).unwrap()
}

/// `dim H̃_k(Δ; Q)` for `k = -1..=dim Δ`; index 0 holds `H̃_{-1}`. The void
/// complex gives an empty vector.
pub fn reduced_simplicial_homology(cx: &SimplicialComplex) -> Vec<usize> {
    simplicial_chain_complex(cx).homology_dims()
}
