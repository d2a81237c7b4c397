//! Multigraded strands of Koszul complexes over `S/I`.
//!
//! In multidegree `a`, the Koszul complex of `S/I` on the variables in
//! `allowed` has basis `x^b e_F` with `F ⊆ supp(a) ∩ allowed`, `b = a - 1_F`
//! and `x^b ∉ I`. The differential is
//! `∂(x^b e_F) = Σ_t (-1)^t x_{f_t} x^b e_{F \ f_t}`, where a term vanishes
//! once `x_{f_t} x^b` falls into `I`.

use crate::homology::FiniteChainComplex;
use crate::ideal::MonomialIdeal;
use crate::linalg::ExactMatrix;
use crate::monomial::Monomial;

/// Above this many strand variables the builder refuses to run.
pub const MAX_STRAND_VARS: usize = 24;

/// `dim H_i` of the strand, for `i = 0..=|supp(a) ∩ allowed|`.
pub fn strand_homology(ideal: &MonomialIdeal, a: &Monomial, allowed: u64) -> Vec<usize> {
    let vars: Vec<usize> = (0..a.nvars())
        .filter(|&v| a.exps()[v] > 0 && (allowed >> v) & 1 == 1)
        .collect();
    let s = vars.len();
    assert!(
        s <= MAX_STRAND_VARS,
        "strand over {s} variables is too large"
    );
    let subsets = 1usize << s;

    // index[F] = position of F within its homological degree, or NONE.
    const NONE: usize = usize::MAX;
    let mut index = vec![NONE; subsets];
    let mut dims = vec![0usize; s + 1];
    let mut exps = a.exps().to_vec();
    for (f, slot) in index.iter_mut().enumerate() {
        for (k, &v) in vars.iter().enumerate() {
            exps[v] = a.exps()[v] - ((f >> k) & 1) as u32;
        }
        let b = Monomial::new(exps.clone());
        if !ideal.contains(&b) {
            let deg = f.count_ones() as usize;
            *slot = dims[deg];
            dims[deg] += 1;
        }
    }
    if dims.iter().all(|&d| d == 0) {
        return dims;
    }

    let mut triplets: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); s];
    for f in 0..subsets {
        if index[f] == NONE || f == 0 {
            continue;
        }
        let deg = f.count_ones() as usize;
        let mut pos = 0;
        for k in 0..s {
            if (f >> k) & 1 == 0 {
                continue;
            }
            let g = f & !(1 << k);
            if index[g] != NONE {
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                triplets[deg - 1].push((index[g], index[f], sign));
            }
            pos += 1;
        }
    }
    let boundaries = triplets
        .into_iter()
        .enumerate()
        .map(|(k, t)| ExactMatrix::from_triplets(dims[k], dims[k + 1], t).unwrap())
        .collect();
    FiniteChainComplex::from_parts(0, dims, boundaries)
        .expect("strand shapes are consistent")
        .homology_dims()
}
