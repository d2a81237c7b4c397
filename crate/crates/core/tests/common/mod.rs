//! Slow, independent reference computations. None of these call into the
//! library; they work on plain exponent vectors and bitmasks.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Exps = Vec<u32>;

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Keeps every monomial not strictly divisible by another one; sorted and
/// deduplicated.
pub fn divisibility_filter(gens: &[Exps]) -> BTreeSet<Exps> {
    let uniq: BTreeSet<Exps> = gens.iter().cloned().collect();
    uniq.iter()
        .filter(|g| !uniq.iter().any(|h| h != *g && divides(h, g)))
        .cloned()
        .collect()
}

pub fn contains_scan(gens: &[Exps], m: &[u32]) -> bool {
    gens.iter().any(|g| divides(g, m))
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

/// Every exponent vector `<= top` componentwise.
pub fn box_points(top: &[u32]) -> Vec<Exps> {
    let mut out = vec![vec![]];
    for &t in top {
        out = out
            .into_iter()
            .flat_map(|p: Exps| {
                (0..=t).map(move |e| {
                    let mut q = p.clone();
                    q.push(e);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Exps> {
    box_points(&vec![d; n])
        .into_iter()
        .filter(|p| p.iter().sum::<u32>() == d)
        .collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn det_laplace(m: &[Vec<i128>]) -> i128 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    if k == 1 {
        return m[0][0];
    }
    let mut total = 0i128;
    for c in 0..k {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != c)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] * det_laplace(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Largest `k` with a nonzero `k x k` minor. Meant for matrices up to 5x5.
pub fn rank_by_minors(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                if det_laplace(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// Rank by Gaussian elimination over exact rationals kept as reduced
/// `(num, den)` pairs in `i128`. Fine for the small entries used in tests.
#[allow(clippy::needless_range_loop)]
pub fn rank_rational(m: &[Vec<i64>]) -> usize {
    fn gcd(a: i128, b: i128) -> i128 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    fn norm((n, d): (i128, i128)) -> (i128, i128) {
        if n == 0 {
            return (0, 1);
        }
        let g = gcd(n, d);
        let s = if d < 0 { -1 } else { 1 };
        (s * n / g, s * d / g)
    }
    let mut a: Vec<Vec<(i128, i128)>> = m
        .iter()
        .map(|r| r.iter().map(|&v| (v as i128, 1)).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c].0 != 0) else {
            continue;
        };
        a.swap(rank, p);
        let (pn, pd) = a[rank][c];
        for r in 0..rows {
            if r == rank || a[r][c].0 == 0 {
                continue;
            }
            // factor = a[r][c] / pivot
            let (fn_, fd) = norm((a[r][c].0 * pd, a[r][c].1 * pn));
            for k in 0..cols {
                let (xn, xd) = a[rank][k];
                let (yn, yd) = a[r][k];
                let sub = norm((fn_ * xn, fd * xd));
                a[r][k] = norm((yn * sub.1 - sub.0 * yd, yd * sub.1));
            }
        }
        rank += 1;
    }
    rank
}

/// Faces of a complex: every subset of some facet.
pub fn faces_by_enumeration(n: usize, facets: &[u64]) -> BTreeSet<u64> {
    (0u64..1 << n)
        .filter(|f| facets.iter().any(|g| f & g == *f))
        .collect()
}

/// `f_{-1}, f_0, ...` by brute force.
pub fn f_vector_by_enumeration(n: usize, facets: &[u64]) -> Vec<u64> {
    let faces = faces_by_enumeration(n, facets);
    let top = faces.iter().map(|f| f.count_ones()).max().unwrap_or(0) as usize;
    let mut f = vec![0u64; top + 1];
    for face in faces {
        f[face.count_ones() as usize] += 1;
    }
    f
}

/// Faces of `Δ*`: subsets whose complement is not a face of `Δ`.
pub fn dual_faces_by_enumeration(n: usize, facets: &[u64]) -> BTreeSet<u64> {
    let full = (1u64 << n) - 1;
    let faces = faces_by_enumeration(n, facets);
    (0..=full)
        .filter(|f| !faces.contains(&(full & !f)))
        .collect()
}

pub fn maximal(sets: &BTreeSet<u64>) -> BTreeSet<u64> {
    sets.iter()
        .filter(|s| !sets.iter().any(|t| t != *s && **s & t == **s))
        .copied()
        .collect()
}

/// Minimal non-faces of a face set, as exponent vectors.
pub fn minimal_nonfaces(n: usize, faces: &BTreeSet<u64>) -> BTreeSet<Exps> {
    let full = (1u64 << n) - 1;
    let non: Vec<u64> = (0..=full).filter(|f| !faces.contains(f)).collect();
    non.iter()
        .filter(|f| !non.iter().any(|g| g != *f && **f & g == *g))
        .map(|&f| (0..n).map(|i| (f >> i & 1) as u32).collect())
        .collect()
}

/// Reduced homology dims `H̃_{-1}, H̃_0, ...` of the complex with the given
/// face set, by building boundary matrices from scratch.
pub fn reduced_homology(faces: &BTreeSet<u64>) -> Vec<usize> {
    if faces.is_empty() {
        return vec![];
    }
    let top = faces.iter().map(|f| f.count_ones()).max().unwrap() as usize;
    let by_size: Vec<Vec<u64>> = (0..=top)
        .map(|k| {
            faces
                .iter()
                .copied()
                .filter(|f| f.count_ones() as usize == k)
                .collect()
        })
        .collect();
    // rank of d_k : C_k -> C_{k-1}, sizes k and k-1
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let rows = &by_size[k - 1];
        let cols = &by_size[k];
        let mut m = vec![vec![0i64; cols.len()]; rows.len()];
        for (c, &f) in cols.iter().enumerate() {
            let verts: Vec<usize> = (0..64).filter(|v| f >> v & 1 == 1).collect();
            for (t, v) in verts.iter().enumerate() {
                let g = f & !(1 << v);
                let r = rows.iter().position(|&x| x == g).unwrap();
                m[r][c] = if t % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[k] = rank_rational(&m);
    }
    (0..=top)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect()
}

/// `β_{i,j}(S/I)` from the upper Koszul complexes
/// `K^b = {F ⊆ supp(b) : x^{b - F} ∈ I}` over every multidegree `b` in the
/// lcm box: `β_{i,b}(S/I) = dim H̃_{i-2}(K^b)` for `i >= 1`.
pub fn betti_upper_koszul(n: usize, gens: &[Exps]) -> BTreeMap<(usize, u32), u64> {
    let mut out = BTreeMap::new();
    let gens: Vec<Exps> = divisibility_filter(gens).into_iter().collect();
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return out;
    }
    out.insert((0, 0), 1);
    if gens.is_empty() {
        return out;
    }
    let top = gens.iter().fold(vec![0; n], |acc, g| lcm(&acc, g));
    for b in box_points(&top) {
        let supp: u64 = (0..n).filter(|&i| b[i] > 0).fold(0, |m, i| m | 1 << i);
        let faces: BTreeSet<u64> = (0..=supp)
            .filter(|f| f & supp == *f)
            .filter(|&f| {
                let v: Exps = (0..n).map(|i| b[i] - (f >> i & 1) as u32).collect();
                contains_scan(&gens, &v)
            })
            .collect();
        let h = reduced_homology(&faces);
        let deg: u32 = b.iter().sum();
        for (k, &d) in h.iter().enumerate() {
            if d > 0 {
                // H̃_{k-1} sits in homological degree i = k + 1 for S/I.
                *out.entry((k + 1, deg)).or_insert(0) += d as u64;
            }
        }
    }
    out
}

/// `Σ_{F ⊆ G} (-1)^{|F|} t^{deg lcm(F)}`, coefficients from `t^0` up.
pub fn hilbert_inclusion_exclusion(n: usize, gens: &[Exps]) -> Vec<i64> {
    let g = gens.len();
    let mut coeffs: Vec<i64> = vec![0];
    for s in 0u64..1 << g {
        let l = (0..g)
            .filter(|i| s >> i & 1 == 1)
            .fold(vec![0; n], |acc, i| lcm(&acc, &gens[i]));
        let d = l.iter().sum::<u32>() as usize;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, 0);
        }
        coeffs[d] += if s.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    while coeffs.len() > 1 && *coeffs.last().unwrap() == 0 {
        coeffs.pop();
    }
    coeffs
}

/// `dim_K (S/I)_d` by counting standard monomials.
pub fn hilbert_function_by_count(n: usize, gens: &[Exps], d: u32) -> i64 {
    monomials_of_degree(n, d)
        .iter()
        .filter(|m| !contains_scan(gens, m))
        .count() as i64
}

/// Smallest set of monomials of degree `<= max_degree` containing `seeds`
/// and closed under `move`, as a minimal generating set.
pub fn saturate_by_search<F>(n: usize, seeds: &[Exps], max_degree: u32, moves: F) -> BTreeSet<Exps>
where
    F: Fn(&[u32]) -> Vec<Exps>,
{
    let mut members: Vec<Exps> = seeds.to_vec();
    loop {
        let mut added = false;
        for d in 0..=max_degree {
            for m in monomials_of_degree(n, d) {
                if !contains_scan(&members, &m) {
                    continue;
                }
                for v in moves(&m) {
                    if !contains_scan(&members, &v) {
                        members.push(v);
                        added = true;
                    }
                }
            }
        }
        if !added {
            return divisibility_filter(&members);
        }
    }
}

/// Exchange moves `x_j u / x_{m(u)}` with `j < m(u)` and `u_j + 1 < a_j`
/// (`a_j = None` is infinite), for an a-bounded `u`.
pub fn a_moves(u: &[u32], a: &[Option<u32>]) -> Vec<Exps> {
    let Some(m) = (0..u.len()).rev().find(|&i| u[i] > 0) else {
        return vec![];
    };
    if u.iter().zip(a).any(|(e, b)| b.is_some_and(|b| *e >= b)) {
        return vec![];
    }
    (0..m)
        .filter(|&j| a[j].is_none_or(|b| u[j] + 1 < b))
        .map(|j| {
            let mut v = u.to_vec();
            v[m] -= 1;
            v[j] += 1;
            v
        })
        .collect()
}

/// SplitMix64, for deterministic inputs without extra dependencies.
pub struct Mix(pub u64);

impl Mix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, k: u64) -> u64 {
        self.next() % k
    }

    pub fn exps(&mut self, n: usize, max: u32) -> Exps {
        (0..n).map(|_| self.below(max as u64 + 1) as u32).collect()
    }
}
