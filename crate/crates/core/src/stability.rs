//! Stability predicates (stable, strongly stable, squarefree variants,
//! a-stable) and the matching closure operations.

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{BoundVector, Monomial};

/// Exchanges `x_j x^u / x_{m(u)}` required of `u` by a-stability.
fn a_stable_moves<'a>(u: &'a Monomial, a: &'a BoundVector) -> impl Iterator<Item = Monomial> + 'a {
    let m = u.max_index().unwrap_or(0);
    (1..m)
        .filter(move |&j| a.get(j).below_cap(u.exponent(j)))
        .filter_map(move |j| u.exchange(m, j))
}

/// Exchanges `x_j x^u / x_i` for every `x_i | x^u` and `j < i`.
fn strong_moves(u: &Monomial) -> impl Iterator<Item = Monomial> + '_ {
    u.support()
        .into_iter()
        .flat_map(move |i| (1..i).filter_map(move |j| u.exchange(i, j)))
}

/// Squarefree exchanges `x_j x_F / x_i` with `i in F`, `j < i`, `j not in F`.
fn squarefree_strong_moves(u: &Monomial) -> impl Iterator<Item = Monomial> + '_ {
    u.support().into_iter().flat_map(move |i| {
        (1..i)
            .filter(move |&j| u.exponent(j) == 0)
            .filter_map(move |j| u.exchange(i, j))
    })
}

pub fn is_a_bounded(ideal: &MonomialIdeal, a: &BoundVector) -> bool {
    a.len() == ideal.nvars() && ideal.gens().iter().all(|g| a.bounds(g))
}

/// a-bounded, and closed under `x_j x^u / x_{m(u)}` for generators `x^u` and
/// `j <= m(u)` with `u_j < a_j - 1`.
pub fn is_a_stable(ideal: &MonomialIdeal, a: &BoundVector) -> bool {
    is_a_bounded(ideal, a)
        && ideal
            .gens()
            .iter()
            .all(|u| a_stable_moves(u, a).all(|v| ideal.contains(&v)))
}

pub fn is_stable(ideal: &MonomialIdeal) -> bool {
    is_a_stable(ideal, &BoundVector::infinite(ideal.nvars()))
}

pub fn is_squarefree_stable(ideal: &MonomialIdeal) -> bool {
    is_a_stable(ideal, &BoundVector::squarefree(ideal.nvars()))
}

/// Borel-fixed in characteristic zero.
pub fn is_strongly_stable(ideal: &MonomialIdeal) -> bool {
    ideal
        .gens()
        .iter()
        .all(|u| strong_moves(u).all(|v| ideal.contains(&v)))
}

pub fn is_squarefree_strongly_stable(ideal: &MonomialIdeal) -> bool {
    ideal.is_squarefree()
        && ideal
            .gens()
            .iter()
            .all(|u| squarefree_strong_moves(u).all(|v| ideal.contains(&v)))
}

/// Checks the a-stable exchange condition on every monomial of `I` up to
/// degree `max_degree`, not just on generators.
pub fn a_exchange_closed_up_to(ideal: &MonomialIdeal, a: &BoundVector, max_degree: u32) -> bool {
    (0..=max_degree).all(|d| {
        ideal
            .monomials_in_degree(d)
            .iter()
            .filter(|u| a.bounds(u))
            .all(|u| a_stable_moves(u, a).all(|v| ideal.contains(&v)))
    })
}

fn saturate<F, I>(mut ideal: MonomialIdeal, moves: F) -> MonomialIdeal
where
    F: Fn(&Monomial) -> I,
    I: Iterator<Item = Monomial>,
{
    loop {
        let missing: Vec<Monomial> = ideal
            .gens()
            .iter()
            .flat_map(&moves)
            .filter(|v| !ideal.contains(v))
            .collect();
        if missing.is_empty() {
            return ideal;
        }
        let mut gens = ideal.gens().to_vec();
        gens.extend(missing);
        ideal = MonomialIdeal::minimalize(ideal.nvars(), gens);
    }
}

/// The smallest a-stable ideal containing the seeds.
pub fn a_stable_closure(
    n: usize,
    seeds: impl IntoIterator<Item = Monomial>,
    a: &BoundVector,
) -> Result<MonomialIdeal> {
    a.check_len(n)?;
    let start = MonomialIdeal::new(n, seeds)?;
    if let Some(g) = start.gens().iter().find(|g| !a.bounds(g)) {
        return Err(Error::input(format!("seed {g} is not bounded by ({a})")));
    }
    Ok(saturate(start, |u| {
        a_stable_moves(u, a).collect::<Vec<_>>().into_iter()
    }))
}

/// Borel closure: the smallest strongly stable ideal containing the seeds.
pub fn strongly_stable_closure(
    n: usize,
    seeds: impl IntoIterator<Item = Monomial>,
) -> Result<MonomialIdeal> {
    let start = MonomialIdeal::new(n, seeds)?;
    Ok(saturate(start, |u| {
        strong_moves(u).collect::<Vec<_>>().into_iter()
    }))
}

pub fn squarefree_strongly_stable_closure(
    n: usize,
    seeds: impl IntoIterator<Item = Monomial>,
) -> Result<MonomialIdeal> {
    let start = MonomialIdeal::new(n, seeds)?;
    if !start.is_squarefree() {
        return Err(Error::input("squarefree closure needs squarefree seeds"));
    }
    Ok(saturate(start, |u| {
        squarefree_strong_moves(u).collect::<Vec<_>>().into_iter()
    }))
}
