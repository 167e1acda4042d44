//! `(IS_n, *_α)`: idempotents, the rank criterion and explicit isomorphisms.
//!
//! Two deformed semigroups `(IS_n, *_α)` and `(IS_n, *_β)` are isomorphic
//! exactly when `rank α = rank β`, and `(IS_n, *_α)` has `2^rank α`
//! idempotents. There are therefore `n + 1` classes.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::{check_cap, same_degree, MapElement, PartialInjection, Permutation};
use crate::witness::Witness;

pub type IsnWitness = Witness<PartialInjection>;

/// `2^rank α`.
pub fn idempotent_count_formula(alpha: &PartialInjection) -> u128 {
    1u128 << alpha.rank()
}

/// The idempotents `ε_A` of `(IS_n, *_α)`, one per subset `A ⊆ ran α`, with
/// `dom ε_A = A` and `ε_A = α⁻¹` on `A`.
///
/// Subsets are listed in binary-counter order over the ascending range.
pub fn enumerate_idempotents_isn(alpha: &PartialInjection) -> Vec<PartialInjection> {
    let range = alpha.range();
    let inverse = alpha.inverse();
    assert!(range.len() < 64, "rank too large to enumerate subsets");
    (0u64..1 << range.len())
        .map(|mask| {
            let subset: Vec<usize> = range
                .iter()
                .enumerate()
                .filter(|(bit, _)| mask & (1 << bit) != 0)
                .map(|(_, &p)| p)
                .collect();
            inverse.restrict(&subset)
        })
        .collect()
}

/// `(IS_n, *_α) ≅ (IS_n, *_β)` iff the ranks agree.
pub fn isn_isomorphic(alpha: &PartialInjection, beta: &PartialInjection) -> Result<bool> {
    same_degree(alpha.degree(), beta.degree())?;
    Ok(alpha.rank() == beta.rank())
}

/// Deterministic `τ, π ∈ S_n` with `β = τ·α·π`.
///
/// `τ` sends the i-th smallest point of `dom β` to the i-th smallest point
/// of `dom α`; `π` sends `α(τ(x))` to `β(x)` for `x ∈ dom β`. Both are
/// completed by matching leftover points in ascending order.
pub fn isn_witness(alpha: &PartialInjection, beta: &PartialInjection) -> Result<IsnWitness> {
    same_degree(alpha.degree(), beta.degree())?;
    if alpha.rank() != beta.rank() {
        return Err(Error::RankMismatch(alpha.rank(), beta.rank()));
    }
    let n = alpha.degree();
    let dom_alpha = alpha.domain();
    let dom_beta = beta.domain();
    let tau_pairs: Vec<(usize, usize)> = dom_beta.iter().copied().zip(dom_alpha.iter().copied()).collect();
    let pi_pairs: Vec<(usize, usize)> = tau_pairs
        .iter()
        .map(|&(x, tx)| {
            let from = alpha.get(tx).expect("tx ∈ dom α");
            let to = beta.get(x).expect("x ∈ dom β");
            (from, to)
        })
        .collect();
    let witness = Witness {
        source: alpha.clone(),
        target: beta.clone(),
        tau: Permutation::complete(n, &tau_pairs)?,
        pi: Permutation::complete(n, &pi_pairs)?,
    };
    debug_assert!(witness.is_valid());
    Ok(witness)
}

/// `f(ξ) = π⁻¹·ξ·τ⁻¹`.
pub fn isn_iso_map(witness: &IsnWitness, xi: &PartialInjection) -> Result<PartialInjection> {
    witness.apply(xi)
}

/// Number of pairwise non-isomorphic `(IS_n, *_α)`.
pub fn isn_class_count(n: usize) -> usize {
    n + 1
}

/// One isomorphism class of sandwich elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankClass {
    pub rank: usize,
    pub representative: PartialInjection,
    pub members: usize,
    pub idempotents: u128,
}

/// Groups all `α ∈ IS_n` by the rank criterion.
pub fn classify(n: usize, cap: usize) -> Result<Vec<RankClass>> {
    check_cap(n, cap)?;
    let mut classes: BTreeMap<usize, RankClass> = BTreeMap::new();
    for alpha in PartialInjection::enumerate(n, cap)? {
        classes
            .entry(alpha.rank())
            .or_insert_with(|| RankClass {
                rank: alpha.rank(),
                idempotents: idempotent_count_formula(&alpha),
                representative: alpha.clone(),
                members: 0,
            })
            .members += 1;
    }
    Ok(classes.into_values().collect())
}
