use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::maps::{MapElement, Permutation};
use crate::table::FiniteSemigroup;

/// Why an induced map failed to be an isomorphism (element indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFailure {
    /// Two elements share an image.
    Collision(usize, usize),
    /// `f(xy) ≠ f(x)f(y)` for this pair.
    Product(usize, usize),
}

/// Permutations `τ, π` with `target = τ·source·π`.
///
/// They induce the isomorphism `f(x) = π⁻¹·x·τ⁻¹` from `(S, *_source)` onto
/// `(S, *_target)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound(serialize = "E: Serialize", deserialize = "E: Deserialize<'de>"))]
pub struct Witness<E> {
    #[serde(rename = "alpha")]
    pub source: E,
    #[serde(rename = "beta")]
    pub target: E,
    pub tau: Permutation,
    pub pi: Permutation,
}

impl<E: MapElement> Witness<E> {
    /// Recomputes `τ·source·π` and compares it with the target.
    pub fn is_valid(&self) -> bool {
        let tau = E::from_permutation(&self.tau);
        let pi = E::from_permutation(&self.pi);
        tau.compose(&self.source)
            .and_then(|t| t.compose(&pi))
            .is_ok_and(|product| product == self.target)
    }

    /// `f(x) = π⁻¹·x·τ⁻¹`.
    pub fn apply(&self, x: &E) -> Result<E> {
        let pi_inv = E::from_permutation(&self.pi.inverse());
        let tau_inv = E::from_permutation(&self.tau.inverse());
        pi_inv.compose(x)?.compose(&tau_inv)
    }

    /// Checks that `f` is a bijection of the carrier and that
    /// `f(x *_source y) = f(x) *_target f(y)` for every pair.
    ///
    /// Returns the first failure found, if any.
    pub fn verify_isomorphism(&self, semigroup: &FiniteSemigroup<E>) -> Result<Option<MapFailure>> {
        let size = semigroup.len();
        let image: Vec<usize> = semigroup
            .elements()
            .iter()
            .map(|x| Ok(semigroup.index_of(&self.apply(x)?).expect("closed")))
            .collect::<Result<_>>()?;
        let mut preimage = vec![None; size];
        for (i, &fi) in image.iter().enumerate() {
            if let Some(j) = preimage[fi].replace(i) {
                return Ok(Some(MapFailure::Collision(j, i)));
            }
        }
        let a = semigroup.index_of(&self.source).expect("closed");
        let b = semigroup.index_of(&self.target).expect("closed");
        for x in 0..size {
            for y in 0..size {
                let lhs = image[semigroup.sandwich_idx(x, a, y)];
                let rhs = semigroup.sandwich_idx(image[x], b, image[y]);
                if lhs != rhs {
                    return Ok(Some(MapFailure::Product(x, y)));
                }
            }
        }
        Ok(None)
    }
}
