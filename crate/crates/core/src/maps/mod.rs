//! Elements of the finite transformation semigroups `T_n`, `IS_n` and `S_n`.
//!
//! Points are 1-based everywhere in the public API and in literals. Products
//! are read left to right: `(x·y)(p) = y(x(p))`.

mod kernel;
mod literal;
mod partial;
mod permutation;
mod transformation;

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use kernel::{KernelBlock, KernelPartition, TypeVector};
pub use partial::PartialInjection;
pub use permutation::Permutation;
pub use transformation::Transformation;

/// Largest supported degree. Points are stored as bytes and `2^n` must fit
/// in a `u128`.
pub const MAX_DEGREE: usize = 64;

/// Default largest `n` for which whole semigroups are enumerated.
pub const DEFAULT_ENUMERATION_CAP: usize = 5;

/// Which finite semigroup an element belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Full transformations, `T_n`.
    #[serde(rename = "T")]
    Transformations,
    /// Partial injections, `IS_n`.
    #[serde(rename = "IS")]
    PartialInjections,
    /// Permutations, `S_n`.
    #[serde(rename = "S")]
    Permutations,
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::Transformations => "T",
            Family::PartialInjections => "IS",
            Family::Permutations => "S",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "T" | "TN" | "T_N" => Ok(Family::Transformations),
            "IS" | "ISN" | "IS_N" => Ok(Family::PartialInjections),
            "S" | "SN" | "S_N" => Ok(Family::Permutations),
            _ => Err(crate::error::parse_error("family", s, "expected T, IS or S")),
        }
    }
}

/// A self-map of `{1..n}` that can be composed with maps of its own kind.
pub trait MapElement: Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + FromStr<Err = Error> + Send + Sync {
    const FAMILY: Family;

    fn degree(&self) -> usize;

    /// Left-to-right composition: apply `self`, then `other`.
    fn compose(&self, other: &Self) -> Result<Self>;

    fn identity(n: usize) -> Result<Self>;

    fn from_permutation(p: &Permutation) -> Self;

    /// All elements of degree `n` in lexicographic order of their image
    /// sequences (undefined sorts last).
    fn enumerate(n: usize, cap: usize) -> Result<Vec<Self>>;
}

/// Left-to-right composition `x·y`.
pub fn compose<E: MapElement>(x: &E, y: &E) -> Result<E> {
    x.compose(y)
}

/// Enumerates a whole family; see [`MapElement::enumerate`].
pub fn enumerate_elements<E: MapElement>(n: usize, cap: usize) -> Result<Vec<E>> {
    E::enumerate(n, cap)
}

pub(crate) fn check_degree(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::InvalidDegree {
            degree: n,
            max: MAX_DEGREE,
        });
    }
    Ok(())
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    check_degree(n)?;
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

pub(crate) fn same_degree(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DegreeMismatch { left, right });
    }
    Ok(())
}
