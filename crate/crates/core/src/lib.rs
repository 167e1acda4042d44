//! Semigroups with deformed (sandwich) multiplication `x *_a y = x·a·y`.
//!
//! The crate covers three carriers:
//!
//! * [`isn`]: the symmetric inverse semigroup `IS_n`, classified by the rank
//!   of the sandwich element;
//! * [`tn`]: the full transformation semigroup `T_n`, classified by the type
//!   (preimage profile) of the sandwich element;
//! * [`bicyclic`]: the bicyclic monoid `⟨a, b | ab = 1⟩`, handled symbolically.
//!
//! Finite deformed semigroups can be materialized as [`table::CayleyTable`]s
//! and compared with the brute-force isomorphism search in [`oracle`], which
//! is used to cross-check the classification criteria. [`verify`] bundles the
//! exhaustive checks that back the CLI.

/// Serializes a type through its `Display` literal and deserializes through
/// `FromStr`.
macro_rules! serde_via_display {
    ($ty:ty) => {
        impl serde::Serialize for $ty {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> serde::Deserialize<'de> for $ty {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = <std::borrow::Cow<'de, str> as serde::Deserialize>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

pub mod bicyclic;
pub mod error;
pub mod isn;
pub mod maps;
pub mod oracle;
pub mod partitions;
pub mod table;
pub mod tn;
pub mod verify;
mod witness;

pub use error::{Error, Result};
pub use maps::{
    compose, enumerate_elements, Family, KernelPartition, MapElement, PartialInjection, Permutation, Transformation,
    TypeVector,
};
pub use table::{sandwich_product, CayleyTable, FiniteSemigroup};
pub use witness::{MapFailure, Witness};
