use std::fmt;
use std::str::FromStr;

use crate::error::{parse_error, Error, Result};

use super::{
    check_cap, check_degree, literal, same_degree, Family, KernelPartition, MapElement, Permutation, TypeVector,
};

/// A total self-map of `{1..n}`, an element of `T_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Vec<u8>,
}

impl Transformation {
    /// Builds a transformation from 1-based images.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let images = images
            .iter()
            .map(|&p| {
                if p == 0 || p > n {
                    Err(Error::PointOutOfRange { point: p, n })
                } else {
                    Ok((p - 1) as u8)
                }
            })
            .collect::<Result<_>>()?;
        Ok(Transformation { images })
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        debug_assert!(images.iter().all(|&p| (p as usize) < images.len()));
        Transformation { images }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn constant(n: usize, value: usize) -> Result<Self> {
        Self::new(&vec![value; n])
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    /// 1-based images of `1..=n`.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p as usize + 1).collect()
    }

    /// Number of distinct image points.
    pub fn rank(&self) -> usize {
        let mut seen = 0u64;
        for &p in &self.images {
            seen |= 1 << p;
        }
        seen.count_ones() as usize
    }

    pub fn is_permutation(&self) -> bool {
        self.rank() == self.degree()
    }

    pub fn kernel_partition(&self) -> KernelPartition {
        KernelPartition::of(self)
    }

    pub fn type_vector(&self) -> TypeVector {
        self.kernel_partition().type_vector()
    }
}

impl MapElement for Transformation {
    const FAMILY: Family = Family::Transformations;

    fn degree(&self) -> usize {
        self.images.len()
    }

    fn compose(&self, other: &Self) -> Result<Self> {
        same_degree(self.degree(), other.degree())?;
        Ok(Transformation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        })
    }

    fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Transformation {
            images: (0..n as u8).collect(),
        })
    }

    fn from_permutation(p: &Permutation) -> Self {
        Transformation {
            images: p.raw().to_vec(),
        }
    }

    fn enumerate(n: usize, cap: usize) -> Result<Vec<Self>> {
        check_cap(n, cap)?;
        let total = n.pow(n as u32);
        let mut out = Vec::with_capacity(total);
        let mut images = vec![0u8; n];
        loop {
            out.push(Transformation { images: images.clone() });
            // odometer, last position fastest
            let mut pos = n;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                if (images[pos] as usize) + 1 < n {
                    images[pos] += 1;
                    break;
                }
                images[pos] = 0;
            }
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write(f, self.images.iter().map(|&p| Some(p)))
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Transformation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = literal::parse("transformation", s)?
            .into_iter()
            .map(|p| p.ok_or_else(|| parse_error("transformation", s, "undefined entry in a total map")))
            .collect::<Result<_>>()?;
        Ok(Transformation { images })
    }
}

serde_via_display!(Transformation);
