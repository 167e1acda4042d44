use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::{check_cap, check_degree, literal, same_degree, Family, MapElement, Permutation};

const UNDEFINED: u8 = u8::MAX;

/// An injective partial self-map of `{1..n}`, an element of `IS_n`.
///
/// Undefined points are encoded as a sentinel that compares greater than any
/// point, so the derived ordering puts "undefined" last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialInjection {
    images: Vec<u8>,
}

impl PartialInjection {
    /// Builds a partial injection from 1-based images, `None` meaning undefined.
    pub fn new(images: &[Option<usize>]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let raw = images
            .iter()
            .map(|image| match *image {
                None => Ok(None),
                Some(p) if p == 0 || p > n => Err(Error::PointOutOfRange { point: p, n }),
                Some(p) => Ok(Some((p - 1) as u8)),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_options(raw)
    }

    fn from_options(images: Vec<Option<u8>>) -> Result<Self> {
        let mut hit = 0u64;
        for p in images.iter().flatten() {
            if hit & (1 << p) != 0 {
                return Err(Error::NotInjective(*p as usize + 1));
            }
            hit |= 1 << p;
        }
        Ok(PartialInjection {
            images: images.into_iter().map(|p| p.unwrap_or(UNDEFINED)).collect(),
        })
    }

    /// The nowhere-defined map, the zero of `IS_n`.
    pub fn empty(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(PartialInjection {
            images: vec![UNDEFINED; n],
        })
    }

    pub(crate) fn raw_get(&self, p: usize) -> Option<usize> {
        match self.images[p] {
            UNDEFINED => None,
            q => Some(q as usize),
        }
    }

    /// Image of the 1-based point `p`, if defined.
    pub fn get(&self, p: usize) -> Option<usize> {
        self.raw_get(p - 1).map(|q| q + 1)
    }

    pub fn images(&self) -> Vec<Option<usize>> {
        (1..=self.degree()).map(|p| self.get(p)).collect()
    }

    /// Sorted 1-based domain.
    pub fn domain(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&p| self.get(p).is_some()).collect()
    }

    /// Sorted 1-based image set.
    pub fn range(&self) -> Vec<usize> {
        let mut ran: Vec<usize> = (1..=self.degree()).filter_map(|p| self.get(p)).collect();
        ran.sort_unstable();
        ran
    }

    /// `|dom| = |ran|`.
    pub fn rank(&self) -> usize {
        self.images.iter().filter(|&&p| p != UNDEFINED).count()
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![UNDEFINED; self.degree()];
        for (p, &q) in self.images.iter().enumerate() {
            if q != UNDEFINED {
                images[q as usize] = p as u8;
            }
        }
        PartialInjection { images }
    }

    /// Restriction of `self` to the 1-based points in `points`.
    pub fn restrict(&self, points: &[usize]) -> Self {
        let mut images = vec![UNDEFINED; self.degree()];
        for &p in points {
            images[p - 1] = self.images[p - 1];
        }
        PartialInjection { images }
    }

    /// The permutation with the same graph, if `self` is total.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.rank() != self.degree() {
            return None;
        }
        Some(Permutation::from_raw(self.images.clone()))
    }
}

impl MapElement for PartialInjection {
    const FAMILY: Family = Family::PartialInjections;

    fn degree(&self) -> usize {
        self.images.len()
    }

    fn compose(&self, other: &Self) -> Result<Self> {
        same_degree(self.degree(), other.degree())?;
        Ok(PartialInjection {
            images: self
                .images
                .iter()
                .map(|&p| {
                    if p == UNDEFINED {
                        UNDEFINED
                    } else {
                        other.images[p as usize]
                    }
                })
                .collect(),
        })
    }

    fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(PartialInjection {
            images: (0..n as u8).collect(),
        })
    }

    fn from_permutation(p: &Permutation) -> Self {
        PartialInjection {
            images: p.raw().to_vec(),
        }
    }

    fn enumerate(n: usize, cap: usize) -> Result<Vec<Self>> {
        check_cap(n, cap)?;
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(n);
        extend(n, &mut images, 0, &mut out);
        Ok(out)
    }
}

// Depth-first in lexicographic order: points ascending, undefined last.
fn extend(n: usize, images: &mut Vec<u8>, used: u64, out: &mut Vec<PartialInjection>) {
    if images.len() == n {
        out.push(PartialInjection { images: images.clone() });
        return;
    }
    for q in 0..n as u8 {
        if used & (1 << q) == 0 {
            images.push(q);
            extend(n, images, used | (1 << q), out);
            images.pop();
        }
    }
    images.push(UNDEFINED);
    extend(n, images, used, out);
    images.pop();
}

impl fmt::Display for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write(f, self.images.iter().map(|&p| (p != UNDEFINED).then_some(p)))
    }
}

impl fmt::Debug for PartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for PartialInjection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = literal::parse("partial injection", s)?;
        Self::from_options(images).map_err(|e| crate::error::parse_error("partial injection", s, e.to_string()))
    }
}

serde_via_display!(PartialInjection);

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(s: &str) -> PartialInjection {
        s.parse().unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(PartialInjection::empty(3).unwrap().rank(), 0);
        assert_eq!(PartialInjection::identity(4).unwrap().rank(), 4);
        assert_eq!(pi("[3,1,-]").rank(), 2);
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(pi("[3,1,-]").inverse(), pi("[2,-,1]"));
        let id = PartialInjection::identity(3).unwrap();
        assert_eq!(id.inverse(), id);
        let empty = PartialInjection::empty(3).unwrap();
        assert_eq!(empty.inverse(), empty);
    }

    #[test]
    fn domain_and_range() {
        let a = pi("[3,1,-]");
        assert_eq!(a.domain(), vec![1, 2]);
        assert_eq!(a.range(), vec![1, 3]);
        assert_eq!(a.get(3), None);
        assert_eq!(a.images(), vec![Some(3), Some(1), None]);
    }

    #[test]
    fn rejects_non_injective() {
        assert!("[1,1]".parse::<PartialInjection>().is_err());
        assert_eq!(
            PartialInjection::new(&[Some(2), Some(2)]).unwrap_err(),
            Error::NotInjective(2)
        );
    }

    #[test]
    fn inverse_laws_exhaustive() {
        for n in 1..=4 {
            for a in PartialInjection::enumerate(n, 5).unwrap() {
                let inv = a.inverse();
                assert_eq!(inv.inverse(), a);
                assert_eq!(inv.domain(), a.range());
                let round = a.compose(&inv).unwrap();
                let id = PartialInjection::identity(n).unwrap();
                assert_eq!(round, id.restrict(&a.domain()));
            }
        }
    }

    #[test]
    fn rank_of_product_is_bounded() {
        let all = PartialInjection::enumerate(3, 5).unwrap();
        for x in &all {
            for y in &all {
                let r = x.compose(y).unwrap().rank();
                assert!(r <= x.rank().min(y.rank()));
            }
        }
    }
}
