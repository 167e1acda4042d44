use std::fmt;
use std::str::FromStr;

use crate::error::{parse_error, Error, Result};

use super::{check_cap, check_degree, literal, same_degree, Family, MapElement};

/// A bijection of `{1..n}`, an element of `S_n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from 1-based images, rejecting non-bijections.
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        check_degree(n)?;
        let mut hit = 0u64;
        let mut raw = Vec::with_capacity(n);
        for &p in images {
            if p == 0 || p > n {
                return Err(Error::PointOutOfRange { point: p, n });
            }
            if hit & (1 << (p - 1)) != 0 {
                return Err(Error::NotBijective(format!("point {p} is hit twice")));
            }
            hit |= 1 << (p - 1);
            raw.push((p - 1) as u8);
        }
        Ok(Permutation { images: raw })
    }

    pub(crate) fn from_raw(images: Vec<u8>) -> Self {
        Permutation { images }
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    /// Extends a partial bijection to a permutation of `{1..n}`.
    ///
    /// `assigned` lists 1-based `(source, target)` pairs. Sources left over
    /// are matched to targets left over, both taken in ascending order.
    pub fn complete(n: usize, assigned: &[(usize, usize)]) -> Result<Self> {
        check_degree(n)?;
        let mut images = vec![None; n];
        let mut target_used = vec![false; n];
        for &(src, dst) in assigned {
            for p in [src, dst] {
                if p == 0 || p > n {
                    return Err(Error::PointOutOfRange { point: p, n });
                }
            }
            if images[src - 1].is_some() || target_used[dst - 1] {
                return Err(Error::NotBijective(format!(
                    "assignment {src} -> {dst} collides with an earlier pair"
                )));
            }
            images[src - 1] = Some((dst - 1) as u8);
            target_used[dst - 1] = true;
        }
        let mut free_targets = (0..n as u8).filter(|&q| !target_used[q as usize]);
        let images = images
            .into_iter()
            .map(|image| image.unwrap_or_else(|| free_targets.next().expect("counts match")))
            .collect();
        Ok(Permutation { images })
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&p| p as usize + 1).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0u8; self.images.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q as usize] = p as u8;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(p, &q)| p == q as usize)
    }
}

impl MapElement for Permutation {
    const FAMILY: Family = Family::Permutations;

    fn degree(&self) -> usize {
        self.images.len()
    }

    fn compose(&self, other: &Self) -> Result<Self> {
        same_degree(self.degree(), other.degree())?;
        Ok(Permutation {
            images: self.images.iter().map(|&p| other.images[p as usize]).collect(),
        })
    }

    fn identity(n: usize) -> Result<Self> {
        check_degree(n)?;
        Ok(Permutation {
            images: (0..n as u8).collect(),
        })
    }

    fn from_permutation(p: &Permutation) -> Self {
        p.clone()
    }

    fn enumerate(n: usize, cap: usize) -> Result<Vec<Self>> {
        check_cap(n, cap)?;
        fn extend(n: usize, images: &mut Vec<u8>, used: u64, out: &mut Vec<Permutation>) {
            if images.len() == n {
                out.push(Permutation { images: images.clone() });
                return;
            }
            for q in 0..n as u8 {
                if used & (1 << q) == 0 {
                    images.push(q);
                    extend(n, images, used | (1 << q), out);
                    images.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(n, &mut Vec::with_capacity(n), 0, &mut out);
        Ok(out)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        literal::write(f, self.images.iter().map(|&p| Some(p)))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images: Vec<usize> = literal::parse("permutation", s)?
            .into_iter()
            .map(|p| {
                p.map(|q| q as usize + 1)
                    .ok_or_else(|| parse_error("permutation", s, "undefined entry"))
            })
            .collect::<Result<_>>()?;
        Permutation::new(&images).map_err(|e| parse_error("permutation", s, e.to_string()))
    }
}

serde_via_display!(Permutation);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_matches_leftovers_ascending() {
        let p = Permutation::complete(4, &[(2, 4), (4, 1)]).unwrap();
        assert_eq!(p.images(), vec![2, 4, 3, 1]);
        assert!(Permutation::complete(3, &[(1, 2), (2, 2)]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in Permutation::enumerate(4, 5).unwrap() {
            assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }

    #[test]
    fn parsing_validates_bijectivity() {
        assert!("[1,1,2]".parse::<Permutation>().is_err());
        assert!("[2,-]".parse::<Permutation>().is_err());
        assert_eq!("[3,1,2]".parse::<Permutation>().unwrap().image(1), 3);
    }
}
