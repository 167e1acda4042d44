use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{check_degree, MapElement, Transformation};

/// One block of a kernel partition: all points sent to `tag`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBlock {
    pub tag: usize,
    pub members: Vec<usize>,
}

impl KernelBlock {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min_member(&self) -> usize {
        self.members[0]
    }
}

/// The partition of `{1..n}` into fibers of a transformation.
///
/// Blocks are ordered by their smallest member; members ascend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelPartition {
    n: usize,
    blocks: Vec<KernelBlock>,
    // n_a(t) for every point t, zero off the image
    sizes: Vec<usize>,
}

impl KernelPartition {
    pub fn of(a: &Transformation) -> Self {
        let n = a.degree();
        let mut slot: Vec<Option<usize>> = vec![None; n];
        let mut blocks: Vec<KernelBlock> = Vec::new();
        let mut sizes = vec![0; n];
        for (p, &q) in a.raw().iter().enumerate() {
            let q = q as usize;
            sizes[q] += 1;
            match slot[q] {
                Some(b) => blocks[b].members.push(p + 1),
                None => {
                    slot[q] = Some(blocks.len());
                    blocks.push(KernelBlock {
                        tag: q + 1,
                        members: vec![p + 1],
                    });
                }
            }
        }
        KernelPartition { n, blocks, sizes }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[KernelBlock] {
        &self.blocks
    }

    /// `n_a(t)`: size of the block tagged `t`, or zero when `t` is not an image.
    pub fn block_size(&self, tag: usize) -> usize {
        self.sizes[tag - 1]
    }

    pub fn block(&self, tag: usize) -> Option<&KernelBlock> {
        self.blocks.iter().find(|b| b.tag == tag)
    }

    /// Smallest block size `m`.
    pub fn min_block_size(&self) -> usize {
        self.blocks.iter().map(KernelBlock::len).min().expect("degree >= 1")
    }

    pub fn type_vector(&self) -> TypeVector {
        let mut counts = vec![0; self.n];
        for b in &self.blocks {
            counts[b.len() - 1] += 1;
        }
        TypeVector { counts }
    }
}

/// `(α_1, …, α_n)`: `α_k` image points have exactly `k` preimages.
///
/// Always satisfies `Σ k·α_k = n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct TypeVector {
    counts: Vec<usize>,
}

impl TypeVector {
    /// Validates `Σ k·α_k = n` where `n = counts.len()`.
    pub fn new(counts: Vec<usize>) -> Result<Self> {
        let n = counts.len();
        let invalid = |reason: String| Error::InvalidType {
            vector: render(&counts),
            reason,
        };
        check_degree(n).map_err(|e| invalid(e.to_string()))?;
        let weight = counts
            .iter()
            .enumerate()
            .try_fold(0usize, |acc, (i, &c)| acc.checked_add((i + 1).checked_mul(c)?))
            .ok_or_else(|| invalid("weight overflows".into()))?;
        if weight != n {
            return Err(invalid(format!("Σ k·α_k = {weight}, expected {n}")));
        }
        Ok(TypeVector { counts })
    }

    /// Type whose block sizes are the given parts of `n`.
    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        let n: usize = parts.iter().sum();
        check_degree(n)?;
        let mut counts = vec![0; n];
        for &part in parts {
            if part == 0 {
                return Err(Error::InvalidType {
                    vector: format!("{parts:?}"),
                    reason: "zero part".into(),
                });
            }
            counts[part - 1] += 1;
        }
        Ok(TypeVector { counts })
    }

    pub fn degree(&self) -> usize {
        self.counts.len()
    }

    /// `α_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> usize {
        self.counts[k - 1]
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    /// `Σ α_k`, the size of the image.
    pub fn rank(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Parts of the associated partition, largest first.
    pub fn parts(&self) -> Vec<usize> {
        let mut parts = Vec::with_capacity(self.rank());
        for k in (1..=self.degree()).rev() {
            parts.extend(std::iter::repeat_n(k, self.get(k)));
        }
        parts
    }

    /// Smallest `k` with `α_k > 0`.
    pub fn min_part(&self) -> usize {
        self.counts.iter().position(|&c| c > 0).expect("Σ kα_k = n >= 1") + 1
    }

    /// A canonical transformation of this type: blocks laid out left to right,
    /// largest first, block `j` sent to point `j`.
    pub fn representative(&self) -> Transformation {
        let mut images = Vec::with_capacity(self.degree());
        for (j, part) in self.parts().into_iter().enumerate() {
            images.extend(std::iter::repeat_n(j as u8, part));
        }
        Transformation::from_raw(images)
    }
}

impl TryFrom<Vec<usize>> for TypeVector {
    type Error = Error;

    fn try_from(counts: Vec<usize>) -> Result<Self> {
        TypeVector::new(counts)
    }
}

impl From<TypeVector> for Vec<usize> {
    fn from(t: TypeVector) -> Self {
        t.counts
    }
}

fn render(counts: &[usize]) -> String {
    let inner: Vec<String> = counts.iter().map(usize::to_string).collect();
    format!("({})", inner.join(","))
}

impl fmt::Display for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.counts))
    }
}

impl fmt::Debug for TypeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
