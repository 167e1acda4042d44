//! Sandwich products and finite Cayley tables.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::maps::{same_degree, MapElement};

/// `x *_a y = x·a·y`.
pub fn sandwich_product<E: MapElement>(x: &E, a: &E, y: &E) -> Result<E> {
    same_degree(x.degree(), a.degree())?;
    x.compose(a)?.compose(y)
}

/// A finite magma stored as an index matrix over labelled elements.
///
/// Entry `(i, j)` is the index of `element_i · element_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct CayleyTable {
    labels: Vec<String>,
    product: Vec<u32>,
}

impl CayleyTable {
    /// Builds a table from rows of product indices. Associativity is not
    /// required here; see [`CayleyTable::check_associativity`].
    pub fn new(labels: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let size = labels.len();
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidTable(format!("expected a {size}×{size} matrix")));
        }
        let product = rows.into_iter().flatten().map(|v| v as u32).collect();
        Self::from_flat(labels, product)
    }

    pub(crate) fn from_flat(labels: Vec<String>, product: Vec<u32>) -> Result<Self> {
        let size = labels.len();
        if size == 0 {
            return Err(Error::InvalidTable("no elements".into()));
        }
        if product.len() != size * size {
            return Err(Error::InvalidTable(format!("expected {} entries", size * size)));
        }
        if let Some(bad) = product.iter().find(|&&v| v as usize >= size) {
            return Err(Error::InvalidTable(format!("index {bad} out of range")));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidTable(format!("bad label `{label}`")));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidTable(format!("duplicate label `{label}`")));
            }
        }
        Ok(CayleyTable { labels, product })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.product[i * self.len() + j] as usize
    }

    /// Products `i·j` for all `j`.
    pub fn row(&self, i: usize) -> &[u32] {
        let n = self.len();
        &self.product[i * n..(i + 1) * n]
    }

    /// First triple (in lexicographic order) with `(ij)k ≠ i(jk)`.
    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.len();
        (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                let ij = self.product(i, j);
                let row_ij = self.row(ij);
                let row_i = self.row(i);
                for (k, &ij_k) in row_ij.iter().enumerate() {
                    if ij_k != row_i[self.product(j, k)] {
                        return Some((i, j, k));
                    }
                }
            }
            None
        })
    }

    /// `(xy)z = x(yz)` for all triples; `O(len³)` lookups.
    pub fn check_associativity(&self) -> bool {
        self.associativity_violation().is_none()
    }

    /// Indices `i` with `i·i = i`, ascending.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.product(i, i) == i).collect()
    }

    /// The opposite magma, `i ∘ j = j·i`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.len();
        let mut product = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                product[j * n + i] = self.product[i * n + j];
            }
        }
        CayleyTable {
            labels: self.labels.clone(),
            product,
        }
    }

    /// The same magma with element `i` moved to position `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<CayleyTable> {
        let n = self.len();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidTable("relabelling is not a permutation".into()));
        }
        let mut labels = vec![String::new(); n];
        let mut product = vec![0; n * n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            for j in 0..n {
                product[perm[i] * n + perm[j]] = perm[self.product(i, j)] as u32;
            }
        }
        Ok(CayleyTable { labels, product })
    }

    /// Text form: the element count, the labels, then one row of 0-based
    /// product indices per element.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.len())?;
        writeln!(f, "{}", self.labels.join(" "))?;
        for i in 0..self.len() {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable({} elements)", self.len())
    }
}

impl FromStr for CayleyTable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidTable(msg.to_string());
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let size: usize = lines
            .next()
            .ok_or_else(|| bad("missing element count"))?
            .trim()
            .parse()
            .map_err(|_| bad("element count is not an integer"))?;
        let labels: Vec<String> = lines
            .next()
            .ok_or_else(|| bad("missing label line"))?
            .split_whitespace()
            .map(str::to_string)
            .collect();
        if labels.len() != size {
            return Err(bad("label count differs from element count"));
        }
        let mut product = Vec::with_capacity(size * size);
        for _ in 0..size {
            let line = lines.next().ok_or_else(|| bad("missing product row"))?;
            let row = line
                .split_whitespace()
                .map(|v| v.parse::<u32>().map_err(|_| bad("product entry is not an index")))
                .collect::<Result<Vec<_>>>()?;
            if row.len() != size {
                return Err(bad("product row has the wrong length"));
            }
            product.extend(row);
        }
        if lines.next().is_some() {
            return Err(bad("trailing content after the product rows"));
        }
        CayleyTable::from_flat(labels, product)
    }
}

/// A fully enumerated finite semigroup with its composition table, used to
/// build all deformed tables over the same carrier cheaply.
pub struct FiniteSemigroup<E> {
    elements: Vec<E>,
    index: HashMap<E, u32>,
    composition: Vec<u32>,
}

impl<E: MapElement> FiniteSemigroup<E> {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        let elements = E::enumerate(n, cap)?;
        let index: HashMap<E, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        let size = elements.len();
        let mut composition = vec![0u32; size * size];
        composition.par_chunks_mut(size).enumerate().for_each(|(i, row)| {
            for (j, slot) in row.iter_mut().enumerate() {
                let xy = elements[i].compose(&elements[j]).expect("same degree");
                *slot = index[&xy];
            }
        });
        Ok(FiniteSemigroup {
            elements,
            index,
            composition,
        })
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[E] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &E {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &E) -> Option<usize> {
        self.index.get(e).map(|&i| i as usize)
    }

    #[inline]
    pub fn compose_idx(&self, i: usize, j: usize) -> usize {
        self.composition[i * self.len() + j] as usize
    }

    #[inline]
    pub fn sandwich_idx(&self, x: usize, a: usize, y: usize) -> usize {
        self.compose_idx(self.compose_idx(x, a), y)
    }

    pub fn labels(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }

    /// Indices `x` with `x·a·x = x`, found by a scan without building a table.
    pub fn deformed_idempotents(&self, a: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.sandwich_idx(x, a, x) == x).collect()
    }

    /// The table of `(S, *_a)` where `a` is an element index.
    ///
    /// In builds with debug assertions the result is checked for
    /// associativity before it is returned.
    pub fn deformed_table(&self, a: usize) -> Result<CayleyTable> {
        let size = self.len();
        let mut product = vec![0u32; size * size];
        product.par_chunks_mut(size).enumerate().for_each(|(x, row)| {
            let xa = self.compose_idx(x, a);
            let xa_row = &self.composition[xa * size..(xa + 1) * size];
            row.copy_from_slice(xa_row);
        });
        let table = CayleyTable::from_flat(self.labels(), product)?;
        if cfg!(debug_assertions) {
            if let Some((i, j, k)) = table.associativity_violation() {
                return Err(Error::NonAssociative(i, j, k));
            }
        }
        Ok(table)
    }

    /// The composition table itself.
    pub fn plain_table(&self) -> Result<CayleyTable> {
        CayleyTable::from_flat(self.labels(), self.composition.clone())
    }
}

/// Table of `(S, *_a)` over the enumeration of the family of `a` at degree `n`.
pub fn build_deformed_table<E: MapElement>(n: usize, a: &E, cap: usize) -> Result<CayleyTable> {
    same_degree(n, a.degree())?;
    let semigroup = FiniteSemigroup::<E>::new(n, cap)?;
    let idx = semigroup.index_of(a).expect("enumeration is complete");
    semigroup.deformed_table(idx)
}

pub fn check_associativity(t: &CayleyTable) -> bool {
    t.check_associativity()
}

pub fn idempotents_of_table(t: &CayleyTable) -> Vec<usize> {
    t.idempotents()
}
