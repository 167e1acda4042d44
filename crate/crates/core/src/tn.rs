//! `(T_n, *_a)`: the relation `~_a`, its class sizes, recovery of the type of
//! `a` from those sizes, type-based isomorphism with explicit witnesses, and
//! the counting formulas.
//!
//! `x ~_a y` means `x *_a u = y *_a u` for every `u`; for `n ≥ 2` this is the
//! same as `xa = ya`. The class of `x` has `∏ n_a(y_i)` elements where
//! `y = xa` and `n_a(t)` is the size of the fiber of `a` over `t`. The
//! multiset of class sizes determines the type of `a`, and
//! `(T_n, *_a) ≅ (T_n, *_b)` exactly when `a` and `b` have the same type.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::{check_cap, check_degree, same_degree, MapElement, Permutation, Transformation, TypeVector};
use crate::partitions;
use crate::witness::Witness;

pub use crate::partitions::partition_count;

pub type TnWitness = Witness<Transformation>;

/// Largest degree for exact counting; `n^n` must fit in a `u64`.
pub const MAX_COUNT_DEGREE: usize = 15;

/// `x ~_a y`, decided as `xa = ya`.
pub fn sim_a_related(x: &Transformation, y: &Transformation, a: &Transformation) -> Result<bool> {
    same_degree(x.degree(), a.degree())?;
    Ok(x.compose(a)? == y.compose(a)?)
}

/// `x ~_a y` decided from the definition, comparing `x *_a u` and `y *_a u`
/// for every `u ∈ T_n`.
pub fn sim_a_related_by_definition(
    x: &Transformation,
    y: &Transformation,
    a: &Transformation,
    cap: usize,
) -> Result<bool> {
    same_degree(x.degree(), y.degree())?;
    same_degree(x.degree(), a.degree())?;
    let xa = x.compose(a)?;
    let ya = y.compose(a)?;
    for u in Transformation::enumerate(x.degree(), cap)? {
        if xa.compose(&u)? != ya.compose(&u)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Class sizes of `~_a` as `(size, count)` pairs with distinct sizes.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ClassSizeMultiset {
    n: usize,
    counts: BTreeMap<u64, u64>,
}

impl ClassSizeMultiset {
    pub fn new(n: usize, pairs: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        check_degree(n)?;
        let mut counts = BTreeMap::new();
        for (size, count) in pairs {
            if size == 0 || count == 0 {
                return Err(Error::InconsistentMultiset(format!(
                    "entry {size}:{count} is not positive"
                )));
            }
            let slot = counts.entry(size).or_insert(0u64);
            *slot = slot.checked_add(count).ok_or(Error::Overflow)?;
        }
        if counts.is_empty() {
            return Err(Error::InconsistentMultiset("no classes".into()));
        }
        Ok(ClassSizeMultiset { n, counts })
    }

    /// Builds the multiset from a list of individual class sizes.
    pub fn from_sizes(n: usize, sizes: impl IntoIterator<Item = u64>) -> Result<Self> {
        Self::new(n, sizes.into_iter().map(|s| (s, 1)))
    }

    /// Parses sorted `size:count` lines.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let bad = |line: &str| crate::error::parse_error("class-size multiset", line, "expected `size:count`");
        let pairs = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|line| {
                let (size, count) = line.split_once(':').ok_or_else(|| bad(line))?;
                let size = size.trim().parse().map_err(|_| bad(line))?;
                let count = count.trim().parse().map_err(|_| bad(line))?;
                Ok((size, count))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, pairs)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// Number of classes of the given size.
    pub fn count(&self, size: u64) -> u64 {
        self.counts.get(&size).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.counts.iter().map(|(&s, &c)| (s, c))
    }

    pub fn min_size(&self) -> u64 {
        *self.counts.keys().next().expect("non-empty")
    }

    pub fn class_count(&self) -> u128 {
        self.counts.values().map(|&c| c as u128).sum()
    }

    /// `Σ size · count`.
    pub fn total_mass(&self) -> u128 {
        self.counts.iter().map(|(&s, &c)| s as u128 * c as u128).sum()
    }
}

impl fmt::Display for ClassSizeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (size, count) in &self.counts {
            writeln!(f, "{size}:{count}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ClassSizeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inner: Vec<String> = self.counts.iter().map(|(s, c)| format!("{s}:{c}")).collect();
        write!(f, "{{{}}}", inner.join(", "))
    }
}

/// One class of `~_a`: all `x` with `xa = image`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimClass {
    pub image: Transformation,
    pub members: Vec<Transformation>,
}

/// The partition of `T_n` into classes of `~_a`, ordered by `image`.
#[derive(Debug, Clone)]
pub struct SimClasses {
    pub sandwich: Transformation,
    pub classes: Vec<SimClass>,
}

impl SimClasses {
    pub fn multiset(&self) -> ClassSizeMultiset {
        ClassSizeMultiset::from_sizes(
            self.sandwich.degree(),
            self.classes.iter().map(|c| c.members.len() as u64),
        )
        .expect("classes are non-empty")
    }
}

/// Enumerates `T_n` and groups it into fibers of `x ↦ xa`.
pub fn sim_a_classes(a: &Transformation, cap: usize) -> Result<SimClasses> {
    let mut fibers: BTreeMap<Transformation, Vec<Transformation>> = BTreeMap::new();
    for x in Transformation::enumerate(a.degree(), cap)? {
        fibers.entry(x.compose(a)?).or_default().push(x);
    }
    Ok(SimClasses {
        sandwich: a.clone(),
        classes: fibers
            .into_iter()
            .map(|(image, members)| SimClass { image, members })
            .collect(),
    })
}

/// `∏ n_a(y_i)`: the size of the `~_a` class whose members satisfy `xa = y`.
/// Zero when `y` leaves the image of `a`.
pub fn eq1_class_size(a: &Transformation, y: &Transformation) -> Result<u64> {
    same_degree(a.degree(), y.degree())?;
    let kernel = a.kernel_partition();
    y.images()
        .into_iter()
        .try_fold(1u64, |acc, yi| acc.checked_mul(kernel.block_size(yi) as u64))
        .ok_or(Error::Overflow)
}

/// Class-size multiset predicted for any `a` of type `t`, without enumerating
/// `T_n`: sizes are products of `n` block sizes, one block per position.
pub fn class_sizes_for_type(t: &TypeVector) -> Result<ClassSizeMultiset> {
    let n = t.degree();
    check_cap(n, MAX_COUNT_DEGREE)?;
    let mut dist: BTreeMap<u64, u64> = BTreeMap::from([(1, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&product, &ways) in &dist {
            for k in 1..=n {
                let blocks = t.get(k) as u64;
                if blocks == 0 {
                    continue;
                }
                let size = product.checked_mul(k as u64).ok_or(Error::Overflow)?;
                let add = ways.checked_mul(blocks).ok_or(Error::Overflow)?;
                let slot = next.entry(size).or_insert(0u64);
                *slot = slot.checked_add(add).ok_or(Error::Overflow)?;
            }
        }
        dist = next;
    }
    ClassSizeMultiset::new(n, dist)
}

/// Exact integer `n`-th root, if there is one.
fn exact_root(value: u64, n: usize) -> Option<u64> {
    let pow = |base: u64| -> Option<u128> { (0..n).try_fold(1u128, |acc, _| acc.checked_mul(base as u128)) };
    let (mut lo, mut hi) = (0u64, value.max(1));
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        match pow(mid) {
            Some(p) if p <= value as u128 => lo = mid,
            _ => hi = mid - 1,
        }
    }
    (pow(lo) == Some(value as u128)).then_some(lo)
}

/// Recovers the type of `a` from the class-size multiset of `~_a`.
///
/// With `m` the least block size the smallest classes have `m^n` elements
/// and there are `α_m^n` of them. For each `l > m` the classes of size
/// `l·m^(n-1)` number `C = A + B`, where `A` counts tuples of block sizes
/// below `l` with that product (weighted by the `α`s already known) and
/// `B = n·α_l·α_m^(n-1)`; this yields `α_l`. The result is validated by
/// predicting the full multiset back from the recovered type.
pub fn recover_type_from_class_sizes(multiset: &ClassSizeMultiset, n: usize) -> Result<TypeVector> {
    check_cap(n, MAX_COUNT_DEGREE)?;
    let inconsistent = |msg: String| Error::InconsistentMultiset(msg);
    if multiset.degree() != n {
        return Err(inconsistent(format!(
            "multiset is for degree {}, not {n}",
            multiset.degree()
        )));
    }
    let smallest = multiset.min_size();
    let m = exact_root(smallest, n)
        .ok_or_else(|| inconsistent(format!("least size {smallest} is not an {n}-th power")))? as usize;
    if m == 0 || m > n {
        return Err(inconsistent(format!("least block size {m} is impossible")));
    }
    let alpha_m = exact_root(multiset.count(smallest), n).ok_or_else(|| {
        inconsistent(format!(
            "count {} of the least size is not an {n}-th power",
            multiset.count(smallest)
        ))
    })?;

    let mut alpha = vec![0u64; n + 1];
    alpha[m] = alpha_m;
    let m_pow = (m as u128).pow(n as u32 - 1);
    let denom = n as u128 * (alpha_m as u128).pow(n as u32 - 1);
    for l in m + 1..=n {
        let target = l as u128 * m_pow;
        let c = u64::try_from(target).map(|t| multiset.count(t)).unwrap_or(0) as u128;
        let a = tuples_below(&alpha, m, l, n, target);
        let b = c
            .checked_sub(a)
            .ok_or_else(|| inconsistent(format!("for l = {l}: C = {c} < A = {a}")))?;
        if b % denom != 0 {
            return Err(inconsistent(format!(
                "for l = {l}: B = {b} is not divisible by {denom}"
            )));
        }
        alpha[l] = u64::try_from(b / denom).map_err(|_| Error::Overflow)?;
    }

    let counts: Vec<usize> = alpha[1..].iter().map(|&v| v as usize).collect();
    let recovered = TypeVector::new(counts).map_err(|e| inconsistent(e.to_string()))?;
    if &class_sizes_for_type(&recovered)? != multiset {
        return Err(inconsistent(format!(
            "recovered type {recovered} predicts a different multiset"
        )));
    }
    Ok(recovered)
}

// A: Σ over ordered n-tuples (m_1..m_n) with m ≤ m_j < l and ∏ m_j = target
// of ∏ α_{m_j}. Dynamic programming over partial products dividing target.
fn tuples_below(alpha: &[u64], m: usize, l: usize, n: usize, target: u128) -> u128 {
    let mut states: BTreeMap<u128, u128> = BTreeMap::from([(1, 1)]);
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for (&product, &weight) in &states {
            for (k, &count) in alpha.iter().enumerate().take(l).skip(m) {
                if count == 0 {
                    continue;
                }
                let p = product * k as u128;
                if target.is_multiple_of(p) {
                    *next.entry(p).or_insert(0) += weight * count as u128;
                }
            }
        }
        states = next;
    }
    states.get(&target).copied().unwrap_or(0)
}

/// `(T_n, *_a) ≅ (T_n, *_b)` iff `a` and `b` have the same type.
pub fn tn_isomorphic(a: &Transformation, b: &Transformation) -> Result<bool> {
    same_degree(a.degree(), b.degree())?;
    Ok(a.type_vector() == b.type_vector())
}

/// Deterministic `τ, π ∈ S_n` with `b = τ·a·π`.
///
/// Kernel blocks of `a` and of `b` are grouped by size and, within a size,
/// paired in order of their least member. `τ` maps each block of `b` onto
/// its partner block of `a` (members matched ascending) and `π` maps the
/// partner's image point to the image point of the `b` block. `π` is
/// completed ascending-to-ascending off the image.
pub fn tn_witness(a: &Transformation, b: &Transformation) -> Result<TnWitness> {
    same_degree(a.degree(), b.degree())?;
    let (ta, tb) = (a.type_vector(), b.type_vector());
    if ta != tb {
        return Err(Error::TypeMismatch(ta.to_string(), tb.to_string()));
    }
    let n = a.degree();
    let ka = a.kernel_partition();
    let kb = b.kernel_partition();
    let mut tau_pairs = Vec::with_capacity(n);
    let mut pi_pairs = Vec::with_capacity(ta.rank());
    for size in 1..=n {
        let blocks_a = ka.blocks().iter().filter(|blk| blk.len() == size);
        let blocks_b = kb.blocks().iter().filter(|blk| blk.len() == size);
        for (block_a, block_b) in blocks_a.zip(blocks_b) {
            tau_pairs.extend(block_b.members.iter().copied().zip(block_a.members.iter().copied()));
            pi_pairs.push((block_a.tag, block_b.tag));
        }
    }
    let witness = Witness {
        source: a.clone(),
        target: b.clone(),
        tau: Permutation::complete(n, &tau_pairs)?,
        pi: Permutation::complete(n, &pi_pairs)?,
    };
    debug_assert!(witness.is_valid());
    Ok(witness)
}

/// `f(x) = π⁻¹·x·τ⁻¹`.
pub fn tn_iso_map(witness: &TnWitness, x: &Transformation) -> Result<Transformation> {
    witness.apply(x)
}

fn checked_factorial(k: usize) -> Option<u128> {
    (1..=k as u128).try_fold(1u128, |acc, v| acc.checked_mul(v))
}

fn checked_binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    (0..k as u128).try_fold(1u128, |acc, i| Some(acc.checked_mul(n as u128 - i)? / (i + 1)))
}

/// Number of transformations of type `t`:
/// `n!·C(n,α_1)·C(n-α_1,α_2)⋯ / ∏ (i!)^{α_i}`.
pub fn count_of_type(t: &TypeVector) -> Result<u64> {
    let n = t.degree();
    check_cap(n, MAX_COUNT_DEGREE)?;
    let mut numerator = checked_factorial(n).ok_or(Error::Overflow)?;
    let mut remaining = n;
    for k in 1..=n {
        let c = t.get(k);
        numerator = numerator
            .checked_mul(checked_binomial(remaining, c).ok_or(Error::Overflow)?)
            .ok_or(Error::Overflow)?;
        remaining -= c;
    }
    let mut denominator = 1u128;
    for k in 1..=n {
        let f = checked_factorial(k).ok_or(Error::Overflow)?;
        for _ in 0..t.get(k) {
            denominator = denominator.checked_mul(f).ok_or(Error::Overflow)?;
        }
    }
    debug_assert_eq!(numerator % denominator, 0);
    u64::try_from(numerator / denominator).map_err(|_| Error::Overflow)
}

/// One type vector per partition of `n`, in the order of
/// [`partitions::partitions`].
pub fn enumerate_types(n: usize) -> Result<Vec<TypeVector>> {
    check_degree(n)?;
    partitions::partitions(n)
        .iter()
        .map(|parts| TypeVector::from_parts(parts))
        .collect()
}

/// One isomorphism class of sandwich elements in `T_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeClass {
    pub type_vector: TypeVector,
    pub representative: Transformation,
    pub members: u64,
    pub formula_count: u64,
}

/// Groups all `a ∈ T_n` by type, classes ordered as in [`enumerate_types`].
pub fn classify(n: usize, cap: usize) -> Result<Vec<TypeClass>> {
    let mut by_type: BTreeMap<TypeVector, (Transformation, u64)> = BTreeMap::new();
    for a in Transformation::enumerate(n, cap)? {
        by_type.entry(a.type_vector()).or_insert_with(|| (a.clone(), 0)).1 += 1;
    }
    let mut classes = Vec::with_capacity(by_type.len());
    for t in enumerate_types(n)? {
        if let Some((representative, members)) = by_type.remove(&t) {
            classes.push(TypeClass {
                formula_count: count_of_type(&t)?,
                type_vector: t,
                representative,
                members,
            });
        }
    }
    debug_assert!(by_type.is_empty());
    Ok(classes)
}
