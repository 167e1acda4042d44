//! Exhaustive verification suites, one per classification result.
//!
//! Each suite compares a closed-form criterion or construction against an
//! independent brute-force computation over a bounded search space and
//! returns one [`CheckOutcome`] per check. A failing check carries a
//! counterexample; it is not an `Err`. Errors are reserved for invalid
//! bounds (for instance a degree above the cap).

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bicyclic::{self, BicyclicElement};
use crate::error::{parse_error, Error, Result};
use crate::maps::{check_cap, MapElement, PartialInjection, Transformation, DEFAULT_ENUMERATION_CAP};
use crate::oracle::{self, Verdict};
use crate::table::FiniteSemigroup;
use crate::{isn, partitions, tn};

/// Default largest degree for suites that build whole Cayley tables.
pub const DEFAULT_TABLE_CAP: usize = 4;

pub const DEFAULT_SEED: u64 = 0x5eed;

/// Identifiers accepted by [`run`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SuiteId {
    #[serde(rename = "lemma1")]
    IsnIdempotents,
    #[serde(rename = "thm1")]
    IsnClassification,
    #[serde(rename = "lemma2-eq1")]
    TnRelationClasses,
    #[serde(rename = "type-recovery")]
    TnTypeRecovery,
    #[serde(rename = "thm2")]
    TnClassification,
    #[serde(rename = "prop1")]
    TnCounting,
    #[serde(rename = "prop2")]
    BicyclicIdempotents,
    #[serde(rename = "thm3")]
    BicyclicWindows,
    #[serde(rename = "thm4")]
    BicyclicAntiIsomorphism,
    #[serde(rename = "oracle-crosscheck")]
    OracleCrosscheck,
}

impl SuiteId {
    pub const ALL: [SuiteId; 10] = [
        SuiteId::IsnIdempotents,
        SuiteId::IsnClassification,
        SuiteId::TnRelationClasses,
        SuiteId::TnTypeRecovery,
        SuiteId::TnClassification,
        SuiteId::TnCounting,
        SuiteId::BicyclicIdempotents,
        SuiteId::BicyclicWindows,
        SuiteId::BicyclicAntiIsomorphism,
        SuiteId::OracleCrosscheck,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::IsnIdempotents => "lemma1",
            SuiteId::IsnClassification => "thm1",
            SuiteId::TnRelationClasses => "lemma2-eq1",
            SuiteId::TnTypeRecovery => "type-recovery",
            SuiteId::TnClassification => "thm2",
            SuiteId::TnCounting => "prop1",
            SuiteId::BicyclicIdempotents => "prop2",
            SuiteId::BicyclicWindows => "thm3",
            SuiteId::BicyclicAntiIsomorphism => "thm4",
            SuiteId::OracleCrosscheck => "oracle-crosscheck",
        }
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SuiteId::ALL.into_iter().find(|id| id.as_str() == s).ok_or_else(|| {
            let known: Vec<&str> = SuiteId::ALL.iter().map(|id| id.as_str()).collect();
            parse_error("suite id", s, format!("expected one of {}", known.join(", ")))
        })
    }
}

/// Search-space bounds. `None` selects the suite's default.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    /// Degree for finite-family suites.
    pub n: Option<usize>,
    /// Exponent bound for bicyclic suites.
    pub grid: Option<u64>,
    /// Number of randomized cases.
    pub samples: Option<usize>,
    pub seed: u64,
    /// Cap for element-level enumeration.
    pub cap: usize,
    /// Cap for suites that build Cayley tables.
    pub table_cap: usize,
    pub budget: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            n: None,
            grid: None,
            samples: None,
            seed: DEFAULT_SEED,
            cap: DEFAULT_ENUMERATION_CAP,
            table_cap: DEFAULT_TABLE_CAP,
            budget: oracle::DEFAULT_NODE_BUDGET,
        }
    }
}

impl Bounds {
    pub fn with_n(n: usize) -> Self {
        Bounds {
            n: Some(n),
            ..Bounds::default()
        }
    }

    pub fn with_grid(grid: u64) -> Self {
        Bounds {
            grid: Some(grid),
            ..Bounds::default()
        }
    }

    fn degrees(&self, default_max: usize) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => (1..=default_max).collect(),
        }
    }
}

/// Result of one check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub suite: SuiteId,
    pub check: String,
    pub passed: bool,
    /// Number of cases examined.
    pub checked: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    fn new(suite: SuiteId, check: &str, checked: u64, detail: String, failure: Option<String>) -> Self {
        CheckOutcome {
            suite,
            check: check.to_string(),
            passed: failure.is_none(),
            checked,
            detail,
            counterexample: failure,
        }
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(
            f,
            "{verdict} {}/{}: {} ({} checked)",
            self.suite, self.check, self.detail, self.checked
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, "; counterexample: {c}")?;
        }
        Ok(())
    }
}

/// Runs one suite.
pub fn run(suite: SuiteId, bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    match suite {
        SuiteId::IsnIdempotents => isn_idempotents(bounds),
        SuiteId::IsnClassification => isn_classification(bounds),
        SuiteId::TnRelationClasses => tn_relation_classes(bounds),
        SuiteId::TnTypeRecovery => tn_type_recovery(bounds),
        SuiteId::TnClassification => tn_classification(bounds),
        SuiteId::TnCounting => tn_counting(bounds),
        SuiteId::BicyclicIdempotents => bicyclic_idempotents(bounds),
        SuiteId::BicyclicWindows => bicyclic_windows(bounds),
        SuiteId::BicyclicAntiIsomorphism => bicyclic_anti_isomorphism(bounds),
        SuiteId::OracleCrosscheck => oracle_crosscheck(bounds),
    }
}

fn first_failure<T: Sync>(items: Vec<T>, check: impl Fn(&T) -> Option<String> + Sync + Send) -> Option<String> {
    items.par_iter().find_map_first(check)
}

fn isn_idempotents(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::IsnIdempotents;
    let mut checked = 0u64;
    let mut failure = None;
    let degrees = bounds.degrees(4);
    for &n in &degrees {
        let s = FiniteSemigroup::<PartialInjection>::new(n, bounds.cap)?;
        checked += s.len() as u64;
        failure = failure.or_else(|| {
            first_failure((0..s.len()).collect(), |&a| {
                let alpha = s.element(a);
                let scanned = s.deformed_idempotents(a);
                let formula = isn::idempotent_count_formula(alpha);
                if scanned.len() as u128 != formula {
                    return Some(format!(
                        "α = {alpha}: {} idempotents, 2^rank = {formula}",
                        scanned.len()
                    ));
                }
                let mut listed: Vec<usize> = isn::enumerate_idempotents_isn(alpha)
                    .iter()
                    .map(|e| s.index_of(e).expect("closed"))
                    .collect();
                listed.sort_unstable();
                (listed != scanned).then(|| format!("α = {alpha}: listed idempotents differ from the scan"))
            })
        });
    }
    Ok(vec![CheckOutcome::new(
        suite,
        "count-and-set",
        checked,
        format!("idempotents of (IS_n, *_α) are 2^rank α and equal ε_A, n ∈ {degrees:?}"),
        failure,
    )])
}

fn isn_classification(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::IsnClassification;
    let n = bounds.n.unwrap_or(3);
    check_cap(n, bounds.table_cap)?;
    let s = FiniteSemigroup::<PartialInjection>::new(n, bounds.cap)?;
    let size = s.len();
    let mut out = Vec::new();

    let same_rank: Vec<(usize, usize)> = (0..size)
        .flat_map(|a| (0..size).map(move |b| (a, b)))
        .filter(|&(a, b)| s.element(a).rank() == s.element(b).rank())
        .collect();
    let pairs = same_rank.len() as u64;
    let failure = first_failure(same_rank, |&(a, b)| {
        let (alpha, beta) = (s.element(a), s.element(b));
        let w = match isn::isn_witness(alpha, beta) {
            Ok(w) => w,
            Err(e) => return Some(format!("{alpha} -> {beta}: {e}")),
        };
        if !w.is_valid() {
            return Some(format!("{alpha} -> {beta}: β ≠ τ·α·π"));
        }
        match w.verify_isomorphism(&s) {
            Ok(None) => None,
            Ok(Some(f)) => Some(format!("{alpha} -> {beta}: {f:?}")),
            Err(e) => Some(e.to_string()),
        }
    });
    out.push(CheckOutcome::new(
        suite,
        "sufficiency",
        pairs,
        format!("f(ξ) = π⁻¹ξτ⁻¹ is an isomorphism for every same-rank pair in IS_{n}"),
        failure,
    ));

    let counts: Vec<usize> = (0..size).map(|a| s.deformed_idempotents(a).len()).collect();
    let mut cross = 0u64;
    let mut failure = None;
    for a in 0..size {
        for b in 0..size {
            if s.element(a).rank() != s.element(b).rank() {
                cross += 1;
                if counts[a] == counts[b] && failure.is_none() {
                    failure = Some(format!(
                        "{} and {} have equal idempotent counts",
                        s.element(a),
                        s.element(b)
                    ));
                }
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "necessity",
        cross,
        format!("different-rank pairs in IS_{n} differ in idempotent count"),
        failure,
    ));

    let samples = bounds.samples.unwrap_or(5);
    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut sampled = Vec::new();
    if n > 0 && s.elements().iter().any(|e| e.rank() != s.element(0).rank()) {
        while sampled.len() < samples {
            let (a, b) = (rng.gen_range(0..size), rng.gen_range(0..size));
            if s.element(a).rank() != s.element(b).rank() {
                sampled.push((a, b));
            }
        }
    }
    let failure = first_failure(sampled, |&(a, b)| {
        let (ta, tb) = (s.deformed_table(a).ok()?, s.deformed_table(b).ok()?);
        match oracle::find_isomorphism_with_budget(&ta, &tb, bounds.budget) {
            Verdict::NotIsomorphic => None,
            other => Some(format!("{} vs {}: oracle says {other:?}", s.element(a), s.element(b))),
        }
    });
    out.push(CheckOutcome::new(
        suite,
        "oracle-separation",
        samples as u64,
        format!("oracle finds no isomorphism for sampled cross-rank pairs in IS_{n}"),
        failure,
    ));

    let classes = isn::classify(n, bounds.cap)?;
    let failure =
        (classes.len() != isn::isn_class_count(n)).then(|| format!("{} classes, expected {}", classes.len(), n + 1));
    out.push(CheckOutcome::new(
        suite,
        "class-count",
        size as u64,
        format!("IS_{n} yields {} classes", classes.len()),
        failure,
    ));
    Ok(out)
}

fn tn_relation_classes(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::TnRelationClasses;
    let degrees = bounds.degrees(4);
    let mut out = Vec::new();

    let mut checked = 0u64;
    let mut failure = None;
    for &n in &degrees {
        let all = Transformation::enumerate(n, bounds.cap)?;
        checked += all.len() as u64;
        failure = failure.or_else(|| {
            first_failure(all.clone(), |a| {
                let classes = match tn::sim_a_classes(a, bounds.cap) {
                    Ok(c) => c,
                    Err(e) => return Some(e.to_string()),
                };
                for class in &classes.classes {
                    let predicted = tn::eq1_class_size(a, &class.image).ok()?;
                    if class.members.len() as u64 != predicted {
                        return Some(format!(
                            "a = {a}, xa = {}: class has {} members, product formula gives {predicted}",
                            class.image,
                            class.members.len()
                        ));
                    }
                }
                let multiset = classes.multiset();
                let nn = (n as u128).pow(n as u32);
                let rn = (a.rank() as u128).pow(n as u32);
                if multiset.total_mass() != nn || multiset.class_count() != rn {
                    return Some(format!(
                        "a = {a}: mass {} (want {nn}), classes {} (want {rn})",
                        multiset.total_mass(),
                        multiset.class_count()
                    ));
                }
                None
            })
        });
    }
    out.push(CheckOutcome::new(
        suite,
        "class-sizes",
        checked,
        format!("fibers of x ↦ xa have size ∏ n_a(y_i), n ∈ {degrees:?}"),
        failure,
    ));

    // The definition compares x *_a u with y *_a u for every u, i.e. whole
    // rows of the deformed table.
    let mut checked = 0u64;
    let mut failure = None;
    for &n in degrees.iter().filter(|&&n| n <= 3) {
        let s = FiniteSemigroup::<Transformation>::new(n, bounds.cap)?;
        let size = s.len();
        checked += (size * size * size) as u64;
        failure = failure.or_else(|| {
            first_failure((0..size).collect(), |&a| {
                let table = s.deformed_table(a).ok()?;
                for x in 0..size {
                    for y in 0..size {
                        let by_definition = table.row(x) == table.row(y);
                        let by_lemma = s.compose_idx(x, a) == s.compose_idx(y, a);
                        if by_definition != by_lemma {
                            return Some(format!(
                                "a = {}, x = {}, y = {}",
                                s.element(a),
                                s.element(x),
                                s.element(y)
                            ));
                        }
                    }
                }
                None
            })
        });
    }
    out.push(CheckOutcome::new(
        suite,
        "relation-definition",
        checked,
        "x ~_a y (∀u: x*_a u = y*_a u) iff xa = ya, all a, x, y with n ≤ 3".to_string(),
        failure,
    ));
    Ok(out)
}

fn tn_type_recovery(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::TnTypeRecovery;
    let n = bounds.n.unwrap_or(4);
    let all = Transformation::enumerate(n, bounds.cap)?;
    let checked = all.len() as u64;
    let failure = first_failure(all, |a| {
        let multiset = match tn::sim_a_classes(a, bounds.cap) {
            Ok(c) => c.multiset(),
            Err(e) => return Some(e.to_string()),
        };
        match tn::recover_type_from_class_sizes(&multiset, n) {
            Ok(t) if t == a.type_vector() => None,
            Ok(t) => Some(format!("a = {a}: recovered {t}, actual {}", a.type_vector())),
            Err(e) => Some(format!("a = {a}: {e}")),
        }
    });
    Ok(vec![CheckOutcome::new(
        suite,
        "round-trip",
        checked,
        format!("type of a recovered from class sizes of ~_a for all a ∈ T_{n}"),
        failure,
    )])
}

fn tn_classification(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::TnClassification;
    let n = bounds.n.unwrap_or(3);
    check_cap(n, bounds.table_cap)?;
    let s = FiniteSemigroup::<Transformation>::new(n, bounds.cap)?;
    let size = s.len();
    let mut out = Vec::new();
    let all_pairs: Vec<(usize, usize)> = (0..size).flat_map(|a| (0..size).map(move |b| (a, b))).collect();

    let same_type: Vec<(usize, usize)> = all_pairs
        .iter()
        .copied()
        .filter(|&(a, b)| s.element(a).type_vector() == s.element(b).type_vector())
        .collect();
    let count = same_type.len() as u64;
    let failure = first_failure(same_type, |&(a, b)| {
        let (x, y) = (s.element(a), s.element(b));
        let w = match tn::tn_witness(x, y) {
            Ok(w) => w,
            Err(e) => return Some(format!("{x} -> {y}: {e}")),
        };
        if !w.is_valid() {
            return Some(format!("{x} -> {y}: b ≠ τ·a·π"));
        }
        match w.verify_isomorphism(&s) {
            Ok(None) => None,
            Ok(Some(f)) => Some(format!("{x} -> {y}: {f:?}")),
            Err(e) => Some(e.to_string()),
        }
    });
    out.push(CheckOutcome::new(
        suite,
        "sufficiency",
        count,
        format!("f(x) = π⁻¹xτ⁻¹ is an isomorphism for every same-type pair in T_{n}"),
        failure,
    ));

    let multisets: Vec<tn::ClassSizeMultiset> = s
        .elements()
        .par_iter()
        .map(|a| tn::sim_a_classes(a, bounds.cap).map(|c| c.multiset()))
        .collect::<Result<_>>()?;
    let cross: Vec<(usize, usize)> = all_pairs
        .iter()
        .copied()
        .filter(|&(a, b)| s.element(a).type_vector() != s.element(b).type_vector())
        .collect();
    let count = cross.len() as u64;
    let failure = first_failure(cross, |&(a, b)| {
        (multisets[a] == multisets[b])
            .then(|| format!("{} and {} share the class-size multiset", s.element(a), s.element(b)))
    });
    out.push(CheckOutcome::new(
        suite,
        "separation",
        count,
        format!("different-type pairs in T_{n} have different class-size multisets"),
        failure,
    ));

    let tables: Vec<_> = (0..size)
        .into_par_iter()
        .map(|a| s.deformed_table(a))
        .collect::<Result<_>>()?;
    let count = all_pairs.len() as u64;
    let failure = first_failure(all_pairs, |&(a, b)| {
        oracle_disagreement(&tables[a], &tables[b], s.element(a), s.element(b), bounds.budget)
    });
    out.push(CheckOutcome::new(
        suite,
        "oracle-sweep",
        count,
        format!("oracle agrees with the type criterion on all pairs in T_{n}"),
        failure,
    ));

    let bigger = n + 1;
    if bigger <= bounds.table_cap {
        let samples = bounds.samples.unwrap_or(10);
        let big = FiniteSemigroup::<Transformation>::new(bigger, bounds.cap)?;
        let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
        let pairs: Vec<(usize, usize)> = (0..samples)
            .map(|i| {
                let a = rng.gen_range(0..big.len());
                // alternate same-type and arbitrary partners
                let b = if i % 2 == 0 {
                    let ty = big.element(a).type_vector();
                    let same: Vec<usize> = (0..big.len()).filter(|&b| big.element(b).type_vector() == ty).collect();
                    *same.choose(&mut rng).expect("a itself")
                } else {
                    rng.gen_range(0..big.len())
                };
                (a, b)
            })
            .collect();
        let failure = first_failure(pairs, |&(a, b)| {
            let (ta, tb) = (big.deformed_table(a).ok()?, big.deformed_table(b).ok()?);
            oracle_disagreement(&ta, &tb, big.element(a), big.element(b), bounds.budget)
        });
        out.push(CheckOutcome::new(
            suite,
            "oracle-sample",
            samples as u64,
            format!("oracle agrees with the type criterion on sampled pairs in T_{bigger}"),
            failure,
        ));
    }
    Ok(out)
}

fn oracle_disagreement(
    ta: &crate::table::CayleyTable,
    tb: &crate::table::CayleyTable,
    a: &Transformation,
    b: &Transformation,
    budget: u64,
) -> Option<String> {
    let expected = a.type_vector() == b.type_vector();
    match oracle::find_isomorphism_with_budget(ta, tb, budget) {
        Verdict::Isomorphic { mapping } if expected => {
            (!oracle::is_isomorphism(ta, tb, &mapping)).then(|| format!("{a} vs {b}: unsound mapping"))
        }
        Verdict::NotIsomorphic if !expected => None,
        other => Some(format!("{a} vs {b}: oracle says {other:?}, criterion says {expected}")),
    }
}

fn tn_counting(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::TnCounting;
    let mut out = Vec::new();

    let brute_degrees = bounds.degrees(5);
    let mut checked = 0u64;
    let mut failure = None;
    for &n in &brute_degrees {
        let mut by_type: BTreeMap<_, u64> = BTreeMap::new();
        for a in Transformation::enumerate(n, bounds.cap)? {
            *by_type.entry(a.type_vector()).or_default() += 1;
        }
        for ty in tn::enumerate_types(n)? {
            checked += 1;
            let brute = by_type.get(&ty).copied().unwrap_or(0);
            let formula = tn::count_of_type(&ty)?;
            if brute != formula && failure.is_none() {
                failure = Some(format!("type {ty}: brute force {brute}, formula {formula}"));
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "per-type-counts",
        checked,
        format!("formula matches brute-force counts per type, n ∈ {brute_degrees:?}"),
        failure,
    ));

    let sum_max = bounds.n.map_or(6, |n| n.max(1));
    let mut failure = None;
    for n in 1..=sum_max {
        let total: u128 = tn::enumerate_types(n)?
            .iter()
            .map(|t| tn::count_of_type(t).map(u128::from))
            .sum::<Result<u128>>()?;
        let expected = (n as u128).pow(n as u32);
        if total != expected && failure.is_none() {
            failure = Some(format!("n = {n}: Σ = {total}, n^n = {expected}"));
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "total",
        sum_max as u64,
        format!("Σ over types of the count is n^n for n ≤ {sum_max}"),
        failure,
    ));

    let class_degrees: Vec<usize> = bounds.degrees(4).into_iter().filter(|&n| n <= bounds.cap).collect();
    let mut failure = None;
    for &n in &class_degrees {
        let classes = tn::classify(n, bounds.cap)?;
        let expected = partitions::partition_count(n);
        if classes.len() as u128 != expected && failure.is_none() {
            failure = Some(format!("n = {n}: {} classes, p(n) = {expected}", classes.len()));
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "class-count",
        class_degrees.len() as u64,
        format!("classes of (T_n, *_a) number p(n), n ∈ {class_degrees:?}"),
        failure,
    ));
    Ok(out)
}

fn grid(bound: u64) -> impl Iterator<Item = BicyclicElement> {
    (0..=bound).flat_map(move |m| (0..=bound).map(move |k| BicyclicElement::new(m, k)))
}

fn bicyclic_idempotents(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::BicyclicIdempotents;
    let alpha_bound = bounds.grid.unwrap_or(4);
    let element_bound = 12u64.max(2 * alpha_bound + 4);
    let chain_bound = 8u64;
    let mut out = Vec::new();

    let mut checked = 0u64;
    let mut failure = None;
    for alpha in grid(alpha_bound) {
        for xi in grid(element_bound) {
            checked += 1;
            let direct = bicyclic::is_deformed_idempotent(xi, alpha)?;
            let on_chain = (0..=element_bound).any(|i| bicyclic::epsilon(alpha, i).is_ok_and(|e| e == xi));
            if direct != on_chain && failure.is_none() {
                failure = Some(format!(
                    "α = {alpha}, ξ = {xi}: idempotent {direct}, on chain {on_chain}"
                ));
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "characterization",
        checked,
        format!("b^t a^s is idempotent iff (t,s) = (k+i, m+i); m,k ≤ {alpha_bound}, t,s ≤ {element_bound}"),
        failure,
    ));

    let mut checked = 0u64;
    let mut failure = None;
    for alpha in grid(alpha_bound) {
        for i in 0..=chain_bound {
            for j in 0..=chain_bound {
                checked += 1;
                let (ei, ej) = (bicyclic::epsilon(alpha, i)?, bicyclic::epsilon(alpha, j)?);
                let direct = bicyclic::natural_leq(ei, ej, alpha)?;
                if direct != bicyclic::idempotent_leq(i, j) && failure.is_none() {
                    failure = Some(format!("α = {alpha}, i = {i}, j = {j}: direct order {direct}"));
                }
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "chain-order",
        checked,
        format!("ε_i ≤ ε_j iff i ≥ j by direct products, i,j ≤ {chain_bound}"),
        failure,
    ));
    Ok(out)
}

fn bicyclic_windows(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::BicyclicWindows;
    let bound = bounds.grid.unwrap_or(5);
    let alphas: Vec<BicyclicElement> = grid(bound).collect();
    let mut out = Vec::new();

    let mut failure = None;
    for &alpha in &alphas {
        for i in 0..=2u64 {
            // scan well past the window so stray members would be caught
            let scan = bound + i + 4;
            let members = bicyclic::pq_scan(alpha, i, i, scan)?;
            let formula = bicyclic::pq_cardinality(alpha, i)?;
            let closed = members
                .iter()
                .all(|&x| bicyclic::in_p_closed(x, alpha, i) && bicyclic::in_q_closed(x, alpha, i));
            if (members.len() as u64 != formula || !closed) && failure.is_none() {
                failure = Some(format!(
                    "α = {alpha}, i = {i}: scanned {} members, formula {formula}",
                    members.len()
                ));
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "window-cardinality",
        alphas.len() as u64,
        format!("|P_i ∩ Q_i| = (k+i)(m+i) by direct membership, m,k ≤ {bound}, i ≤ 2"),
        failure,
    ));

    let mut failure = None;
    let mut triples = HashSet::new();
    for &alpha in &alphas {
        let (c11, c10, c01) = bicyclic::cardinality_triple(alpha)?;
        match bicyclic::recover_sandwich(c11, c10, c01) {
            Ok(back) if back == alpha => {}
            other => {
                failure.get_or_insert(format!("α = {alpha}: recovered {other:?}"));
            }
        }
        if !triples.insert((c11, c10, c01)) {
            failure.get_or_insert(format!("α = {alpha}: triple ({c11},{c10},{c01}) repeats"));
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "recovery",
        alphas.len() as u64,
        format!("α recovered from window cardinalities; triples pairwise distinct, m,k ≤ {bound}"),
        failure,
    ));
    Ok(out)
}

fn bicyclic_anti_isomorphism(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::BicyclicAntiIsomorphism;
    let element_bound = bounds.grid.unwrap_or(6);
    let alpha_bound = 3u64;
    let samples = bounds.samples.unwrap_or(10_000);
    let phi = bicyclic::anti_iso_phi;

    let check = |alpha: BicyclicElement, xi: BicyclicElement, eta: BicyclicElement| -> Result<Option<String>> {
        let lhs = phi(xi.deformed_mul(alpha, eta)?);
        let rhs = phi(eta).deformed_mul(alpha.inverse(), phi(xi))?;
        Ok((lhs != rhs).then(|| format!("α = {alpha}, ξ = {xi}, η = {eta}: {lhs} ≠ {rhs}")))
    };

    let mut out = Vec::new();
    let mut checked = 0u64;
    let mut failure = None;
    let elements: Vec<BicyclicElement> = grid(element_bound).collect();
    for alpha in grid(alpha_bound) {
        if phi(alpha) != alpha.inverse() {
            failure.get_or_insert(format!("φ({alpha}) ≠ α⁻¹"));
        }
        for &xi in &elements {
            if phi(phi(xi)) != xi {
                failure.get_or_insert(format!("φ(φ({xi})) ≠ {xi}"));
            }
            for &eta in &elements {
                checked += 1;
                if let Some(f) = check(alpha, xi, eta)? {
                    failure.get_or_insert(f);
                }
            }
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "exhaustive",
        checked,
        format!("φ(ξ *_α η) = φ(η) *_α⁻¹ φ(ξ); exponents ≤ {element_bound}, m,k ≤ {alpha_bound}"),
        failure,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut draw = |limit: u64| BicyclicElement::new(rng.gen_range(0..limit), rng.gen_range(0..limit));
    let mut failure = None;
    for _ in 0..samples {
        let (alpha, xi, eta) = (draw(1 << 20), draw(1 << 30), draw(1 << 30));
        if let Some(f) = check(alpha, xi, eta)? {
            failure.get_or_insert(f);
        }
    }
    out.push(CheckOutcome::new(
        suite,
        "randomized",
        samples as u64,
        format!("same identity on random exponents below 2^30 (seed {})", bounds.seed),
        failure,
    ));
    Ok(out)
}

fn oracle_crosscheck(bounds: &Bounds) -> Result<Vec<CheckOutcome>> {
    let suite = SuiteId::OracleCrosscheck;
    let max_n = bounds.n.unwrap_or(3);
    check_cap(max_n, bounds.table_cap)?;
    let samples = bounds.samples.unwrap_or(100);
    let mut out = Vec::new();

    let mut rng = ChaCha8Rng::seed_from_u64(bounds.seed);
    let mut cases = Vec::with_capacity(samples);
    for _ in 0..samples {
        let n = rng.gen_range(1..=max_n);
        let table = if rng.gen_bool(0.5) {
            let s = FiniteSemigroup::<Transformation>::new(n, bounds.cap)?;
            let a = rng.gen_range(0..s.len());
            (s.element(a).to_string(), s.deformed_table(a)?)
        } else {
            let s = FiniteSemigroup::<PartialInjection>::new(n, bounds.cap)?;
            let a = rng.gen_range(0..s.len());
            (s.element(a).to_string(), s.deformed_table(a)?)
        };
        let mut perm: Vec<usize> = (0..table.1.len()).collect();
        perm.shuffle(&mut rng);
        cases.push((table.0, table.1, perm));
    }
    let failure = first_failure(cases, |(label, table, perm)| {
        let relabelled = table.relabel(perm).ok()?;
        match oracle::find_isomorphism_with_budget(table, &relabelled, bounds.budget) {
            Verdict::Isomorphic { mapping } if oracle::is_isomorphism(table, &relabelled, &mapping) => None,
            other => Some(format!("sandwich {label}: oracle says {other:?} on a relabelled copy")),
        }
    });
    out.push(CheckOutcome::new(
        suite,
        "relabelling",
        samples as u64,
        format!("oracle finds a verified isomorphism to random relabellings, n ≤ {max_n}"),
        failure,
    ));

    let s = FiniteSemigroup::<PartialInjection>::new(max_n, bounds.cap)?;
    let tables: Vec<_> = (0..s.len())
        .into_par_iter()
        .map(|a| s.deformed_table(a))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..s.len()).flat_map(|a| (0..s.len()).map(move |b| (a, b))).collect();
    let count = pairs.len() as u64;
    let failure = first_failure(pairs, |&(a, b)| {
        let expected = s.element(a).rank() == s.element(b).rank();
        match oracle::find_isomorphism_with_budget(&tables[a], &tables[b], bounds.budget) {
            Verdict::Isomorphic { mapping } if expected => (!oracle::is_isomorphism(&tables[a], &tables[b], &mapping))
                .then(|| format!("{} vs {}: unsound mapping", s.element(a), s.element(b))),
            Verdict::NotIsomorphic if !expected => None,
            other => Some(format!(
                "{} vs {}: oracle says {other:?}, rank criterion says {expected}",
                s.element(a),
                s.element(b)
            )),
        }
    });
    out.push(CheckOutcome::new(
        suite,
        "rank-sweep",
        count,
        format!("oracle agrees with the rank criterion on all pairs in IS_{max_n}"),
        failure,
    ));
    Ok(out)
}
