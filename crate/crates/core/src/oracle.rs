//! Brute-force isomorphism search between finite Cayley tables.
//!
//! This module knows nothing about transformations: it only sees index
//! tables, so it can check the classification criteria independently of the
//! constructions that prove them.
//!
//! The search first compares [`Fingerprint`]s, then refines element colours
//! (an isomorphism-invariant labelling) and backtracks over assignments,
//! smallest colour class first, closing each assignment under products:
//! once `h(x)` and `h(y)` are fixed, `h(xy)` is forced to `h(x)h(y)`.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::table::CayleyTable;

/// Default number of candidate assignments tried before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Isomorphism-invariant summary of a table. Equal fingerprints are
/// necessary, not sufficient, for isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Fingerprint {
    pub size: usize,
    pub idempotents: usize,
    /// Sorted `(|x·S|, |S·x|, x idempotent)` over all elements.
    pub profiles: Vec<(usize, usize, bool)>,
    /// Sorted sizes of the classes of elements with identical rows.
    pub row_classes: Vec<usize>,
}

fn left_image_size(t: &CayleyTable, x: usize, seen: &mut [u32], stamp: u32) -> usize {
    let mut count = 0;
    for &p in t.row(x) {
        if seen[p as usize] != stamp {
            seen[p as usize] = stamp;
            count += 1;
        }
    }
    count
}

fn right_image_size(t: &CayleyTable, x: usize, seen: &mut [u32], stamp: u32) -> usize {
    let mut count = 0;
    for y in 0..t.len() {
        let p = t.product(y, x);
        if seen[p] != stamp {
            seen[p] = stamp;
            count += 1;
        }
    }
    count
}

/// Per-element `(|x·S|, |S·x|, idempotent, |row class of x|)`.
fn element_invariants(t: &CayleyTable) -> Vec<(usize, usize, bool, usize)> {
    let n = t.len();
    let mut seen = vec![0u32; n];
    let mut stamp = 0;
    let mut rows: HashMap<&[u32], usize> = HashMap::new();
    for x in 0..n {
        *rows.entry(t.row(x)).or_default() += 1;
    }
    (0..n)
        .map(|x| {
            stamp += 1;
            let left = left_image_size(t, x, &mut seen, stamp);
            stamp += 1;
            let right = right_image_size(t, x, &mut seen, stamp);
            (left, right, t.product(x, x) == x, rows[t.row(x)])
        })
        .collect()
}

pub fn fingerprint(t: &CayleyTable) -> Fingerprint {
    let invariants = element_invariants(t);
    let mut profiles: Vec<_> = invariants.iter().map(|&(l, r, e, _)| (l, r, e)).collect();
    profiles.sort_unstable();
    let mut rows: HashMap<&[u32], usize> = HashMap::new();
    for x in 0..t.len() {
        *rows.entry(t.row(x)).or_default() += 1;
    }
    let mut row_classes: Vec<usize> = rows.into_values().collect();
    row_classes.sort_unstable();
    Fingerprint {
        size: t.len(),
        idempotents: invariants.iter().filter(|v| v.2).count(),
        profiles,
        row_classes,
    }
}

/// Outcome of [`find_isomorphism`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    /// `mapping[i]` is the image of element `i`; verified on every pair.
    Isomorphic {
        mapping: Vec<usize>,
    },
    NotIsomorphic,
    BudgetExceeded {
        nodes: u64,
    },
}

impl Verdict {
    pub fn mapping(&self) -> Option<&[usize]> {
        match self {
            Verdict::Isomorphic { mapping } => Some(mapping),
            _ => None,
        }
    }

    pub fn is_isomorphic(&self) -> bool {
        matches!(self, Verdict::Isomorphic { .. })
    }
}

/// `h` is a bijection with `h(xy) = h(x)h(y)` for every pair.
pub fn is_isomorphism(s: &CayleyTable, t: &CayleyTable, h: &[usize]) -> bool {
    let n = s.len();
    if t.len() != n || h.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &v in h {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return false;
        }
    }
    (0..n).all(|x| (0..n).all(|y| h[s.product(x, y)] == t.product(h[x], h[y])))
}

// One round of joint refinement: the new colour of x is its old colour plus
// the sorted multiset of (colour y, colour xy, colour yx) over all y.
fn refine_once(s: &CayleyTable, t: &CayleyTable, cs: &[usize], ct: &[usize]) -> (Vec<usize>, Vec<usize>) {
    // colours stay below 3·|S| < 2^21, so a triple packs into a u64
    let pack = |a: usize, b: usize, c: usize| ((a as u64) << 42) | ((b as u64) << 21) | c as u64;
    let signature = |table: &CayleyTable, colours: &[usize]| -> Vec<Vec<u64>> {
        (0..table.len())
            .map(|x| {
                let mut around = Vec::with_capacity(table.len() + 1);
                around.push(colours[x] as u64);
                around.extend(
                    (0..table.len())
                        .map(|y| pack(colours[y], colours[table.product(x, y)], colours[table.product(y, x)])),
                );
                around[1..].sort_unstable();
                around
            })
            .collect()
    };
    let (sig_s, sig_t) = (signature(s, cs), signature(t, ct));
    // ids in order of first appearance, shared by both tables
    let mut ids: HashMap<&[u64], usize> = HashMap::with_capacity(sig_s.len());
    let mut out = (Vec::with_capacity(sig_s.len()), Vec::with_capacity(sig_t.len()));
    for (sigs, new) in [(&sig_s, &mut out.0), (&sig_t, &mut out.1)] {
        for k in sigs {
            let next = ids.len();
            new.push(*ids.entry(k.as_slice()).or_insert(next));
        }
    }
    out
}

// Refines until stable. Colour ids are comparable across the two tables;
// None when their colour histograms differ.
fn refine(
    s: &CayleyTable,
    t: &CayleyTable,
    mut cs: Vec<usize>,
    mut ct: Vec<usize>,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let mut classes = count_distinct(&cs);
    loop {
        if histogram(&cs) != histogram(&ct) {
            return None;
        }
        (cs, ct) = refine_once(s, t, &cs, &ct);
        let refined = count_distinct(&cs);
        if refined == classes {
            break;
        }
        classes = refined;
    }
    (histogram(&cs) == histogram(&ct)).then_some((cs, ct))
}

fn refined_colours(s: &CayleyTable, t: &CayleyTable) -> Option<(Vec<usize>, Vec<usize>)> {
    let (cs, ct) = relabel_jointly(element_invariants(s), element_invariants(t));
    refine(s, t, cs, ct)
}

fn relabel_jointly<K: Ord + Clone>(a: Vec<K>, b: Vec<K>) -> (Vec<usize>, Vec<usize>) {
    let mut ids: BTreeMap<K, usize> = BTreeMap::new();
    for key in a.iter().chain(b.iter()) {
        ids.entry(key.clone()).or_insert(0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i;
    }
    (a.iter().map(|k| ids[k]).collect(), b.iter().map(|k| ids[k]).collect())
}

fn count_distinct(colours: &[usize]) -> usize {
    let mut sorted = colours.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn histogram(colours: &[usize]) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for &c in colours {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

// Whether swapping a and b is an automorphism of t.
fn swap_is_automorphism(t: &CayleyTable, a: usize, b: usize) -> bool {
    let n = t.len();
    let sw = |v: usize| {
        if v == a {
            b
        } else if v == b {
            a
        } else {
            v
        }
    };
    // rows and columns of a and b first: most non-twins fail here
    (0..n).all(|z| sw(t.product(a, z)) == t.product(b, sw(z)) && sw(t.product(z, a)) == t.product(sw(z), b))
        && (0..n).all(|y| (0..n).all(|z| sw(t.product(y, z)) == t.product(sw(y), sw(z))))
}

// Twin classes of t: elements related by a chain of automorphic swaps.
fn twin_classes(t: &CayleyTable, colours: &[usize]) -> Vec<usize> {
    let n = t.len();
    let mut class = vec![usize::MAX; n];
    let mut representatives: Vec<usize> = Vec::new();
    for x in 0..n {
        let found = representatives
            .iter()
            .copied()
            .find(|&r| colours[r] == colours[x] && swap_is_automorphism(t, r, x));
        class[x] = match found {
            Some(r) => class[r],
            None => {
                representatives.push(x);
                x
            }
        };
    }
    class
}

struct Search<'a> {
    s: &'a CayleyTable,
    t: &'a CayleyTable,
    colour_s: Vec<usize>,
    colour_t: Vec<usize>,
    twins_t: Vec<usize>,
    forward: Vec<Option<usize>>,
    backward: Vec<Option<usize>>,
    assigned: Vec<usize>,
    nodes: u64,
    budget: u64,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    fn set(&mut self, x: usize, y: usize) -> bool {
        match (self.forward[x], self.backward[y]) {
            (Some(v), _) => v == y,
            (None, Some(_)) => false,
            (None, None) => {
                if self.colour_s[x] != self.colour_t[y] {
                    return false;
                }
                self.forward[x] = Some(y);
                self.backward[y] = Some(x);
                self.assigned.push(x);
                true
            }
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.assigned.len() > mark {
            let x = self.assigned.pop().expect("above mark");
            let y = self.forward[x].take().expect("assigned");
            self.backward[y] = None;
        }
    }

    // Assigns x -> y and closes under products with everything assigned.
    fn assign(&mut self, x: usize, y: usize) -> bool {
        let start = self.assigned.len();
        if !self.set(x, y) {
            return false;
        }
        let mut cursor = start;
        while cursor < self.assigned.len() {
            let u = self.assigned[cursor];
            let hu = self.forward[u].expect("assigned");
            let mut w_index = 0;
            while w_index <= cursor {
                let w = self.assigned[w_index];
                let hw = self.forward[w].expect("assigned");
                if !self.set(self.s.product(u, w), self.t.product(hu, hw))
                    || !self.set(self.s.product(w, u), self.t.product(hw, hu))
                {
                    return false;
                }
                w_index += 1;
            }
            cursor += 1;
        }
        true
    }

    // Gives each pair assigned since `mark` a fresh shared colour, then
    // refines. False when the refined colourings disagree.
    fn individualize(&mut self, mark: usize) -> bool {
        let fresh = 1 + self.colour_s.iter().chain(&self.colour_t).copied().max().unwrap_or(0);
        for (i, &x) in self.assigned[mark..].iter().enumerate() {
            let y = self.forward[x].expect("assigned");
            self.colour_s[x] = fresh + i;
            self.colour_t[y] = fresh + i;
        }
        match refine(
            self.s,
            self.t,
            std::mem::take(&mut self.colour_s),
            std::mem::take(&mut self.colour_t),
        ) {
            Some((cs, ct)) => {
                self.colour_s = cs;
                self.colour_t = ct;
                true
            }
            None => false,
        }
    }

    // Assigns elements whose colour class is a singleton, repeatedly.
    fn settle_forced(&mut self) -> bool {
        loop {
            let mark = self.assigned.len();
            let counts = histogram(&self.colour_s);
            let mut target: HashMap<usize, usize> = HashMap::new();
            for (y, &c) in self.colour_t.iter().enumerate() {
                if counts.get(&c) == Some(&1) && self.backward[y].is_none() {
                    target.insert(c, y);
                }
            }
            for x in 0..self.s.len() {
                if self.forward[x].is_none() && counts[&self.colour_s[x]] == 1 {
                    let y = target[&self.colour_s[x]];
                    if !self.assign(x, y) {
                        return false;
                    }
                }
            }
            if self.assigned.len() == mark {
                return true;
            }
            if !self.individualize(mark) {
                return false;
            }
        }
    }

    fn run(&mut self) -> Step {
        if !self.settle_forced() {
            return Step::Exhausted;
        }
        let counts = histogram(&self.colour_s);
        let Some(x) = (0..self.s.len())
            .filter(|&x| self.forward[x].is_none())
            .min_by_key(|&x| (counts[&self.colour_s[x]], self.colour_s[x], x))
        else {
            let mapping: Vec<usize> = self.forward.iter().map(|v| v.expect("complete")).collect();
            return if is_isomorphism(self.s, self.t, &mapping) {
                Step::Found
            } else {
                Step::Exhausted
            };
        };
        let saved = (self.colour_s.clone(), self.colour_t.clone());
        // unassigned twins are interchangeable, so one per class suffices
        let mut tried: Vec<usize> = Vec::new();
        for y in 0..self.t.len() {
            if self.backward[y].is_some() || saved.1[y] != saved.0[x] || tried.contains(&self.twins_t[y]) {
                continue;
            }
            tried.push(self.twins_t[y]);
            self.nodes += 1;
            if self.nodes > self.budget {
                return Step::OutOfBudget;
            }
            let mark = self.assigned.len();
            if self.assign(x, y) && self.individualize(mark) {
                match self.run() {
                    Step::Exhausted => {}
                    done => return done,
                }
            }
            self.undo(mark);
            self.colour_s.clone_from(&saved.0);
            self.colour_t.clone_from(&saved.1);
        }
        Step::Exhausted
    }
}

/// [`find_isomorphism_with_budget`] with [`DEFAULT_NODE_BUDGET`].
pub fn find_isomorphism(s: &CayleyTable, t: &CayleyTable) -> Verdict {
    find_isomorphism_with_budget(s, t, DEFAULT_NODE_BUDGET)
}

/// Searches for an isomorphism `s → t`. A returned mapping has been checked
/// on every pair of elements.
///
/// Each branch assigns one element of the smallest open colour class, closes
/// the assignment under products and refines colours again with the
/// assigned pairs singled out; singleton classes are then forced.
pub fn find_isomorphism_with_budget(s: &CayleyTable, t: &CayleyTable, budget: u64) -> Verdict {
    if s.len() != t.len() || fingerprint(s) != fingerprint(t) {
        return Verdict::NotIsomorphic;
    }
    let Some((colour_s, colour_t)) = refined_colours(s, t) else {
        return Verdict::NotIsomorphic;
    };
    let n = s.len();
    let twins_t = twin_classes(t, &colour_t);
    let mut search = Search {
        s,
        t,
        colour_s,
        colour_t,
        twins_t,
        forward: vec![None; n],
        backward: vec![None; n],
        assigned: Vec::with_capacity(n),
        nodes: 0,
        budget,
    };
    match search.run() {
        Step::Found => Verdict::Isomorphic {
            mapping: search.forward.iter().map(|v| v.expect("complete")).collect(),
        },
        Step::Exhausted => Verdict::NotIsomorphic,
        Step::OutOfBudget => Verdict::BudgetExceeded { nodes: search.nodes },
    }
}

/// Anti-isomorphisms `s → t` are isomorphisms `s → tᵀ`.
pub fn find_anti_isomorphism(s: &CayleyTable, t: &CayleyTable) -> Verdict {
    find_isomorphism(s, &t.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{MapElement, PartialInjection, Transformation};
    use crate::table::FiniteSemigroup;

    fn table(rows: &[&[usize]]) -> CayleyTable {
        let labels = (0..rows.len()).map(|i| format!("e{i}")).collect();
        CayleyTable::new(labels, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn identical_tables_map_identically_or_validly() {
        let s = FiniteSemigroup::<Transformation>::new(2, 5).unwrap();
        let t = s.plain_table().unwrap();
        let v = find_isomorphism(&t, &t);
        assert!(is_isomorphism(&t, &t, v.mapping().unwrap()));
    }

    #[test]
    fn different_ranks_in_is2_are_separated() {
        let s = FiniteSemigroup::<PartialInjection>::new(2, 5).unwrap();
        let rank1 = s.index_of(&"[2,-]".parse().unwrap()).unwrap();
        let rank2 = s.index_of(&PartialInjection::identity(2).unwrap()).unwrap();
        let (a, b) = (s.deformed_table(rank1).unwrap(), s.deformed_table(rank2).unwrap());
        assert_ne!(fingerprint(&a), fingerprint(&b));
        assert_eq!(find_isomorphism(&a, &b), Verdict::NotIsomorphic);
    }

    #[test]
    fn same_rank_in_is2_share_fingerprints() {
        let s = FiniteSemigroup::<PartialInjection>::new(2, 5).unwrap();
        let a = s.index_of(&"[2,-]".parse().unwrap()).unwrap();
        let b = s.index_of(&"[-,1]".parse().unwrap()).unwrap();
        let (ta, tb) = (s.deformed_table(a).unwrap(), s.deformed_table(b).unwrap());
        assert_eq!(fingerprint(&ta), fingerprint(&tb));
        assert!(find_isomorphism(&ta, &tb).is_isomorphic());
    }

    #[test]
    fn same_type_in_t3_is_found() {
        let s = FiniteSemigroup::<Transformation>::new(3, 5).unwrap();
        let a = s.index_of(&"[1,1,2]".parse().unwrap()).unwrap();
        let b = s.index_of(&"[3,2,2]".parse().unwrap()).unwrap();
        let (ta, tb) = (s.deformed_table(a).unwrap(), s.deformed_table(b).unwrap());
        let v = find_isomorphism(&ta, &tb);
        assert!(is_isomorphism(&ta, &tb, v.mapping().unwrap()));
    }

    #[test]
    fn fingerprint_detects_idempotent_counts() {
        let left_zero = table(&[&[0, 0], &[1, 1]]);
        let null = table(&[&[0, 0], &[0, 0]]);
        assert_ne!(fingerprint(&left_zero).idempotents, fingerprint(&null).idempotents);
        assert_eq!(find_isomorphism(&left_zero, &null), Verdict::NotIsomorphic);
    }

    #[test]
    fn size_mismatch_is_immediately_negative() {
        let one = table(&[&[0]]);
        let two = table(&[&[0, 0], &[1, 1]]);
        assert_eq!(find_isomorphism(&one, &two), Verdict::NotIsomorphic);
    }

    #[test]
    fn budget_is_reported() {
        let s = FiniteSemigroup::<Transformation>::new(3, 5).unwrap();
        let id = s.index_of(&Transformation::identity(3).unwrap()).unwrap();
        let t = s.deformed_table(id).unwrap();
        assert!(matches!(
            find_isomorphism_with_budget(&t, &t, 0),
            Verdict::BudgetExceeded { .. }
        ));
    }

    #[test]
    fn is_isomorphism_rejects_bad_maps() {
        let t = table(&[&[0, 0], &[1, 1]]);
        assert!(is_isomorphism(&t, &t, &[0, 1]));
        assert!(is_isomorphism(&t, &t, &[1, 0]));
        assert!(!is_isomorphism(&t, &t, &[0, 0]));
        let null = table(&[&[0, 0], &[0, 0]]);
        assert!(!is_isomorphism(&t, &null, &[0, 1]));
    }

    #[test]
    fn anti_isomorphism_via_transpose() {
        // left-zero and right-zero bands on two elements are anti-isomorphic
        let left_zero = table(&[&[0, 0], &[1, 1]]);
        let right_zero = table(&[&[0, 1], &[0, 1]]);
        assert_eq!(find_isomorphism(&left_zero, &right_zero), Verdict::NotIsomorphic);
        assert!(find_anti_isomorphism(&left_zero, &right_zero).is_isomorphic());
    }
}
