//! Intersection lattice, circuits and broken-circuit complex of an
//! arrangement.
//!
//! The lattice rank of a subset is half the real codimension of its
//! intersection. Everything here is enumerated explicitly; ground sets are
//! at most [`crate::set::MAX_ELEMENTS`] members.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::arrangement::Arrangement;
use crate::set::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("arrangements have different sizes ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("permutation search is limited to {limit} members, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("{0} is not a permutation of the ground set")]
    BadOrder(String),
}

/// Largest ground set for which label permutations are searched.
pub const PERMUTATION_SEARCH_LIMIT: usize = 8;

/// Rank function `r(A) = codim(A) / 2` of an arrangement's matroid.
#[derive(Debug, Clone, Copy)]
pub struct RankOracle<'a> {
    arr: &'a Arrangement,
}

impl<'a> RankOracle<'a> {
    pub fn new(arr: &'a Arrangement) -> Self {
        RankOracle { arr }
    }

    pub fn codim(&self, set: IndexSet) -> usize {
        self.arr.codim_unchecked(set)
    }

    pub fn rank(&self, set: IndexSet) -> usize {
        self.codim(set) / 2
    }

    pub fn is_independent(&self, set: IndexSet) -> bool {
        self.rank(set) == set.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flat {
    pub elements: IndexSet,
    pub rank: usize,
}

/// All flats, sorted by rank and then lexicographically, with the covering
/// relation as index pairs `(lower, upper)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    flats: Vec<Flat>,
    covers: Vec<(usize, usize)>,
}

impl IntersectionLattice {
    pub fn flats(&self) -> &[Flat] {
        &self.flats
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn rank(&self) -> usize {
        self.flats.last().map_or(0, |f| f.rank)
    }

    pub fn of_rank(&self, r: usize) -> impl Iterator<Item = &Flat> {
        self.flats.iter().filter(move |f| f.rank == r)
    }

    /// Number of flats in each rank.
    pub fn rank_sizes(&self) -> Vec<usize> {
        (0..=self.rank()).map(|r| self.of_rank(r).count()).collect()
    }

    /// `mu(bottom, F)` for every flat, in flat order.
    pub fn mobius(&self) -> Vec<i64> {
        let mut mu = vec![0i64; self.flats.len()];
        for (k, f) in self.flats.iter().enumerate() {
            if k == 0 {
                mu[k] = 1;
                continue;
            }
            let below: i64 = self.flats[..k]
                .iter()
                .zip(&mu)
                .filter(|(g, _)| g.elements.is_subset(f.elements) && g.elements != f.elements)
                .map(|(_, m)| m)
                .sum();
            mu[k] = -below;
        }
        mu
    }

    /// Unsigned Whitney numbers of the first kind, one per rank.
    pub fn whitney_numbers(&self) -> Vec<u64> {
        let mu = self.mobius();
        let mut w = vec![0u64; self.rank() + 1];
        for (f, m) in self.flats.iter().zip(mu) {
            w[f.rank] += m.unsigned_abs();
        }
        w
    }
}

/// Closure of `set`: every member whose forms lie in the span of the forms
/// of `set`.
pub fn closure(arr: &Arrangement, set: IndexSet) -> IndexSet {
    let base = arr.codim_unchecked(set);
    (0..arr.len())
        .filter(|&b| set.contains(b) || arr.codim_unchecked(set.with(b)) == base)
        .collect()
}

/// Every closed subset together with its real codimension, breadth first
/// from the closure of the empty set. Works on inadmissible input too.
pub(crate) fn closed_sets(arr: &Arrangement) -> Vec<(IndexSet, usize)> {
    let bottom = closure(arr, IndexSet::EMPTY);
    let mut seen: HashSet<IndexSet> = HashSet::from([bottom]);
    let mut queue = VecDeque::from([bottom]);
    let mut out = Vec::new();
    while let Some(f) = queue.pop_front() {
        out.push((f, arr.codim_unchecked(f)));
        for atom in 0..arr.len() {
            if f.contains(atom) {
                continue;
            }
            let g = closure(arr, f.with(atom));
            if seen.insert(g) {
                queue.push_back(g);
            }
        }
    }
    out
}

pub fn flats(arr: &Arrangement) -> IntersectionLattice {
    let mut flats: Vec<Flat> = closed_sets(arr)
        .into_iter()
        .map(|(elements, codim)| Flat {
            elements,
            rank: codim / 2,
        })
        .collect();
    flats.sort_by(|a, b| a.rank.cmp(&b.rank).then(a.elements.cmp(&b.elements)));
    let mut covers = Vec::new();
    for (i, lo) in flats.iter().enumerate() {
        for (j, hi) in flats.iter().enumerate() {
            if hi.rank == lo.rank + 1 && lo.elements.is_subset(hi.elements) {
                covers.push((i, j));
            }
        }
    }
    IntersectionLattice { flats, covers }
}

/// A minimal dependent set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Circuit(IndexSet);

impl Circuit {
    pub fn new(set: IndexSet) -> Self {
        Circuit(set)
    }

    pub fn set(self) -> IndexSet {
        self.0
    }

    /// Members in increasing order.
    pub fn elements(self) -> Vec<usize> {
        self.0.to_vec()
    }

    pub fn len(self) -> usize {
        self.0.len()
    }

    pub fn is_empty(self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.label())
    }
}

/// All circuits in lexicographic order, found by increasing size with
/// supersets of earlier circuits pruned.
pub fn circuits(arr: &Arrangement) -> Vec<Circuit> {
    let oracle = RankOracle::new(arr);
    let n = arr.len();
    let max_size = (oracle.rank(arr.ground_set()) + 1).min(n);
    let mut found: Vec<IndexSet> = Vec::new();
    for size in 1..=max_size {
        let mut this_size = Vec::new();
        for combo in (0..n).combinations(size) {
            let set: IndexSet = combo.into_iter().collect();
            if found.iter().any(|c| c.is_subset(set)) {
                continue;
            }
            if !oracle.is_independent(set) {
                this_size.push(set);
            }
        }
        found.extend(this_size);
    }
    let mut out: Vec<Circuit> = found.into_iter().map(Circuit).collect();
    out.sort();
    out
}

/// The no-broken-circuit sets, grouped by cardinality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NbcComplex {
    pub by_size: Vec<Vec<IndexSet>>,
}

impl NbcComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }

    pub fn count(&self, size: usize) -> usize {
        self.by_size.get(size).map_or(0, Vec::len)
    }

    pub fn iter(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.by_size.iter().flatten().copied()
    }

    pub fn contains(&self, set: IndexSet) -> bool {
        self.by_size
            .get(set.len())
            .is_some_and(|v| v.contains(&set))
    }
}

/// Checks that `order` lists every member exactly once.
pub fn check_order(order: &[usize], n: usize) -> Result<(), MatroidError> {
    let seen: BTreeSet<usize> = order.iter().copied().collect();
    if order.len() != n || seen.len() != n || seen.iter().any(|&i| i >= n) {
        return Err(MatroidError::BadOrder(format!("{order:?}")));
    }
    Ok(())
}

/// NBC sets for the linear order that lists `order[0]` first.
pub fn nbc_sets_with_order(arr: &Arrangement, order: &[usize]) -> Result<NbcComplex, MatroidError> {
    let n = arr.len();
    check_order(order, n)?;
    let mut position = vec![0; n];
    for (k, &i) in order.iter().enumerate() {
        position[i] = k;
    }
    let broken: Vec<IndexSet> = circuits(arr)
        .into_iter()
        .map(|c| {
            let least = c.set().iter().min_by_key(|&i| position[i]).expect("nonempty circuit");
            c.set().without(least)
        })
        .collect();
    let mut by_size: Vec<Vec<IndexSet>> = vec![Vec::new(); n + 1];
    for set in IndexSet::all_subsets(n) {
        if !broken.iter().any(|b| b.is_subset(set)) {
            by_size[set.len()].push(set);
        }
    }
    while by_size.len() > 1 && by_size.last().is_some_and(Vec::is_empty) {
        by_size.pop();
    }
    for level in &mut by_size {
        level.sort();
    }
    Ok(NbcComplex { by_size })
}

pub fn nbc_sets(arr: &Arrangement) -> NbcComplex {
    let order: Vec<usize> = (0..arr.len()).collect();
    nbc_sets_with_order(arr, &order).expect("identity order")
}

/// Ranks of the cohomology groups `H^0 .. H^r`, `r` the lattice rank.
pub fn betti_vector(arr: &Arrangement) -> Vec<usize> {
    let rank = RankOracle::new(arr).rank(arr.ground_set());
    let nbc = nbc_sets(arr);
    (0..=rank).map(|p| nbc.count(p)).collect()
}

/// Cross-checks [`betti_vector`] against the Whitney numbers of the lattice.
pub fn whitney_check(arr: &Arrangement) -> bool {
    let whitney: Vec<usize> = flats(arr)
        .whitney_numbers()
        .into_iter()
        .map(|w| w as usize)
        .collect();
    whitney == betti_vector(arr)
}

fn circuit_set(arr: &Arrangement) -> BTreeSet<IndexSet> {
    circuits(arr).into_iter().map(Circuit::set).collect()
}

/// Equality of circuit sets under the identity labeling.
pub fn same_labeled_matroid(a: &Arrangement, b: &Arrangement) -> Result<bool, MatroidError> {
    if a.len() != b.len() {
        return Err(MatroidError::SizeMismatch(a.len(), b.len()));
    }
    Ok(circuit_set(a) == circuit_set(b))
}

/// A relabeling `perm` (member `i` of `a` goes to `perm[i]` of `b`) under
/// which the two matroids agree, if one exists.
pub fn matroid_isomorphism(
    a: &Arrangement,
    b: &Arrangement,
) -> Result<Option<Vec<usize>>, MatroidError> {
    let n = a.len();
    if n != b.len() {
        return Err(MatroidError::SizeMismatch(n, b.len()));
    }
    if n > PERMUTATION_SEARCH_LIMIT {
        return Err(MatroidError::TooLarge {
            n,
            limit: PERMUTATION_SEARCH_LIMIT,
        });
    }
    let ca = circuit_set(a);
    let cb = circuit_set(b);
    if ca.len() != cb.len() {
        return Ok(None);
    }
    for perm in (0..n).permutations(n) {
        let mapped: BTreeSet<IndexSet> = ca
            .iter()
            .map(|c| c.iter().map(|i| perm[i]).collect())
            .collect();
        if mapped == cb {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::restrict;
    use crate::fixtures;

    fn set(v: &[usize]) -> IndexSet {
        v.iter().map(|i| i - 1).collect()
    }

    fn labels(v: &[IndexSet]) -> Vec<String> {
        v.iter().map(|s| s.label()).collect()
    }

    #[test]
    fn closure_cases() {
        let b = fixtures::example_b();
        assert_eq!(closure(&b, IndexSet::EMPTY), IndexSet::EMPTY);
        assert_eq!(closure(&b, set(&[1, 2])), set(&[1, 2, 3, 4]));
        let bp = fixtures::example_b_prime();
        assert_eq!(closure(&bp, set(&[1])), set(&[1]));
    }

    #[test]
    fn lattice_u24() {
        let l = flats(&fixtures::example_b_prime());
        assert_eq!(l.rank_sizes(), vec![1, 4, 1]);
        let atoms: Vec<IndexSet> = l.of_rank(1).map(|f| f.elements).collect();
        assert_eq!(labels(&atoms), ["1", "2", "3", "4"]);
        assert_eq!(l.flats().last().unwrap().elements, set(&[1, 2, 3, 4]));
        assert_eq!(l.covers().len(), 8);
        assert_eq!(l.mobius(), vec![1, -1, -1, -1, -1, 3]);
    }

    #[test]
    fn lattice_single_and_u35() {
        let single = crate::arrangement::parse_arrangement(
            r#"{"dim": 2, "subspaces": [{"name": "H1", "forms": [["1","0"],["0","1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(flats(&single).rank_sizes(), vec![1, 1]);
        assert_eq!(flats(&fixtures::thm32_bhat()).rank_sizes(), vec![1, 5, 10, 1]);
    }

    #[test]
    fn circuit_cases() {
        let c: Vec<String> = circuits(&fixtures::example_b_prime())
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(c, ["123", "124", "134", "234"]);

        // every 4-subset of the five members
        let c = circuits(&fixtures::thm32_bhat());
        assert_eq!(c.len(), 5);
        assert!(c.iter().all(|c| c.len() == 4));

        let indep = crate::arrangement::parse_arrangement(
            r#"{"dim": 4, "subspaces": [
                {"name": "H1", "forms": [["1","0","0","0"],["0","1","0","0"]]},
                {"name": "H2", "forms": [["0","0","1","0"],["0","0","0","1"]]}]}"#,
        )
        .unwrap();
        assert!(circuits(&indep).is_empty());
        assert_eq!(nbc_sets(&indep).counts(), vec![1, 2, 1]);
    }

    #[test]
    fn nbc_cases() {
        for arr in [fixtures::example_b(), fixtures::example_b_prime()] {
            let nbc = nbc_sets(&arr);
            let all: Vec<IndexSet> = nbc.iter().collect();
            assert_eq!(labels(&all), ["", "1", "2", "3", "4", "12", "13", "14"]);
            assert_eq!(betti_vector(&arr), vec![1, 4, 3]);
            assert!(whitney_check(&arr));
        }
        let bhat = fixtures::thm32_bhat();
        let nbc = nbc_sets(&bhat);
        assert_eq!(nbc.counts(), vec![1, 5, 10, 6]);
        assert!(nbc.by_size[3].iter().all(|s| s.contains(0)));
        assert_eq!(betti_vector(&bhat), vec![1, 5, 10, 6]);
        assert!(whitney_check(&bhat));
    }

    #[test]
    fn nbc_order_override() {
        let arr = fixtures::example_b();
        let nbc = nbc_sets_with_order(&arr, &[3, 2, 1, 0]).unwrap();
        assert_eq!(nbc.counts(), vec![1, 4, 3]);
        assert!(nbc.contains(set(&[1, 4])));
        assert!(!nbc.contains(set(&[1, 2])));
        assert!(nbc_sets_with_order(&arr, &[0, 0, 1, 2]).is_err());
    }

    #[test]
    fn single_subspace_betti() {
        let single = crate::arrangement::parse_arrangement(
            r#"{"dim": 2, "subspaces": [{"name": "H1", "forms": [["1","0"],["0","1"]]}]}"#,
        )
        .unwrap();
        assert_eq!(betti_vector(&single), vec![1, 1]);
        assert!(whitney_check(&single));
    }

    #[test]
    fn matroid_comparisons() {
        let b = fixtures::example_b();
        let bp = fixtures::example_b_prime();
        assert_eq!(same_labeled_matroid(&b, &bp), Ok(true));
        assert_eq!(same_labeled_matroid(&b, &b), Ok(true));
        let r = restrict(&fixtures::thm32_bhat(), 2).unwrap();
        assert_eq!(same_labeled_matroid(&b, &r), Ok(true));
        assert_eq!(
            same_labeled_matroid(&b, &fixtures::thm32_bhat()),
            Err(MatroidError::SizeMismatch(4, 5))
        );
        assert!(matroid_isomorphism(&b, &r).unwrap().is_some());
    }
}
