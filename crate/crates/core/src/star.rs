//! Star commutators: commutators `[a, b]` of elements of coprime orders,
//! iterated.
//!
//! * Every element is a `γ*_1`- and a `δ*_0`-commutator.
//! * For `k ≥ 2`, `x` is a `γ*_k`-commutator when `x = [a, b]` with `a` a
//!   power of a `γ*_{k-1}`-commutator, `b` arbitrary and `gcd(|a|, |b|) = 1`.
//! * For `k ≥ 1`, `x` is a `δ*_k`-commutator when `x = [a, b]` with both `a`
//!   and `b` powers of `δ*_{k-1}`-commutators and `gcd(|a|, |b|) = 1`.
//!
//! All of these sets are unions of conjugacy classes, so pair scans only
//! iterate over one left factor per class and close the result under
//! conjugation afterwards. Sets are memoized on the group.

use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

pub use crate::group::Family;
use crate::group::{FiniteGroup, PrimeSet};
use crate::perm::{gcd, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StarError {
    #[error("gamma star commutators start at level 1")]
    GammaLevelZero,
}

/// A subset of a group's elements, by index.
#[derive(Clone)]
pub struct ElementSet {
    group: FiniteGroup,
    members: FixedBitSet,
    label: String,
    normal: bool,
}

impl ElementSet {
    pub fn new(group: &FiniteGroup, members: FixedBitSet, label: impl Into<String>) -> Self {
        assert_eq!(members.len(), group.order(), "bit-set sized for another group");
        ElementSet {
            group: group.clone(),
            members,
            label: label.into(),
            normal: false,
        }
    }

    pub fn from_elements(group: &FiniteGroup, elements: &[Permutation], label: impl Into<String>) -> Option<Self> {
        let mut members = FixedBitSet::with_capacity(group.order());
        for p in elements {
            members.insert(group.index_of(p)?);
        }
        Some(ElementSet::new(group, members, label))
    }

    fn flagged_normal(mut self) -> Self {
        debug_assert!(self.is_conjugation_closed());
        self.normal = true;
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn members(&self) -> &FixedBitSet {
        &self.members
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when the set was produced as a union of conjugacy classes.
    pub fn is_flagged_normal(&self) -> bool {
        self.normal
    }

    pub fn len(&self) -> usize {
        self.members.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_clear()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }

    pub fn contains_element(&self, p: &Permutation) -> bool {
        self.group.index_of(p).is_some_and(|i| self.contains(i))
    }

    pub fn is_trivial(&self) -> bool {
        self.members.ones().all(|i| i == FiniteGroup::IDENTITY)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.ones()
    }

    pub fn elements(&self) -> impl Iterator<Item = &Permutation> + '_ {
        self.members.ones().map(|i| self.group.element(i))
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Checked directly against the group generators.
    pub fn is_conjugation_closed(&self) -> bool {
        let gens = self.group.generator_indices();
        self.members.ones().all(|x| {
            gens.iter()
                .all(|&g| self.members.contains(self.group.conjugate_index(x, g)))
        })
    }

    pub fn order_primes(&self) -> PrimeSet {
        let mut primes = PrimeSet::new();
        for i in self.members.ones() {
            primes.insert_divisors_of(self.group.element_order(i));
        }
        primes
    }

    pub fn generated_subgroup(&self) -> FiniteGroup {
        self.group.subgroup_generated_by(&self.members)
    }
}

impl PartialEq for ElementSet {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_elements(&other.group) && self.members == other.members
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ElementSet")
            .field("label", &self.label)
            .field("len", &self.len())
            .field("group_order", &self.group.order())
            .finish()
    }
}

/// All non-negative powers of members of `set`; empty for an empty set.
pub fn power_closure(set: &ElementSet) -> ElementSet {
    let g = &set.group;
    let bits = power_closure_bits(g, &set.members);
    let label = format!("powers of {}", set.label);
    let out = ElementSet::new(g, bits, label);
    if set.normal {
        out.flagged_normal()
    } else {
        out
    }
}

fn power_closure_bits(g: &FiniteGroup, set: &FixedBitSet) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(g.order());
    for s in set.ones() {
        // powers of a power of t are already present
        if out.contains(s) {
            continue;
        }
        let mut p = s;
        loop {
            out.insert(p);
            if p == FiniteGroup::IDENTITY {
                break;
            }
            p = g.mul(p, s);
        }
        out.insert(FiniteGroup::IDENTITY);
    }
    out
}

/// `{[a, b] : a ∈ left, b ∈ right, gcd(|a|, |b|) = 1}` for conjugation
/// closed `left` and `right`.
fn coprime_commutators(g: &FiniteGroup, left: &FixedBitSet, right: &FixedBitSet) -> FixedBitSet {
    let orders = g.element_orders();
    let mut by_order: Vec<(u64, Vec<usize>)> = Vec::new();
    for b in right.ones() {
        match by_order.iter_mut().find(|(o, _)| *o == orders[b]) {
            Some((_, v)) => v.push(b),
            None => by_order.push((orders[b], vec![b])),
        }
    }
    let reps: Vec<usize> = g
        .conjugacy_classes()
        .iter()
        .map(|c| c[0] as usize)
        .filter(|&r| left.contains(r))
        .collect();
    let n = g.order();
    let found = reps
        .par_iter()
        .map(|&a| {
            let mut bits = FixedBitSet::with_capacity(n);
            for (o, bs) in &by_order {
                if gcd(orders[a], *o) != 1 {
                    continue;
                }
                for &b in bs {
                    bits.insert(g.commutator_index(a, b));
                }
            }
            bits
        })
        .reduce(
            || FixedBitSet::with_capacity(n),
            |mut x, y| {
                x.union_with(&y);
                x
            },
        );
    g.conjugation_closure(&found)
}

fn all_elements(g: &FiniteGroup) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    bits.insert_range(..);
    bits
}

fn delta_bits(g: &FiniteGroup, k: usize) -> Arc<FixedBitSet> {
    if let Some(hit) = g.star_memo_get((Family::Delta, k)) {
        return hit;
    }
    let bits = if k == 0 {
        all_elements(g)
    } else {
        let prev = delta_bits(g, k - 1);
        let y = power_closure_bits(g, &prev);
        coprime_commutators(g, &y, &y)
    };
    g.star_memo_insert((Family::Delta, k), bits)
}

fn gamma_bits(g: &FiniteGroup, k: usize) -> Arc<FixedBitSet> {
    debug_assert!(k >= 1);
    if let Some(hit) = g.star_memo_get((Family::Gamma, k)) {
        return hit;
    }
    let bits = if k == 1 {
        all_elements(g)
    } else {
        let prev = gamma_bits(g, k - 1);
        let x = power_closure_bits(g, &prev);
        coprime_commutators(g, &x, &all_elements(g))
    };
    g.star_memo_insert((Family::Gamma, k), bits)
}

/// The set of `δ*_k`-commutators of `group`.
pub fn delta_star_set(group: &FiniteGroup, k: usize) -> ElementSet {
    let bits = delta_bits(group, k);
    ElementSet::new(group, (*bits).clone(), format!("delta*_{k} set")).flagged_normal()
}

/// The set of `γ*_k`-commutators of `group`, `k ≥ 1`.
pub fn gamma_star_set(group: &FiniteGroup, k: usize) -> Result<ElementSet, StarError> {
    if k == 0 {
        return Err(StarError::GammaLevelZero);
    }
    let bits = gamma_bits(group, k);
    Ok(ElementSet::new(group, (*bits).clone(), format!("gamma*_{k} set")).flagged_normal())
}

pub fn star_set(group: &FiniteGroup, family: Family, k: usize) -> Result<ElementSet, StarError> {
    match family {
        Family::Gamma => gamma_star_set(group, k),
        Family::Delta => Ok(delta_star_set(group, k)),
    }
}

/// `γ*_k(G)` or `δ*_k(G)`: the subgroup generated by the star set.
pub fn star_subgroup(group: &FiniteGroup, family: Family, k: usize) -> Result<FiniteGroup, StarError> {
    let set = star_set(group, family, k)?;
    let sub = set.generated_subgroup();
    assert!(group.is_normal_subgroup(&sub), "star subgroup must be normal");
    Ok(sub)
}

/// Smallest `k ≤ k_max` with `δ*_k(G) = 1`.
///
/// Returns `None` early once two consecutive `δ*`-sets coincide without
/// being trivial: the recursion is then stuck at that set. The search starts
/// at level 0, so the trivial group reports `Some(0)`.
pub fn min_delta_trivial_level(group: &FiniteGroup, k_max: usize) -> Option<usize> {
    let mut prev: Option<Arc<FixedBitSet>> = None;
    for k in 0..=k_max {
        let bits = delta_bits(group, k);
        if bits.ones().all(|i| i == FiniteGroup::IDENTITY) {
            return Some(k);
        }
        if prev.as_deref() == Some(&*bits) {
            return None;
        }
        prev = Some(bits);
    }
    None
}

/// Primes dividing the order of some `δ*_k`-commutator.
pub fn commutator_order_primes(group: &FiniteGroup, k: usize) -> PrimeSet {
    delta_star_set(group, k).order_primes()
}

/// Which elements are commutators of a coprime-order pair, with the
/// lexicographically first witness pair `(a, b)` by element index.
#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub group: FiniteGroup,
    pub covered: ElementSet,
    pub uncovered: ElementSet,
    witnesses: Vec<Option<(usize, usize)>>,
}

impl CoverageReport {
    pub fn witness(&self, g: usize) -> Option<(usize, usize)> {
        self.witnesses[g]
    }

    pub fn is_complete(&self) -> bool {
        self.uncovered.is_empty()
    }
}

/// Scans pairs `(a, b)` in index order, `a` outermost, recording the first
/// coprime-order pair with `[a, b] = g` for every `g`. Stops as soon as every
/// element is covered. Rows of `a` are evaluated in parallel batches and
/// merged in index order, so the result does not depend on the thread count.
pub fn coprime_commutator_coverage(group: &FiniteGroup) -> CoverageReport {
    let n = group.order();
    let orders = group.element_orders();
    let mut witnesses: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut remaining = n;
    let batch = (rayon::current_num_threads() * 4).max(1);
    let mut start = 0;
    while start < n && remaining > 0 {
        let end = (start + batch).min(n);
        let rows: Vec<Vec<(usize, usize)>> = (start..end)
            .into_par_iter()
            .map(|a| {
                let mut first: Vec<(usize, usize)> = Vec::new();
                let mut seen = FixedBitSet::with_capacity(n);
                for b in 0..n {
                    if gcd(orders[a], orders[b]) != 1 {
                        continue;
                    }
                    let c = group.commutator_index(a, b);
                    if witnesses[c].is_none() && !seen.put(c) {
                        first.push((c, b));
                    }
                }
                first
            })
            .collect();
        for (offset, row) in rows.into_iter().enumerate() {
            let a = start + offset;
            for (c, b) in row {
                if witnesses[c].is_none() {
                    witnesses[c] = Some((a, b));
                    remaining -= 1;
                }
            }
        }
        start = end;
    }
    let mut covered = FixedBitSet::with_capacity(n);
    for (i, w) in witnesses.iter().enumerate() {
        covered.set(i, w.is_some());
    }
    let mut uncovered = covered.clone();
    uncovered.toggle_range(..);
    CoverageReport {
        group: group.clone(),
        covered: ElementSet::new(group, covered, "coprime commutators"),
        uncovered: ElementSet::new(group, uncovered, "not coprime commutators"),
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaViolation {
    /// `ys` must hold exactly `k ≥ 1` elements.
    Level {
        k: usize,
        given: usize,
    },
    SubgroupNotContained,
    NotInGroup {
        position: usize,
    },
    NotStarCommutator {
        position: usize,
    },
    DoesNotNormalize {
        position: usize,
    },
    OrderNotCoprime {
        position: usize,
    },
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaViolation::Level { k, given } => write!(f, "need k = {k} ≥ 1 elements, got {given}"),
            LemmaViolation::SubgroupNotContained => write!(f, "N is not a subgroup of G"),
            LemmaViolation::NotInGroup { position } => write!(f, "y_{} is not in G", position + 1),
            LemmaViolation::NotStarCommutator { position } => {
                write!(f, "y_{} is not a delta*_k-commutator", position + 1)
            }
            LemmaViolation::DoesNotNormalize { position } => write!(f, "y_{} does not normalize N", position + 1),
            LemmaViolation::OrderNotCoprime { position } => {
                write!(f, "order of y_{} is not coprime to |N|", position + 1)
            }
        }
    }
}

/// Checks on one instance that `[x, y_1, …, y_k]` is a `δ*_{k+1}`-commutator
/// for every `x ∈ N`, given `δ*_k`-commutators `y_i` normalizing `N` with
/// orders coprime to `|N|`. Membership is tested in the ambient group's sets.
pub fn lemma_iterated_check(
    group: &FiniteGroup,
    normal: &FiniteGroup,
    ys: &[Permutation],
    k: usize,
) -> Result<bool, Vec<LemmaViolation>> {
    let mut violations = Vec::new();
    if k == 0 || ys.len() != k {
        violations.push(LemmaViolation::Level { k, given: ys.len() });
    }
    let n_idx = match group.indices_of(normal) {
        Ok(bits) => Some(bits),
        Err(_) => {
            violations.push(LemmaViolation::SubgroupNotContained);
            None
        }
    };
    let level = delta_star_set(group, k);
    let mut y_idx = Vec::with_capacity(ys.len());
    for (position, y) in ys.iter().enumerate() {
        let Some(i) = group.index_of(y) else {
            violations.push(LemmaViolation::NotInGroup { position });
            continue;
        };
        y_idx.push(i);
        if !level.contains(i) {
            violations.push(LemmaViolation::NotStarCommutator { position });
        }
        if let Some(bits) = &n_idx {
            let normalizes = normal
                .generators()
                .iter()
                .all(|h| bits.contains(group.conjugate_index(group.index_of(h).expect("in N ⊆ G"), i)));
            if !normalizes {
                violations.push(LemmaViolation::DoesNotNormalize { position });
            }
        }
        if gcd(group.element_order(i), normal.order() as u64) != 1 {
            violations.push(LemmaViolation::OrderNotCoprime { position });
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let next = delta_bits(group, k + 1);
    let n_idx = n_idx.expect("no violations");
    Ok(n_idx.ones().all(|x| {
        let z = y_idx.iter().fold(x, |z, &y| group.commutator_index(z, y));
        next.contains(z)
    }))
}
