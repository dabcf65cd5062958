//! Exhaustively enumerated permutation groups.
//!
//! A [`FiniteGroup`] stores every element, sorted by image sequence, so each
//! element has a dense index in `0..order`. Index 0 is always the identity.
//! Subsets of a group are index bit-sets; multiplication goes through a
//! lazily built Cayley table when the group is small enough.

mod closure;
pub mod file;
mod pi;
mod quotient;
mod series;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{gcd, PermError, Permutation};

pub use closure::{commutator_subgroup, generated_subgroup, normal_closure};
pub use pi::{is_pi_element, is_pi_group, o_pi, PrimeSet};
pub use quotient::{quotient, QuotientMap};
pub use series::{
    classify, fitting_height, gamma_infinity, series, Classification, LowerSeries, SeriesKind, SeriesReport,
};

/// Default bound on the number of elements any enumeration may produce.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Groups up to this order get a full `u16` Cayley table (32 MiB at most).
const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("generator {index} has degree {found}, expected {expected}")]
    GeneratorDegree {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("{what} is not contained in the group")]
    NotContained { what: String },
    #[error("subgroup is not normal")]
    NotNormal,
}

/// Identifies the star-commutator family a memoized set belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Gamma,
    Delta,
}

struct Inner {
    degree: usize,
    name: Option<String>,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
    inverses: Vec<u32>,
    orders: Vec<u64>,
    /// Generator index and parent for every non-identity element: element
    /// `i` equals `parent[i]` times `generators[gen[i]]`.
    tree: Vec<(u32, u32)>,
    table: OnceLock<Option<Vec<u16>>>,
    classes: OnceLock<Classes>,
    star_memo: RwLock<HashMap<(Family, usize), Arc<FixedBitSet>>>,
}

struct Classes {
    of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

/// An enumerated permutation group. Cloning is cheap (shared storage).
#[derive(Clone)]
pub struct FiniteGroup {
    inner: Arc<Inner>,
}

impl FiniteGroup {
    /// Closure of `generators` by breadth-first right multiplication.
    pub fn enumerate(generators: &[Permutation], degree: usize) -> Result<Self, GroupError> {
        Self::enumerate_with_cap(generators, degree, DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(generators: &[Permutation], degree: usize, cap: usize) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree.into());
        }
        for (i, g) in generators.iter().enumerate() {
            if g.degree() != degree {
                return Err(GroupError::GeneratorDegree {
                    index: i,
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = generators.iter().filter(|g| !g.is_identity()).cloned().collect();

        let identity = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, u32> = HashMap::new();
        let mut bfs: Vec<Permutation> = vec![identity.clone()];
        let mut tree: Vec<(u32, u32)> = vec![(0, 0)];
        seen.insert(identity, 0);
        let mut head = 0;
        while head < bfs.len() {
            for (s, g) in gens.iter().enumerate() {
                let next = bfs[head].then(g);
                if !seen.contains_key(&next) {
                    if bfs.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    seen.insert(next.clone(), bfs.len() as u32);
                    bfs.push(next);
                    tree.push((head as u32, s as u32));
                }
            }
            head += 1;
        }
        Ok(Self::from_bfs(degree, gens, bfs, tree))
    }

    /// Builds the sorted, indexed representation from a BFS closure.
    fn from_bfs(degree: usize, generators: Vec<Permutation>, bfs: Vec<Permutation>, bfs_tree: Vec<(u32, u32)>) -> Self {
        let n = bfs.len();
        let mut order_idx: Vec<u32> = (0..n as u32).collect();
        order_idx.sort_by(|&a, &b| bfs[a as usize].cmp(&bfs[b as usize]));
        let mut rank = vec![0u32; n];
        for (new, &old) in order_idx.iter().enumerate() {
            rank[old as usize] = new as u32;
        }
        let mut tree = vec![(0u32, 0u32); n];
        for old in 0..n {
            let (parent, s) = bfs_tree[old];
            tree[rank[old] as usize] = (rank[parent as usize], s);
        }
        let mut slots: Vec<Option<Permutation>> = bfs.into_iter().map(Some).collect();
        let elements: Vec<Permutation> = order_idx
            .iter()
            .map(|&old| slots[old as usize].take().expect("each slot taken once"))
            .collect();
        let index: HashMap<Permutation, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let inverses: Vec<u32> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let orders: Vec<u64> = elements.iter().map(Permutation::order).collect();
        FiniteGroup {
            inner: Arc::new(Inner {
                degree,
                name: None,
                generators,
                elements,
                index,
                inverses,
                orders,
                tree,
                table: OnceLock::new(),
                classes: OnceLock::new(),
                star_memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::enumerate(&[], degree).expect("trivial group always enumerates")
    }

    /// Returns a copy carrying `name`; caches are not shared with `self`.
    pub fn with_name(&self, name: impl Into<String>) -> Self {
        let i = &self.inner;
        FiniteGroup {
            inner: Arc::new(Inner {
                degree: i.degree,
                name: Some(name.into()),
                generators: i.generators.clone(),
                elements: i.elements.clone(),
                index: i.index.clone(),
                inverses: i.inverses.clone(),
                orders: i.orders.clone(),
                tree: i.tree.clone(),
                table: OnceLock::new(),
                classes: OnceLock::new(),
                star_memo: RwLock::new(HashMap::new()),
            }),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.inner.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn order(&self) -> usize {
        self.inner.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.inner.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.inner.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.inner.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.inner.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.inner.index.contains_key(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub const IDENTITY: usize = 0;

    pub fn inverse_index(&self, i: usize) -> usize {
        self.inner.inverses[i] as usize
    }

    pub fn element_order(&self, i: usize) -> u64 {
        self.inner.orders[i]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.inner.orders
    }

    /// Index of `element(i)` then `element(j)`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.table() {
            Some(t) => t[j * self.order() + i] as usize,
            None => self.inner.index[&self.inner.elements[i].then(&self.inner.elements[j])] as usize,
        }
    }

    pub fn commutator_index(&self, a: usize, b: usize) -> usize {
        let ai = self.inverse_index(a);
        let bi = self.inverse_index(b);
        self.mul(self.mul(ai, bi), self.mul(a, b))
    }

    /// `g⁻¹ x g` by index.
    pub fn conjugate_index(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inverse_index(g), x), g)
    }

    /// Lazily built Cayley table for small groups.
    fn table(&self) -> Option<&[u16]> {
        self.inner
            .table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_LIMIT {
                    return None;
                }
                Some(self.build_table())
            })
            .as_deref()
    }

    fn build_table(&self) -> Vec<u16> {
        let n = self.order();
        let inner = &self.inner;
        // right multiplication by each generator
        let right: Vec<Vec<u16>> = inner
            .elements
            .par_iter()
            .map(|e| {
                inner
                    .generators
                    .iter()
                    .map(|g| inner.index[&e.then(g)] as u16)
                    .collect()
            })
            .collect();
        // BFS order so that parents are filled first
        let mut by_depth: Vec<usize> = Vec::with_capacity(n);
        by_depth.push(0);
        let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
        for j in 1..n {
            children[inner.tree[j].0 as usize].push(j);
        }
        let mut head = 0;
        while head < by_depth.len() {
            let j = by_depth[head];
            for &c in &children[j] {
                by_depth.push(c);
            }
            head += 1;
        }
        // column-major: table[j * n + i] = i * j
        let mut table = vec![0u16; n * n];
        for (i, v) in table[..n].iter_mut().enumerate() {
            *v = i as u16;
        }
        let mut column = vec![0u16; n];
        for &j in by_depth.iter().skip(1) {
            let (parent, s) = inner.tree[j];
            let parent = parent as usize;
            for (d, &x) in column.iter_mut().zip(&table[parent * n..(parent + 1) * n]) {
                *d = right[x as usize][s as usize];
            }
            table[j * n..(j + 1) * n].copy_from_slice(&column);
        }
        table
    }

    fn classes(&self) -> &Classes {
        self.inner.classes.get_or_init(|| {
            let n = self.order();
            let gens: Vec<usize> = self
                .inner
                .generators
                .iter()
                .map(|g| self.index_of(g).expect("generator in group"))
                .collect();
            let mut of = vec![u32::MAX; n];
            let mut members = Vec::new();
            for start in 0..n {
                if of[start] != u32::MAX {
                    continue;
                }
                let id = members.len() as u32;
                of[start] = id;
                let mut class = vec![start as u32];
                let mut head = 0;
                while head < class.len() {
                    let x = class[head] as usize;
                    for &g in &gens {
                        let y = self.conjugate_index(x, g);
                        if of[y] == u32::MAX {
                            of[y] = id;
                            class.push(y as u32);
                        }
                    }
                    head += 1;
                }
                class.sort_unstable();
                members.push(class);
            }
            Classes { of, members }
        })
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> &[Vec<u32>] {
        &self.classes().members
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.classes().of[i] as usize
    }

    /// Smallest union of conjugacy classes containing `set`.
    pub fn conjugation_closure(&self, set: &FixedBitSet) -> FixedBitSet {
        let classes = self.classes();
        let mut out = FixedBitSet::with_capacity(self.order());
        let mut done = FixedBitSet::with_capacity(classes.members.len());
        for i in set.ones() {
            let c = classes.of[i] as usize;
            if !done.put(c) {
                for &m in &classes.members[c] {
                    out.insert(m as usize);
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.then(b) == b.then(a)))
    }

    /// Nontrivial, with no normal subgroups besides 1 and itself.
    pub fn is_simple(&self) -> bool {
        !self.is_trivial()
            && self.conjugacy_classes()[1..]
                .iter()
                .all(|c| self.normal_closure_order(c[0] as usize) == self.order())
    }

    /// Indices in `self` of the elements of `sub`.
    pub fn indices_of(&self, sub: &FiniteGroup) -> Result<FixedBitSet, GroupError> {
        let mut bits = FixedBitSet::with_capacity(self.order());
        if sub.degree() != self.degree() {
            return Err(GroupError::NotContained {
                what: format!("subgroup of degree {}", sub.degree()),
            });
        }
        for p in sub.elements() {
            match self.index_of(p) {
                Some(i) => bits.insert(i),
                None => {
                    return Err(GroupError::NotContained {
                        what: format!("element {p}"),
                    })
                }
            }
        }
        Ok(bits)
    }

    pub fn is_subgroup_of(&self, parent: &FiniteGroup) -> bool {
        self.degree() == parent.degree() && self.elements().iter().all(|p| parent.contains(p))
    }

    /// True when `sub` (a subgroup of `self`) is invariant under conjugation
    /// by every generator of `self`.
    pub fn is_normal_subgroup(&self, sub: &FiniteGroup) -> bool {
        if !sub.is_subgroup_of(self) {
            return false;
        }
        self.generators().iter().all(|g| {
            let gi = g.inverse();
            sub.generators().iter().all(|h| sub.contains(&gi.then(h).then(g)))
        })
    }

    /// Materializes the subgroup on the member indices `members`, which the
    /// caller guarantees form a subgroup generated by `generators`.
    pub(crate) fn subgroup_from_bits(&self, members: &FixedBitSet, generators: Vec<usize>) -> FiniteGroup {
        let gens: Vec<Permutation> = generators.iter().map(|&g| self.element(g).clone()).collect();
        let sub = FiniteGroup::enumerate_with_cap(&gens, self.degree(), members.count_ones(..) + 1)
            .expect("closure inside an enumerated group stays within its order");
        debug_assert_eq!(sub.order(), members.count_ones(..));
        sub
    }

    pub(crate) fn star_memo_get(&self, key: (Family, usize)) -> Option<Arc<FixedBitSet>> {
        self.inner.star_memo.read().expect("memo lock").get(&key).cloned()
    }

    pub(crate) fn star_memo_insert(&self, key: (Family, usize), set: FixedBitSet) -> Arc<FixedBitSet> {
        let mut memo = self.inner.star_memo.write().expect("memo lock");
        memo.entry(key).or_insert_with(|| Arc::new(set)).clone()
    }

    /// True when both groups have the same element set.
    pub fn same_elements(&self, other: &FiniteGroup) -> bool {
        self.degree() == other.degree() && self.elements() == other.elements()
    }

    pub fn exponent(&self) -> u64 {
        self.inner.orders.iter().fold(1, |acc, &o| acc / gcd(acc, o) * o)
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_elements(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.inner.name)
            .field("degree", &self.inner.degree)
            .field("order", &self.order())
            .field("generators", &self.inner.generators)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::parse_cycles;

    fn gens(texts: &[&str], n: usize) -> Vec<Permutation> {
        texts.iter().map(|t| parse_cycles(t, n).unwrap()).collect()
    }

    #[test]
    fn enumerate_small_groups() {
        let s3 = FiniteGroup::enumerate(&gens(&["(1,2,3)", "(1,2)"], 3), 3).unwrap();
        assert_eq!(s3.order(), 6);
        assert_eq!(FiniteGroup::enumerate(&[], 4).unwrap().order(), 1);
        assert_eq!(FiniteGroup::enumerate(&gens(&["id"], 4), 4).unwrap().order(), 1);
        let a5 = FiniteGroup::enumerate(&gens(&["(1,2,3,4,5)", "(3,4,5)"], 5), 5).unwrap();
        assert_eq!(a5.order(), 60);
    }

    #[test]
    fn elements_sorted_identity_first() {
        let s3 = FiniteGroup::enumerate(&gens(&["(1,2,3)", "(1,2)"], 3), 3).unwrap();
        assert!(s3.element(0).is_identity());
        assert!(s3.elements().windows(2).all(|w| w[0] < w[1]));
        for (i, p) in s3.elements().iter().enumerate() {
            assert_eq!(s3.index_of(p), Some(i));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = FiniteGroup::enumerate_with_cap(&gens(&["(1,2,3,4,5)", "(1,2)"], 5), 5, 100).unwrap_err();
        assert_eq!(err, GroupError::CapExceeded { cap: 100 });
        assert!(err.to_string().contains("100"));
    }

    #[test]
    fn generator_degree_checked() {
        let g = vec![parse_cycles("(1,2)", 2).unwrap()];
        assert!(matches!(
            FiniteGroup::enumerate(&g, 3),
            Err(GroupError::GeneratorDegree { .. })
        ));
    }

    #[test]
    fn table_matches_direct_products() {
        let s4 = FiniteGroup::enumerate(&gens(&["(1,2,3,4)", "(1,2)"], 4), 4).unwrap();
        for i in 0..s4.order() {
            for j in 0..s4.order() {
                let direct = s4.element(i).then(s4.element(j));
                assert_eq!(s4.element(s4.mul(i, j)), &direct);
            }
            assert!(s4.element(s4.mul(i, s4.inverse_index(i))).is_identity());
        }
    }

    #[test]
    fn classes_of_s4() {
        let s4 = FiniteGroup::enumerate(&gens(&["(1,2,3,4)", "(1,2)"], 4), 4).unwrap();
        let mut sizes: Vec<usize> = s4.conjugacy_classes().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }
}
