use fixedbitset::FixedBitSet;

use super::{FiniteGroup, GroupError};
use crate::perm::Permutation;

/// Incrementally grown subgroup of an enumerated group, by index.
pub(crate) struct Closure<'g> {
    group: &'g FiniteGroup,
    members: FixedBitSet,
    list: Vec<usize>,
    gens: Vec<usize>,
}

impl<'g> Closure<'g> {
    pub(crate) fn new(group: &'g FiniteGroup) -> Self {
        let mut members = FixedBitSet::with_capacity(group.order());
        members.insert(FiniteGroup::IDENTITY);
        Closure {
            group,
            members,
            list: vec![FiniteGroup::IDENTITY],
            gens: Vec::new(),
        }
    }

    /// Adds `x` as a generator unless it already lies in the subgroup.
    pub(crate) fn add(&mut self, x: usize) -> bool {
        if self.members.contains(x) {
            return false;
        }
        self.gens.push(x);
        let mut head = 0;
        while head < self.list.len() {
            let e = self.list[head];
            for k in 0..self.gens.len() {
                let p = self.group.mul(e, self.gens[k]);
                if !self.members.put(p) {
                    self.list.push(p);
                }
            }
            head += 1;
        }
        true
    }

    /// Grows the subgroup until it is normalized by every `conjugators` element.
    pub(crate) fn normalize_by(&mut self, conjugators: &[usize]) {
        let mut k = 0;
        while k < self.gens.len() {
            let h = self.gens[k];
            for &c in conjugators {
                let x = self.group.conjugate_index(h, c);
                self.add(x);
            }
            k += 1;
        }
    }

    pub(crate) fn order(&self) -> usize {
        self.list.len()
    }

    pub(crate) fn into_parts(self) -> (FixedBitSet, Vec<usize>) {
        (self.members, self.gens)
    }

    pub(crate) fn finish(self) -> FiniteGroup {
        let group = self.group;
        let (members, gens) = self.into_parts();
        group.subgroup_from_bits(&members, gens)
    }
}

impl FiniteGroup {
    /// Subgroup generated by the elements with indices in `seed`.
    pub fn subgroup_generated_by(&self, seed: &FixedBitSet) -> FiniteGroup {
        let mut c = Closure::new(self);
        for i in seed.ones() {
            c.add(i);
        }
        c.finish()
    }

    /// Member indices of the subgroup generated by `seed`.
    pub fn closure_bits(&self, seed: &FixedBitSet) -> FixedBitSet {
        let mut c = Closure::new(self);
        for i in seed.ones() {
            c.add(i);
        }
        c.into_parts().0
    }

    /// Smallest normal subgroup containing the elements indexed by `seed`.
    pub fn normal_closure_of(&self, seed: &FixedBitSet) -> FiniteGroup {
        let conj = self.generator_indices();
        let mut c = Closure::new(self);
        for i in seed.ones() {
            c.add(i);
        }
        c.normalize_by(&conj);
        c.finish()
    }

    pub(crate) fn normal_closure_order(&self, x: usize) -> usize {
        let conj = self.generator_indices();
        let mut c = Closure::new(self);
        c.add(x);
        c.normalize_by(&conj);
        c.order()
    }

    pub(crate) fn generator_indices(&self) -> Vec<usize> {
        self.generators()
            .iter()
            .map(|g| self.index_of(g).expect("generators lie in the group"))
            .collect()
    }

    fn seed_bits(&self, seed: &[Permutation]) -> Result<FixedBitSet, GroupError> {
        let mut bits = FixedBitSet::with_capacity(self.order());
        for p in seed {
            match self.index_of(p) {
                Some(i) => bits.insert(i),
                None => {
                    return Err(GroupError::NotContained {
                        what: format!("seed element {p}"),
                    })
                }
            }
        }
        Ok(bits)
    }
}

/// Smallest subgroup of `group` containing `seed`.
pub fn generated_subgroup(group: &FiniteGroup, seed: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    let bits = group.seed_bits(seed)?;
    Ok(group.subgroup_generated_by(&bits))
}

/// Smallest normal subgroup of `group` containing `seed`.
pub fn normal_closure(group: &FiniteGroup, seed: &[Permutation]) -> Result<FiniteGroup, GroupError> {
    let bits = group.seed_bits(seed)?;
    Ok(group.normal_closure_of(&bits))
}

/// `[A, B] = ⟨[a, b] : a ∈ A, b ∈ B⟩` for subgroups `a`, `b` of `group`.
///
/// Computed as the normal closure in `⟨A, B⟩` of the commutators of the
/// generators, which is the same subgroup.
pub fn commutator_subgroup(group: &FiniteGroup, a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let ga = subgroup_generator_indices(group, a)?;
    let gb = subgroup_generator_indices(group, b)?;
    let mut joint: Vec<usize> = ga.clone();
    joint.extend_from_slice(&gb);
    let mut c = Closure::new(group);
    for &x in &ga {
        for &y in &gb {
            c.add(group.commutator_index(x, y));
        }
    }
    c.normalize_by(&joint);
    Ok(c.finish())
}

fn subgroup_generator_indices(group: &FiniteGroup, sub: &FiniteGroup) -> Result<Vec<usize>, GroupError> {
    if !sub.is_subgroup_of(group) {
        return Err(GroupError::NotContained {
            what: format!("subgroup of order {}", sub.order()),
        });
    }
    Ok(sub
        .generators()
        .iter()
        .map(|g| group.index_of(g).expect("checked containment"))
        .collect())
}
