use super::{FiniteGroup, GroupError};
use crate::perm::Permutation;

/// `G/N` as a permutation group on the right cosets of `N`, together with
/// the projection from `G`.
///
/// Cosets are numbered 1.. in the order of their smallest element index.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    parent: FiniteGroup,
    quotient: FiniteGroup,
    coset_of: Vec<u32>,
    /// Quotient element index of each coset's image.
    image_of_coset: Vec<u32>,
}

impl QuotientMap {
    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn quotient(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn index(&self) -> usize {
        self.quotient.degree()
    }

    /// Coset number (0-based) containing parent element `g`.
    pub fn coset_of(&self, g: usize) -> usize {
        self.coset_of[g] as usize
    }

    /// Index in the quotient group of the image of parent element `g`.
    pub fn project_index(&self, g: usize) -> usize {
        self.image_of_coset[self.coset_of[g] as usize] as usize
    }

    pub fn project(&self, g: &Permutation) -> Option<&Permutation> {
        let i = self.parent.index_of(g)?;
        Some(self.quotient.element(self.project_index(i)))
    }
}

/// Quotient of `group` by the normal subgroup `normal`.
pub fn quotient(group: &FiniteGroup, normal: &FiniteGroup) -> Result<QuotientMap, GroupError> {
    if !normal.is_subgroup_of(group) {
        return Err(GroupError::NotContained {
            what: format!("subgroup of order {}", normal.order()),
        });
    }
    if !group.is_normal_subgroup(normal) {
        return Err(GroupError::NotNormal);
    }
    let n_idx: Vec<usize> = normal
        .elements()
        .iter()
        .map(|p| group.index_of(p).expect("checked containment"))
        .collect();

    let mut coset_of = vec![u32::MAX; group.order()];
    let mut reps: Vec<usize> = Vec::new();
    for g in 0..group.order() {
        if coset_of[g] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(g);
        for &h in &n_idx {
            coset_of[group.mul(h, g)] = id;
        }
    }
    let m = reps.len();

    // coset c maps to the coset of rep_c * g
    let action = |g: usize| -> Permutation {
        let images: Vec<u32> = reps.iter().map(|&r| coset_of[group.mul(r, g)]).collect();
        Permutation::from_raw(images)
    };
    let gens: Vec<Permutation> = group.generator_indices().into_iter().map(action).collect();
    let quotient = FiniteGroup::enumerate_with_cap(&gens, m, m + 1)?;
    debug_assert_eq!(quotient.order(), m);

    let image_of_coset: Vec<u32> = reps
        .iter()
        .map(|&r| quotient.index_of(&action(r)).expect("image lies in the quotient") as u32)
        .collect();
    Ok(QuotientMap {
        parent: group.clone(),
        quotient,
        coset_of,
        image_of_coset,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::normal_closure;
    use crate::perm::parse_cycles;

    fn group(texts: &[&str], n: usize) -> FiniteGroup {
        let gens: Vec<_> = texts.iter().map(|t| parse_cycles(t, n).unwrap()).collect();
        FiniteGroup::enumerate(&gens, n).unwrap()
    }

    #[test]
    fn s4_mod_klein() {
        let s4 = group(&["(1,2,3,4)", "(1,2)"], 4);
        let v4 = group(&["(1,2)(3,4)", "(1,3)(2,4)"], 4);
        let q = quotient(&s4, &v4).unwrap();
        assert_eq!(q.quotient().order(), 6);
        assert_eq!(q.index(), 6);
        // kernel is exactly V4
        let kernel: Vec<usize> = (0..s4.order())
            .filter(|&g| q.quotient().element(q.project_index(g)).is_identity())
            .collect();
        assert_eq!(kernel.len(), 4);
        for g in kernel {
            assert!(v4.contains(s4.element(g)));
        }
    }

    #[test]
    fn quotient_by_whole_group_and_c3() {
        let s3 = group(&["(1,2,3)", "(1,2)"], 3);
        assert!(quotient(&s3, &s3).unwrap().quotient().is_trivial());
        let c3 = group(&["(1,2,3)"], 3);
        assert_eq!(quotient(&s3, &c3).unwrap().quotient().order(), 2);
        let trivial = FiniteGroup::trivial(3);
        assert_eq!(quotient(&s3, &trivial).unwrap().quotient().order(), 6);
    }

    #[test]
    fn non_normal_rejected() {
        let s3 = group(&["(1,2,3)", "(1,2)"], 3);
        let c2 = group(&["(1,2)"], 3);
        assert_eq!(quotient(&s3, &c2).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn projection_is_homomorphism() {
        let s4 = group(&["(1,2,3,4)", "(1,2)"], 4);
        let a4 = normal_closure(&s4, &[parse_cycles("(1,2,3)", 4).unwrap()]).unwrap();
        let q = quotient(&s4, &a4).unwrap();
        let qg = q.quotient();
        for a in 0..s4.order() {
            for b in 0..s4.order() {
                let lhs = q.project_index(s4.mul(a, b));
                let rhs = qg.mul(q.project_index(a), q.project_index(b));
                assert_eq!(lhs, rhs);
            }
        }
    }
}
