use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::FiniteGroup;
use crate::perm::Permutation;

/// A set of primes, used as `π`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PrimeSet(BTreeSet<u64>);

impl PrimeSet {
    pub fn new() -> Self {
        PrimeSet(BTreeSet::new())
    }

    /// Returns `None` if any member is not prime.
    pub fn from_primes(primes: impl IntoIterator<Item = u64>) -> Option<Self> {
        let set: BTreeSet<u64> = primes.into_iter().collect();
        set.iter().all(|&p| is_prime(p)).then_some(PrimeSet(set))
    }

    /// Prime divisors of `n`.
    pub fn of(n: u64) -> Self {
        PrimeSet(prime_factors(n).into_iter().collect())
    }

    pub fn insert_divisors_of(&mut self, n: u64) {
        self.0.extend(prime_factors(n));
    }

    pub fn contains(&self, p: u64) -> bool {
        self.0.contains(&p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    /// True when every prime divisor of `n` lies in the set.
    pub fn admits(&self, n: u64) -> bool {
        prime_factors(n).into_iter().all(|p| self.0.contains(&p))
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str("}")
    }
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

pub fn is_pi_element(x: &Permutation, pi: &PrimeSet) -> bool {
    pi.admits(x.order())
}

pub fn is_pi_group(group: &FiniteGroup, pi: &PrimeSet) -> bool {
    pi.admits(group.order() as u64)
}

/// Largest normal `π`-subgroup: generated by the elements whose normal
/// closure is a `π`-group. Normal closures are constant on conjugacy
/// classes, so one representative per class is tested.
pub fn o_pi(group: &FiniteGroup, pi: &PrimeSet) -> FiniteGroup {
    let mut seed = FixedBitSet::with_capacity(group.order());
    for class in group.conjugacy_classes() {
        let rep = class[0] as usize;
        if !pi.admits(group.element_order(rep)) {
            continue;
        }
        if pi.admits(group.normal_closure_order(rep) as u64) {
            for &m in class {
                seed.insert(m as usize);
            }
        }
    }
    let result = group.subgroup_generated_by(&seed);
    debug_assert!(group.is_normal_subgroup(&result));
    debug_assert!(is_pi_group(&result, pi));
    result
}
