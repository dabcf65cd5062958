//! Built-in groups and brute-force oracles.
//!
//! Families are built from their standard generators: `symmetric(n)` and
//! `alternating(n)` for `1 ≤ n ≤ 9`, `dihedral(m)` of order `2m` on `m`
//! points for `3 ≤ m ≤ 500`, `cyclic(m)` for `1 ≤ m ≤ 1000`. Named groups
//! come from `data/catalog.grp`.

use std::fmt;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::file::{parse_catalog_file, GroupDefinition, GroupFileError};
use crate::group::{
    classify, fitting_height, o_pi, quotient, FiniteGroup, GroupError, PrimeSet, SeriesKind, SeriesReport,
    DEFAULT_ELEMENT_CAP,
};
use crate::perm::{gcd, Permutation};

const DATA: &str = include_str!("../data/catalog.grp");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog group `{0}`")]
    Unknown(String),
    #[error("{family}({param}) is outside the supported range {range}")]
    OutOfRange {
        family: &'static str,
        param: usize,
        range: &'static str,
    },
    #[error("{name}: expected order {expected}, enumerated {found}")]
    OrderMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{name}: expected {property} = {expected}, found {found}")]
    PropertyMismatch {
        name: String,
        property: &'static str,
        expected: String,
        found: String,
    },
    #[error("catalog data: {0}")]
    Data(#[from] GroupFileError),
    #[error("catalog data: record {0} lacks a name or an expectation")]
    IncompleteRecord(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpectedProperties {
    pub nilpotent: bool,
    pub soluble: bool,
    pub simple: bool,
    /// `None` for insoluble groups.
    pub fitting_height: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Permutation>,
    pub expected_order: usize,
    pub expected: ExpectedProperties,
}

impl CatalogEntry {
    /// Enumerates the group and checks its order.
    pub fn enumerate(&self) -> Result<FiniteGroup, CatalogError> {
        self.enumerate_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn enumerate_with_cap(&self, cap: usize) -> Result<FiniteGroup, CatalogError> {
        let g = FiniteGroup::enumerate_with_cap(&self.generators, self.degree, cap)?.with_name(self.name.clone());
        if g.order() != self.expected_order {
            return Err(CatalogError::OrderMismatch {
                name: self.name.clone(),
                expected: self.expected_order,
                found: g.order(),
            });
        }
        Ok(g)
    }

    /// Compares the expected properties with the group engine's results.
    pub fn check_properties(&self, g: &FiniteGroup) -> Result<(), CatalogError> {
        let c = classify(g);
        let found = ExpectedProperties {
            nilpotent: c.is_nilpotent,
            soluble: c.is_soluble,
            simple: g.is_simple(),
            fitting_height: fitting_height(g),
        };
        let e = self.expected;
        let mismatch = |property, expected: String, found: String| CatalogError::PropertyMismatch {
            name: self.name.clone(),
            property,
            expected,
            found,
        };
        if e.nilpotent != found.nilpotent {
            return Err(mismatch(
                "nilpotent",
                e.nilpotent.to_string(),
                found.nilpotent.to_string(),
            ));
        }
        if e.soluble != found.soluble {
            return Err(mismatch("soluble", e.soluble.to_string(), found.soluble.to_string()));
        }
        if e.simple != found.simple {
            return Err(mismatch("simple", e.simple.to_string(), found.simple.to_string()));
        }
        if e.fitting_height != found.fitting_height {
            return Err(mismatch(
                "fitting_height",
                format!("{:?}", e.fitting_height),
                format!("{:?}", found.fitting_height),
            ));
        }
        Ok(())
    }

    /// The entry as a catalog file record.
    pub fn to_record(&self) -> String {
        let mut s = format!("name: {}\ndegree: {}\n", self.name, self.degree);
        for g in &self.generators {
            s.push_str(&format!("gen: {g}\n"));
        }
        let h = match self.expected.fitting_height {
            Some(h) => h.to_string(),
            None => "none".to_string(),
        };
        s.push_str(&format!(
            "expect_order: {}\nexpect_nilpotent: {}\nexpect_soluble: {}\nexpect_simple: {}\nexpect_fitting_height: {}\n",
            self.expected_order, self.expected.nilpotent, self.expected.soluble, self.expected.simple, h
        ));
        s
    }
}

fn named_entries() -> Result<&'static [CatalogEntry], CatalogError> {
    static NAMED: OnceLock<Result<Vec<CatalogEntry>, CatalogError>> = OnceLock::new();
    NAMED
        .get_or_init(|| {
            parse_catalog_file(DATA)?
                .into_iter()
                .enumerate()
                .map(|(k, d)| from_definition(k, d))
                .collect()
        })
        .as_deref()
        .map_err(Clone::clone)
}

fn from_definition(k: usize, d: GroupDefinition) -> Result<CatalogEntry, CatalogError> {
    let e = &d.expect;
    let incomplete = || CatalogError::IncompleteRecord(k + 1);
    Ok(CatalogEntry {
        name: d.name.clone().ok_or_else(incomplete)?,
        degree: d.degree,
        expected_order: e.order.ok_or_else(incomplete)?,
        expected: ExpectedProperties {
            nilpotent: e.nilpotent.ok_or_else(incomplete)?,
            soluble: e.soluble.ok_or_else(incomplete)?,
            simple: e.simple.ok_or_else(incomplete)?,
            fitting_height: e.fitting_height.ok_or_else(incomplete)?,
        },
        generators: d.generators,
    })
}

/// Parametrized families of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Symmetric,
    Alternating,
    Dihedral,
    Cyclic,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Symmetric, Family::Alternating, Family::Dihedral, Family::Cyclic];

    pub fn name(self) -> &'static str {
        match self {
            Family::Symmetric => "symmetric",
            Family::Alternating => "alternating",
            Family::Dihedral => "dihedral",
            Family::Cyclic => "cyclic",
        }
    }

    pub fn range(self) -> (usize, usize) {
        match self {
            Family::Symmetric | Family::Alternating => (1, 9),
            Family::Dihedral => (3, 500),
            Family::Cyclic => (1, 1000),
        }
    }

    fn range_text(self) -> &'static str {
        match self {
            Family::Symmetric | Family::Alternating => "1..=9",
            Family::Dihedral => "3..=500",
            Family::Cyclic => "1..=1000",
        }
    }

    pub fn entry(self, m: usize) -> Result<CatalogEntry, CatalogError> {
        let (lo, hi) = self.range();
        if m < lo || m > hi {
            return Err(CatalogError::OutOfRange {
                family: self.name(),
                param: m,
                range: self.range_text(),
            });
        }
        let cyc = |pts: Vec<u32>| Permutation::from_cycles(m.max(1), &[pts]).expect("family generator");
        let long = cyc((1..=m as u32).collect());
        let factorial: usize = (1..=m).product();
        let (generators, order, expected) = match self {
            Family::Symmetric => (
                if m >= 2 {
                    vec![long, cyc(vec![1, 2])]
                } else {
                    vec![long]
                },
                factorial,
                ExpectedProperties {
                    nilpotent: m <= 2,
                    soluble: m <= 4,
                    simple: m == 2,
                    fitting_height: [Some(0), Some(1), Some(2), Some(3)].get(m - 1).copied().flatten(),
                },
            ),
            Family::Alternating => (
                (3..=m as u32).map(|k| cyc(vec![1, 2, k])).collect(),
                (factorial / 2).max(1),
                ExpectedProperties {
                    nilpotent: m <= 3,
                    soluble: m <= 4,
                    simple: m == 3 || m >= 5,
                    fitting_height: [Some(0), Some(0), Some(1), Some(2)].get(m - 1).copied().flatten(),
                },
            ),
            Family::Dihedral => {
                let flip: Vec<[u32; 2]> = (2..=(m as u32).div_ceil(2)).map(|t| [t, m as u32 + 2 - t]).collect();
                let flip = Permutation::from_cycles(m, &flip).expect("reflection");
                let two_power = m.is_power_of_two();
                (
                    vec![long, flip],
                    2 * m,
                    ExpectedProperties {
                        nilpotent: two_power,
                        soluble: true,
                        simple: false,
                        fitting_height: Some(if two_power { 1 } else { 2 }),
                    },
                )
            }
            Family::Cyclic => (
                vec![long],
                m,
                ExpectedProperties {
                    nilpotent: true,
                    soluble: true,
                    simple: PrimeSet::of(m as u64).iter().eq([m as u64]),
                    fitting_height: Some(usize::from(m > 1)),
                },
            ),
        };
        Ok(CatalogEntry {
            name: format!("{}({m})", self.name()),
            degree: m.max(1),
            generators,
            expected_order: order,
            expected,
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Looks up `family(m)` or a named group.
pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let name = name.trim();
    if let Some((fam, rest)) = name.split_once('(') {
        let param = rest
            .strip_suffix(')')
            .and_then(|p| p.trim().parse::<usize>().ok())
            .ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
        let family = Family::ALL
            .into_iter()
            .find(|f| f.name() == fam.trim())
            .ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
        return family.entry(param);
    }
    named_entries()?
        .iter()
        .find(|e| e.name == name)
        .cloned()
        .ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

/// Enumerated catalog group, order checked.
pub fn get(name: &str) -> Result<FiniteGroup, CatalogError> {
    entry(name)?.enumerate()
}

pub fn named_group_names() -> Result<Vec<String>, CatalogError> {
    Ok(named_entries()?.iter().map(|e| e.name.clone()).collect())
}

/// The instances the test suites sweep over, all of order at most 1000.
pub fn standard_entries() -> Result<Vec<CatalogEntry>, CatalogError> {
    let mut out = Vec::new();
    for (f, m) in [
        (Family::Cyclic, 1),
        (Family::Cyclic, 6),
        (Family::Cyclic, 7),
        (Family::Symmetric, 3),
        (Family::Symmetric, 4),
        (Family::Symmetric, 5),
        (Family::Alternating, 4),
        (Family::Alternating, 5),
        (Family::Alternating, 6),
        (Family::Dihedral, 4),
        (Family::Dihedral, 5),
        (Family::Dihedral, 6),
        (Family::Dihedral, 8),
    ] {
        out.push(f.entry(m)?);
    }
    out.extend(named_entries()?.iter().cloned());
    Ok(out)
}

/// Ascending Fitting series `1 = F_0 < F_1 < …`, with `F_{i+1}/F_i` the
/// Fitting subgroup of `G/F_i`, computed as the product of its `O_p`.
///
/// Here `reaches_trivial` means the series reaches the whole group.
pub fn upper_fitting_series(group: &FiniteGroup) -> SeriesReport {
    let mut terms = vec![FiniteGroup::trivial(group.degree())];
    loop {
        let f = terms.last().expect("nonempty");
        if f.order() == group.order() {
            return SeriesReport {
                kind: SeriesKind::UpperFitting,
                terms,
                stabilized: true,
                reaches_trivial: true,
            };
        }
        let q = quotient(group, f).expect("F_i is normal");
        let qg = q.quotient();
        let mut fit = FixedBitSet::with_capacity(qg.order());
        for p in PrimeSet::of(qg.order() as u64).iter() {
            let op = o_pi(qg, &PrimeSet::from_primes([p]).expect("prime"));
            fit.union_with(&qg.indices_of(&op).expect("subgroup of the quotient"));
        }
        let fit = qg.closure_bits(&fit);
        let mut pre = FixedBitSet::with_capacity(group.order());
        for g in 0..group.order() {
            pre.set(g, fit.contains(q.project_index(g)));
        }
        let next = group.subgroup_generated_by(&pre);
        let fixed = next.order() == f.order();
        terms.push(next);
        if fixed {
            return SeriesReport {
                kind: SeriesKind::UpperFitting,
                terms,
                stabilized: true,
                reaches_trivial: false,
            };
        }
    }
}

/// Fitting height from the ascending series, `None` if it stops below `G`.
pub fn oracle_fitting_height_upper(group: &FiniteGroup) -> Option<usize> {
    let r = upper_fitting_series(group);
    r.reaches_trivial.then(|| r.terms.len() - 1)
}

/// First `(a, b)` in index order with `[a, b] = g` and coprime orders,
/// computed directly on permutations.
pub fn oracle_coprime_witness(group: &FiniteGroup, g: &Permutation) -> Option<(usize, usize)> {
    let els = group.elements();
    let orders: Vec<u64> = els.iter().map(Permutation::order).collect();
    for (i, a) in els.iter().enumerate() {
        for (j, b) in els.iter().enumerate() {
            if gcd(orders[i], orders[j]) == 1 && &a.commutator(b).ok()? == g {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_load() {
        let names = named_group_names().unwrap();
        for n in ["quaternion8", "klein4", "frobenius20", "sl23", "psl27"] {
            assert!(names.iter().any(|x| x == n), "{n}");
        }
        assert_eq!(get("psl27").unwrap().order(), 168);
        assert_eq!(get("psl27_projective").unwrap().order(), 168);
    }

    #[test]
    fn family_orders() {
        assert_eq!(get("alternating(5)").unwrap().order(), 60);
        assert!(get("cyclic(1)").unwrap().is_trivial());
        assert_eq!(get("dihedral(4)").unwrap().order(), 8);
        assert_eq!(get("symmetric(1)").unwrap().order(), 1);
        assert_eq!(get("alternating(2)").unwrap().order(), 1);
        assert_eq!(get("symmetric(6)").unwrap().order(), 720);
    }

    #[test]
    fn lookup_errors() {
        assert!(matches!(get("symmetric(10)"), Err(CatalogError::OutOfRange { .. })));
        assert!(matches!(get("dihedral(2)"), Err(CatalogError::OutOfRange { .. })));
        assert!(matches!(get("mathieu11"), Err(CatalogError::Unknown(_))));
        assert!(matches!(get("cyclic(x)"), Err(CatalogError::Unknown(_))));
    }

    #[test]
    fn wrong_order_fails_fast() {
        let mut e = entry("klein4").unwrap();
        e.expected_order = 8;
        assert!(matches!(
            e.enumerate(),
            Err(CatalogError::OrderMismatch { found: 4, .. })
        ));
    }

    #[test]
    fn expected_properties_hold() {
        let mut all = standard_entries().unwrap();
        for f in Family::ALL {
            for m in 1..=7 {
                if let Ok(e) = f.entry(m) {
                    all.push(e);
                }
            }
        }
        for e in all {
            let g = e.enumerate().unwrap();
            e.check_properties(&g).unwrap();
        }
    }

    #[test]
    fn upper_fitting_examples() {
        assert_eq!(oracle_fitting_height_upper(&get("symmetric(4)").unwrap()), Some(3));
        assert_eq!(oracle_fitting_height_upper(&get("quaternion8").unwrap()), Some(1));
        assert_eq!(oracle_fitting_height_upper(&get("alternating(5)").unwrap()), None);
        assert_eq!(oracle_fitting_height_upper(&get("cyclic(1)").unwrap()), Some(0));
        let r = upper_fitting_series(&get("symmetric(4)").unwrap());
        assert_eq!(r.orders(), vec![1, 4, 12, 24]);
    }

    #[test]
    fn coprime_witness_oracle() {
        let a5 = get("alternating(5)").unwrap();
        assert_eq!(oracle_coprime_witness(&a5, a5.element(0)), Some((0, 0)));
        let x = Permutation::from_cycles(5, &[[1, 2, 3, 4, 5]]).unwrap();
        let (a, b) = oracle_coprime_witness(&a5, &x).unwrap();
        assert_eq!(a5.element(a).commutator(a5.element(b)).unwrap(), x);
        let c6 = get("cyclic(6)").unwrap();
        assert_eq!(oracle_coprime_witness(&c6, &c6.generators()[0]), None);
    }

    #[test]
    fn records_round_trip() {
        let e = entry("frobenius20").unwrap();
        let back = parse_catalog_file(&e.to_record()).unwrap();
        assert_eq!(from_definition(0, back[0].clone()).unwrap(), e);
    }
}
