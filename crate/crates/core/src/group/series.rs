use super::closure::commutator_subgroup;
use super::FiniteGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    LowerFitting,
    /// Ascending; produced by the catalog oracle.
    UpperFitting,
}

/// The descending series [`series`] can compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LowerSeries {
    Derived,
    LowerCentral,
    LowerFitting,
}

impl From<LowerSeries> for SeriesKind {
    fn from(kind: LowerSeries) -> Self {
        match kind {
            LowerSeries::Derived => SeriesKind::Derived,
            LowerSeries::LowerCentral => SeriesKind::LowerCentral,
            LowerSeries::LowerFitting => SeriesKind::LowerFitting,
        }
    }
}

/// A chain of subgroups, computed until it becomes constant.
///
/// A series that reaches the trivial group ends with exactly one trivial
/// term. One that stabilizes above it ends with its fixed term repeated, so
/// the last two terms are equal exactly when `stabilized && !reaches_trivial`.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<FiniteGroup>,
    pub stabilized: bool,
    pub reaches_trivial: bool,
}

impl SeriesReport {
    pub fn orders(&self) -> Vec<usize> {
        self.terms.iter().map(FiniteGroup::order).collect()
    }

    pub fn last(&self) -> &FiniteGroup {
        self.terms.last().expect("a series has at least one term")
    }

    /// Iterates `step` from `start` until the chain is constant or `done` holds.
    pub(crate) fn iterate(
        kind: SeriesKind,
        start: FiniteGroup,
        mut step: impl FnMut(&FiniteGroup) -> FiniteGroup,
        done: impl Fn(&FiniteGroup) -> bool,
    ) -> SeriesReport {
        let mut terms = vec![start];
        loop {
            let last = terms.last().expect("nonempty");
            if done(last) {
                return SeriesReport {
                    kind,
                    terms,
                    stabilized: true,
                    reaches_trivial: true,
                };
            }
            let next = step(last);
            let fixed = &next == last;
            terms.push(next);
            if fixed {
                return SeriesReport {
                    kind,
                    terms,
                    stabilized: true,
                    reaches_trivial: false,
                };
            }
        }
    }
}

pub fn series(group: &FiniteGroup, kind: LowerSeries) -> SeriesReport {
    let done = |h: &FiniteGroup| h.is_trivial();
    match kind {
        LowerSeries::Derived => SeriesReport::iterate(
            kind.into(),
            group.clone(),
            |t| commutator_subgroup(group, t, t).expect("terms are subgroups"),
            done,
        ),
        LowerSeries::LowerCentral => lower_central(group),
        LowerSeries::LowerFitting => SeriesReport::iterate(kind.into(), group.clone(), gamma_infinity, done),
    }
}

fn lower_central(group: &FiniteGroup) -> SeriesReport {
    SeriesReport::iterate(
        SeriesKind::LowerCentral,
        group.clone(),
        |t| commutator_subgroup(group, t, group).expect("terms are subgroups"),
        |h| h.is_trivial(),
    )
}

/// Last term of the lower central series.
pub fn gamma_infinity(group: &FiniteGroup) -> FiniteGroup {
    lower_central(group).last().clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub is_nilpotent: bool,
    pub is_soluble: bool,
}

pub fn classify(group: &FiniteGroup) -> Classification {
    Classification {
        is_nilpotent: lower_central(group).reaches_trivial,
        is_soluble: series(group, LowerSeries::Derived).reaches_trivial,
    }
}

/// Number of nontrivial terms of the lower Fitting series, or `None` for an
/// insoluble group. The trivial group has height 0.
pub fn fitting_height(group: &FiniteGroup) -> Option<usize> {
    let report = series(group, LowerSeries::LowerFitting);
    report.reaches_trivial.then(|| report.terms.len() - 1)
}
