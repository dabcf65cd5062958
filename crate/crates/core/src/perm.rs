//! Permutations of `{1..n}`.
//!
//! Products are executed **left to right**: `p.compose(&q)` first applies
//! `p`, then `q`, so `(p.compose(&q))(t) = q(p(t))`. Conjugation follows the
//! same convention, `x^g = g⁻¹ x g`, and the commutator is
//! `[x, y] = x⁻¹ y⁻¹ x y`. Many libraries use the opposite order; every
//! formula in this crate assumes the left-to-right one.
//!
//! Points are 1-based in every public API. Internally the image table is
//! stored 0-based.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("image table is not a bijection of 1..={degree}")]
    NotBijection { degree: usize },
    #[error("point {point} outside 1..={degree}")]
    PointOutOfRange { point: u32, degree: usize },
    #[error("point {point} appears in more than one cycle position")]
    RepeatedPoint { point: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cycle notation error at byte {position}: {kind}")]
pub struct ParseCyclesError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    Unexpected(char),
    UnexpectedEnd,
    ExpectedNumber,
    CycleTooShort,
    PointOutOfRange { point: u64, degree: usize },
    RepeatedPoint(u32),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty expression"),
            ParseErrorKind::Unexpected(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::ExpectedNumber => write!(f, "expected a point"),
            ParseErrorKind::CycleTooShort => write!(f, "a cycle needs at least two points"),
            ParseErrorKind::PointOutOfRange { point, degree } => {
                write!(f, "point {point} outside 1..={degree}")
            }
            ParseErrorKind::RepeatedPoint(p) => write!(f, "repeated point {p}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }
}

/// Sum in `Z/2`.
impl std::ops::Add for Parity {
    type Output = Parity;

    fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// A bijection of `{1..n}`.
///
/// Ordering is lexicographic on the image sequence, so the identity is the
/// smallest permutation of any given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u32]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        assert!(degree > 0, "permutation degree must be positive");
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its 1-based image sequence.
    pub fn from_images(images: &[u32]) -> Result<Self, PermError> {
        let degree = images.len();
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut seen = vec![false; degree];
        let mut table = Vec::with_capacity(degree);
        for &img in images {
            if img == 0 || img as usize > degree || seen[img as usize - 1] {
                return Err(PermError::NotBijection { degree });
            }
            seen[img as usize - 1] = true;
            table.push(img - 1);
        }
        Ok(Permutation {
            images: table.into_boxed_slice(),
        })
    }

    /// From 0-based images; the caller guarantees bijectivity.
    pub(crate) fn from_raw(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation {
            images: images.into_boxed_slice(),
        }
    }

    /// Builds a permutation from disjoint cycles given in 1-based points.
    ///
    /// Cycles of length one are accepted and ignored.
    pub fn from_cycles<C: AsRef<[u32]>>(degree: usize, cycles: &[C]) -> Result<Self, PermError> {
        if degree == 0 {
            return Err(PermError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &p in cycle {
                if p == 0 || p as usize > degree {
                    return Err(PermError::PointOutOfRange { point: p, degree });
                }
                if used[p as usize - 1] {
                    return Err(PermError::RepeatedPoint { point: p });
                }
                used[p as usize - 1] = true;
            }
            for (k, &p) in cycle.iter().enumerate() {
                let next = cycle[(k + 1) % cycle.len()];
                images[p as usize - 1] = next - 1;
            }
        }
        Ok(Permutation::from_raw(images))
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `p`.
    pub fn image(&self, p: u32) -> u32 {
        self.images[p as usize - 1] + 1
    }

    /// 1-based image sequence.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.then(other))
    }

    pub(crate) fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation::from_raw(inv)
    }

    /// `[self, other] = self⁻¹ other⁻¹ self other`.
    pub fn commutator(&self, other: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(other)?;
        Ok(self.commutator_unchecked(other))
    }

    pub(crate) fn commutator_unchecked(&self, other: &Permutation) -> Permutation {
        self.inverse().then(&other.inverse()).then(self).then(other)
    }

    /// `g⁻¹ self g`: relabels every point `t` of each cycle as `g(t)`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation, PermError> {
        self.check_degree(g)?;
        let mut images = vec![0u32; self.degree()];
        for (t, &img) in self.images.iter().enumerate() {
            images[g.images[t] as usize] = g.images[img as usize];
        }
        Ok(Permutation::from_raw(images))
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        if e <= 3 {
            let mut acc = Permutation::identity(self.degree());
            for _ in 0..e {
                acc = acc.then(&base);
            }
            return acc;
        }
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.then(&sq);
            }
        }
        acc
    }

    /// Least `m ≥ 1` with `self^m = 1`, the lcm of the cycle lengths.
    ///
    /// Panics if the order does not fit in a `u64` (degrees beyond a few
    /// hundred points).
    pub fn order(&self) -> u64 {
        self.cycle_lengths().into_iter().fold(1u64, |acc, len| {
            let g = gcd(acc, len as u64);
            (acc / g)
                .checked_mul(len as u64)
                .expect("permutation order overflows u64")
        })
    }

    pub fn parity(&self) -> Parity {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        if transpositions.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity().is_even()
    }

    /// Lengths of all nontrivial cycles, in canonical cycle order.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                t = self.images[t] as usize;
                len += 1;
            }
            if len > 1 {
                lengths.push(len);
            }
        }
        lengths
    }

    pub fn cycles(&self) -> CycleDecomposition {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut t = start;
            while !seen[t] {
                seen[t] = true;
                cycle.push(t as u32 + 1);
                t = self.images[t] as usize;
            }
            cycles.push(cycle);
        }
        CycleDecomposition { degree: n, cycles }
    }

    /// Moved points, ascending.
    pub fn support(&self) -> Vec<u32> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &v)| *i as u32 != v)
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// Canonical cycle notation, no whitespace; the identity is `()`.
    pub fn to_cycle_string(&self) -> String {
        self.cycles().to_string()
    }

    fn check_degree(&self, other: &Permutation) -> Result<(), PermError> {
        if self.degree() != other.degree() {
            return Err(PermError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.cycles(), f)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[n={}]", self, self.degree())
    }
}

/// Disjoint cycle decomposition in canonical form: each cycle starts at its
/// smallest point and cycles are sorted by first point. Fixed points are
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub degree: usize,
    pub cycles: Vec<Vec<u32>>,
}

impl CycleDecomposition {
    pub fn support(&self) -> Vec<u32> {
        let mut pts: Vec<u32> = self.cycles.iter().flatten().copied().collect();
        pts.sort_unstable();
        pts
    }

    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.degree, &self.cycles).expect("canonical decomposition is disjoint and in range")
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Parses cycle notation: `id`, `()`, or one or more cycles like `(1,2,3)(4,5)`.
///
/// Whitespace is ignored. Cycles must be disjoint; a point repeated anywhere
/// in the expression is rejected.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Permutation, ParseCyclesError> {
    let err = |position, kind| ParseCyclesError { position, kind };
    let tokens: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    if tokens.is_empty() {
        return Err(err(0, ParseErrorKind::Empty));
    }
    let compact: String = tokens.iter().map(|(_, c)| *c).collect();
    if compact == "id" || compact == "()" {
        if degree == 0 {
            return Err(err(0, ParseErrorKind::PointOutOfRange { point: 0, degree }));
        }
        return Ok(Permutation::identity(degree));
    }

    let mut used = vec![false; degree];
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut i = 0;
    let end = text.len();
    while i < tokens.len() {
        let (pos, c) = tokens[i];
        if c != '(' {
            return Err(err(pos, ParseErrorKind::Unexpected(c)));
        }
        i += 1;
        let mut cycle = Vec::new();
        loop {
            // point
            let start = match tokens.get(i) {
                Some(&(p, c)) if c.is_ascii_digit() => p,
                Some(_) => return Err(err(tokens[i].0, ParseErrorKind::ExpectedNumber)),
                None => return Err(err(end, ParseErrorKind::UnexpectedEnd)),
            };
            let mut value: u64 = 0;
            while let Some(&(_, c)) = tokens.get(i) {
                let Some(d) = c.to_digit(10) else { break };
                value = value.saturating_mul(10).saturating_add(d as u64);
                i += 1;
            }
            if value == 0 || value > degree as u64 {
                return Err(err(start, ParseErrorKind::PointOutOfRange { point: value, degree }));
            }
            let point = value as u32;
            if used[point as usize - 1] {
                return Err(err(start, ParseErrorKind::RepeatedPoint(point)));
            }
            used[point as usize - 1] = true;
            cycle.push(point);
            match tokens.get(i) {
                Some(&(_, ',')) => i += 1,
                Some(&(p, ')')) => {
                    if cycle.len() < 2 {
                        return Err(err(p, ParseErrorKind::CycleTooShort));
                    }
                    i += 1;
                    break;
                }
                Some(&(p, c)) => return Err(err(p, ParseErrorKind::Unexpected(c))),
                None => return Err(err(end, ParseErrorKind::UnexpectedEnd)),
            }
        }
        cycles.push(cycle);
    }
    Ok(Permutation::from_cycles(degree, &cycles).expect("validated above"))
}

/// Canonical text form, the inverse of [`parse_cycles`].
pub fn format_cycles(p: &Permutation) -> String {
    p.to_cycle_string()
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn is_bijection(images: &[u32]) -> bool {
    let mut seen = vec![false; images.len()];
    images.iter().all(|&v| {
        let ok = (v as usize) < images.len() && !seen[v as usize];
        if ok {
            seen[v as usize] = true;
        }
        ok
    })
}
