//! Every even permutation of degree `n ≥ 5` as `[y, b]` with `|y|` odd and
//! `|b|` dividing 4.
//!
//! `x` is cut into blocks: single odd cycles of length at least 5, pairs of
//! even cycles, and pairs of 3-cycles. Each block gets `(y, b)` on its own
//! points from a construction on canonical labels, relabeled by the
//! order-preserving map onto the block's cycles; the blocks' parts are then
//! multiplied together.
//!
//! A lone 3-cycle only admits an odd `b` on its own points. Its partner is,
//! in order of preference, a transposition of two fixed points of `x`, the
//! odd-`b` variant of another block, or a joint search over the 3-cycle and
//! one more block.

mod construct;
mod search;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::perm::{parse_cycles, Parity, Permutation};

pub use search::{search_block, SEARCH_POINT_LIMIT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    OddMEven,
    OddMOdd,
    PairILtJEven,
    PairILtJOdd,
    PairIEqJ,
    ThreeCycleRepair,
    FallbackSearch,
}

impl CaseTag {
    pub const ALL: [CaseTag; 7] = [
        CaseTag::OddMEven,
        CaseTag::OddMOdd,
        CaseTag::PairILtJEven,
        CaseTag::PairILtJOdd,
        CaseTag::PairIEqJ,
        CaseTag::ThreeCycleRepair,
        CaseTag::FallbackSearch,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::OddMEven => "odd_m_even",
            CaseTag::OddMOdd => "odd_m_odd",
            CaseTag::PairILtJEven => "pair_i_lt_j_even",
            CaseTag::PairILtJOdd => "pair_i_lt_j_odd",
            CaseTag::PairIEqJ => "pair_i_eq_j",
            CaseTag::ThreeCycleRepair => "three_cycle_repair",
            CaseTag::FallbackSearch => "fallback_search",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown case tag `{0}`")]
pub struct UnknownCaseTag(pub String);

impl FromStr for CaseTag {
    type Err = UnknownCaseTag;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownCaseTag(s.to_string()))
    }
}

/// One block of `x` and the construction used for it.
///
/// `cycles` are the block's cycles of `x`; a pair of fixed points used by a
/// 3-cycle repair appears as two 1-cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPart {
    pub cycles: Vec<Vec<u32>>,
    pub case: CaseTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub x: Permutation,
    pub y: Permutation,
    pub b: Permutation,
    pub parts: Vec<WitnessPart>,
}

impl Witness {
    /// Distinct case tags in order of first use.
    pub fn cases(&self) -> Vec<CaseTag> {
        let mut out = Vec::new();
        for p in &self.parts {
            if !out.contains(&p.case) {
                out.push(p.case);
            }
        }
        out
    }

    /// `x=<cycles> y=<cycles> b=<cycles> case=<tags>`.
    pub fn certificate_line(&self) -> String {
        let cases = self.cases();
        let tags = if cases.is_empty() {
            "none".to_string()
        } else {
            cases.iter().map(|c| c.as_str()).collect::<Vec<_>>().join(",")
        };
        format!("x={} y={} b={} case={}", self.x, self.y, self.b, tags)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("degree {0} is below 5")]
    DegreeTooSmall(usize),
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("{0} is an odd permutation")]
    OddPermutation(Permutation),
    #[error("cycle of length {0} is not handled by this construction")]
    UnsupportedCycle(usize),
    #[error("cycle points are out of range or repeated")]
    BadCycle,
    #[error("no witness found for {x}: {detail}")]
    Exhausted { x: Permutation, detail: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessDefect {
    DegreeMismatch,
    CommutatorMismatch { commutator: Permutation },
    YOrderEven { order: u64 },
    BOrderNotDividing4 { order: u64 },
    YOdd,
    BOdd,
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessDefect::DegreeMismatch => f.write_str("x, y and b have different degrees"),
            WitnessDefect::CommutatorMismatch { commutator } => write!(f, "[y,b] = {commutator} differs from x"),
            WitnessDefect::YOrderEven { order } => write!(f, "order of y is {order}, not odd"),
            WitnessDefect::BOrderNotDividing4 { order } => write!(f, "order of b is {order}, not dividing 4"),
            WitnessDefect::YOdd => f.write_str("y is an odd permutation"),
            WitnessDefect::BOdd => f.write_str("b is an odd permutation"),
        }
    }
}

/// Re-checks a witness from its three permutations alone.
pub fn verify_witness(w: &Witness) -> Result<(), Vec<WitnessDefect>> {
    verify_triple(&w.x, &w.y, &w.b)
}

pub fn verify_triple(x: &Permutation, y: &Permutation, b: &Permutation) -> Result<(), Vec<WitnessDefect>> {
    if x.degree() != y.degree() || x.degree() != b.degree() {
        return Err(vec![WitnessDefect::DegreeMismatch]);
    }
    let mut defects = Vec::new();
    let c = y.commutator_unchecked(b);
    if &c != x {
        defects.push(WitnessDefect::CommutatorMismatch { commutator: c });
    }
    let oy = y.order();
    if oy.is_multiple_of(2) {
        defects.push(WitnessDefect::YOrderEven { order: oy });
    }
    let ob = b.order();
    if 4 % ob != 0 {
        defects.push(WitnessDefect::BOrderNotDividing4 { order: ob });
    }
    if !y.is_even() {
        defects.push(WitnessDefect::YOdd);
    }
    if !b.is_even() {
        defects.push(WitnessDefect::BOdd);
    }
    if defects.is_empty() {
        Ok(())
    } else {
        Err(defects)
    }
}

/// Maps a canonical permutation on `1..=pts.len()` onto the points `pts`.
fn relabel(p: &Permutation, pts: &[u32], n: usize) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    for (t, &src) in pts.iter().enumerate() {
        images[src as usize - 1] = pts[p.raw()[t] as usize] - 1;
    }
    Permutation::from_raw(images)
}

fn check_cycle(cycle: &[u32], n: usize, seen: &mut [bool]) -> Result<(), WitnessError> {
    for &p in cycle {
        if p == 0 || p as usize > n || seen[p as usize - 1] {
            return Err(WitnessError::BadCycle);
        }
        seen[p as usize - 1] = true;
    }
    Ok(())
}

/// `(y, b)` of degree `n` with `[y, b]` the cycle `c`, for odd length `≥ 5`.
pub fn witness_odd_cycle(c: &[u32], n: usize) -> Result<(Permutation, Permutation), WitnessError> {
    let l = c.len();
    if l.is_multiple_of(2) || l < 5 {
        return Err(WitnessError::UnsupportedCycle(l));
    }
    check_cycle(c, n, &mut vec![false; n])?;
    let k = construct::odd_cycle(l);
    Ok((relabel(&k.y, c, n), relabel(&k.b, c, n)))
}

/// `(y, b)` of degree `n` with `[y, b] = c1·c2` for disjoint even cycles.
pub fn witness_even_pair(c1: &[u32], c2: &[u32], n: usize) -> Result<(Permutation, Permutation), WitnessError> {
    for c in [c1, c2] {
        if c.len() % 2 == 1 {
            return Err(WitnessError::UnsupportedCycle(c.len()));
        }
    }
    let mut seen = vec![false; n];
    check_cycle(c1, n, &mut seen)?;
    check_cycle(c2, n, &mut seen)?;
    let (short, long) = if c1.len() <= c2.len() { (c1, c2) } else { (c2, c1) };
    let k = construct::even_pair(short.len() / 2, long.len() / 2);
    let pts: Vec<u32> = short.iter().chain(long).copied().collect();
    Ok((relabel(&k.y, &pts, n), relabel(&k.b, &pts, n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Shape {
    Odd(usize),
    Pair(usize, usize),
    ThreePair,
}

#[derive(Debug, Clone)]
struct Block {
    shape: Shape,
    cycles: Vec<Vec<u32>>,
    y: Permutation,
    b: Permutation,
    case: CaseTag,
}

impl Block {
    fn points(&self) -> Vec<u32> {
        self.cycles.iter().flatten().copied().collect()
    }

    fn lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    fn default_for(shape: Shape, cycles: Vec<Vec<u32>>) -> Block {
        let (y, b, case) = match shape {
            Shape::Odd(l) => {
                let k = construct::odd_cycle(l);
                (k.y, k.b, k.case)
            }
            Shape::Pair(i, j) => {
                let k = construct::even_pair(i, j);
                (k.y, k.b, k.case)
            }
            Shape::ThreePair => {
                let (y, b) = construct::three_cycle_pair();
                (y, b, CaseTag::ThreeCycleRepair)
            }
        };
        Block {
            shape,
            cycles,
            y,
            b,
            case,
        }
    }

    /// Replaces the construction by one with an odd `b`, if the shape has one.
    fn switch_to_odd_b(&mut self) -> bool {
        let found = match self.shape {
            Shape::Odd(l) => Some((construct::odd_cycle_odd_b(l), CaseTag::ThreeCycleRepair)),
            Shape::Pair(i, j) => match construct::even_pair_odd_b(i, j) {
                Some(yb) => Some((yb, CaseTag::ThreeCycleRepair)),
                None => search_block(&self.lengths(), Parity::Odd).map(|yb| (yb, CaseTag::FallbackSearch)),
            },
            Shape::ThreePair => None,
        };
        match found {
            Some(((y, b), case)) => {
                self.y = y;
                self.b = b;
                self.case = case;
                true
            }
            None => false,
        }
    }
}

/// Decomposes an even permutation `x` of degree `n ≥ 5` as `[y, b]`.
pub fn witness(x: &Permutation, n: usize) -> Result<Witness, WitnessError> {
    if n < 5 {
        return Err(WitnessError::DegreeTooSmall(n));
    }
    if x.degree() != n {
        return Err(WitnessError::DegreeMismatch {
            expected: n,
            found: x.degree(),
        });
    }
    if !x.is_even() {
        return Err(WitnessError::OddPermutation(x.clone()));
    }

    let cycles = x.cycles().cycles;
    let mut blocks: Vec<Block> = Vec::new();
    let mut evens: Vec<Vec<u32>> = Vec::new();
    let mut threes: Vec<Vec<u32>> = Vec::new();
    let mut odds: Vec<Vec<u32>> = Vec::new();
    for c in cycles {
        match c.len() {
            3 => threes.push(c),
            l if l % 2 == 1 => odds.push(c),
            _ => evens.push(c),
        }
    }
    odds.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for c in odds {
        blocks.push(Block::default_for(Shape::Odd(c.len()), vec![c]));
    }
    evens.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let half = evens.len() / 2;
    for k in 0..half {
        let long = evens[k].clone();
        let short = evens[evens.len() - 1 - k].clone();
        let shape = Shape::Pair(short.len() / 2, long.len() / 2);
        blocks.push(Block::default_for(shape, vec![short, long]));
    }
    let lone = if threes.len() % 2 == 1 { threes.pop() } else { None };
    for pair in threes.chunks(2) {
        blocks.push(Block::default_for(Shape::ThreePair, pair.to_vec()));
    }

    let mut extra: Vec<(Permutation, Permutation, WitnessPart)> = Vec::new();
    if let Some(c) = lone {
        let (y3, b3) = construct::three_cycle();
        let mut lone_part = Some((y3, b3));
        let fixed: Vec<u32> = (1..=n as u32).filter(|&t| x.image(t) == t).collect();
        if fixed.len() >= 2 {
            let (q, r) = (fixed[0], fixed[1]);
            let t = Permutation::from_cycles(n, &[[q, r]]).expect("fixed points");
            extra.push((
                Permutation::identity(n),
                t,
                WitnessPart {
                    cycles: vec![vec![q], vec![r]],
                    case: CaseTag::ThreeCycleRepair,
                },
            ));
        } else if !blocks.iter_mut().any(Block::switch_to_odd_b) {
            let partner = blocks
                .iter()
                .position(|b| b.shape == Shape::Pair(1, 1))
                .or_else(|| blocks.iter().position(|b| b.shape == Shape::ThreePair));
            let joint = partner.and_then(|k| {
                let mut cyc = vec![c.clone()];
                cyc.extend(blocks[k].cycles.iter().cloned());
                let lengths: Vec<usize> = cyc.iter().map(Vec::len).collect();
                search_block(&lengths, Parity::Even).map(|(y, b)| (k, cyc, y, b))
            });
            let Some((k, cyc, y, b)) = joint else {
                return Err(WitnessError::Exhausted {
                    x: x.clone(),
                    detail: format!(
                        "lone 3-cycle {c:?} with blocks {:?}",
                        blocks.iter().map(Block::lengths).collect::<Vec<_>>()
                    ),
                });
            };
            blocks[k] = Block {
                shape: blocks[k].shape,
                cycles: cyc,
                y,
                b,
                case: CaseTag::FallbackSearch,
            };
            lone_part = None;
        }
        if let Some((y3, b3)) = lone_part {
            extra.insert(
                0,
                (
                    relabel(&y3, &c, n),
                    relabel(&b3, &c, n),
                    WitnessPart {
                        cycles: vec![c],
                        case: CaseTag::ThreeCycleRepair,
                    },
                ),
            );
        }
    }

    let mut y = Permutation::identity(n);
    let mut b = Permutation::identity(n);
    let mut parts = Vec::new();
    for blk in &blocks {
        let pts = blk.points();
        y = y.then(&relabel(&blk.y, &pts, n));
        b = b.then(&relabel(&blk.b, &pts, n));
        parts.push(WitnessPart {
            cycles: blk.cycles.clone(),
            case: blk.case,
        });
    }
    for (py, pb, part) in extra {
        y = y.then(&py);
        b = b.then(&pb);
        parts.push(part);
    }
    let w = Witness {
        x: x.clone(),
        y,
        b,
        parts,
    };
    if let Err(defects) = verify_witness(&w) {
        return Err(WitnessError::Exhausted {
            x: x.clone(),
            detail: format!(
                "assembled y={} b={} failed verification: {}",
                w.y,
                w.b,
                defects.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
            ),
        });
    }
    Ok(w)
}

/// A parsed certificate line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub x: Permutation,
    pub y: Permutation,
    pub b: Permutation,
    pub cases: Vec<CaseTag>,
}

impl Certificate {
    pub fn verify(&self) -> Result<(), Vec<WitnessDefect>> {
        verify_triple(&self.x, &self.y, &self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("missing field `{0}`")]
    MissingField(&'static str),
    #[error("unexpected token `{0}`")]
    UnexpectedToken(String),
    #[error("field `{field}`: {message}")]
    BadField { field: &'static str, message: String },
}

/// Parses `x=… y=… b=… case=…`. The degree is the largest point mentioned,
/// at least 5, unless `degree` is given.
pub fn parse_certificate(line: &str, degree: Option<usize>) -> Result<Certificate, CertificateError> {
    let mut fields: BTreeMap<&str, &str> = BTreeMap::new();
    for tok in line.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| CertificateError::UnexpectedToken(tok.to_string()))?;
        let key = match k {
            "x" => "x",
            "y" => "y",
            "b" => "b",
            "case" => "case",
            _ => return Err(CertificateError::UnexpectedToken(tok.to_string())),
        };
        if fields.insert(key, v).is_some() {
            return Err(CertificateError::UnexpectedToken(tok.to_string()));
        }
    }
    let get = |k: &'static str| fields.get(k).copied().ok_or(CertificateError::MissingField(k));
    let (xs, ys, bs) = (get("x")?, get("y")?, get("b")?);
    let n = degree.unwrap_or_else(|| {
        [xs, ys, bs]
            .iter()
            .flat_map(|s| s.split(|c: char| !c.is_ascii_digit()))
            .filter_map(|t| t.parse::<usize>().ok())
            .max()
            .unwrap_or(0)
            .max(5)
    });
    let perm = |field: &'static str, s: &str| {
        parse_cycles(s, n).map_err(|e| CertificateError::BadField {
            field,
            message: e.to_string(),
        })
    };
    let cases = match fields.get("case") {
        None | Some(&"none") => Vec::new(),
        Some(tags) => tags
            .split(',')
            .map(|t| {
                t.parse().map_err(|e: UnknownCaseTag| CertificateError::BadField {
                    field: "case",
                    message: e.to_string(),
                })
            })
            .collect::<Result<_, _>>()?,
    };
    Ok(Certificate {
        x: perm("x", xs)?,
        y: perm("y", ys)?,
        b: perm("b", bs)?,
        cases,
    })
}

/// One even permutation per cycle type of `A_n`, cycles laid out on
/// consecutive points, longest cycle first.
pub fn even_cycle_type_representatives(n: usize) -> Vec<Permutation> {
    fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            partitions(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    partitions(n, n, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|p| p.iter().filter(|&&l| l % 2 == 0).count() % 2 == 0)
        .map(|p| construct::block_element(&p))
        .collect()
}

/// Outcome of building and verifying witnesses for many elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub total: usize,
    pub verified: usize,
    /// Elements whose construction failed, with the error message.
    pub failures: Vec<(Permutation, String)>,
    /// Number of witnesses using each case tag.
    pub case_counts: BTreeMap<CaseTag, usize>,
}

/// Runs [`witness`] on every element; results land in input order.
pub fn witness_sweep(elements: &[Permutation], n: usize) -> SweepReport {
    let results: Vec<Result<Vec<CaseTag>, String>> = elements
        .par_iter()
        .map(|x| witness(x, n).map(|w| w.cases()).map_err(|e| e.to_string()))
        .collect();
    let mut report = SweepReport {
        total: elements.len(),
        ..SweepReport::default()
    };
    for (x, r) in elements.iter().zip(results) {
        match r {
            Ok(cases) => {
                report.verified += 1;
                for c in cases {
                    *report.case_counts.entry(c).or_default() += 1;
                }
            }
            Err(e) => report.failures.push((x.clone(), e)),
        }
    }
    report
}
