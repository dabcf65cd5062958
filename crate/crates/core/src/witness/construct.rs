//! Per-block constructions on canonical labels.
//!
//! An odd cycle block of length `ℓ` is `(1,2,…,ℓ)`. A pair block of even
//! cycles of lengths `2i ≤ 2j` is `(1,…,2i)(2i+1,…,2i+2j)`. Every builder
//! returns `(y, b)` on those labels with `[y, b]` equal to the block element,
//! `|y|` odd and `|b|` dividing 4.

use crate::perm::Permutation;

use super::CaseTag;

/// Left-to-right product of (possibly overlapping) cycles on `1..=n`.
pub(crate) fn product(n: usize, cycles: &[Vec<u32>]) -> Permutation {
    let mut acc = Permutation::identity(n);
    for c in cycles {
        let p = Permutation::from_cycles(n, &[c]).expect("canonical cycle");
        acc = acc.then(&p);
    }
    acc
}

pub(crate) fn block_element(lengths: &[usize]) -> Permutation {
    let n: usize = lengths.iter().sum();
    let mut cycles = Vec::new();
    let mut next = 1u32;
    for &l in lengths {
        cycles.push((next..next + l as u32).collect::<Vec<_>>());
        next += l as u32;
    }
    product(n, &cycles)
}

#[derive(Debug, Clone)]
pub(crate) struct Canonical {
    pub y: Permutation,
    pub b: Permutation,
    pub case: CaseTag,
}

/// The default construction for an odd cycle, `ℓ ≥ 5`.
pub(crate) fn odd_cycle(l: usize) -> Canonical {
    debug_assert!(l >= 5 && l % 2 == 1);
    let n = l as u32;
    let m = (n - 1) / 2;
    if m.is_multiple_of(2) {
        let x = block_element(&[l]);
        let b = product(l, &(1..=m).map(|t| vec![t, n + 1 - t]).collect::<Vec<_>>());
        Canonical {
            y: x.pow(m as i64),
            b,
            case: CaseTag::OddMEven,
        }
    } else {
        let (y, b) = odd_cycle_y1_b(l);
        let b1 = product(l, &[vec![m + 1, m + 2]]).then(&b);
        Canonical {
            y,
            b: b1,
            case: CaseTag::OddMOdd,
        }
    }
}

/// `y_1 = (n, m, n−1, m−1, …, 1)` and `b = (n−1,n)(1,n−2)…(m−1,m+1)` for
/// `m = (ℓ−1)/2` odd. Here `b` is an odd involution; at `ℓ = 3` this is the
/// 3-cycle itself with `b = (2,3)`.
fn odd_cycle_y1_b(l: usize) -> (Permutation, Permutation) {
    let n = l as u32;
    let m = (n - 1) / 2;
    let mut y1 = vec![n, m, n - 1];
    y1.extend((1..m).rev());
    let y = product(l, &[y1]);
    let mut trans = vec![vec![n - 1, n]];
    trans.extend((1..m).map(|t| vec![t, n - 1 - t]));
    (y, product(l, &trans))
}

/// A construction for the odd cycle whose `b` is an odd permutation, for
/// every odd `ℓ ≥ 3`.
///
/// For `ℓ ≡ 1 (mod 4)`: `y = (1,2,3,4,n,n−1,…,(n+5)/2)` and
/// `b = (1,2,4,3)·∏(t, n+5−t)` over `5 ≤ t ≤ (n+3)/2`.
pub(crate) fn odd_cycle_odd_b(l: usize) -> (Permutation, Permutation) {
    debug_assert!(l >= 3 && l % 2 == 1);
    let n = l as u32;
    if ((n - 1) / 2) % 2 == 1 {
        return odd_cycle_y1_b(l);
    }
    let mut ycyc = vec![1, 2, 3, 4];
    ycyc.extend(((n + 5) / 2..=n).rev());
    let mut bcyc = vec![vec![1, 2, 4, 3]];
    bcyc.extend((5..=(n + 3) / 2).map(|t| vec![t, n + 5 - t]));
    (product(l, &[ycyc]), product(l, &bcyc))
}

struct PairParts {
    n: u32,
    y2: Permutation,
    a2: Option<Permutation>,
}

fn pair_parts(i: usize, j: usize) -> PairParts {
    let (i, j) = (i as u32, j as u32);
    let n = 2 * i + 2 * j;
    let deg = n as usize;
    let mut y2 = vec![2 * i];
    y2.extend((i + j + 1..=n).rev());
    let y2 = product(deg, &[y2]);
    let a2 = (i < j).then(|| {
        let mut cycles = vec![vec![2 * j + 1, 2 * i, i + j + 1, i + j]];
        cycles.extend(
            (1..=i + j)
                .filter(|&m| m != i + j && m != 2 * i)
                .map(|m| vec![m, n + 1 - m]),
        );
        product(deg, &cycles)
    });
    PairParts { n, y2, a2 }
}

/// The default construction for a pair of even cycles, `1 ≤ i ≤ j`.
pub(crate) fn even_pair(i: usize, j: usize) -> Canonical {
    debug_assert!(1 <= i && i <= j);
    let parts = pair_parts(i, j);
    let n = parts.n;
    let deg = n as usize;
    let (i32_, j32) = (i as u32, j as u32);
    match parts.a2 {
        None => {
            let a3 = product(deg, &(1..=2 * i32_).map(|t| vec![t, n + 1 - t]).collect::<Vec<_>>());
            Canonical {
                y: parts.y2,
                b: a3,
                case: CaseTag::PairIEqJ,
            }
        }
        Some(a2) if (i + j).is_multiple_of(2) => {
            let (l, k) = b0_points(i32_, j32);
            let b = product(deg, &[vec![l, k]]).then(&a2);
            Canonical {
                y: parts.y2,
                b,
                case: CaseTag::PairILtJEven,
            }
        }
        Some(a2) => {
            let y3 = product(deg, &[vec![1, n]]).then(&parts.y2);
            Canonical {
                y: y3,
                b: a2,
                case: CaseTag::PairILtJOdd,
            }
        }
    }
}

/// The two smallest points of `{1,…,i+j} \ {2i, i+j}`; both are fixed by `y_2`.
fn b0_points(i: u32, j: u32) -> (u32, u32) {
    let mut free = (1..=i + j).filter(|&m| m != 2 * i && m != i + j);
    let l = free.next().expect("i+j ≥ 4");
    let k = free.next().expect("i+j ≥ 4");
    (l, k)
}

/// A construction for the pair whose `b` is odd, when one follows from the
/// default by the formulas: `(y_2, a_2)` for `i < j` with `i+j` even, else
/// the default `b` multiplied by a transposition of two `y`-fixed points.
pub(crate) fn even_pair_odd_b(i: usize, j: usize) -> Option<(Permutation, Permutation)> {
    let parts = pair_parts(i, j);
    if i < j && (i + j).is_multiple_of(2) {
        return Some((parts.y2, parts.a2.expect("i < j")));
    }
    let base = even_pair(i, j);
    let fixed: Vec<u32> = (1..=parts.n).filter(|&t| base.y.image(t) == t).collect();
    for (s, &q) in fixed.iter().enumerate() {
        for &r in &fixed[s + 1..] {
            let b = product(parts.n as usize, &[vec![q, r]]).then(&base.b);
            if 4 % b.order() == 0 {
                return Some((base.y.clone(), b));
            }
        }
    }
    None
}

/// `(y, b)` for a lone 3-cycle: `y` is the cycle, `b` its middle transposition.
pub(crate) fn three_cycle() -> (Permutation, Permutation) {
    (product(3, &[vec![1, 2, 3]]), product(3, &[vec![2, 3]]))
}

pub(crate) fn three_cycle_pair() -> (Permutation, Permutation) {
    (
        product(6, &[vec![1, 2, 3], vec![4, 5, 6]]),
        product(6, &[vec![2, 3], vec![5, 6]]),
    )
}
