//! Exhaustive search for `(y, b)` on a small canonical block.
//!
//! Candidates `b` of order dividing 4 are enumerated in a fixed order. For
//! each, `[y, b] = x` means `y⁻¹ b⁻¹ y = x b⁻¹`, so `y` ranges over the
//! conjugators from `b⁻¹` to `x b⁻¹`; the first of odd order is taken.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::perm::{Parity, Permutation};

use super::construct::block_element;

/// Largest block the search accepts.
pub const SEARCH_POINT_LIMIT: usize = 11;

type Key = (Vec<usize>, Parity);
type Found = Option<(Permutation, Permutation)>;

fn cache() -> &'static Mutex<HashMap<Key, Found>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, Found>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// First `(y, b)` with `[y, b]` the canonical element with cycle lengths
/// `lengths`, `|y|` odd, `|b|` dividing 4 and `b` of parity `b_parity`.
/// `None` when there is none or the block exceeds [`SEARCH_POINT_LIMIT`].
pub fn search_block(lengths: &[usize], b_parity: Parity) -> Option<(Permutation, Permutation)> {
    let key = (lengths.to_vec(), b_parity);
    if let Some(hit) = cache().lock().expect("search cache").get(&key) {
        return hit.clone();
    }
    let found = run(lengths, b_parity);
    cache().lock().expect("search cache").insert(key, found.clone());
    found
}

fn run(lengths: &[usize], b_parity: Parity) -> Found {
    let n: usize = lengths.iter().sum();
    if n == 0 || n > SEARCH_POINT_LIMIT {
        return None;
    }
    let x = block_element(lengths);
    let mut found = None;
    let mut images: Vec<Option<u32>> = vec![None; n];
    for_each_order4(&mut images, &mut |b| {
        if b.parity() != b_parity {
            return false;
        }
        let beta = b.inverse();
        let target = x.then(&beta);
        if let Some(y) = odd_conjugator(&beta, &target) {
            debug_assert_eq!(y.commutator_unchecked(b), x);
            found = Some((y, b.clone()));
            return true;
        }
        false
    });
    found
}

/// Calls `visit` on every permutation of order dividing 4, built point by
/// point: the smallest open point is fixed, swapped with a later point, or
/// starts a 4-cycle. Stops when `visit` returns true.
fn for_each_order4(images: &mut Vec<Option<u32>>, visit: &mut dyn FnMut(&Permutation) -> bool) -> bool {
    let n = images.len();
    let Some(p) = images.iter().position(Option::is_none) else {
        let raw: Vec<u32> = images.iter().map(|v| v.expect("complete")).collect();
        return visit(&Permutation::from_raw(raw));
    };
    images[p] = Some(p as u32);
    if for_each_order4(images, visit) {
        return true;
    }
    let open: Vec<usize> = (p + 1..n).filter(|&q| images[q].is_none()).collect();
    for &q in &open {
        images[p] = Some(q as u32);
        images[q] = Some(p as u32);
        if for_each_order4(images, visit) {
            return true;
        }
        images[q] = None;
    }
    for &a in &open {
        for &b in &open {
            for &c in &open {
                if a == b || b == c || a == c {
                    continue;
                }
                images[p] = Some(a as u32);
                images[a] = Some(b as u32);
                images[b] = Some(c as u32);
                images[c] = Some(p as u32);
                if for_each_order4(images, visit) {
                    return true;
                }
                images[a] = None;
                images[b] = None;
                images[c] = None;
            }
        }
    }
    images[p] = None;
    false
}

/// Some `g` of odd order with `g⁻¹ from g = to`, if any.
fn odd_conjugator(from: &Permutation, to: &Permutation) -> Option<Permutation> {
    let mut lf = from.cycle_lengths();
    let mut lt = to.cycle_lengths();
    lf.sort_unstable();
    lt.sort_unstable();
    if lf != lt {
        return None;
    }
    let n = from.degree();
    let cyc = |p: &Permutation| -> Vec<Vec<u32>> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut t = s;
            while !seen[t] {
                seen[t] = true;
                c.push(t as u32);
                t = p.raw()[t] as usize;
            }
            out.push(c);
        }
        out
    };
    let fc = cyc(from);
    let tc = cyc(to);
    let mut used = vec![false; tc.len()];
    let mut g = vec![u32::MAX; n];
    assign(&fc, &tc, 0, &mut used, &mut g)
}

fn assign(fc: &[Vec<u32>], tc: &[Vec<u32>], k: usize, used: &mut [bool], g: &mut [u32]) -> Option<Permutation> {
    if k == fc.len() {
        let p = Permutation::from_raw(g.to_vec());
        return (p.order() % 2 == 1).then_some(p);
    }
    let src = &fc[k];
    for (s, dst) in tc.iter().enumerate() {
        if used[s] || dst.len() != src.len() {
            continue;
        }
        used[s] = true;
        for r in 0..dst.len() {
            for (t, &pt) in src.iter().enumerate() {
                g[pt as usize] = dst[(t + r) % dst.len()];
            }
            if let Some(p) = assign(fc, tc, k + 1, used, g) {
                return Some(p);
            }
        }
        used[s] = false;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(lengths: &[usize], parity: Parity) -> bool {
        match search_block(lengths, parity) {
            Some((y, b)) => {
                assert_eq!(y.commutator(&b).unwrap(), block_element(lengths));
                assert_eq!(y.order() % 2, 1);
                assert_eq!(4 % b.order(), 0);
                assert_eq!(b.parity(), parity);
                true
            }
            None => false,
        }
    }

    #[test]
    fn lone_three_cycle_joint_shapes() {
        assert!(check(&[3, 2, 2], Parity::Even));
        assert!(check(&[3, 3, 3], Parity::Even));
    }

    #[test]
    fn small_pair_odd_variants() {
        assert!(check(&[2, 4], Parity::Odd));
        assert!(!check(&[2, 2], Parity::Odd));
        assert!(!check(&[3], Parity::Even));
    }

    #[test]
    fn conjugator_enumeration_matches_brute_force() {
        // every element of S_5 of odd order conjugating from to to
        let from = Permutation::from_cycles(5, &[vec![1, 2]]).unwrap();
        let to = Permutation::from_cycles(5, &[vec![3, 5]]).unwrap();
        let g = odd_conjugator(&from, &to).unwrap();
        assert_eq!(from.conjugate_by(&g).unwrap(), to);
        assert_eq!(g.order() % 2, 1);
        let c4 = Permutation::from_cycles(5, &[vec![1, 2, 3, 4]]).unwrap();
        assert!(odd_conjugator(&from, &c4).is_none());
    }

    #[test]
    fn order4_enumeration_counts() {
        // elements with x^4 = 1 in S_4: 1 + 6 + 3 + 6 = 16; in S_5: 1 + 10 + 15 + 30 = 56
        for (n, expected) in [(4, 16), (5, 56)] {
            let mut count = 0;
            let mut images = vec![None; n];
            for_each_order4(&mut images, &mut |p| {
                assert_eq!(4 % p.order(), 0);
                count += 1;
                false
            });
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn oversized_block_is_refused() {
        assert!(search_block(&[3, 3, 3, 3], Parity::Even).is_none());
    }
}
