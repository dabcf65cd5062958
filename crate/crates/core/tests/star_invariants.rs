use coprimator_core::catalog::{self, oracle_fitting_height_upper};
use coprimator_core::group::{classify, fitting_height, normal_closure, quotient};
use coprimator_core::star::{delta_star_set, lemma_iterated_check, min_delta_trivial_level, star_subgroup, Family};
use coprimator_core::{FiniteGroup, Permutation};

fn soluble_standard() -> Vec<(String, FiniteGroup)> {
    catalog::standard_entries()
        .unwrap()
        .into_iter()
        .filter(|e| e.expected.soluble)
        .map(|e| (e.name.clone(), e.enumerate().unwrap()))
        .collect()
}

#[test]
fn fitting_criterion_on_soluble_catalog() {
    for (name, g) in soluble_standard() {
        let h = fitting_height(&g).unwrap();
        assert_eq!(min_delta_trivial_level(&g, h + 2), Some(h), "{name}");
        assert_eq!(oracle_fitting_height_upper(&g), Some(h), "{name}");
    }
}

#[test]
fn simple_groups_are_their_own_star_subgroups() {
    for name in ["alternating(5)", "alternating(6)", "psl27", "psl27_projective"] {
        let g = catalog::get(name).unwrap();
        for k in 0..=4 {
            assert_eq!(star_subgroup(&g, Family::Delta, k).unwrap(), g, "{name} k={k}");
        }
        assert_eq!(min_delta_trivial_level(&g, 6), None);
    }
}

#[test]
fn insoluble_groups_never_reach_trivial() {
    for name in ["symmetric(5)", "alternating(5)"] {
        let g = catalog::get(name).unwrap();
        assert!(!classify(&g).is_soluble);
        assert_eq!(min_delta_trivial_level(&g, 8), None);
    }
}

/// Distinct normal closures of single elements.
fn normal_subgroups(g: &FiniteGroup) -> Vec<FiniteGroup> {
    let mut out: Vec<FiniteGroup> = Vec::new();
    for c in g.conjugacy_classes() {
        let n = normal_closure(g, &[g.element(c[0] as usize).clone()]).unwrap();
        if !out.contains(&n) {
            out.push(n);
        }
    }
    out
}

#[test]
fn iterated_commutator_lemma_on_harness_instances() {
    let mut instances = 0;
    let mut groups = soluble_standard();
    groups.push(("alternating(5)".into(), catalog::get("alternating(5)").unwrap()));
    for (name, g) in groups {
        for n in normal_subgroups(&g) {
            for k in 1..=2 {
                let candidates: Vec<Permutation> = lemma_candidates(&g, &n, k);
                if candidates.is_empty() {
                    continue;
                }
                let ys: Vec<Permutation> = (0..k).map(|s| candidates[(s * 7) % candidates.len()].clone()).collect();
                assert_eq!(
                    lemma_iterated_check(&g, &n, &ys, k),
                    Ok(true),
                    "{name} |N|={} k={k}",
                    n.order()
                );
                instances += 1;
            }
        }
    }
    assert!(instances >= 10, "{instances}");
}

fn lemma_candidates(g: &FiniteGroup, n: &FiniteGroup, k: usize) -> Vec<Permutation> {
    delta_star_set(g, k)
        .elements()
        .filter(|y| {
            let coprime = gcd(y.order(), n.order() as u64) == 1;
            let normalizes = n.generators().iter().all(|h| n.contains(&h.conjugate_by(y).unwrap()));
            coprime && normalizes && !y.is_identity()
        })
        .cloned()
        .collect()
}

#[test]
fn quotient_images_cover_quotient_star_sets() {
    let s4 = catalog::get("symmetric(4)").unwrap();
    for n in normal_subgroups(&s4) {
        let q = quotient(&s4, &n).unwrap();
        for k in 0..=3 {
            let image: Vec<&Permutation> = delta_star_set(&s4, k)
                .elements()
                .map(|x| q.project(x).unwrap())
                .collect();
            for t in delta_star_set(q.quotient(), k).elements() {
                assert!(image.contains(&t), "|N|={} k={k}", n.order());
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
