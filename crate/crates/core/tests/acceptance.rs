//! Acceptance criteria, one pass/fail line each. Exits nonzero when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use coprimator_core::catalog::{self, oracle_coprime_witness, oracle_fitting_height_upper, CatalogEntry};
use coprimator_core::group::{classify, fitting_height, normal_closure, o_pi, quotient, series, LowerSeries};
use coprimator_core::star::{
    commutator_order_primes, coprime_commutator_coverage, delta_star_set, gamma_star_set, min_delta_trivial_level,
    star_subgroup, Family,
};
use coprimator_core::witness::{even_cycle_type_representatives, verify_witness, witness};
use coprimator_core::FiniteGroup;

type Outcome = Result<String, String>;

fn standard() -> Vec<(CatalogEntry, FiniteGroup)> {
    catalog::standard_entries()
        .expect("catalog loads")
        .into_iter()
        .map(|e| {
            let g = e.enumerate().expect("catalog order");
            (e, g)
        })
        .collect()
}

/// Soluble groups with their Fitting heights.
const SOLUBLE: [(&str, usize); 7] = [
    ("symmetric(3)", 2),
    ("alternating(4)", 2),
    ("symmetric(4)", 3),
    ("dihedral(4)", 1),
    ("quaternion8", 1),
    ("frobenius20", 2),
    ("sl23", 2),
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn nilpotency_criterion() -> Outcome {
    let mut checked = 0;
    for (e, g) in standard().into_iter().filter(|(_, g)| g.order() <= 1000) {
        let nilpotent = classify(&g).is_nilpotent;
        for k in 2..=4 {
            let trivial = star_subgroup(&g, Family::Gamma, k).unwrap().is_trivial();
            ensure(trivial == nilpotent, || {
                format!("{} k={k}: gamma* trivial={trivial}, nilpotent={nilpotent}", e.name)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, k) pairs"))
}

fn fitting_criterion() -> Outcome {
    for (name, h) in SOLUBLE {
        let g = catalog::get(name).unwrap();
        let level = min_delta_trivial_level(&g, 5);
        let lower = fitting_height(&g);
        let upper = oracle_fitting_height_upper(&g);
        ensure(level == Some(h) && lower == Some(h) && upper == Some(h), || {
            format!("{name}: stated {h}, delta level {level:?}, lower {lower:?}, upper {upper:?}")
        })?;
    }
    Ok(format!("{} soluble groups", SOLUBLE.len()))
}

fn lower_fitting_identity() -> Outcome {
    let mut terms = 0;
    for (name, _) in SOLUBLE {
        let g = catalog::get(name).unwrap();
        let report = series(&g, LowerSeries::LowerFitting);
        for (idx, n_i) in report.terms.iter().enumerate() {
            let d = star_subgroup(&g, Family::Delta, idx).unwrap();
            ensure(&d == n_i, || {
                format!(
                    "{name}: delta*_{idx} has order {}, N_{} has order {}",
                    d.order(),
                    idx + 1,
                    n_i.order()
                )
            })?;
            terms += 1;
        }
    }
    Ok(format!("{terms} terms"))
}

fn pi_theorems() -> Outcome {
    let mut triggered = 0;
    let mut single = 0;
    for (e, g) in standard() {
        for k in 1..=3 {
            let pi = commutator_order_primes(&g, k);
            if pi.len() > 2 {
                continue;
            }
            triggered += 1;
            ensure(classify(&g).is_soluble, || {
                format!("{} k={k}: primes {pi} but insoluble", e.name)
            })?;
            let d = star_subgroup(&g, Family::Delta, k).unwrap();
            ensure(d.is_subgroup_of(&o_pi(&g, &pi)), || {
                format!("{} k={k}: delta*_k not inside O_{pi}", e.name)
            })?;
            if pi.len() == 1 {
                single += 1;
                let h = fitting_height(&g).unwrap();
                ensure(h <= k + 1, || {
                    format!("{} k={k}: single prime {pi} but h = {h}", e.name)
                })?;
            }
        }
    }
    ensure(triggered >= 5, || format!("only {triggered} instances triggered"))?;
    Ok(format!("{triggered} instances triggered, {single} with one prime"))
}

fn alternating_exhaustive() -> Outcome {
    let mut total = 0;
    for n in 5..=9 {
        let a = catalog::get(&format!("alternating({n})")).unwrap();
        for x in a.elements() {
            let w = witness(x, n).map_err(|e| format!("n={n}: {e}"))?;
            verify_witness(&w).map_err(|d| format!("n={n} x={x}: {d:?}"))?;
            ensure(
                w.y.order() % 2 == 1 && 4 % w.b.order() == 0 && w.y.is_even() && w.b.is_even(),
                || format!("n={n} x={x}: bad orders or parity"),
            )?;
            total += 1;
        }
    }
    Ok(format!("{total} elements of A_5..A_9"))
}

fn alternating_cycle_types() -> Outcome {
    let mut total = 0;
    for n in 10..=14 {
        for x in even_cycle_type_representatives(n) {
            let w = witness(&x, n).map_err(|e| format!("n={n}: {e}"))?;
            verify_witness(&w).map_err(|d| format!("n={n} x={x}: {d:?}"))?;
            total += 1;
        }
    }
    Ok(format!("{total} cycle types for n = 10..14"))
}

fn conjecture_coverage() -> Outcome {
    let mut sizes = Vec::new();
    for name in ["alternating(5)", "alternating(6)", "psl27", "alternating(7)"] {
        let g = catalog::get(name).unwrap();
        let r = coprime_commutator_coverage(&g);
        ensure(r.uncovered.is_empty(), || {
            format!("{name}: {} uncovered", r.uncovered.len())
        })?;
        sizes.push(format!("{name}:{}", g.order()));
    }
    Ok(format!("all covered ({})", sizes.join(" ")))
}

fn quotient_lifting() -> Outcome {
    let groups: Vec<FiniteGroup> = standard()
        .into_iter()
        .map(|(_, g)| g)
        .filter(|g| g.order() > 1)
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut proper = 0;
    for t in 0..20 {
        let g = &groups[rng.gen_range(0..groups.len())];
        let x = g.element(rng.gen_range(0..g.order())).clone();
        let n = normal_closure(g, &[x]).unwrap();
        let k = rng.gen_range(0..=3);
        let q = quotient(g, &n).unwrap();
        let qg = q.quotient();
        let mut image = FixedBitSet::with_capacity(qg.order());
        for i in delta_star_set(g, k).indices() {
            image.insert(q.project_index(i));
        }
        let target = delta_star_set(qg, k);
        ensure(target.members().is_subset(&image), || {
            format!("instance {t}: |G|={} |N|={} k={k}", g.order(), n.order())
        })?;
        if n.order() > 1 && n.order() < g.order() {
            proper += 1;
        }
    }
    Ok(format!("20 instances, {proper} with 1 < N < G"))
}

fn nesting_and_normality() -> Outcome {
    let mut checked = 0;
    for (e, g) in standard() {
        for k in 0..=4 {
            let d = delta_star_set(&g, k);
            let d_next = delta_star_set(&g, k + 1);
            ensure(d_next.is_subset(&d), || {
                format!("{}: delta*_{} not inside delta*_{k}", e.name, k + 1)
            })?;
            ensure(d.is_conjugation_closed(), || {
                format!("{}: delta*_{k} not normal", e.name)
            })?;
            ensure(d.contains(FiniteGroup::IDENTITY), || {
                format!("{}: identity missing", e.name)
            })?;
            if k >= 1 {
                let c = gamma_star_set(&g, k).unwrap();
                let c_next = gamma_star_set(&g, k + 1).unwrap();
                ensure(c_next.is_subset(&c), || {
                    format!("{}: gamma*_{} not inside gamma*_{k}", e.name, k + 1)
                })?;
                ensure(c.is_conjugation_closed(), || {
                    format!("{}: gamma*_{k} not normal", e.name)
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} (group, k) pairs"))
}

fn oracle_agreement() -> Outcome {
    let mut elements = 0;
    let mut same_pair = 0;
    for name in ["alternating(5)", "symmetric(4)"] {
        let g = catalog::get(name).unwrap();
        let r = coprime_commutator_coverage(&g);
        for i in 0..g.order() {
            let fast = r.witness(i);
            let slow = oracle_coprime_witness(&g, g.element(i));
            ensure(fast.is_some() == slow.is_some(), || {
                format!("{name}: element {} disagrees", g.element(i))
            })?;
            if fast == slow {
                same_pair += 1;
            }
            elements += 1;
        }
    }
    Ok(format!(
        "{elements} elements agree, {same_pair} with identical first pair"
    ))
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("nilpotency criterion", Duration::from_secs(60), nilpotency_criterion),
        ("fitting criterion", Duration::from_secs(60), fitting_criterion),
        (
            "lower fitting identity",
            Duration::from_secs(60),
            lower_fitting_identity,
        ),
        ("pi theorems", Duration::from_secs(60), pi_theorems),
        (
            "alternating witnesses exhaustive n=5..9",
            Duration::from_secs(300),
            alternating_exhaustive,
        ),
        (
            "alternating witnesses by cycle type n=10..14",
            Duration::from_secs(60),
            alternating_cycle_types,
        ),
        (
            "coprime commutator coverage",
            Duration::from_secs(180),
            conjecture_coverage,
        ),
        ("quotient lifting", Duration::from_secs(60), quotient_lifting),
        ("nesting and normality", Duration::from_secs(60), nesting_and_normality),
        ("oracle agreement", Duration::from_secs(60), oracle_agreement),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => Err(format!("{detail}; took {elapsed:.1?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2}: {name}: {detail} [{elapsed:.2?}]", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {reason} [{elapsed:.2?}]", k + 1)
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
