use std::fs;
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use serde_json::{json, Map, Value};

use coprimator_core::catalog;
use coprimator_core::group::file::parse_group_file;
use coprimator_core::group::{classify, fitting_height, series, LowerSeries};
use coprimator_core::star::{self, Family};
use coprimator_core::witness::{
    self, even_cycle_type_representatives, parse_certificate, witness_sweep, CaseTag, WitnessError,
};
use coprimator_core::{parse_cycles, FiniteGroup};

use crate::report::digest;
use crate::{CatalogAction, Cli, Command, FamilyArg};

pub struct Outcome {
    pub command: &'static str,
    pub digest: String,
    pub results: Value,
    /// The analysis found a violated expectation.
    pub violated: bool,
}

impl Outcome {
    fn ok(command: &'static str, digest: String, results: Value) -> Self {
        Outcome {
            command,
            digest,
            results,
            violated: false,
        }
    }
}

struct Loaded {
    group: FiniteGroup,
    digest: String,
}

fn load_group(path: &Path, cap: usize) -> Result<Loaded> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let def = parse_group_file(text).with_context(|| format!("in {}", path.display()))?;
    let group = def
        .enumerate(cap)
        .with_context(|| format!("enumerating {}", path.display()))?;
    Ok(Loaded {
        group,
        digest: digest(&[&bytes]),
    })
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            ensure!(t >= 1, "--threads must be at least 1");
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build()?;
            Ok(pool.install(f))
        }
    }
}

fn group_label(g: &FiniteGroup) -> Value {
    g.name().map_or(Value::Null, |n| Value::String(n.to_string()))
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cap = cli.max_elements;
    match &cli.command {
        Command::Analyze { group } => analyze(&load_group(&group.group, cap)?),
        Command::Star {
            group,
            family,
            k,
            subgroup,
        } => star_cmd(&load_group(&group.group, cap)?, *family, *k, *subgroup),
        Command::Height { group, k_max } => height(&load_group(&group.group, cap)?, *k_max),
        Command::Witness { n, perm, certificate } => witness_cmd(*n, perm, certificate.as_deref()),
        Command::WitnessCheck { certificate, n } => witness_check(certificate, *n),
        Command::WitnessSweep {
            n,
            cycle_types_only,
            threads,
        } => sweep(*n, *cycle_types_only, *threads, cap),
        Command::Conjecture {
            catalog,
            group,
            threads,
        } => {
            let loaded = match (catalog, group) {
                (Some(name), _) => Loaded {
                    group: catalog::entry(name)?.enumerate_with_cap(cap)?,
                    digest: digest(&[name.as_bytes()]),
                },
                (None, Some(path)) => load_group(path, cap)?,
                (None, None) => bail!("give --catalog or --group"),
            };
            conjecture(&loaded, *threads)
        }
        Command::Catalog {
            action: CatalogAction::List,
        } => catalog_list(),
    }
}

fn analyze(l: &Loaded) -> Result<Outcome> {
    let g = &l.group;
    let c = classify(g);
    let orders = |kind| series(g, kind).orders();
    let results = json!({
        "name": group_label(g),
        "degree": g.degree(),
        "order": g.order(),
        "conjugacy_classes": g.conjugacy_classes().len(),
        "abelian": g.is_abelian(),
        "nilpotent": c.is_nilpotent,
        "soluble": c.is_soluble,
        "simple": g.is_simple(),
        "fitting_height": fitting_height(g),
        "series": {
            "derived": orders(LowerSeries::Derived),
            "lower_central": orders(LowerSeries::LowerCentral),
            "lower_fitting": orders(LowerSeries::LowerFitting),
        },
    });
    Ok(Outcome::ok("analyze", l.digest.clone(), results))
}

fn star_cmd(l: &Loaded, family: FamilyArg, k: usize, subgroup: bool) -> Result<Outcome> {
    let g = &l.group;
    let fam = match family {
        FamilyArg::Gamma => Family::Gamma,
        FamilyArg::Delta => Family::Delta,
    };
    let set = star::star_set(g, fam, k)?;
    let mut results = Map::new();
    results.insert("name".into(), group_label(g));
    results.insert("order".into(), json!(g.order()));
    results.insert(
        "family".into(),
        json!(if fam == Family::Gamma { "gamma" } else { "delta" }),
    );
    results.insert("k".into(), json!(k));
    results.insert("set_size".into(), json!(set.len()));
    results.insert("primes".into(), json!(set.order_primes().iter().collect::<Vec<_>>()));
    if subgroup {
        results.insert("subgroup_order".into(), json!(set.generated_subgroup().order()));
    }
    Ok(Outcome::ok("star", l.digest.clone(), Value::Object(results)))
}

fn height(l: &Loaded, k_max: usize) -> Result<Outcome> {
    ensure!(k_max >= 1, "--k-max must be at least 1");
    let g = &l.group;
    let level = star::min_delta_trivial_level(g, k_max);
    let h = fitting_height(g);
    let expected = h.filter(|&h| h <= k_max);
    let agree = level == expected;
    let results = json!({
        "name": group_label(g),
        "order": g.order(),
        "k_max": k_max,
        "min_delta_trivial_level": level,
        "fitting_height": h,
        "agree": agree,
    });
    Ok(Outcome {
        violated: !agree,
        ..Outcome::ok("height", l.digest.clone(), results)
    })
}

fn witness_cmd(n: usize, perm: &str, certificate: Option<&Path>) -> Result<Outcome> {
    let dig = digest(&[n.to_string().as_bytes(), perm.as_bytes()]);
    ensure!(n >= 1, "--n must be positive");
    let x = parse_cycles(perm, n).with_context(|| format!("parsing --perm {perm:?}"))?;
    let w = match witness::witness(&x, n) {
        Ok(w) => w,
        Err(e @ WitnessError::Exhausted { .. }) => {
            let results = json!({"x": x.to_string(), "verified": false, "error": e.to_string()});
            return Ok(Outcome {
                violated: true,
                ..Outcome::ok("witness", dig, results)
            });
        }
        Err(e) => return Err(e.into()),
    };
    let verified = witness::verify_witness(&w).is_ok();
    if let Some(path) = certificate {
        fs::write(path, format!("{}\n", w.certificate_line()))
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let cases: Vec<&str> = w.cases().iter().map(|c| c.as_str()).collect();
    let parts: Vec<Value> = w
        .parts
        .iter()
        .map(|p| {
            let cycles: String = p
                .cycles
                .iter()
                .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            json!({"block": cycles, "case": p.case.as_str()})
        })
        .collect();
    let results = json!({
        "x": w.x.to_string(),
        "y": w.y.to_string(),
        "b": w.b.to_string(),
        "case": if cases.is_empty() { "none".to_string() } else { cases.join(",") },
        "order_y": w.y.order(),
        "order_b": w.b.order(),
        "verified": verified,
        "parts": parts,
    });
    Ok(Outcome {
        violated: !verified,
        ..Outcome::ok("witness", dig, results)
    })
}

fn witness_check(path: &Path, n: Option<usize>) -> Result<Outcome> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut lines = 0;
    let mut failures = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        lines += 1;
        let cert = parse_certificate(line, n).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        if let Err(defects) = cert.verify() {
            failures.push(json!({
                "line": i + 1,
                "reasons": defects.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }));
        }
    }
    let results = json!({
        "certificates": lines,
        "verified": lines - failures.len(),
        "failed": failures.len(),
        "failures": failures,
    });
    Ok(Outcome {
        violated: results["failed"] != 0,
        ..Outcome::ok("witness-check", digest(&[text.as_bytes()]), results)
    })
}

fn sweep(n: usize, cycle_types_only: bool, threads: Option<usize>, cap: usize) -> Result<Outcome> {
    ensure!(n >= 5, "--n must be at least 5");
    let mode = if cycle_types_only { "cycle_types" } else { "all" };
    let elements = if cycle_types_only {
        ensure!(n <= 40, "--n above 40 has too many cycle types");
        even_cycle_type_representatives(n)
    } else {
        let a = catalog::entry(&format!("alternating({n})"))
            .context("full sweeps cover n ≤ 9; use --cycle-types-only")?
            .enumerate_with_cap(cap)?;
        a.elements().to_vec()
    };
    let report = with_threads(threads, || witness_sweep(&elements, n))?;
    let mut cases = Map::new();
    for tag in CaseTag::ALL {
        cases.insert(
            tag.as_str().into(),
            json!(report.case_counts.get(&tag).copied().unwrap_or(0)),
        );
    }
    let failures: Vec<Value> = report
        .failures
        .iter()
        .map(|(x, e)| json!({"x": x.to_string(), "error": e}))
        .collect();
    let results = json!({
        "n": n,
        "mode": mode,
        "elements": report.total,
        "verified": report.verified,
        "failed": report.failures.len(),
        "cases": cases,
        "failures": failures,
    });
    Ok(Outcome {
        violated: !report.failures.is_empty(),
        ..Outcome::ok(
            "witness-sweep",
            digest(&[n.to_string().as_bytes(), mode.as_bytes()]),
            results,
        )
    })
}

fn conjecture(l: &Loaded, threads: Option<usize>) -> Result<Outcome> {
    let g = &l.group;
    let r = with_threads(threads, || star::coprime_commutator_coverage(g))?;
    let uncovered: Vec<String> = r.uncovered.elements().map(ToString::to_string).collect();
    let results = json!({
        "name": group_label(g),
        "order": g.order(),
        "covered": r.covered.len(),
        "uncovered": uncovered.len(),
        "uncovered_elements": uncovered,
    });
    Ok(Outcome {
        violated: !r.is_complete(),
        ..Outcome::ok("conjecture", l.digest.clone(), results)
    })
}

fn catalog_list() -> Result<Outcome> {
    let families: Vec<Value> = catalog::Family::ALL
        .iter()
        .map(|f| {
            let (lo, hi) = f.range();
            json!({"family": format!("{}(m)", f.name()), "m": format!("{lo}..={hi}")})
        })
        .collect();
    let mut groups = Vec::new();
    for name in catalog::named_group_names()? {
        let e = catalog::entry(&name)?;
        groups.push(json!({"name": e.name, "degree": e.degree, "order": e.expected_order}));
    }
    let results = json!({"families": families, "groups": groups});
    Ok(Outcome::ok("catalog list", digest(&[]), results))
}
