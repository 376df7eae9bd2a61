//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lienil::catalog::{self, bundled_text};
use lienil::classify::{
    classify_theorem1, lie_nilpotency_status, unit_group_class, Condition, DEFAULT_MAX_UNITS,
};
use lienil::cli::{run, Command, Report, RunConfig, EXIT_OK};
use lienil::proof::{all_witness_pairs, verify_chain};
use lienil::series::{brute_force_t_lower, default_bound, lower_chain, upper_chain, BruteForce};
use lienil::{AlgebraContext, Group};

type Outcome = Result<String, String>;

fn group(name: &str) -> Group {
    catalog::bundled()
        .into_iter()
        .find(|s| s.name == name)
        .unwrap_or_else(|| panic!("{name} missing from the bundled catalog"))
        .build(1024)
        .unwrap()
}

fn indices(g: &Group, p: u64) -> (usize, usize) {
    let ctx = AlgebraContext::new(g, p).unwrap();
    let bound = default_bound(&ctx);
    (
        lower_chain(&ctx, bound).unwrap().index(),
        upper_chain(&ctx, bound).unwrap().index(),
    )
}

fn expect_indices(cases: &[(&str, u64, usize)]) -> Outcome {
    let mut seen = Vec::new();
    for &(name, p, want) in cases {
        let (tl, tu) = indices(&group(name), p);
        if (tl, tu) != (want, want) {
            return Err(format!("{name} p={p}: t_L={tl} t^L={tu}, want {want}"));
        }
        seen.push(format!("{name}={want}"));
    }
    Ok(seen.join(" "))
}

fn scan() -> (i32, Vec<Report>) {
    let config = RunConfig {
        json: true,
        ..RunConfig::new(Command::Scan)
    };
    let mut out = Vec::new();
    let code = run(&config, bundled_text(), &mut out, &mut Vec::new());
    let reports = String::from_utf8(out)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    (code, reports)
}

fn indexed(reports: &[Report]) -> impl Iterator<Item = (&Report, i64, i64, i64)> {
    reports.iter().filter_map(|r| {
        let d = *r.gamma_orders.get(1).unwrap_or(&1) as i64;
        Some((r, r.t_lower? as i64, r.t_upper? as i64, d))
    })
}

fn maximal_indices() -> Outcome {
    expect_indices(&[("D4", 2, 3), ("Q8", 2, 3), ("D8", 2, 5), ("Heis3", 3, 4), ("M27", 3, 4)])
}

fn classified(name: &str, p: u64, condition: Condition, class: usize, derived: &[u64], t: usize) -> Outcome {
    let g = group(name);
    let summary = g.summary();
    let found = classify_theorem1(&g, p).map_err(|e| e.to_string())?.condition;
    if found != condition {
        return Err(format!("{name} classified as {found}, want {condition}"));
    }
    if summary.class != Some(class) || summary.derived_type.as_deref() != Some(derived) {
        return Err(format!("{name}: class {:?}, G' type {:?}", summary.class, summary.derived_type));
    }
    let almost = summary.derived_order - p as usize + 2;
    if almost != t {
        return Err(format!("{name}: |G'|-p+2 = {almost}, want {t}"));
    }
    expect_indices(&[(name, p, t)]).map(|s| format!("{s}, condition {found}"))
}

fn brute_force_agrees() -> Outcome {
    let mut compared = 0;
    for spec in catalog::bundled() {
        let g = spec.build(16).ok();
        let Some(g) = g.filter(|g| g.order() <= 16) else { continue };
        for &p in &spec.primes {
            if !lie_nilpotency_status(&g, p).lie_nilpotent {
                continue;
            }
            let ctx = AlgebraContext::new(&g, p).unwrap();
            let bound = default_bound(&ctx);
            let chain = lower_chain(&ctx, bound).unwrap().index();
            match brute_force_t_lower(&ctx, bound).map_err(|e| e.to_string())? {
                BruteForce::Index(t) if t == chain => compared += 1,
                other => return Err(format!("{} p={p}: brute force {other:?}, chain {chain}", spec.name)),
            }
        }
    }
    Ok(format!("{compared} (group, p) pairs agree"))
}

fn bound_and_gap() -> Outcome {
    let (code, reports) = scan();
    if code != EXIT_OK {
        return Err(format!("scan exit code {code}"));
    }
    let mut checked = 0;
    for (r, tl, tu, d) in indexed(&reports) {
        let p = r.p as i64;
        let mut failures = Vec::new();
        if !(tl <= tu && tu <= d + 1) {
            failures.push("bound");
        }
        if !(tu == d + 1 || (2..=d - p + 2).contains(&tu)) {
            failures.push("gap");
        }
        if p == 3 && tl == d {
            failures.push("t_L = 3^n");
        }
        if p >= 5 && tl != tu {
            failures.push("t_L != t^L");
        }
        if !failures.is_empty() {
            return Err(format!("{} p={p}: {failures:?} (t_L={tl} t^L={tu} |G'|={d})", r.name));
        }
        checked += 1;
    }
    Ok(format!("{checked} Lie nilpotent pairs, scan exit 0"))
}

fn almost_maximal_equivalence() -> Outcome {
    let (_, reports) = scan();
    let mut tagged = 0;
    for (r, tl, tu, d) in indexed(&reports) {
        let almost = d - r.p as i64 + 2;
        let has_condition = r.condition.is_some_and(|c| c != Condition::None);
        if (tl == almost) != (tu == almost) || (tl == almost) != has_condition {
            return Err(format!(
                "{} p={}: t_L={tl} t^L={tu} almost={almost} condition={:?}",
                r.name, r.p, r.condition
            ));
        }
        tagged += has_condition as usize;
    }
    Ok(format!("{tagged} condition-tagged pairs, zero mismatches"))
}

fn proof_chains() -> Outcome {
    let mut verified = 0;
    let mut failures: Vec<String> = Vec::new();
    for spec in catalog::bundled() {
        let g = spec.build(1024).unwrap();
        for &p in &spec.primes {
            let Ok(c) = classify_theorem1(&g, p) else { continue };
            if !matches!(c.condition, Condition::II | Condition::III | Condition::IV) {
                continue;
            }
            let ctx = AlgebraContext::new(&g, p).unwrap();
            let mut errors = std::collections::BTreeMap::<String, usize>::new();
            for w in all_witness_pairs(&g, c.condition).map_err(|e| e.to_string())? {
                let outcome = verify_chain(&ctx, &w).map_err(|e| e.to_string()).and_then(|r| {
                    match (r.final_nonzero, &r.final_form) {
                        (true, Some((1 | -1, _, _))) => Ok(()),
                        _ => Err(format!("final value not of the form ±m·hats: {:?}", r.final_form)),
                    }
                });
                match outcome {
                    Ok(()) => verified += 1,
                    Err(e) => {
                        let kind = e.split(':').next().unwrap_or(&e).to_string();
                        *errors.entry(format!("{:?} {kind}", w.case_tag)).or_default() += 1;
                    }
                }
            }
            failures.extend(errors.into_iter().map(|(k, n)| format!("{} {k} x{n}", spec.name)));
        }
    }
    if failures.is_empty() {
        Ok(format!("{verified} witnesses verified"))
    } else {
        Err(format!("{verified} witnesses verified; {}", failures.join("; ")))
    }
}

fn unit_group_classes() -> Outcome {
    let mut checked = Vec::new();
    let mut tagged = 0;
    for spec in catalog::bundled() {
        let g = spec.build(1024).unwrap();
        for &p in &spec.primes {
            let scale = (p as usize).checked_pow(g.order() as u32 - 1);
            if !g.is_p_group(p) || scale.map_or(true, |s| s > DEFAULT_MAX_UNITS) {
                continue;
            }
            let ctx = AlgebraContext::new(&g, p).unwrap();
            let class = unit_group_class(&ctx, DEFAULT_MAX_UNITS).map_err(|e| e.to_string())?;
            let (tl, _) = indices(&g, p);
            if class + 1 != tl {
                return Err(format!("{} p={p}: cl(U)={class}, t_L={tl}", spec.name));
            }
            let condition = classify_theorem1(&g, p).unwrap().condition;
            if condition != Condition::None {
                tagged += 1;
                let want = g.derived_subgroup().order() - p as usize + 1;
                if class != want {
                    return Err(format!("{} p={p}: cl(U)={class}, want |G'|-p+1={want}", spec.name));
                }
            }
            checked.push(format!("{}/{p}", spec.name));
        }
    }
    Ok(format!("{} p-groups ({}), {tagged} condition-tagged", checked.len(), checked.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, fn() -> Outcome); 9] = [
        ("maximal indices for cyclic G'", Some(5), maximal_indices),
        ("C2 wr C4 is condition III with t = 8", Some(60), || {
            classified("C2wrC4", 2, Condition::III, 4, &[2, 2, 2], 8)
        }),
        ("C3 wr C3 is condition IV with t = 8", Some(120), || {
            classified("C3wrC3", 3, Condition::IV, 3, &[3, 3], 8)
        }),
        ("D4 x D4 is condition I with t = 4", None, || {
            classified("D4xD4", 2, Condition::I, 2, &[2, 2], 4)
        }),
        ("brute force agrees with the lower chain", Some(60), brute_force_agrees),
        ("bound and gap over the scan", None, bound_and_gap),
        ("almost maximal lower iff upper iff condition", None, almost_maximal_equivalence),
        ("weight-7 commutator chains", None, proof_chains),
        ("unit group class is t_L - 1", Some(120), unit_group_classes),
    ];
    let mut failed = 0;
    for (i, (title, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let Some(limit) = limit.map(Duration::from_secs) {
            if elapsed > limit && outcome.is_ok() {
                outcome = Err(format!("took {elapsed:.1?}, limit {limit:?}"));
            }
        }
        let (verdict, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {}: {verdict} {title} [{elapsed:.2?}] {detail}", i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
