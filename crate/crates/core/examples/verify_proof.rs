//! Finds witness pairs in C2 wr C4 and C3 wr C3 and evaluates the weight-7
//! commutator chains that certify t_L >= 8.

use lienil::catalog;
use lienil::classify::Condition;
use lienil::proof::{all_witness_pairs, verify_chain};
use lienil::AlgebraContext;

fn main() -> lienil::Result<()> {
    for (name, p, condition) in [("C2wrC4", 2, Condition::III), ("G64a", 2, Condition::II), ("C3wrC3", 3, Condition::IV)] {
        let spec = catalog::bundled().into_iter().find(|s| s.name == name).expect("bundled");
        let group = spec.build(512)?;
        let ctx = AlgebraContext::new(&group, p)?;
        let witnesses = all_witness_pairs(&group, condition)?;
        println!("{name}: {} witness pairs for condition {condition}", witnesses.len());

        let mut shown = Vec::new();
        for w in &witnesses {
            if shown.contains(&w.case_tag) {
                continue;
            }
            shown.push(w.case_tag);
            print!("  {:?} g={} h={}: ", w.case_tag, group.name(w.g), group.name(w.h));
            match verify_chain(&ctx, w) {
                Ok(r) => {
                    let (sign, m, factor) = r.final_form.clone().unwrap_or((1, 0, "?".into()));
                    println!(
                        "{} = {}{} {factor}, so t_L >= {}",
                        r.chain,
                        if sign < 0 { "-" } else { "" },
                        group.name(m),
                        r.implied_lower_bound
                    );
                    for step in r.mismatches() {
                        println!("    display for {} does not match", step.label);
                    }
                }
                Err(e) => println!("{e}"),
            }
        }
    }
    Ok(())
}
