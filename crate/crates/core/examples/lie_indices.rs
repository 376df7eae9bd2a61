//! Lower and upper Lie nilpotency indices, with the brute-force cross-check
//! for small groups.

use lienil::catalog;
use lienil::series::{brute_force_t_lower, default_bound, series_report, BruteForce, BRUTE_FORCE_LIMIT};
use lienil::AlgebraContext;

fn main() -> lienil::Result<()> {
    for (name, p) in [("Q8", 2), ("D8", 2), ("M27", 3), ("C3wrC3", 3)] {
        let spec = catalog::bundled().into_iter().find(|s| s.name == name).expect("bundled");
        let group = spec.build(512)?;
        let ctx = AlgebraContext::new(&group, p)?;
        let report = series_report(&ctx, name, default_bound(&ctx))?;
        println!(
            "{name} over GF({p}): t_L = {}, t^L = {}, dim L_n = {:?}, dim R^(n) = {:?}",
            report.t_lower, report.t_upper, report.lower_dims, report.upper_dims
        );
        if group.order() <= BRUTE_FORCE_LIMIT {
            match brute_force_t_lower(&ctx, report.t_lower)? {
                BruteForce::Index(t) => println!("  by enumerating commutators: t_L = {t}"),
                BruteForce::Unresolved => println!("  by enumerating commutators: unresolved"),
            }
        }
    }
    Ok(())
}
