//! Nilpotency class of the unit group of GF(2)[G] for small 2-groups, next to
//! the lower Lie nilpotency index.

use lienil::catalog;
use lienil::classify::{unit_group_class, DEFAULT_MAX_UNITS};
use lienil::series::{default_bound, series_report};
use lienil::AlgebraContext;

fn main() -> lienil::Result<()> {
    for name in ["C2xC2", "D4", "Q8", "D4xC2", "D8", "SD16"] {
        let spec = catalog::bundled().into_iter().find(|s| s.name == name).expect("bundled");
        let group = spec.build(64)?;
        let ctx = AlgebraContext::new(&group, 2)?;
        let class = unit_group_class(&ctx, DEFAULT_MAX_UNITS)?;
        let t_lower = series_report(&ctx, name, default_bound(&ctx))?.t_lower;
        println!("{name:<6} cl(U) = {class}, t_L = {t_lower}");
    }
    Ok(())
}
