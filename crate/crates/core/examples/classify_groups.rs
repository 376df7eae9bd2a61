//! Runs the almost-maximal classifier over the bundled catalog.

use lienil::catalog;
use lienil::classify::{classify_theorem1, lie_nilpotency_status};

fn main() -> lienil::Result<()> {
    for spec in catalog::bundled() {
        let group = spec.build(512)?;
        for &p in &spec.primes {
            match classify_theorem1(&group, p) {
                Ok(c) => println!("{:<9} p={p}  condition {:<4} {:?}", spec.name, c.condition.to_string(), c.predicted),
                Err(_) => println!(
                    "{:<9} p={p}  {:?}",
                    spec.name,
                    lie_nilpotency_status(&group, p).reason
                ),
            }
        }
    }
    Ok(())
}
