//! Check the gate identity catalog, then repeat with a wrong CR⁻ sign.

use qreal::gates::{verify_identities, CatalogOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for flip in [false, true] {
        let checks = verify_identities(CatalogOptions { flip_cr_minus: flip })?;
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        println!("flip_cr_minus={flip}: {} identities, {} failed", checks.len(), failed.len());
        for c in failed {
            println!("  {} (deviation {:.3e})", c.name, c.deviation);
        }
    }
    Ok(())
}
