//! Rewrite one witness circuit into the {X, X+, Z(θ), ECR↓} basis and confirm
//! the output distribution is unchanged.

use qreal::gates::to_native;
use qreal::qsim::exact_distribution;
use qreal::witness::{witness_circuit, Permutation, SettingTuple};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let eta: Permutation = "321".parse()?;
    let setting = SettingTuple::new(eta.apply(2), eta, 2)?;
    let circuit = witness_circuit(&setting);
    let native = to_native(&circuit)?;
    println!("{setting}: {} gates -> {} native gates", circuit.len(), native.len());

    let a = exact_distribution(&circuit)?;
    let b = exact_distribution(&native)?;
    let worst = a
        .iter()
        .map(|(o, p)| (p - b.get(o)).abs())
        .fold(0.0, f64::max);
    println!("max |Δp| = {worst:e}");
    for (o, p) in b.iter().filter(|(_, p)| *p > 1e-12) {
        println!("  {o}: {p:.6}");
    }
    Ok(())
}
