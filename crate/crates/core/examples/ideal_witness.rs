//! Exact evaluation of the witness on the ideal circuits.

use qreal::witness::{exact_witness, WitnessRunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let result = exact_witness(&WitnessRunOptions::default())?;
    println!("F = {:.12}", result.f);
    for (setting, partial) in result.partials() {
        println!("  {setting}: {partial:+.12}");
    }
    Ok(())
}
