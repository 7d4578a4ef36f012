//! Marginal consistency of sampled data, and a tampered record that fails it.

use qreal::qsim::Outcome;
use qreal::witness::{no_signaling_report, sample_records, WitnessRunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut records = sample_records(20_000, 5, &WitnessRunOptions::default())?;
    let report = no_signaling_report(&records)?;
    println!("sampled: passed {} (max deviation {:.4})", report.passed(), report.max_deviation());

    // make A's outcome in one setting depend on the others' settings
    let shots = records[0].counts.shots();
    let mut tampered = qreal::qsim::Counts::default();
    tampered.add(Outcome::new(0), shots);
    records[0].counts = tampered;
    let report = no_signaling_report(&records)?;
    println!("tampered: passed {}", report.passed());
    for c in report.flagged().take(3) {
        println!("  {} {}: {} vs {} deviation {:.3}", c.party, c.own_setting, c.context_1, c.context_2, c.deviation);
    }
    Ok(())
}
