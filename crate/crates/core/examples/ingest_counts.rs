//! Write sampled counts to a file, read them back and evaluate.

use qreal::cli::{ingest_records, CountsFile, RunConfig};
use qreal::qsim::NoiseModel;
use qreal::witness::{sample_records, WitnessRunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = WitnessRunOptions {
        noise: NoiseModel::depolarizing(0.08),
        ..Default::default()
    };
    let records = sample_records(20_000, 42, &opts)?;
    let json = serde_json::to_string(&CountsFile::from_records(&records))?;
    println!("counts file: {} bytes", json.len());

    let parsed = CountsFile::parse(&json)?.to_records()?;
    let report = ingest_records(&RunConfig::ingest("in-memory".into()), &parsed)?;
    println!("F = {:.6} ± {:.6}", report.result.f, report.result.sigma);
    if let Some(d) = report.sigma_distance {
        println!("{d:.1} standard deviations from 6√6");
    }
    Ok(())
}
