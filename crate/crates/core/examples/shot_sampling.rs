//! Finite-shot estimate of F with its propagated error.

use qreal::qsim::NoiseModel;
use qreal::witness::{sample_witness, WitnessRunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = WitnessRunOptions {
        noise: NoiseModel::depolarizing(0.03),
        ..Default::default()
    };
    for seed in 0..3 {
        let (result, records) = sample_witness(20_000, seed, &opts)?;
        println!(
            "seed {seed}: F = {:.4} ± {:.4} from {} settings",
            result.f,
            result.sigma,
            records.len()
        );
    }
    Ok(())
}
