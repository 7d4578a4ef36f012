//! F under growing two-qubit depolarizing noise, against the real bound.

use qreal::bounds::REAL_BOUND;
use qreal::qsim::{NoiseModel, ReadoutError};
use qreal::witness::{exact_witness, WitnessRunOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for step in 0..=10 {
        let p = step as f64 * 0.02;
        let opts = WitnessRunOptions {
            noise: NoiseModel::depolarizing(p).with_readout(ReadoutError::symmetric(0.01)),
            ..Default::default()
        };
        let f = exact_witness(&opts)?.f;
        let mark = if f > REAL_BOUND { "above" } else { "below" };
        println!("p2q = {p:.2}: F = {f:.6} ({mark} 6√6)");
    }
    Ok(())
}
