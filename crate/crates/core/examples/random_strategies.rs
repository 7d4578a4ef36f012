//! Random real and complex strategies: real draws stay below 6√6, complex
//! ones near the optimum approach 18.

use qreal::bounds::{random_strategy_max, Field, RandomSearchConfig, Search, REAL_BOUND};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let real = random_strategy_max(&RandomSearchConfig {
        field: Field::Real,
        trials: 20_000,
        seed: 1,
        search: Search::Climb { steps: 200, scale: 0.1 },
    })?;
    println!("real climb: best {:.6} (bound {REAL_BOUND:.6})", real.best);

    let complex = random_strategy_max(&RandomSearchConfig {
        field: Field::Complex,
        trials: 2_000,
        seed: 1,
        search: Search::Perturb { scale: 0.02 },
    })?;
    println!("complex perturbation: best {:.6}", complex.best);
    Ok(())
}
