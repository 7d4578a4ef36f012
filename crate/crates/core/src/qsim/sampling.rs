use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Binomial, Distribution as _};
use serde::{Deserialize, Serialize};

use super::{noisy_distribution, Circuit, Distribution, NoiseModel, Outcome, QsimError};

/// A master seed plus a substream id.
///
/// Each circuit setting samples from its own ChaCha20 stream, so results do
/// not depend on the order or thread in which settings are evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedStream {
    pub seed: u64,
    pub stream: u64,
}

impl SeedStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        SeedStream { seed, stream }
    }

    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Shot tallies over the 16 outcomes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Counts {
    tallies: [u64; 16],
}

impl Counts {
    pub fn from_tallies(tallies: [u64; 16]) -> Self {
        Counts { tallies }
    }

    pub fn tallies(&self) -> &[u64; 16] {
        &self.tallies
    }

    pub fn get(&self, outcome: Outcome) -> u64 {
        self.tallies[outcome.index()]
    }

    pub fn add(&mut self, outcome: Outcome, n: u64) {
        self.tallies[outcome.index()] += n;
    }

    pub fn shots(&self) -> u64 {
        self.tallies.iter().sum()
    }

    pub fn merge(&mut self, other: &Counts) {
        for (a, b) in self.tallies.iter_mut().zip(other.tallies.iter()) {
            *a += b;
        }
    }

    /// Relative frequencies, `None` when empty.
    pub fn frequencies(&self) -> Option<[f64; 16]> {
        let n = self.shots();
        if n == 0 {
            return None;
        }
        let n = n as f64;
        Some(self.tallies.map(|k| k as f64 / n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Outcome, u64)> + '_ {
        Outcome::all().map(move |o| (o, self.tallies[o.index()]))
    }
}

impl Distribution {
    /// Multinomial draw of `shots` outcomes, by sequential conditional binomials.
    pub fn sample_counts(&self, shots: u64, seed: SeedStream) -> Result<Counts, QsimError> {
        if shots == 0 {
            return Err(QsimError::ZeroShots);
        }
        let mut rng = seed.rng();
        let probs = self.probabilities();
        let mut tallies = [0u64; 16];
        let mut remaining = shots;
        let mut mass = 1.0f64;
        for (i, &p) in probs.iter().enumerate().take(15) {
            if remaining == 0 {
                break;
            }
            let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
            let k = if q >= 1.0 {
                remaining
            } else if q <= 0.0 {
                0
            } else {
                Binomial::new(remaining, q)
                    .expect("binomial parameters are in range")
                    .sample(&mut rng)
            };
            tallies[i] = k;
            remaining -= k;
            mass -= p;
        }
        tallies[15] += remaining;
        Ok(Counts { tallies })
    }
}

/// Sample `shots` measurements of `circuit` under `noise`.
pub fn sample(circuit: &Circuit, shots: u64, seed: SeedStream, noise: &NoiseModel) -> Result<Counts, QsimError> {
    if shots == 0 {
        return Err(QsimError::ZeroShots);
    }
    noisy_distribution(circuit, noise)?.sample_counts(shots, seed)
}
