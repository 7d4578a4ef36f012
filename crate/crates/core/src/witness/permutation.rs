use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::WitnessError;

/// An element `η` of `S₃`, written by its images `η(1)η(2)η(3)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: [u8; 3],
}

impl Permutation {
    /// The six middle-party settings in table order.
    pub const ALL: [Permutation; 6] = [
        Permutation { images: [1, 2, 3] },
        Permutation { images: [2, 3, 1] },
        Permutation { images: [3, 1, 2] },
        Permutation { images: [1, 3, 2] },
        Permutation { images: [2, 1, 3] },
        Permutation { images: [3, 2, 1] },
    ];

    pub const IDENTITY: Permutation = Permutation { images: [1, 2, 3] };

    pub fn new(images: [u8; 3]) -> Result<Self, WitnessError> {
        let mut seen = [false; 3];
        for &v in &images {
            if !(1..=3).contains(&v) || seen[(v - 1) as usize] {
                return Err(WitnessError::BadPermutation(format!("{images:?}")));
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn images(&self) -> [u8; 3] {
        self.images
    }

    /// `η(i)` for `i ∈ {1,2,3}`.
    pub fn apply(&self, i: u8) -> u8 {
        self.images[(i - 1) as usize]
    }

    /// `+1` for even permutations (123, 231, 312), `−1` for odd ones.
    pub fn sign(&self) -> i8 {
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| self.images[i] > self.images[j])
            .count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Position in [`Permutation::ALL`].
    pub fn index(&self) -> usize {
        Self::ALL.iter().position(|p| p == self).expect("all permutations are listed")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.images;
        write!(f, "{a}{b}{c}")
    }
}

impl FromStr for Permutation {
    type Err = WitnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits: Vec<u8> = s
            .trim()
            .chars()
            .map(|ch| ch.to_digit(10).map(|d| d as u8))
            .collect::<Option<_>>()
            .ok_or_else(|| WitnessError::BadPermutation(s.to_string()))?;
        let images: [u8; 3] = digits
            .try_into()
            .map_err(|_| WitnessError::BadPermutation(s.to_string()))?;
        Permutation::new(images).map_err(|_| WitnessError::BadPermutation(s.to_string()))
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
