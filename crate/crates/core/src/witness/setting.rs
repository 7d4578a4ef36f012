use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Permutation, WitnessError};

/// Measurement choice `(x, η, z)` of the three parties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SettingTuple {
    pub x: u8,
    pub eta: Permutation,
    pub z: u8,
}

impl SettingTuple {
    pub fn new(x: u8, eta: Permutation, z: u8) -> Result<Self, WitnessError> {
        if !(1..=3).contains(&x) || !(1..=3).contains(&z) {
            return Err(WitnessError::BadSetting { x, z });
        }
        Ok(SettingTuple { x, eta, z })
    }

    /// `Some` when `x = η(z)`, i.e. the setting enters the witness.
    pub fn as_witness(&self) -> Option<WitnessSetting> {
        (self.x == self.eta.apply(self.z)).then_some(WitnessSetting {
            eta: self.eta,
            z: self.z,
        })
    }
}

impl fmt::Display for SettingTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x={}, eta={}, z={})", self.x, self.eta, self.z)
    }
}

/// One of the 18 witness settings; `x` is always `η(z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WitnessSetting {
    eta: Permutation,
    z: u8,
}

impl WitnessSetting {
    pub fn new(eta: Permutation, z: u8) -> Result<Self, WitnessError> {
        if !(1..=3).contains(&z) {
            return Err(WitnessError::BadSetting { x: 0, z });
        }
        Ok(WitnessSetting { eta, z })
    }

    pub fn eta(&self) -> Permutation {
        self.eta
    }

    pub fn z(&self) -> u8 {
        self.z
    }

    pub fn x(&self) -> u8 {
        self.eta.apply(self.z)
    }

    pub fn tuple(&self) -> SettingTuple {
        SettingTuple {
            x: self.x(),
            eta: self.eta,
            z: self.z,
        }
    }

    /// Stable index in `0..18`, also used as the sampling substream id.
    pub fn index(&self) -> usize {
        self.eta.index() * 3 + (self.z as usize - 1)
    }
}

impl From<WitnessSetting> for SettingTuple {
    fn from(s: WitnessSetting) -> Self {
        s.tuple()
    }
}

impl fmt::Display for WitnessSetting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.tuple().fmt(f)
    }
}

/// All 18 witness settings ordered by `η` (table order) then `z`.
pub fn witness_settings() -> Vec<WitnessSetting> {
    settings_for(&Permutation::ALL)
}

pub fn settings_for(etas: &[Permutation]) -> Vec<WitnessSetting> {
    etas.iter()
        .flat_map(|&eta| (1..=3).map(move |z| WitnessSetting { eta, z }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eighteen_settings_with_x_eq_eta_z() {
        let all = witness_settings();
        assert_eq!(all.len(), 18);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(s.index(), i);
            assert_eq!(s.x(), s.eta().apply(s.z()));
            assert_eq!(s.tuple().as_witness(), Some(*s));
        }
    }

    #[test]
    fn off_witness_tuple() {
        let t = SettingTuple::new(2, Permutation::IDENTITY, 1).unwrap();
        assert_eq!(t.as_witness(), None);
        assert!(SettingTuple::new(0, Permutation::IDENTITY, 1).is_err());
        assert!(SettingTuple::new(1, Permutation::IDENTITY, 4).is_err());
    }
}
