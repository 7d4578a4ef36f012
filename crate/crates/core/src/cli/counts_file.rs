use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::qsim::{Counts, Outcome};
use crate::witness::{CountsRecord, Permutation, SettingTuple};

pub const BIT_ORDER: &str = "apqc";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SettingSpec {
    pub x: u8,
    pub eta: Permutation,
    pub z: u8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecordSpec {
    pub setting: SettingSpec,
    pub shots: u64,
    /// Four-bit strings in `bit_order`, mapped to occurrence counts.
    pub counts: BTreeMap<String, u64>,
}

/// Measured counts per setting, as read and written by `sample` and `ingest`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountsFile {
    pub bit_order: String,
    pub records: Vec<RecordSpec>,
}

impl CountsFile {
    pub fn from_records(records: &[CountsRecord]) -> Self {
        Self {
            bit_order: BIT_ORDER.into(),
            records: records
                .iter()
                .map(|r| RecordSpec {
                    setting: SettingSpec {
                        x: r.setting.x,
                        eta: r.setting.eta,
                        z: r.setting.z,
                    },
                    shots: r.counts.shots(),
                    counts: r
                        .counts
                        .iter()
                        .filter(|&(_, n)| n > 0)
                        .map(|(o, n)| (o.to_string(), n))
                        .collect(),
                })
                .collect(),
        }
    }

    /// Parse with path, line and column in any schema error.
    pub fn parse(json: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(json);
        serde_path_to_error::deserialize(de).map_err(|e| {
            CliError::Validation(format!(
                "counts file: {} (line {}, column {}): {}",
                e.path(),
                e.inner().line(),
                e.inner().column(),
                e.inner()
            ))
        })
    }

    /// Check the semantic rules and convert into records.
    pub fn to_records(&self) -> Result<Vec<CountsRecord>, CliError> {
        if self.bit_order != BIT_ORDER {
            return Err(CliError::Validation(format!(
                "counts file: bit_order must be {BIT_ORDER:?}, got {:?}",
                self.bit_order
            )));
        }
        self.records
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let at = |msg: String| CliError::Validation(format!("counts file: records[{i}]: {msg}"));
                let setting = SettingTuple::new(r.setting.x, r.setting.eta, r.setting.z).map_err(|e| at(e.to_string()))?;
                let mut counts = Counts::default();
                for (key, &n) in &r.counts {
                    let o: Outcome = key.parse().map_err(|_| at(format!("counts key {key:?} is not a 4-bit string")))?;
                    counts.add(o, n);
                }
                if counts.shots() != r.shots {
                    return Err(at(format!(
                        "counts for {setting} sum to {}, but shots = {}",
                        counts.shots(),
                        r.shots
                    )));
                }
                if r.shots == 0 {
                    return Err(at(format!("no shots for {setting}")));
                }
                Ok(CountsRecord { setting, counts })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_record(body: &str) -> String {
        format!(r#"{{"bit_order": "apqc", "records": [{body}]}}"#)
    }

    #[test]
    fn round_trip() {
        let mut counts = Counts::default();
        counts.add("0101".parse().unwrap(), 7);
        counts.add("0000".parse().unwrap(), 3);
        let rec = CountsRecord {
            setting: SettingTuple::new(2, "231".parse().unwrap(), 1).unwrap(),
            counts,
        };
        let file = CountsFile::from_records(std::slice::from_ref(&rec));
        let json = serde_json::to_string(&file).unwrap();
        assert!(json.contains(r#""eta":"231""#));
        let back = CountsFile::parse(&json).unwrap().to_records().unwrap();
        assert_eq!(back, vec![rec]);
    }

    #[test]
    fn schema_errors_carry_location() {
        let bad = one_record(r#"{"setting": {"x": 1, "eta": "124", "z": 1}, "shots": 1, "counts": {"0000": 1}}"#);
        match CountsFile::parse(&bad) {
            Err(CliError::Validation(msg)) => {
                assert!(msg.contains("records[0].setting.eta"), "{msg}");
                assert!(msg.contains("line 1"), "{msg}");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn semantic_errors() {
        let cases = [
            (r#"{"setting": {"x": 1, "eta": "123", "z": 1}, "shots": 2, "counts": {"0000": 1}}"#, "sum to 1"),
            (r#"{"setting": {"x": 1, "eta": "123", "z": 1}, "shots": 1, "counts": {"0200": 1}}"#, "4-bit"),
            (r#"{"setting": {"x": 4, "eta": "123", "z": 1}, "shots": 1, "counts": {"0000": 1}}"#, "x=4"),
            (r#"{"setting": {"x": 1, "eta": "123", "z": 1}, "shots": 0, "counts": {}}"#, "no shots"),
        ];
        for (body, needle) in cases {
            let file = CountsFile::parse(&one_record(body)).unwrap();
            match file.to_records() {
                Err(CliError::Validation(msg)) => assert!(msg.contains(needle), "{msg}"),
                other => panic!("{other:?}"),
            }
        }
        let wrong_order = r#"{"bit_order": "cqpa", "records": []}"#;
        assert!(CountsFile::parse(wrong_order).unwrap().to_records().is_err());
    }
}
