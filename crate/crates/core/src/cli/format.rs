use serde::Serialize;
use serde_json::Value;

use crate::witness::CorrelationTerm;

/// Round to 15 significant digits.
pub fn round15(v: f64) -> f64 {
    if !v.is_finite() || v == 0.0 {
        return v;
    }
    format!("{v:.14e}").parse().expect("formatted float parses")
}

/// Text form of a float with at most 15 significant digits.
pub fn fmt15(v: f64) -> String {
    let r = round15(v);
    if r.is_finite() && r == r.trunc() && r.abs() < 1e15 {
        format!("{}", r as i64)
    } else if r.is_finite() && r.abs() < 1e-4 {
        format!("{r:e}")
    } else {
        format!("{r}")
    }
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(f) = n.as_f64() {
                if let Some(r) = serde_json::Number::from_f64(round15(f)) {
                    *n = r;
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON with every float rounded to 15 significant digits.
pub fn to_json<T: Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

/// The term table as CSV: `eta,z,b,signed_value`.
pub fn terms_csv(terms: &[CorrelationTerm]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["eta", "z", "b", "signed_value"])?;
    for t in terms {
        w.write_record([
            t.setting.eta.to_string(),
            t.setting.z.to_string(),
            t.b.to_string(),
            fmt15(t.signed_value),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("ASCII output"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_digits() {
        assert_eq!(fmt15(14.696938456699067), "14.6969384566991");
        assert_eq!(fmt15(18.000000000000004), "18");
        assert_eq!(fmt15(0.25), "0.25");
        assert_eq!(fmt15(1.1102230246251565e-16), "1.11022302462516e-16");
        assert_eq!(fmt15(-0.006291352789816), "-0.006291352789816");
        assert_eq!(round15(f64::INFINITY), f64::INFINITY);
    }

    #[test]
    fn json_rounding_is_recursive() {
        let s = to_json(&serde_json::json!({"a": [1.0000000000000002, 3], "b": {"c": 14.878894492530868}})).unwrap();
        assert!(s.contains("14.8788944925309"), "{s}");
        assert!(s.contains("1.0"), "{s}");
        assert!(!s.contains("0000000000000002"));
    }
}
