use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize, Serializer};

use super::{expand_square, BoundsError, BracketWord, Coefficient, NcPolynomial, QSqrt6};
use crate::witness::Permutation;

/// Index patterns a square is summed over, with `i, j, k` bound to each tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sweep {
    None,
    Z3,
    S3,
}

impl Sweep {
    fn tuples(self) -> Vec<[u8; 3]> {
        match self {
            Sweep::None => vec![[1, 2, 3]],
            Sweep::Z3 => vec![[1, 2, 3], [2, 3, 1], [3, 1, 2]],
            Sweep::S3 => Permutation::ALL.iter().map(|p| p.images()).collect(),
        }
    }
}

/// `prefactor · Σ_sweep (Σ c_w w)ᵀ(Σ c_w w)`; words may use `i, j, k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Square {
    terms: Vec<(String, Coefficient)>,
    sweep: Sweep,
    prefactor: Coefficient,
}

impl Square {
    pub fn new(terms: Vec<(String, Coefficient)>, sweep: Sweep, prefactor: Coefficient) -> Result<Self, BoundsError> {
        for (word, _) in &terms {
            let ok = word.chars().all(|c| match c {
                '1'..='3' => true,
                'i' | 'j' | 'k' => sweep != Sweep::None,
                _ => false,
            });
            if !ok {
                return Err(BoundsError::BadWord(word.clone()));
            }
        }
        Ok(Self { terms, sweep, prefactor })
    }

    /// Build from `(word, coefficient)` strings.
    pub fn parse(terms: &[(&str, &str)], sweep: Sweep, prefactor: &str) -> Result<Self, BoundsError> {
        let terms = terms
            .iter()
            .map(|&(w, c)| Ok((w.to_string(), Coefficient::parse(c)?)))
            .collect::<Result<Vec<_>, BoundsError>>()?;
        Self::new(terms, sweep, Coefficient::parse(prefactor)?)
    }

    pub fn sweep(&self) -> Sweep {
        self.sweep
    }

    /// The square's base expression for every tuple of the sweep.
    pub fn expressions(&self) -> Vec<NcPolynomial> {
        self.sweep
            .tuples()
            .into_iter()
            .map(|ijk| {
                NcPolynomial::from_terms(self.terms.iter().map(|(w, c)| {
                    let letters: Vec<u8> = w
                        .chars()
                        .map(|ch| match ch {
                            'i' => ijk[0],
                            'j' => ijk[1],
                            'k' => ijk[2],
                            d => d as u8 - b'0',
                        })
                        .collect();
                    (BracketWord::new(&letters).expect("letters checked"), c.clone())
                }))
            })
            .collect()
    }

    pub fn expand(&self) -> NcPolynomial {
        self.expressions()
            .iter()
            .fold(NcPolynomial::zero(), |acc, e| acc.add(&expand_square(e)))
            .scale(&self.prefactor)
    }

    fn map_coefficients(&self, f: &impl Fn(&Coefficient) -> Coefficient) -> Self {
        Self {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), f(c))).collect(),
            sweep: self.sweep,
            prefactor: f(&self.prefactor),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SoSCertificate {
    pub name: String,
    pub squares: Vec<Square>,
}

impl SoSCertificate {
    pub fn expand(&self) -> NcPolynomial {
        self.squares.iter().fold(NcPolynomial::zero(), |acc, s| acc.add(&s.expand()))
    }

    /// Substitute rational `t ≠ 0` and `x`.
    pub fn instantiate(&self, t: &BigRational, x: &BigRational) -> Result<Self, BoundsError> {
        if t.is_zero() {
            return Err(BoundsError::ZeroT);
        }
        let f = |c: &Coefficient| Coefficient::constant(c.evaluate(t, x));
        Ok(Self {
            name: format!("{} (t={t}, x={x})", self.name),
            squares: self.squares.iter().map(|s| s.map_coefficients(&f)).collect(),
        })
    }
}

/// The symbolic outcome of expanding a certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct CertificateAnalysis {
    pub expansion: NcPolynomial,
    /// Identity coefficient.
    pub c0: Coefficient,
    /// Shared coefficient of `[1], [2], [3]`.
    pub c1: Coefficient,
    /// Surviving words of length ≥ 2.
    pub residual: Vec<(BracketWord, Coefficient)>,
    /// First residual word outside the cancellable class.
    pub offending: Option<BracketWord>,
}

pub fn analyze_certificate(cert: &SoSCertificate) -> Result<CertificateAnalysis, BoundsError> {
    let expansion = cert.expand();
    let linear: Vec<Coefficient> = (1..=3).map(|i| expansion.coefficient(&BracketWord::letter(i))).collect();
    if linear[0] != linear[1] || linear[1] != linear[2] {
        return Err(BoundsError::Asymmetric(linear.iter().map(|c| c.to_string()).collect()));
    }
    let residual: Vec<(BracketWord, Coefficient)> = expansion
        .terms()
        .filter(|(w, _)| w.len() >= 2)
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect();
    let offending = residual.iter().find(|(w, _)| !w.is_cancellable()).map(|(w, _)| w.clone());
    Ok(CertificateAnalysis {
        c0: expansion.coefficient(&BracketWord::identity()),
        c1: linear[0].clone(),
        expansion,
        residual,
        offending,
    })
}

fn as_string<S: Serializer, T: ToString>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualTerm {
    #[serde(serialize_with = "as_string")]
    pub word: BracketWord,
    #[serde(serialize_with = "as_string")]
    pub coefficient: QSqrt6,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundResult {
    pub name: String,
    pub bound: f64,
    #[serde(serialize_with = "as_string")]
    pub bound_exact: QSqrt6,
    #[serde(serialize_with = "as_string")]
    pub c0: QSqrt6,
    #[serde(serialize_with = "as_string")]
    pub c1: QSqrt6,
    pub residual: Vec<ResidualTerm>,
    /// Distinct residual shapes, e.g. `ijk`, `ijiki`.
    pub residual_class: Vec<String>,
    pub valid: bool,
    #[serde(serialize_with = "option_string")]
    pub offending_word: Option<BracketWord>,
}

fn option_string<S: Serializer>(v: &Option<BracketWord>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

/// Expand a numeric certificate and convert it into `F ≤ −6 c0 / c1`.
pub fn check_certificate(cert: &SoSCertificate) -> Result<BoundResult, BoundsError> {
    let analysis = analyze_certificate(cert)?;
    let constant = |c: &Coefficient| c.as_constant().ok_or_else(|| BoundsError::Parametric(c.to_string()));
    let c0 = constant(&analysis.c0)?;
    let c1 = constant(&analysis.c1)?;
    if c1.signum() != Ordering::Less {
        return Err(BoundsError::NoBound(c1.to_string()));
    }
    let inv = c1.inverse().expect("c1 < 0");
    let bound_exact = &(&QSqrt6::from_int(-6) * &c0) * &inv;
    let residual = analysis
        .residual
        .iter()
        .map(|(w, c)| Ok(ResidualTerm { word: w.clone(), coefficient: constant(c)? }))
        .collect::<Result<Vec<_>, BoundsError>>()?;
    let residual_class: BTreeSet<String> = residual.iter().map(|r| r.word.pattern()).collect();
    Ok(BoundResult {
        name: cert.name.clone(),
        bound: bound_exact.to_f64(),
        bound_exact,
        c0,
        c1,
        residual,
        residual_class: residual_class.into_iter().collect(),
        valid: analysis.offending.is_none(),
        offending_word: analysis.offending,
    })
}

/// `(x − [1] − [2] − [3])² + Σ_{Z₃} (t + t[j] − ([i] + [jk])/2t)²`.
pub fn quadratic_certificate() -> SoSCertificate {
    let squares = vec![
        Square::parse(&[("", "x"), ("1", "-1"), ("2", "-1"), ("3", "-1")], Sweep::None, "1"),
        Square::parse(
            &[("", "t"), ("j", "t"), ("i", "-1/2*t^-1"), ("jk", "-1/2*t^-1")],
            Sweep::Z3,
            "1",
        ),
    ];
    SoSCertificate {
        name: "real-quadratic".into(),
        squares: squares.into_iter().collect::<Result<_, _>>().expect("built-in"),
    }
}

/// The three-factor certificate giving `6√6`.
pub fn cubic_certificate() -> SoSCertificate {
    let squares = vec![
        Square::parse(&[("", "sqrt6"), ("1", "-1"), ("2", "-1"), ("3", "-1")], Sweep::None, "1/11"),
        Square::parse(
            &[
                ("", "36"),
                ("i", "-14*sqrt6"),
                ("ij", "3"),
                ("ik", "3"),
                ("kj", "-11"),
                ("jk", "-11"),
            ],
            Sweep::Z3,
            "1/9504",
        ),
        Square::parse(&[("ij", "1"), ("ik", "-1"), ("kj", "1"), ("jk", "-1")], Sweep::Z3, "3/864"),
        Square::parse(&[("ki", "sqrt6"), ("iji", "-1"), ("k", "-3"), ("j", "2")], Sweep::S3, "1/432"),
    ];
    SoSCertificate {
        name: "real-cubic".into(),
        squares: squares.into_iter().collect::<Result<_, _>>().expect("built-in"),
    }
}

/// `3(3 + x² + 6t² + 3/(2t²))/(x + 1 − t²)`, exactly.
pub fn quadratic_closed_form(t: &BigRational, x: &BigRational) -> Option<BigRational> {
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let six = BigRational::from_integer(BigInt::from(6));
    let t2 = t * t;
    if t2.is_zero() {
        return None;
    }
    let den = x + BigRational::from_integer(BigInt::from(1)) - &t2;
    if den.is_zero() {
        return None;
    }
    let num = &three + x * x + &six * &t2 + &three / (&two * &t2);
    Some(three * num / den)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareSpec {
    terms: Vec<(String, String)>,
    sweep: Sweep,
    #[serde(default = "one_string")]
    prefactor: String,
}

fn one_string() -> String {
    "1".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParameterSpec {
    t: String,
    x: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CertificateFile {
    name: String,
    squares: Vec<SquareSpec>,
    #[serde(default)]
    parameters: Option<ParameterSpec>,
}

fn parse_rational(s: &str) -> Result<BigRational, BoundsError> {
    let bad = || BoundsError::BadParameter(s.to_string());
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Load a certificate from JSON:
///
/// ```json
/// {"name": "demo",
///  "squares": [{"terms": [["", "sqrt6"], ["1", "-1"]], "sweep": "none", "prefactor": "1/11"}],
///  "parameters": {"t": "1", "x": "2"}}
/// ```
///
/// Words use digits `1..3` or `i, j, k` (bound by a `z3`/`s3` sweep). When
/// `parameters` is present the certificate is instantiated at those values.
pub fn load_certificate(json: &str) -> Result<SoSCertificate, BoundsError> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let file: CertificateFile = serde_path_to_error::deserialize(de).map_err(|e| {
        BoundsError::BadCertificateFile(format!("{} at line {} column {}: {}", e.path(), e.inner().line(), e.inner().column(), e.inner()))
    })?;
    let mut squares = Vec::with_capacity(file.squares.len());
    for (n, spec) in file.squares.iter().enumerate() {
        let terms: Vec<(&str, &str)> = spec.terms.iter().map(|(w, c)| (w.as_str(), c.as_str())).collect();
        squares.push(
            Square::parse(&terms, spec.sweep, &spec.prefactor)
                .map_err(|e| BoundsError::BadCertificateFile(format!("squares[{n}]: {e}")))?,
        );
    }
    let cert = SoSCertificate { name: file.name, squares };
    match file.parameters {
        Some(p) => cert.instantiate(&parse_rational(&p.t)?, &parse_rational(&p.x)?),
        None => Ok(cert),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::field::rational;

    fn w(s: &str) -> BracketWord {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_symbolic_expansion() {
        let a = analyze_certificate(&quadratic_certificate()).unwrap();
        assert_eq!(a.c0, Coefficient::parse("3 + x^2 + 6*t^2 + 3/2*t^-2").unwrap());
        assert_eq!(a.c1, Coefficient::parse("-2*x - 2 + 2*t^2").unwrap());
        assert_eq!(a.residual.len(), 6);
        let quarter = Coefficient::parse("1/4*t^-2").unwrap();
        for (word, c) in &a.residual {
            assert_eq!(word.pattern(), "ijk");
            assert_eq!(c, &quarter);
        }
        assert!(a.offending.is_none());
    }

    #[test]
    fn quadratic_at_t1_x2() {
        let cert = quadratic_certificate().instantiate(&rational(1, 1), &rational(2, 1)).unwrap();
        let r = check_certificate(&cert).unwrap();
        assert_eq!(r.c0, QSqrt6::from_ratio(29, 2));
        assert_eq!(r.c1, QSqrt6::from_int(-4));
        assert_eq!(r.bound_exact, QSqrt6::from_ratio(87, 4));
        assert_eq!(r.bound, 21.75);
        let closed = quadratic_closed_form(&rational(1, 1), &rational(2, 1)).unwrap();
        assert_eq!(QSqrt6::rational(closed), r.bound_exact);
    }

    #[test]
    fn cubic_gives_six_root_six() {
        let r = check_certificate(&cubic_certificate()).unwrap();
        assert_eq!(r.c0, QSqrt6::from_int(2));
        assert_eq!(r.c1, &QSqrt6::from_ratio(-1, 3) * &QSqrt6::sqrt6());
        assert_eq!(r.bound_exact, &QSqrt6::from_int(6) * &QSqrt6::sqrt6());
        assert!(r.valid);
        assert_eq!(r.residual_class, vec!["ijiki".to_string(), "ijk".to_string()]);
        let ijk = &QSqrt6::from_ratio(1, 24) * &QSqrt6::sqrt6();
        let ijiki = &QSqrt6::from_ratio(-1, 216) * &QSqrt6::sqrt6();
        assert_eq!(r.residual.len(), 12);
        for term in &r.residual {
            let expected = if term.word.len() == 3 { &ijk } else { &ijiki };
            assert_eq!(&term.coefficient, expected, "{}", term.word);
        }
    }

    #[test]
    fn cubic_square_matches_hand_expansion() {
        // (√6[ki] − [iji] − 3[k] + 2[j])² at (i,j,k) = (1,2,3)
        let sq = Square::parse(&[("31", "sqrt6"), ("121", "-1"), ("3", "-3"), ("2", "2")], Sweep::None, "1").unwrap();
        let e = sq.expand();
        let s6 = Coefficient::sqrt6();
        let c = |n: i64| Coefficient::int(n);
        let mut expected = NcPolynomial::constant(c(20));
        for (word, coeff) in [
            ("12131", s6.mul(&c(-1))),
            ("13121", s6.mul(&c(-1))),
            ("1", s6.mul(&c(-6))),
            ("132", s6.mul(&c(2))),
            ("231", s6.mul(&c(2))),
            ("1213", c(3)),
            ("3121", c(3)),
            ("1212", c(-2)),
            ("2121", c(-2)),
            ("32", c(-6)),
            ("23", c(-6)),
        ] {
            expected.add_term(w(word), coeff);
        }
        assert_eq!(e, expected);
    }

    #[test]
    fn asymmetric_and_non_bounding() {
        let lopsided = SoSCertificate {
            name: "lopsided".into(),
            squares: vec![Square::parse(&[("", "1"), ("1", "-1")], Sweep::None, "1").unwrap()],
        };
        assert!(matches!(check_certificate(&lopsided), Err(BoundsError::Asymmetric(_))));
        let positive = SoSCertificate {
            name: "positive".into(),
            squares: vec![Square::parse(&[("", "1"), ("i", "1")], Sweep::Z3, "1").unwrap()],
        };
        assert!(matches!(check_certificate(&positive), Err(BoundsError::NoBound(_))));
    }

    #[test]
    fn two_letter_residual_is_invalid() {
        let cert = SoSCertificate {
            name: "leaky".into(),
            squares: vec![Square::parse(&[("", "3"), ("1", "-1"), ("2", "-1"), ("3", "-1")], Sweep::None, "1").unwrap()],
        };
        let r = check_certificate(&cert).unwrap();
        assert!(!r.valid);
        assert_eq!(r.offending_word, Some(w("12")));
    }

    #[test]
    fn square_order_does_not_matter() {
        let mut cert = cubic_certificate();
        let a = check_certificate(&cert).unwrap();
        cert.squares.reverse();
        assert_eq!(check_certificate(&cert).unwrap(), a);
    }

    #[test]
    fn parametric_certificate_must_be_instantiated() {
        assert!(matches!(check_certificate(&quadratic_certificate()), Err(BoundsError::Parametric(_))));
        assert_eq!(
            quadratic_certificate().instantiate(&rational(0, 1), &rational(1, 1)),
            Err(BoundsError::ZeroT)
        );
    }

    #[test]
    fn template_letters_need_a_sweep() {
        assert!(matches!(
            Square::parse(&[("i", "1")], Sweep::None, "1"),
            Err(BoundsError::BadWord(_))
        ));
        assert!(Square::parse(&[("4", "1")], Sweep::Z3, "1").is_err());
    }

    #[test]
    fn json_round() {
        let json = r#"{"name": "q", "squares": [
            {"terms": [["", "x"], ["1", "-1"], ["2", "-1"], ["3", "-1"]], "sweep": "none"},
            {"terms": [["", "t"], ["j", "t"], ["i", "-1/2*t^-1"], ["jk", "-1/2*t^-1"]], "sweep": "z3"}],
            "parameters": {"t": "1", "x": "2"}}"#;
        let r = check_certificate(&load_certificate(json).unwrap()).unwrap();
        assert_eq!(r.bound, 21.75);
        let broken = r#"{"name": "q", "squares": [{"terms": [["", 3]], "sweep": "none"}]}"#;
        match load_certificate(broken) {
            Err(BoundsError::BadCertificateFile(msg)) => assert!(msg.contains("squares[0].terms"), "{msg}"),
            other => panic!("{other:?}"),
        }
    }
}
