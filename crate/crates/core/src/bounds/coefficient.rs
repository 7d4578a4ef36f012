use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BoundsError, QSqrt6};

/// Exact `Σ c_{m,n} t^m x^n` with `c_{m,n} ∈ Q(√6)`, `m ∈ Z`, `n ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Coefficient {
    terms: BTreeMap<(i32, u32), QSqrt6>,
}

impl Coefficient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: QSqrt6) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Self::constant(QSqrt6::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(QSqrt6::from_ratio(n, d))
    }

    pub fn sqrt6() -> Self {
        Self::constant(QSqrt6::sqrt6())
    }

    /// `c · t^t_exp · x^x_exp`.
    pub fn monomial(c: QSqrt6, t_exp: i32, x_exp: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((t_exp, x_exp), c);
        }
        Self { terms }
    }

    pub fn t() -> Self {
        Self::monomial(QSqrt6::one(), 1, 0)
    }

    pub fn x() -> Self {
        Self::monomial(QSqrt6::one(), 0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if no `t` or `x` appears.
    pub fn as_constant(&self) -> Option<QSqrt6> {
        match self.terms.len() {
            0 => Some(QSqrt6::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, u32, &QSqrt6)> {
        self.terms.iter().map(|(&(m, n), c)| (m, n, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let sum = match out.terms.get(k) {
                Some(v) => v + c,
                None => c.clone(),
            };
            if sum.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(*k, sum);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(m1, n1), c1) in &self.terms {
            for (&(m2, n2), c2) in &other.terms {
                out = out.add(&Self::monomial(c1 * c2, m1 + m2, n1 + n2));
            }
        }
        out
    }

    /// Exact value at rational `t ≠ 0`, `x`.
    pub fn evaluate(&self, t: &BigRational, x: &BigRational) -> QSqrt6 {
        let mut total = QSqrt6::zero();
        for (&(m, n), c) in &self.terms {
            let tm = if m >= 0 {
                pow(t, m as u32)
            } else {
                BigRational::one() / pow(t, m.unsigned_abs())
            };
            let factor = QSqrt6::rational(tm * pow(x, n));
            total = &total + &(c * &factor);
        }
        total
    }

    pub fn evaluate_f64(&self, t: f64, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&(m, n), c)| c.to_f64() * t.powi(m) * x.powi(n as i32))
            .sum()
    }

    /// Parse sums of monomials such as `3 + x^2 + 6*t^2 + 3/2*t^-2` or
    /// `-14*sqrt6`. Factors are joined by `*`; a rational may be written `p/q`.
    pub fn parse(s: &str) -> Result<Self, BoundsError> {
        let err = |why: &str| BoundsError::BadCoefficient(format!("{s:?}: {why}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut monomials = Vec::new();
        let mut start = 0;
        let bytes: Vec<char> = compact.chars().collect();
        for (i, &ch) in bytes.iter().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && bytes[i - 1] != '^' && bytes[i - 1] != '*' {
                monomials.push(bytes[start..i].iter().collect::<String>());
                start = i;
            }
        }
        monomials.push(bytes[start..].iter().collect::<String>());
        let mut total = Self::zero();
        for mono in monomials {
            let (negative, body) = match mono.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, mono.strip_prefix('+').unwrap_or(&mono)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut value = Self::int(if negative { -1 } else { 1 });
            for factor in body.split('*') {
                value = value.mul(&parse_factor(factor).ok_or_else(|| err(&format!("bad factor {factor:?}")))?);
            }
            total = total.add(&value);
        }
        Ok(total)
    }
}

fn pow(base: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * base)
}

fn parse_factor(f: &str) -> Option<Coefficient> {
    if f == "sqrt6" || f == "√6" {
        return Some(Coefficient::sqrt6());
    }
    for (name, is_t) in [("t", true), ("x", false)] {
        if let Some(rest) = f.strip_prefix(name) {
            let e: i32 = match rest.strip_prefix('^') {
                Some(n) => n.parse().ok()?,
                None if rest.is_empty() => 1,
                None => return None,
            };
            return if is_t {
                Some(Coefficient::monomial(QSqrt6::one(), e, 0))
            } else {
                Some(Coefficient::monomial(QSqrt6::one(), 0, u32::try_from(e).ok()?))
            };
        }
    }
    let (num, den) = match f.split_once('/') {
        Some((n, d)) => (n, d),
        None => (f, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Coefficient::constant(QSqrt6::rational(BigRational::new(num, den))))
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (&(m, n), c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let needs_parens = !c.is_rational() && !c.a().is_zero();
            if needs_parens {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
            match m {
                0 => {}
                1 => f.write_str("*t")?,
                _ => write!(f, "*t^{m}")?,
            }
            match n {
                0 => {}
                1 => f.write_str("*x")?,
                _ => write!(f, "*x^{n}")?,
            }
        }
        Ok(())
    }
}
