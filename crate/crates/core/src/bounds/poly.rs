use std::collections::BTreeMap;
use std::fmt;

use super::{BracketWord, Coefficient};

/// `Σ c_w · w` over reduced bracket words, zero coefficients never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NcPolynomial {
    terms: BTreeMap<BracketWord, Coefficient>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::term(BracketWord::identity(), c)
    }

    pub fn term(word: BracketWord, c: Coefficient) -> Self {
        let mut p = Self::zero();
        p.add_term(word, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (BracketWord, Coefficient)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn add_term(&mut self, word: BracketWord, c: Coefficient) {
        let sum = match self.terms.get(&word) {
            Some(v) => v.add(&c),
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&word);
        } else {
            self.terms.insert(word, sum);
        }
    }

    pub fn coefficient(&self, word: &BracketWord) -> Coefficient {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BracketWord, &Coefficient)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Coefficient::int(-1)))
    }

    pub fn scale(&self, k: &Coefficient) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c.mul(k))))
    }

    /// Transpose: every word reversed, coefficients kept.
    pub fn reverse(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(w, c)| (w.reverse(), c.clone())))
    }
}

/// Distributive product with concatenation and `[∗ii⋆] = [∗⋆]`.
pub fn nc_multiply(a: &NcPolynomial, b: &NcPolynomial) -> NcPolynomial {
    let mut out = NcPolynomial::zero();
    for (wa, ca) in a.terms() {
        for (wb, cb) in b.terms() {
            out.add_term(wa.concat(wb), ca.mul(cb));
        }
    }
    out
}

/// `Oᵀ O` with the transpose reversing words.
pub fn expand_square(e: &NcPolynomial) -> NcPolynomial {
    nc_multiply(&e.reverse(), e)
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}){w}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BracketWord {
        s.parse().unwrap()
    }

    fn p(terms: &[(&str, i64)]) -> NcPolynomial {
        NcPolynomial::from_terms(terms.iter().map(|&(s, c)| (w(s), Coefficient::int(c))))
    }

    #[test]
    fn products() {
        assert_eq!(nc_multiply(&p(&[("1", 1)]), &p(&[("1", 1)])), p(&[("", 1)]));
        assert_eq!(nc_multiply(&p(&[("1", 1)]), &p(&[("2", 1)])), p(&[("12", 1)]));
        let s = p(&[("1", 1), ("2", 1)]);
        assert_eq!(nc_multiply(&s, &s), p(&[("", 2), ("12", 1), ("21", 1)]));
    }

    #[test]
    fn squares() {
        let e = p(&[("12", 1), ("21", -1)]);
        assert_eq!(expand_square(&e), p(&[("", 2), ("1212", -1), ("2121", -1)]));
        assert_eq!(expand_square(&p(&[("", 1)])), p(&[("", 1)]));
    }

    #[test]
    fn sqrt6_square_matches_hand_expansion() {
        // (√6 − [1] − [2] − [3])² = 9 − 2√6([1]+[2]+[3]) + Σ_{i≠j}[ij]
        let e = NcPolynomial::constant(Coefficient::sqrt6()).sub(&p(&[("1", 1), ("2", 1), ("3", 1)]));
        let mut expected = p(&[("", 9), ("12", 1), ("13", 1), ("21", 1), ("23", 1), ("31", 1), ("32", 1)]);
        for l in ["1", "2", "3"] {
            expected.add_term(w(l), Coefficient::sqrt6().mul(&Coefficient::int(-2)));
        }
        assert_eq!(expand_square(&e), expected);
    }
}
