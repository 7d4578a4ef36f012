use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::BoundsError;

/// Reduced product `[i₁i₂…]` of involutive generators `1, 2, 3`.
///
/// No two adjacent letters are equal; the empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BracketWord {
    letters: Vec<u8>,
}

impl BracketWord {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Reduce an arbitrary letter sequence with `[∗ii⋆] = [∗⋆]`.
    pub fn new(letters: &[u8]) -> Result<Self, BoundsError> {
        if let Some(&bad) = letters.iter().find(|l| !(1..=3).contains(*l)) {
            return Err(BoundsError::BadLetter(bad));
        }
        Ok(Self::reduce(letters.iter().copied()))
    }

    fn reduce(letters: impl IntoIterator<Item = u8>) -> Self {
        let mut out: Vec<u8> = Vec::new();
        for l in letters {
            if out.last() == Some(&l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Self { letters: out }
    }

    pub fn letter(i: u8) -> Self {
        Self::new(&[i]).expect("letter in 1..=3")
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Transpose: the reversed product.
    pub fn reverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    pub fn concat(&self, other: &Self) -> Self {
        Self::reduce(self.letters.iter().chain(&other.letters).copied())
    }

    /// How often each of `1, 2, 3` occurs.
    pub fn multiplicities(&self) -> [usize; 3] {
        let mut m = [0; 3];
        for &l in &self.letters {
            m[(l - 1) as usize] += 1;
        }
        m
    }

    /// Each of `1, 2, 3` occurs an odd number of times (so the length is odd): the
    /// sign of such a word does not depend on `b` and it cancels against its
    /// transpose for real states.
    pub fn is_cancellable(&self) -> bool {
        self.len() % 2 == 1 && self.multiplicities().iter().all(|m| m % 2 == 1)
    }

    /// Shape up to relabelling, letters named `i, j, k` by first appearance.
    pub fn pattern(&self) -> String {
        let mut names: Vec<u8> = Vec::new();
        self.letters
            .iter()
            .map(|l| {
                let pos = names.iter().position(|n| n == l).unwrap_or_else(|| {
                    names.push(*l);
                    names.len() - 1
                });
                ['i', 'j', 'k'][pos]
            })
            .collect()
    }
}

impl Ord for BracketWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for BracketWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BracketWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for BracketWord {
    type Err = BoundsError;

    /// Digits with optional brackets; `"[]"` and `""` are the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let inner = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(s);
        let letters: Option<Vec<u8>> = inner.chars().map(|c| c.to_digit(10).map(|d| d as u8)).collect();
        let letters = letters.ok_or_else(|| BoundsError::BadWord(s.to_string()))?;
        Self::new(&letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BracketWord {
        s.parse().unwrap()
    }

    #[test]
    fn reduction() {
        assert_eq!(w("11"), BracketWord::identity());
        assert_eq!(w("[1221]"), BracketWord::identity());
        assert_eq!(w("12213"), w("3"));
        assert_eq!(w("1").concat(&w("2")), w("12"));
        assert!(BracketWord::new(&[4]).is_err());
    }

    #[test]
    fn cancellable_class() {
        for s in ["123", "321", "12131", "3231232"] {
            assert!(w(s).is_cancellable(), "{s}");
        }
        for s in ["1", "2", "12", "121", "1212", "1213", "123123"] {
            assert!(!w(s).is_cancellable(), "{s}");
        }
    }

    #[test]
    fn patterns() {
        assert_eq!(w("312").pattern(), "ijk");
        assert_eq!(w("21232").pattern(), "ijiki");
        assert_eq!(w("").pattern(), "");
        assert_eq!(w("[]").to_string(), "[]");
        assert_eq!(w("[2131]").to_string(), "[2131]");
    }

    #[test]
    fn ordering_by_length_first() {
        assert!(w("3") < w("12"));
        assert!(w("12") < w("13"));
    }
}
