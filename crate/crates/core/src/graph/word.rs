use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::EdgeId;

/// Orientation of a traversal relative to an edge's reference orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// One signed edge symbol `e^{+1}` or `e^{-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl Letter {
    pub fn new(edge: impl Into<EdgeId>, sign: Sign) -> Self {
        Self {
            edge: edge.into(),
            sign,
        }
    }

    pub fn inverse(&self) -> Self {
        Self {
            edge: self.edge.clone(),
            sign: self.sign.flip(),
        }
    }
}

/// A sequence of signed edge symbols. Read as a walk it must be endpoint
/// compatible; read as a free-group element it need not be.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self(letters)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// `[("e2", 1), ("e1", -1)]` style constructor. Exponents other than ±1
    /// are expanded into repeated letters; zero exponents vanish.
    pub fn from_powers(powers: &[(&str, i64)]) -> Self {
        let mut letters = Vec::new();
        for &(e, k) in powers {
            let sign = if k >= 0 { Sign::Plus } else { Sign::Minus };
            letters.extend((0..k.unsigned_abs()).map(|_| Letter::new(e, sign)));
        }
        Self(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.0.push(letter);
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend(other.0.iter().cloned());
        Word(letters)
    }

    /// Reversed with every sign flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(Letter::inverse).collect())
    }

    /// Cancels adjacent `e e^{-1}` pairs.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in &self.0 {
            if out
                .last()
                .is_some_and(|last| last.edge == l.edge && last.sign != l.sign)
            {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        Word(out)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            match l.sign {
                Sign::Plus => write!(f, "{}", l.edge)?,
                Sign::Minus => write!(f, "{}^-1", l.edge)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_expand() {
        let w = Word::from_powers(&[("a", 2), ("b", -1), ("c", 0)]);
        assert_eq!(w.to_string(), "a a b^-1");
    }

    #[test]
    fn inverse_and_reduce() {
        let w = Word::from_powers(&[("a", 1), ("b", -1)]);
        assert_eq!(w.inverse().to_string(), "b a^-1");
        assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }

    #[test]
    fn sign_product() {
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
        assert_eq!(Sign::Plus * Sign::Minus, Sign::Minus);
    }
}
