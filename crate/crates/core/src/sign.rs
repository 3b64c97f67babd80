use std::fmt;
use std::ops::Neg;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::FormatError;

/// Orientation label of a boundary point.
///
/// A `Plus` point is the head of its edge (the strand runs into the border
/// line); a `Minus` point is the tail (the strand leaves the border line).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
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
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Ordered boundary signs, read left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignSequence(pub Vec<Sign>);

impl SignSequence {
    pub fn new(entries: Vec<Sign>) -> Self {
        SignSequence(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn signed_sum(&self) -> i64 {
        self.0.iter().map(|s| s.value()).sum()
    }

    /// Admissible iff the signed sum is divisible by three.
    pub fn is_admissible(&self) -> bool {
        self.signed_sum().rem_euclid(3) == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Sign> + '_ {
        self.0.iter().copied()
    }

    /// Every sign sequence of length `len`, in lexicographic order with `+` first.
    pub fn all_of_length(len: usize) -> Vec<SignSequence> {
        (0..1u64 << len)
            .map(|mask| {
                SignSequence(
                    (0..len)
                        .map(|i| if mask >> (len - 1 - i) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                        .collect(),
                )
            })
            .collect()
    }
}

pub fn is_admissible_sequence(eps: &SignSequence) -> bool {
    eps.is_admissible()
}

impl fmt::Display for SignSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for SignSequence {
    type Err = FormatError;

    /// Accepts `+-+`, `(+,-,+)` or `+,-,+`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut out = Vec::new();
        for c in s.chars() {
            match c {
                '+' => out.push(Sign::Plus),
                '-' => out.push(Sign::Minus),
                '(' | ')' | ',' | ' ' => {}
                other => {
                    return Err(FormatError::Syntax(format!("unexpected character {other:?} in sign sequence")))
                }
            }
        }
        Ok(SignSequence(out))
    }
}

impl From<Vec<Sign>> for SignSequence {
    fn from(v: Vec<Sign>) -> Self {
        SignSequence(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!("+-".parse::<SignSequence>().unwrap().is_admissible());
        assert!(!"+".parse::<SignSequence>().unwrap().is_admissible());
        assert!("+++".parse::<SignSequence>().unwrap().is_admissible());
        assert!("(+,-,-,+,+,-,-,+,+,-,-,+)".parse::<SignSequence>().unwrap().is_admissible());
    }

    #[test]
    fn enumerate_lengths() {
        let all = SignSequence::all_of_length(3);
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].to_string(), "(+,+,+)");
        assert_eq!(all.iter().filter(|e| e.is_admissible()).count(), 2);
    }
}
