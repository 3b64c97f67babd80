//! Exact Laurent polynomials in `q` with arbitrary precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::FormatError;

/// `sum a_i q^i`, stored sparsely. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: impl Into<BigInt>, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exponent, coeff.into());
        p
    }

    /// `q^shift`.
    pub fn q_pow(shift: i64) -> Self {
        Self::monomial(1, shift)
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(exponent).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    /// Terms in descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().rev().map(|(e, c)| (*e, c))
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitutes `q -> q^-1`.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.bar()
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Sum of the coefficients, i.e. the value at `q = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// `(exponent, coefficient)` pairs in descending order, coefficients as decimal strings.
    pub fn to_pairs(&self) -> Vec<(i64, String)> {
        self.terms().map(|(e, c)| (e, c.to_string())).collect()
    }
}

/// The quantum integer `[n] = q^(n-1) + q^(n-3) + ... + q^-(n-1)`.
pub fn quantum_integer(n: i64) -> Result<LaurentPoly, crate::error::Error> {
    if n < 1 {
        return Err(crate::error::Error::Precondition(format!("quantum integer needs n >= 1, got {n}")));
    }
    Ok(LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1))))
}

/// True iff `deg p = d` and the leading coefficient is 1.
pub fn is_monic_of_degree(p: &LaurentPoly, d: i64) -> bool {
    p.degree() == Some(d) && p.leading_coeff().is_some_and(|c| c.is_one())
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical descending form, e.g. `q^4+3q^2+4+3q^-2+q^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if neg {
                f.write_str("-")?;
            } else if i > 0 {
                f.write_str("+")?;
            }
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}")?;
            }
            if e == 1 {
                f.write_str("q")?;
            } else {
                write!(f, "q^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = FormatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(FormatError::Syntax("empty polynomial".into()));
        }
        let bad = || FormatError::Syntax(format!("cannot parse polynomial {s:?}"));
        let mut out = LaurentPoly::zero();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut negative = false;
            if bytes[i] == b'+' || bytes[i] == b'-' {
                negative = bytes[i] == b'-';
                i += 1;
            } else if i > 0 {
                return Err(bad());
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: BigInt = if i > start { s[start..i].parse().map_err(|_| bad())? } else { BigInt::one() };
            let mut exponent = 0i64;
            if i < bytes.len() && bytes[i] == b'q' {
                i += 1;
                exponent = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let estart = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exponent = s[estart..i].parse().map_err(|_| bad())?;
                }
            } else if i == start {
                return Err(bad());
            }
            out.add_term(exponent, if negative { -coeff } else { coeff });
        }
        Ok(out)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer(1).unwrap(), LaurentPoly::one());
        assert_eq!(quantum_integer(2).unwrap().to_string(), "q+q^-1");
        assert_eq!(quantum_integer(3).unwrap().to_string(), "q^2+1+q^-2");
        assert!(quantum_integer(0).is_err());
    }

    #[test]
    fn products_of_quantum_integers() {
        let two = quantum_integer(2).unwrap();
        let three = quantum_integer(3).unwrap();
        assert_eq!((&two * &three).to_string(), "q^3+2q+2q^-1+q^-3");
        assert_eq!(three.pow(2).to_string(), "q^4+2q^2+3+2q^-2+q^-4");
        assert_eq!((&two.pow(2) * &three).to_string(), "q^4+3q^2+4+3q^-2+q^-4");
    }

    #[test]
    fn monic_checks() {
        let two = quantum_integer(2).unwrap();
        let three = quantum_integer(3).unwrap();
        assert!(is_monic_of_degree(&three, 2));
        assert!(is_monic_of_degree(&(&two * &three), 3));
        assert!(!is_monic_of_degree(&(&two.pow(2) * &three), 2));
        assert!(!is_monic_of_degree(&LaurentPoly::zero(), 0));
        assert!(!is_monic_of_degree(&p("2q^2+1"), 2));
    }

    #[test]
    fn display_edge_cases() {
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("-q^-1").to_string(), "-q^-1");
        assert_eq!(p("3-2q").to_string(), "-2q+3");
        assert_eq!(p("q^2-q^2").to_string(), "0");
        assert!("q^".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }

        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        }
    }
}
