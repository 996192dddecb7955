use std::fmt;
use std::iter::Sum;
use std::ops::Add;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Exact nonnegative rational, always stored in lowest terms.
///
/// Displayed and serialized as `p/q`, including integers (`1/1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fraction(Ratio<u64>);

impl Fraction {
    pub const ZERO: Fraction = Fraction(Ratio::new_raw(0, 1));
    pub const ONE: Fraction = Fraction(Ratio::new_raw(1, 1));

    /// Panics if `denominator` is zero.
    pub fn new(numerator: u64, denominator: u64) -> Self {
        Fraction(Ratio::new(numerator, denominator))
    }

    pub fn from_integer(n: u64) -> Self {
        Fraction(Ratio::from_integer(n))
    }

    pub fn numerator(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denominator(&self) -> u64 {
        *self.0.denom()
    }

    /// Nearest float, for display only.
    pub fn to_f64(&self) -> f64 {
        self.numerator() as f64 / self.denominator() as f64
    }
}

impl Add for Fraction {
    type Output = Fraction;
    fn add(self, rhs: Fraction) -> Fraction {
        Fraction(self.0 + rhs.0)
    }
}

impl Sum for Fraction {
    fn sum<I: Iterator<Item = Fraction>>(iter: I) -> Self {
        iter.fold(Fraction::ZERO, Add::add)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse = |t: &str, pos: usize| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::parse(pos, format!("invalid integer `{t}`")))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let q_val = parse(q, p.len() + 1)?;
                if q_val == 0 {
                    return Err(Error::parse(p.len() + 1, "zero denominator"));
                }
                Ok(Fraction::new(parse(p, 0)?, q_val))
            }
            None => Ok(Fraction::from_integer(parse(s, 0)?)),
        }
    }
}

impl Serialize for Fraction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Fraction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_prints() {
        let f = Fraction::new(4, 6);
        assert_eq!(f.numerator(), 2);
        assert_eq!(f.denominator(), 3);
        assert_eq!(f.to_string(), "2/3");
        assert_eq!(Fraction::ONE.to_string(), "1/1");
    }

    #[test]
    fn parses_both_forms() {
        assert_eq!("5/10".parse::<Fraction>().unwrap(), Fraction::new(1, 2));
        assert_eq!("3".parse::<Fraction>().unwrap(), Fraction::from_integer(3));
        assert!("1/0".parse::<Fraction>().is_err());
        assert!("x/2".parse::<Fraction>().is_err());
    }

    #[test]
    fn sum_is_exact() {
        let s: Fraction = [Fraction::new(1, 6), Fraction::new(1, 6), Fraction::new(1, 3)]
            .into_iter()
            .sum();
        assert_eq!(s, Fraction::new(2, 3));
        let serialized = serde_json::to_string(&s).unwrap();
        assert_eq!(serialized, "\"2/3\"");
        assert_eq!(serde_json::from_str::<Fraction>(&serialized).unwrap(), s);
    }
}
