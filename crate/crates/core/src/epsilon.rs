use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Serialize, Serializer};
use thiserror::Error;

/// A proximity parameter in `(0, 1]`, held as an exact rational so that
/// degree thresholds such as `d(v) > 2α/ε` never flip on float rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Epsilon(Ratio<u64>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EpsilonError {
    #[error("cannot parse {0:?} as a fraction or decimal")]
    Syntax(String),
    #[error("epsilon must lie in (0, 1], got {0}")]
    OutOfRange(String),
}

impl Epsilon {
    pub fn new(numer: u64, denom: u64) -> Result<Self, EpsilonError> {
        if denom == 0 || numer == 0 || numer > denom {
            return Err(EpsilonError::OutOfRange(format!("{numer}/{denom}")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    /// `d > 2α/ε`, evaluated exactly.
    pub fn exceeds_high_threshold(&self, degree: usize, alpha: usize) -> bool {
        degree as u128 * self.numer() as u128 > 2 * alpha as u128 * self.denom() as u128
    }

    /// `⌈2α/ε⌉`, the size of the neighbor-index range probed per vertex.
    pub fn index_range(&self, alpha: usize) -> usize {
        let num = 2 * alpha as u128 * self.denom() as u128;
        num.div_ceil(self.numer() as u128) as usize
    }

    /// `x > c·ε` for a rational constant `c = c_num / c_den`, with `x = hits / total`.
    pub fn fraction_exceeds(&self, hits: u64, total: u64, c_num: u64, c_den: u64) -> bool {
        hits as u128 * c_den as u128 * self.denom() as u128
            > c_num as u128 * self.numer() as u128 * total as u128
    }
}

impl FromStr for Epsilon {
    type Err = EpsilonError;

    /// Accepts `a/b` or a plain decimal such as `0.05`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let syntax = || EpsilonError::Syntax(s.to_string());
        if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| syntax())?;
            let b: u64 = b.trim().parse().map_err(|_| syntax())?;
            return Self::new(a, b);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(syntax());
        }
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| syntax())?
        };
        let denom = 10u64.pow(frac.len() as u32);
        let frac_val: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| syntax())?
        };
        let numer = int
            .checked_mul(denom)
            .and_then(|x| x.checked_add(frac_val))
            .ok_or_else(syntax)?;
        Self::new(numer, denom).map_err(|_| EpsilonError::OutOfRange(s.to_string()))
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for Epsilon {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!("1/20".parse::<Epsilon>().unwrap(), Epsilon::new(1, 20).unwrap());
        assert_eq!("0.05".parse::<Epsilon>().unwrap(), Epsilon::new(1, 20).unwrap());
        assert_eq!("1".parse::<Epsilon>().unwrap(), Epsilon::new(1, 1).unwrap());
        assert!("0".parse::<Epsilon>().is_err());
        assert!("3/2".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
        assert!("-0.1".parse::<Epsilon>().is_err());
    }

    #[test]
    fn high_threshold_is_strict() {
        let e = Epsilon::new(1, 20).unwrap();
        assert!(!e.exceeds_high_threshold(40, 1));
        assert!(e.exceeds_high_threshold(41, 1));
        let e = Epsilon::new(1, 10).unwrap();
        assert!(!e.exceeds_high_threshold(100, 5));
        assert!(e.exceeds_high_threshold(101, 5));
    }

    #[test]
    fn index_range_rounds_up() {
        assert_eq!(Epsilon::new(1, 20).unwrap().index_range(1), 40);
        assert_eq!(Epsilon::new(3, 40).unwrap().index_range(1), 27);
    }

    #[test]
    fn rational_comparison() {
        let e = Epsilon::new(1, 20).unwrap();
        // 2.6 * 0.05 = 0.13
        assert!(!e.fraction_exceeds(13, 100, 13, 5));
        assert!(e.fraction_exceeds(14, 100, 13, 5));
    }
}
