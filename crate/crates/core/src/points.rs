//! Fixed-point fantasy points with six fractional digits.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

/// Micro-points per point.
pub const SCALE: i64 = 1_000_000;

/// A point value stored as an integer count of micro-points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Points(i64);

impl Points {
    pub const ZERO: Points = Points(0);

    pub const fn from_micros(micros: i64) -> Self {
        Points(micros)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    /// Rounds to the nearest micro-point.
    pub fn from_f64(v: f64) -> Self {
        Points((v * SCALE as f64).round() as i64)
    }

    pub fn as_f64(self) -> f64 {
        self.0 as f64 / SCALE as f64
    }
}

impl Add for Points {
    type Output = Points;
    fn add(self, rhs: Points) -> Points {
        Points(self.0 + rhs.0)
    }
}

impl AddAssign for Points {
    fn add_assign(&mut self, rhs: Points) {
        self.0 += rhs.0;
    }
}

impl Sub for Points {
    type Output = Points;
    fn sub(self, rhs: Points) -> Points {
        Points(self.0 - rhs.0)
    }
}

impl Neg for Points {
    type Output = Points;
    fn neg(self) -> Points {
        Points(-self.0)
    }
}

impl Sum for Points {
    fn sum<I: Iterator<Item = Points>>(iter: I) -> Points {
        iter.fold(Points::ZERO, Add::add)
    }
}

/// Shortest exact rendering with at least one fractional digit: `8.5`, `-15.0`.
impl fmt::Display for Points {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_fixed(f, self.0 as i128, SCALE as i128)
    }
}

impl Serialize for Points {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.as_f64())
    }
}

/// Writes `value / scale` exactly, trimming trailing zeros. `scale` is a power of ten.
pub(crate) fn write_fixed(f: &mut impl fmt::Write, value: i128, scale: i128) -> fmt::Result {
    let sign = if value < 0 { "-" } else { "" };
    let abs = value.unsigned_abs();
    let scale = scale as u128;
    let int = abs / scale;
    let mut frac = abs % scale;
    let mut width = scale.ilog10() as usize;
    if frac == 0 {
        return write!(f, "{sign}{int}.0");
    }
    while frac % 10 == 0 {
        frac /= 10;
        width -= 1;
    }
    write!(f, "{sign}{int}.{frac:0width$}")
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid decimal {0:?}")]
pub struct ParsePointsError(pub String);

/// Accepts plain decimals (`12`, `-3.25`, `.5`). Digits past the sixth
/// fractional place are rounded half away from zero.
impl FromStr for Points {
    type Err = ParsePointsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParsePointsError(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.as_bytes().first() {
            Some(b'-') => (true, &t[1..]),
            Some(b'+') => (false, &t[1..]),
            _ => (false, t),
        };
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut micros: i64 = 0;
        for b in int_part.bytes() {
            micros = micros
                .checked_mul(10)
                .and_then(|m| m.checked_add((b - b'0') as i64))
                .ok_or_else(err)?;
        }
        micros = micros.checked_mul(SCALE).ok_or_else(err)?;
        let frac = frac_part.as_bytes();
        let mut place = SCALE / 10;
        for &b in frac.iter().take(6) {
            micros += (b - b'0') as i64 * place;
            place /= 10;
        }
        if frac.len() > 6 && frac[6] >= b'5' {
            micros = micros.checked_add(1).ok_or_else(err)?;
        }
        Ok(Points(if neg { -micros } else { micros }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_plain_decimals() {
        assert_eq!("8.418504".parse::<Points>().unwrap().micros(), 8_418_504);
        assert_eq!("12".parse::<Points>().unwrap().micros(), 12_000_000);
        assert_eq!("-15".parse::<Points>().unwrap().micros(), -15_000_000);
        assert_eq!(".5".parse::<Points>().unwrap().micros(), 500_000);
        assert_eq!("3.".parse::<Points>().unwrap().micros(), 3_000_000);
        assert_eq!("1.0000005".parse::<Points>().unwrap().micros(), 1_000_001);
        assert_eq!("1.0000004".parse::<Points>().unwrap().micros(), 1_000_000);
        assert_eq!("-1.0000005".parse::<Points>().unwrap().micros(), -1_000_001);
    }

    #[test]
    fn rejects_junk() {
        for s in ["", "-", ".", "3.5k", "1e3", "1,5", "--1", "99999999999999999999"] {
            assert!(s.parse::<Points>().is_err(), "{s}");
        }
    }

    #[test]
    fn display_is_exact_and_trimmed() {
        assert_eq!(Points::from_micros(8_500_000).to_string(), "8.5");
        assert_eq!(Points::from_micros(-15_000_000).to_string(), "-15.0");
        assert_eq!(Points::from_micros(8_418_504).to_string(), "8.418504");
        assert_eq!(Points::from_micros(-500).to_string(), "-0.0005");
        assert_eq!(Points::ZERO.to_string(), "0.0");
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(m in -10_000_000_000i64..10_000_000_000i64) {
            let p = Points::from_micros(m);
            prop_assert_eq!(p.to_string().parse::<Points>().unwrap(), p);
        }
    }
}
