use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A point with exact rational coordinates, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EvalPoint(Vec<BigRational>);

impl EvalPoint {
    pub fn new(coordinates: Vec<BigRational>) -> Self {
        Self(coordinates)
    }

    pub fn from_integers(values: impl IntoIterator<Item = i64>) -> Self {
        Self(values.into_iter().map(|v| BigRational::from_integer(v.into())).collect())
    }

    pub fn constant(n: usize, value: i64) -> Self {
        Self::from_integers(std::iter::repeat_n(value, n))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coordinates(&self) -> &[BigRational] {
        &self.0
    }

    /// Coordinate of variable `v` (1-based).
    pub fn get(&self, v: usize) -> &BigRational {
        &self.0[v - 1]
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    /// Writes every coordinate over the least common denominator `d`, returning
    /// the integer numerators and `d`.
    pub fn common_denominator(&self) -> (Vec<BigInt>, BigInt) {
        let d = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums = self.0.iter().map(|c| c.numer() * (&d / c.denom())).collect();
        (nums, d)
    }
}

/// Renders `p/q`, or just `p` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for EvalPoint {
    type Err = Error;

    /// Comma-separated exact rationals, e.g. `1,2,5/3`.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Self(Vec::new()));
        }
        s.split(',').map(parse_rational).collect::<Result<Vec<_>>>().map(Self)
    }
}

impl fmt::Display for EvalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&format_rational(c))?;
        }
        Ok(())
    }
}
