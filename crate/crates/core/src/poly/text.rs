//! Canonical text form: terms in descending graded-lex order joined by ` + `
//! or ` - `, each written `c*x<i>^<e>*...` with unit coefficients and unit
//! exponents elided, e.g. `x1^2*x2 + 3*x1 + 2`. The zero polynomial is `0`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed};

use super::{Monomial, Polynomial};
use crate::error::{Error, Result};

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let negative = c.sign() == Sign::Minus;
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    /// Parses the canonical grammar (any term order, arbitrary whitespace,
    /// repeated factors allowed) into an `nvars`-variable polynomial.
    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial> {
        let p: Polynomial = s.parse()?;
        if p.nvars > nvars {
            return Err(Error::Arity { expected: nvars, found: p.nvars });
        }
        p.widen(nvars)
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses with the variable count inferred from the largest index present.
    fn from_str(s: &str) -> Result<Polynomial> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(Monomial, BigInt)> = Vec::new();
        let mut rest = compact.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' if !first => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(Error::Parse(format!("expected '+' or '-' before {rest:?}"))),
            };
            first = false;
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(end);
            let (m, mut c) = parse_term(term)?;
            if negative {
                c = -c;
            }
            terms.push((m, c));
            rest = tail;
        }
        let nvars = terms.iter().filter_map(|(m, _)| m.max_var()).max().unwrap_or(0);
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        Ok(p)
    }
}

fn parse_term(term: &str) -> Result<(Monomial, BigInt)> {
    if term.is_empty() {
        return Err(Error::Parse("empty term".into()));
    }
    let mut coeff = BigInt::one();
    let mut pairs = Vec::new();
    for factor in term.split('*') {
        if let Some(var) = factor.strip_prefix('x') {
            let (idx, exp) = match var.split_once('^') {
                Some((i, e)) => (i, e.parse::<u32>().map_err(|_| bad_factor(factor))?),
                None => (var, 1),
            };
            let idx: usize = idx.parse().map_err(|_| bad_factor(factor))?;
            if idx == 0 {
                return Err(Error::Parse("variable indices start at x1".into()));
            }
            pairs.push((idx, exp));
        } else {
            let c: BigInt = factor.parse().map_err(|_| bad_factor(factor))?;
            if c.is_negative() {
                return Err(bad_factor(factor));
            }
            coeff *= c;
        }
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

fn bad_factor(factor: &str) -> Error {
    Error::Parse(format!("bad factor {factor:?}"))
}
