//! Sparse multivariate polynomials with arbitrary-precision integer coefficients.
//!
//! A [`Polynomial`] carries its ambient variable count explicitly, so a
//! polynomial in `x_1..x_{n-1}` can live in an `n`-variable ring with `x_n`
//! simply absent. Terms are kept in a `BTreeMap` under graded-lex order with no
//! zero coefficients, which makes structural equality the same as polynomial
//! identity.

mod monomial;
mod point;
mod text;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{domain, Error, Result};

pub use monomial::{Monomial, VarIndex};
pub use point::{format_rational, parse_rational, EvalPoint};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(BigInt::one(), nvars)
    }

    pub fn constant(c: impl Into<BigInt>, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(), c.into());
        p
    }

    /// The variable `x_v`.
    ///
    /// # Panics
    /// If `v` is not in `1..=nvars`.
    pub fn var(v: VarIndex, nvars: usize) -> Self {
        Self::monomial(Monomial::var(v), BigInt::one(), nvars)
    }

    /// # Panics
    /// If the monomial mentions a variable beyond `nvars`.
    pub fn monomial(m: Monomial, c: impl Into<BigInt>, nvars: usize) -> Self {
        assert!(m.max_var().unwrap_or(0) <= nvars, "monomial {m} exceeds {nvars} variables");
        let mut p = Self::zero(nvars);
        p.add_term(m, c.into());
        p
    }

    /// `x_1 + ... + x_n`.
    pub fn sum_of_vars(nvars: usize) -> Self {
        Self::sum_of_first_vars(nvars, nvars)
    }

    /// `x_1 + ... + x_k` in an `nvars`-variable ring.
    pub fn sum_of_first_vars(k: usize, nvars: usize) -> Self {
        assert!(k <= nvars);
        let terms = (1..=k).map(|v| (Monomial::var(v), BigInt::one())).collect();
        Self { nvars, terms }
    }

    /// `x_1 * ... * x_n`.
    pub fn product_of_vars(nvars: usize) -> Self {
        Self::monomial(Monomial::from_pairs((1..=nvars).map(|v| (v, 1))), 1, nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Same as [`Polynomial::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Adds `c * m` in place, keeping the canonical form.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(m.max_var().unwrap_or(0) <= self.nvars);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Arity { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    /// `self += scale * other`.
    pub fn add_scaled_assign(&mut self, other: &Polynomial, scale: &BigInt) -> Result<()> {
        self.check_arity(other)?;
        if scale.is_zero() {
            return Ok(());
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
        Ok(())
    }

    pub fn add_assign_checked(&mut self, other: &Polynomial) -> Result<()> {
        self.check_arity(other)?;
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_assign_checked(other)?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        let mut out = self.clone();
        out.add_scaled_assign(other, &BigInt::from(-1))?;
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_arity(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut out = Polynomial::one(self.nvars);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// `prod_{i = a+1}^{a+m} (x_v + i)`, a degree-`m` polynomial in `x_v`; `m = 0` gives `1`.
    pub fn rising_product(v: VarIndex, a: i64, m: i64, nvars: usize) -> Result<Polynomial> {
        if v == 0 || v > nvars {
            return Err(domain(format!("variable x{v} outside a {nvars}-variable ring")));
        }
        Self::rising_over(&Polynomial::var(v, nvars), a, m)
    }

    /// `prod_{i = a+1}^{a+m} (x_1 + ... + x_n + i)`.
    pub fn rising_sum_product(nvars: usize, a: i64, m: i64) -> Result<Polynomial> {
        Self::rising_over(&Polynomial::sum_of_vars(nvars), a, m)
    }

    fn rising_over(base: &Polynomial, a: i64, m: i64) -> Result<Polynomial> {
        if m < 0 {
            return Err(domain(format!("rising product length must be >= 0, got m = {m}")));
        }
        let nvars = base.nvars;
        // expand prod (s + i) in one variable first, then substitute s = base
        let mut univariate = vec![BigInt::one()];
        for i in a + 1..=a + m {
            let i = BigInt::from(i);
            let mut next = vec![BigInt::zero(); univariate.len() + 1];
            for (k, c) in univariate.iter().enumerate() {
                next[k] += c * &i;
                next[k + 1] += c;
            }
            univariate = next;
        }
        let mut out = Polynomial::zero(nvars);
        let mut power = Polynomial::one(nvars);
        for (k, c) in univariate.iter().enumerate() {
            if k > 0 {
                power = &power * base;
            }
            out.add_scaled_assign(&power, c)?;
        }
        Ok(out)
    }

    /// Sets `x_v = 0`: drops every term that mentions `x_v`. The variable count is unchanged.
    pub fn substitute_zero(&self, v: VarIndex) -> Polynomial {
        let terms =
            self.terms.iter().filter(|(m, _)| !m.contains(v)).map(|(m, c)| (m.clone(), c.clone())).collect();
        Polynomial { nvars: self.nvars, terms }
    }

    /// Substitutes `x_i + c` for every `x_i` simultaneously.
    pub fn shift_all_vars(&self, c: &BigInt) -> Polynomial {
        if c.is_zero() {
            return self.clone();
        }
        let mut cache: BTreeMap<(VarIndex, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero(self.nvars);
        for (m, coeff) in &self.terms {
            let mut term = Polynomial::constant(coeff.clone(), self.nvars);
            for (v, e) in m.iter() {
                let factor = cache.entry((v, e)).or_insert_with(|| shifted_power(v, e, c, self.nvars));
                term = &term * &*factor;
            }
            out.add_assign_checked(&term).expect("same ring");
        }
        out
    }

    /// Exact value at `pt`.
    pub fn evaluate(&self, pt: &EvalPoint) -> Result<BigRational> {
        if pt.len() != self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: pt.len() });
        }
        // x_i = p_i / d: sum_k (sum_{deg m = k} c_m p^m) / d^k, all integer until the end
        let (nums, d) = pt.common_denominator();
        let max_deg = self.total_degree().unwrap_or(0) as usize;
        let mut powers: Vec<Vec<BigInt>> = nums.iter().map(|p| vec![BigInt::one(), p.clone()]).collect();
        let mut by_degree = vec![BigInt::zero(); max_deg + 1];
        for (m, c) in &self.terms {
            let mut acc = c.clone();
            for (v, e) in m.iter() {
                let pw = &mut powers[v - 1];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &pw[1];
                    pw.push(next);
                }
                acc *= &pw[e as usize];
            }
            by_degree[m.degree() as usize] += acc;
        }
        let mut num = BigInt::zero();
        // bring every degree over d^max_deg
        for (k, s) in by_degree.iter().enumerate() {
            num += s * Pow::pow(&d, (max_deg - k) as u32);
        }
        Ok(BigRational::new(num, Pow::pow(&d, max_deg as u32)))
    }

    /// Re-embeds into a ring with more variables; terms are unchanged.
    pub fn widen(&self, nvars: usize) -> Result<Polynomial> {
        if nvars < self.nvars {
            return Err(Error::Arity { expected: self.nvars, found: nvars });
        }
        Ok(Polynomial { nvars, terms: self.terms.clone() })
    }

    /// Renames `x_v` to `x_{perm[v - 1]}`; `perm` must be a permutation of `1..=nvars`.
    pub fn permute_vars(&self, perm: &[VarIndex]) -> Polynomial {
        assert_eq!(perm.len(), self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.permute(perm), c.clone());
        }
        out
    }
}

fn shifted_power(v: VarIndex, e: u32, c: &BigInt, nvars: usize) -> Polynomial {
    // (x + c)^e = sum_k C(e, k) c^(e-k) x^k
    let mut out = Polynomial::zero(nvars);
    for k in 0..=e {
        let coeff = binomial(BigInt::from(e), BigInt::from(k)) * Pow::pow(c, e - k);
        out.add_term(Monomial::var_pow(v, k), coeff);
    }
    out
}

/// First monomial, in descending graded-lex order, whose coefficients differ.
pub fn first_difference(a: &Polynomial, b: &Polynomial) -> Option<(Monomial, BigInt, BigInt)> {
    let mut ia = a.terms.iter().rev().peekable();
    let mut ib = b.terms.iter().rev().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (None, None) => return None,
            (Some(&(ma, ca)), None) => return Some((ma.clone(), ca.clone(), BigInt::zero())),
            (None, Some(&(mb, cb))) => return Some((mb.clone(), BigInt::zero(), cb.clone())),
            (Some(&(ma, ca)), Some(&(mb, cb))) => match ma.cmp(mb) {
                std::cmp::Ordering::Greater => return Some((ma.clone(), ca.clone(), BigInt::zero())),
                std::cmp::Ordering::Less => return Some((mb.clone(), BigInt::zero(), cb.clone())),
                std::cmp::Ordering::Equal => {
                    if ca != cb {
                        return Some((ma.clone(), ca.clone(), cb.clone()));
                    }
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// # Panics
    /// On mismatched variable counts; use [`Polynomial::checked_add`] to get an error instead.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&BigInt::from(-1))
    }
}
