//! Point evaluation of a left-hand side without enumerating trees.
//!
//! Summing `prod_i w_i(d_i)` over degree sequences with multiplicity
//! `(n-2)! / prod (d_i - 1)!` is `(n-2)!` times the coefficient of `t^{n-2}` in
//! `prod_i G_i(t)`, where `G_i(t) = sum_k w_i(k+1) t^k / k!`. Multiplying the
//! series in the binomial (exponential) convention keeps every intermediate an
//! integer: `h'[k] = sum_l C(k, l) g[l] h[k-l]`, and the final coefficient is
//! already multiplied by `(n-2)!`.
//!
//! Coordinates are written over one common denominator `D`, and the weight at
//! degree `d` is scaled by `D^{weight_degree(d)}`. Every degree sequence has
//! the same total `sum_i weight_degree(d_i)` because `sum_i d_i = 2n - 2`, so
//! the whole sum sits over a single power of `D`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{IdentityId, WeightFamily};
use crate::error::{domain, Error, Result};
use crate::poly::EvalPoint;

pub fn lhs_egf_eval_family(family: WeightFamily, n: usize, pt: &EvalPoint) -> Result<BigRational> {
    if n < 2 {
        return Err(domain(format!("the identities are stated for n >= 2, got n = {n}")));
    }
    if pt.len() != n {
        return Err(Error::Arity { expected: n, found: pt.len() });
    }
    let len = n - 1; // coefficients t^0 .. t^{n-2}
    let top = n - 2;

    let binom = pascal_rows(top);
    let (nums, d) = pt.common_denominator();
    // the star centered at n has degrees (1, ..., 1, n - 1)
    let scale = (n as u32 - 1) * family.weight_degree(1) + family.weight_degree(n - 1);
    let denom: BigInt = Pow::pow(&d, scale);
    let mut h: Vec<BigInt> = Vec::new();
    for (i, p) in nums.iter().enumerate() {
        // g[l] = w(l + 1), over D^{weight_degree(l + 1)}
        let g = family.scaled_values(len, p, &d);
        if i == 0 {
            h = g;
            continue;
        }
        // the last factor only needs the top coefficient
        let ks = if i == n - 1 { top..=top } else { 0..=top };
        let mut next = vec![BigInt::zero(); len];
        for k in ks {
            let row = &binom[k];
            let mut acc = BigInt::zero();
            for l in 0..=k {
                if g[l].is_zero() || h[k - l].is_zero() {
                    continue;
                }
                acc += &row[l] * &g[l] * &h[k - l];
            }
            next[k] = acc;
        }
        h = next;
    }
    let value = BigRational::new(h[top].clone(), denom);
    if pt.is_integral() && !value.is_integer() {
        return Err(Error::InternalConsistency(format!(
            "non-integral value {value} at integral point for n = {n}"
        )));
    }
    Ok(value)
}

/// Left-hand side at `pt` by exponential generating-function coefficient extraction.
pub fn lhs_egf_eval(identity: IdentityId, n: usize, pt: &EvalPoint) -> Result<BigRational> {
    lhs_egf_eval_family(identity.weight_family()?, n, pt)
}

fn pascal_rows(top: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for k in 1..=top {
        let prev = &rows[k - 1];
        let mut row = vec![BigInt::one(); k + 1];
        for l in 1..k {
            row[l] = &prev[l - 1] + &prev[l];
        }
        rows.push(row);
    }
    rows
}
