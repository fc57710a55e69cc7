//! Counting vertex-labeled plane trees.
//!
//! A tree with degrees `d_i` has `prod (d_i - 1)!` plane structures (a cyclic
//! order of the edges at every vertex), so the number of plane trees on `[n]`
//! is the plane-divided left-hand side at `x = 0`. The closed form is the
//! rising product `n (n+1) ... (2n-3) = (2n-3)! / (n-1)!`.

use num_bigint::BigInt;
use num_traits::One;

use super::engines::{compositions_colex, factorial, trees_with_degrees};
use crate::error::{domain, Result};
use crate::tree::{degree_sequence, par_fold_trees, LabeledTree};

fn require_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("plane-tree counts are stated for n >= 2, got n = {n}")));
    }
    Ok(())
}

/// `prod_i (d_T(i) - 1)!`, the number of plane embeddings of `tree`.
pub fn plane_embeddings(tree: &LabeledTree) -> BigInt {
    degree_sequence(tree).as_slice().iter().map(|&d| factorial(d.saturating_sub(1))).product()
}

/// Sum of plane embeddings over all trees, grouped by degree sequence.
pub fn leroux_miloudi_count(n: usize) -> Result<BigInt> {
    leroux_miloudi_count_degree_seq(n)
}

pub fn leroux_miloudi_count_degree_seq(n: usize) -> Result<BigInt> {
    require_n(n)?;
    let mut total = BigInt::ZERO;
    for degrees in compositions_colex(n)? {
        let embeddings: BigInt = degrees.iter().map(|&d| factorial(d - 1)).product();
        total += trees_with_degrees(&degrees)? * embeddings;
    }
    Ok(total)
}

/// Sum of plane embeddings over every tree on `[n]`, one tree at a time.
pub fn leroux_miloudi_count_enumerate(n: usize) -> Result<BigInt> {
    require_n(n)?;
    par_fold_trees(n, BigInt::default, |acc, t| acc + plane_embeddings(&t), |a, b| a + b)
}

/// `n (n+1) ... (2n-3)`.
pub fn leroux_miloudi_closed_form(n: usize) -> Result<BigInt> {
    require_n(n)?;
    Ok((n..=2 * n - 3).fold(BigInt::one(), |acc, j| acc * BigInt::from(j)))
}
