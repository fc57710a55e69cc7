//! Mechanical replay of the inductive step for the normalized identity
//! `L_n = R_n` in the variables `y_i`.
//!
//! Both sides have degree `n - 2` in `n` variables, so every monomial misses
//! some variable; by symmetry it suffices to compare them at `y_n = 0`. The
//! five sub-checks, for a fixed `n >= 3`:
//!
//! * `rhs-recursion`: `R_n|_{y_n=0} = (y_1 + ... + y_{n-1} + n - 3) R_{n-1}`
//! * `leaf-split`: `L_n|_{y_n=0}` is the sum of `w(T)` over trees where `n` is a leaf,
//!   and `w(T)|_{y_n=0} = 0` for every other tree
//! * `leaf-factor`: for `T` with leaf `n` and neighbor `a`,
//!   `w(T) = (y_a + d_{t(T)}(a) - 1) w(t(T))` where `t(T)` erases `n`
//! * `fiber-sum`: for every `T` on `[n-1]`, summing `w` over the `n - 1` ways of
//!   hanging `n` off `T` gives `(y_1 + ... + y_{n-1} + n - 3) w(T)`
//! * `lhs-recursion`: `L_n|_{y_n=0} = (y_1 + ... + y_{n-1} + n - 3) L_{n-1}`
//!
//! Polynomials over `[n-1]` are widened to `n` variables before comparison.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::report::polynomial_witness;
use super::{
    lhs_enumerate, rhs_closed_form, EngineId, IdentityId, Verdict, VerificationReport, VertexWeights,
    WeightFamily, Witness,
};
use crate::error::{domain, Result};
use crate::poly::Polynomial;
use crate::tree::{attach_leaf, degree_sequence, enumerate_trees, leaf_neighbor, strip_leaf};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubCheck {
    pub name: &'static str,
    pub description: &'static str,
    pub passed: bool,
    /// Number of polynomial identities compared.
    pub cases: usize,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug)]
pub struct InductionReport {
    pub report: VerificationReport,
    pub subchecks: Vec<SubCheck>,
}

fn sub(name: &'static str, description: &'static str, cases: usize, witness: Option<Witness>) -> SubCheck {
    SubCheck {
        name,
        description,
        passed: witness.is_none(),
        cases,
        witness: witness.map(|w| w.with_context(name)),
    }
}

pub fn check_induction_step(n: usize) -> Result<InductionReport> {
    if n < 3 {
        return Err(domain(format!("the induction step needs n >= 3, got n = {n}")));
    }
    let started = Instant::now();
    let prev = n - 1;
    let weights = VertexWeights::new(WeightFamily::PlaneShifted, n);
    let weights_prev = VertexWeights::new(WeightFamily::PlaneShifted, prev);
    let widen = |p: &Polynomial| p.widen(n).expect("widening to a larger ring");
    // y_1 + ... + y_{n-1} + n - 3
    let multiplier =
        &Polynomial::sum_of_first_vars(prev, n) + &Polynomial::constant(BigInt::from(n as i64 - 3), n);

    let l_n = lhs_enumerate(IdentityId::PlaneWeightedNormalized, n)?;
    let l_prev = lhs_enumerate(IdentityId::PlaneWeightedNormalized, prev)?;
    let r_n = rhs_closed_form(IdentityId::PlaneWeightedNormalized, n)?;
    let r_prev = rhs_closed_form(IdentityId::PlaneWeightedNormalized, prev)?;
    let l_n_at_zero = l_n.substitute_zero(n);

    let rhs_recursion = sub(
        "rhs-recursion",
        "R_n|y_n=0 = (sum_{i<n} y_i + n - 3) R_{n-1}",
        1,
        polynomial_witness(&r_n.substitute_zero(n), &(&multiplier * &widen(&r_prev))),
    );

    // leaf-split: split T_n by whether n is a leaf
    let trees: Vec<_> = enumerate_trees(n)?.collect();
    let vanishing_failure = trees.par_iter().find_map_first(|t| {
        let w = weights.tree_weight(t);
        let at_zero = w.substitute_zero(n);
        let is_leaf = degree_sequence(t).get(n) == 1;
        let expected = if is_leaf { w.clone() } else { Polynomial::zero(n) };
        polynomial_witness(&at_zero, &expected).map(|w| w.with_context(format!("leaf-split tree {t}")))
    });
    let leaf_sum = trees
        .par_iter()
        .filter(|t| degree_sequence(t).get(n) == 1)
        .map(|t| weights.tree_weight(t))
        .reduce(|| Polynomial::zero(n), |a, b| &a + &b);
    let leaf_split = sub(
        "leaf-split",
        "L_n|y_n=0 = sum of w(T) over trees with n a leaf; w(T)|y_n=0 = 0 otherwise",
        trees.len() + 1,
        vanishing_failure.or_else(|| polynomial_witness(&l_n_at_zero, &leaf_sum)),
    );

    // leaf-factor: every tree with leaf n factors through its stripped tree
    let leaf_trees: Vec<_> = trees.iter().filter(|t| degree_sequence(t).get(n) == 1).collect();
    let leaf_factor_failure = leaf_trees.par_iter().find_map_first(|t| {
        let a = leaf_neighbor(t, n).expect("n is a leaf");
        let stripped = strip_leaf(t, n).expect("n is a leaf and n >= 3");
        let d_a = degree_sequence(&stripped).get(a);
        let factor = &Polynomial::var(a, n) + &Polynomial::constant(BigInt::from(d_a as i64 - 1), n);
        let rhs = &factor * &widen(&weights_prev.tree_weight(&stripped));
        polynomial_witness(&weights.tree_weight(t), &rhs)
            .map(|w| w.with_context(format!("leaf-factor tree {t}")))
    });
    let leaf_factor = sub(
        "leaf-factor",
        "w(T) = (y_a + d_t(T)(a) - 1) w(t(T)) for every tree with leaf n",
        leaf_trees.len(),
        leaf_factor_failure,
    );

    // fiber-sum: fibers of the stripping map
    let smaller: Vec<_> = enumerate_trees(prev)?.collect();
    let fibers_failure = smaller.par_iter().find_map_first(|t| {
        let mut fiber_sum = Polynomial::zero(n);
        for a in 1..=prev {
            let grown = attach_leaf(t, a).expect("a in [n-1]");
            fiber_sum = &fiber_sum + &weights.tree_weight(&grown);
        }
        let rhs = &multiplier * &widen(&weights_prev.tree_weight(t));
        polynomial_witness(&fiber_sum, &rhs).map(|w| w.with_context(format!("fiber-sum tree {t}")))
    });
    let fibers = sub(
        "fiber-sum",
        "sum over a of w(T + leaf n at a) = (sum_{i<n} y_i + n - 3) w(T) for every T on [n-1]",
        smaller.len(),
        fibers_failure,
    );

    let lhs_recursion = sub(
        "lhs-recursion",
        "L_n|y_n=0 = (sum_{i<n} y_i + n - 3) L_{n-1}",
        1,
        polynomial_witness(&l_n_at_zero, &(&multiplier * &widen(&l_prev))),
    );

    let subchecks = vec![rhs_recursion, leaf_split, leaf_factor, fibers, lhs_recursion];
    let witness = subchecks.iter().find_map(|s| s.witness.clone());
    let report = VerificationReport {
        identity: IdentityId::InductionStep,
        n,
        engine: EngineId::Enumerate,
        verdict: Verdict::from_bool(witness.is_none()),
        witness,
        lhs_terms: l_n_at_zero.len() as u64,
        elapsed: Duration::ZERO,
        seed: None,
        trials: None,
    };
    let mut out = InductionReport { report, subchecks };
    out.report.elapsed = started.elapsed();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n3_by_hand() {
        // L_3|y_3=0 = y1 + y2 = (0 + y1 + y2) * L_2, L_2 = 1
        let r = check_induction_step(3).unwrap();
        assert!(r.report.passed());
        let l3 = lhs_enumerate(IdentityId::PlaneWeightedNormalized, 3).unwrap();
        assert_eq!(l3.substitute_zero(3), Polynomial::parse("x1 + x2", 3).unwrap());
        assert_eq!(lhs_enumerate(IdentityId::PlaneWeightedNormalized, 2).unwrap(), Polynomial::one(2));
    }

    #[test]
    fn n4_fiber_over_path() {
        // hanging 4 off 1, 2, 3 of the path 1-2-3 gives y1*y2, y2*(y2+1), y2*y3
        let path = crate::tree::LabeledTree::path(3).unwrap();
        let w = VertexWeights::new(WeightFamily::PlaneShifted, 4);
        let sum = (1..=3)
            .map(|a| w.tree_weight(&attach_leaf(&path, a).unwrap()))
            .fold(Polynomial::zero(4), |a, b| &a + &b);
        let expected = Polynomial::parse("x1*x2 + x2^2 + x2 + x2*x3", 4).unwrap();
        assert_eq!(sum, expected);
        assert_eq!(
            sum,
            &Polynomial::parse("x1 + x2 + x3 + 1", 4).unwrap() * &Polynomial::parse("x2", 4).unwrap()
        );
    }

    #[test]
    fn all_five_pass_to_six() {
        for n in 3..=6 {
            let r = check_induction_step(n).unwrap();
            assert_eq!(r.subchecks.len(), 5);
            for s in &r.subchecks {
                assert!(s.passed, "n = {n}: {} failed: {:?}", s.name, s.witness);
            }
            assert!(r.report.passed());
        }
        assert!(check_induction_step(2).is_err());
    }
}
