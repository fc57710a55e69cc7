use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use rayon::prelude::*;

use super::{IdentityId, WeightFamily};
use crate::error::{domain, Error, Result};
use crate::poly::{EvalPoint, Polynomial};
use crate::tree::{degree_sequence, par_fold_trees, LabeledTree};

fn require_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(domain(format!("the identities are stated for n >= 2, got n = {n}")));
    }
    Ok(())
}

/// Per-vertex weight polynomials `w_v(d)` for `v in [n]`, `d in [1, n-1]`.
#[derive(Clone, Debug)]
pub struct VertexWeights {
    family: WeightFamily,
    n: usize,
    table: Vec<Vec<Polynomial>>,
}

impl VertexWeights {
    pub fn new(family: WeightFamily, n: usize) -> Self {
        let max_d = n.saturating_sub(1).max(1);
        let table = (1..=n).map(|v| (1..=max_d).map(|d| family.vertex_poly(v, d, n)).collect()).collect();
        Self { family, n, table }
    }

    pub fn family(&self) -> WeightFamily {
        self.family
    }

    pub fn get(&self, v: usize, d: usize) -> &Polynomial {
        &self.table[v - 1][d - 1]
    }

    pub fn tree_weight(&self, tree: &LabeledTree) -> Polynomial {
        debug_assert_eq!(tree.n(), self.n);
        let degrees = degree_sequence(tree);
        let mut out = Polynomial::one(self.n);
        for (i, &d) in degrees.as_slice().iter().enumerate() {
            let w = self.get(i + 1, d);
            if *w != Polynomial::one(self.n) {
                out = &out * w;
            }
        }
        out
    }
}

/// `prod_i w(d_T(i))` for a single tree.
pub fn tree_weight(family: WeightFamily, tree: &LabeledTree) -> Polynomial {
    let n = tree.n();
    let mut out = Polynomial::one(n);
    for (i, &d) in degree_sequence(tree).as_slice().iter().enumerate() {
        out = &out * &family.vertex_poly(i + 1, d, n);
    }
    out
}

/// `w(T) = prod_i y_i (y_i + 1) ... (y_i + d_T(i) - 2)`; leaves contribute `1`.
pub fn tree_weight_y(tree: &LabeledTree) -> Polynomial {
    tree_weight(WeightFamily::PlaneShifted, tree)
}

/// The monomial `prod_i x_i^{d_T(i)}`.
pub fn tree_weight_x(tree: &LabeledTree) -> Polynomial {
    tree_weight(WeightFamily::DegreePower, tree)
}

/// Sums an arbitrary per-tree weight over all of `T_n`.
pub fn lhs_enumerate_by<F>(n: usize, nvars: usize, weight: F) -> Result<Polynomial>
where
    F: Fn(&LabeledTree) -> Polynomial + Sync + Send,
{
    require_n(n)?;
    par_fold_trees(
        n,
        || Polynomial::zero(nvars),
        |mut acc, tree| {
            acc.add_assign_checked(&weight(&tree)).expect("weights share the ring");
            acc
        },
        |mut a, b| {
            a.add_assign_checked(&b).expect("weights share the ring");
            a
        },
    )
}

/// Sums the family weight over every tree on `[n]`.
///
/// The weight depends on a tree only through its degree sequence, so the
/// decoded trees are tallied by degree sequence first and each distinct weight
/// is built once. The tallies come from the trees themselves, not from a
/// counting formula.
pub fn lhs_enumerate_family(family: WeightFamily, n: usize) -> Result<Polynomial> {
    require_n(n)?;
    let tally = par_fold_trees(
        n,
        HashMap::<Vec<usize>, u64>::new,
        |mut acc, tree| {
            *acc.entry(degree_sequence(&tree).as_slice().to_vec()).or_insert(0) += 1;
            acc
        },
        |mut a, b| {
            for (k, c) in b {
                *a.entry(k).or_insert(0) += c;
            }
            a
        },
    )?;
    let weights = VertexWeights::new(family, n);
    Ok(tally
        .into_par_iter()
        .map(|(degrees, count)| {
            let w = degrees
                .iter()
                .enumerate()
                .fold(Polynomial::one(n), |acc, (i, &d)| &acc * weights.get(i + 1, d));
            w.scale(&BigInt::from(count))
        })
        .reduce(|| Polynomial::zero(n), |a, b| &a + &b))
}

/// Left-hand side as a literal sum over every tree on `[n]`.
pub fn lhs_enumerate(identity: IdentityId, n: usize) -> Result<Polynomial> {
    lhs_enumerate_family(identity.weight_family()?, n)
}

/// `(n-2)! / prod (d_i - 1)!`, the number of trees on `[n]` with degrees `d`.
pub fn trees_with_degrees(degrees: &[usize]) -> Result<BigInt> {
    let n = degrees.len();
    require_n(n)?;
    if degrees.contains(&0) || degrees.iter().sum::<usize>() != 2 * n - 2 {
        return Err(domain(format!("{degrees:?} is not a tree degree sequence")));
    }
    let denom: BigInt = degrees.iter().map(|&d| factorial(d - 1)).product();
    Ok(factorial(n - 2) / denom)
}

pub(crate) fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Every degree sequence of a tree on `[n]` (positive parts summing to
/// `2n - 2`), colexicographic in `(d_1 - 1, ..., d_n - 1)`.
pub fn compositions_colex(n: usize) -> Result<Vec<Vec<usize>>> {
    require_n(n)?;
    let mut out = Vec::new();
    let mut excess = vec![0usize; n];
    fn rec(i: usize, remaining: usize, excess: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == 0 {
            excess[0] = remaining;
            out.push(excess.iter().map(|e| e + 1).collect());
            return;
        }
        for e in 0..=remaining {
            excess[i] = e;
            rec(i - 1, remaining - e, excess, out);
        }
    }
    rec(n - 1, n - 2, &mut excess, &mut out);
    Ok(out)
}

/// Left-hand side as a sum over degree sequences, each weighted by the number
/// of trees realizing it. Never touches an individual tree.
pub fn lhs_degree_seq_family(family: WeightFamily, n: usize) -> Result<Polynomial> {
    require_n(n)?;
    let weights = VertexWeights::new(family, n);
    let budget = n - 2;
    let facts: Vec<BigInt> = (0..=budget).map(factorial).collect();
    let top = &facts[budget];

    struct Walk<'a> {
        weights: &'a VertexWeights,
        facts: &'a [BigInt],
        top: &'a BigInt,
        acc: Polynomial,
    }

    impl Walk<'_> {
        // assigns excess degrees to vertices i, i-1, ..., 1 (outermost = last
        // coordinate, which is what makes the visit order colexicographic)
        fn visit(&mut self, i: usize, remaining: usize, prefix: &Polynomial, denom: &BigInt) {
            if i == 1 {
                let leaf = prefix * self.weights.get(1, remaining + 1);
                let count = self.top / (denom * &self.facts[remaining]);
                self.acc.add_scaled_assign(&leaf, &count).expect("same ring");
                return;
            }
            for e in 0..=remaining {
                let next = prefix * self.weights.get(i, e + 1);
                self.visit(i - 1, remaining - e, &next, &(denom * &self.facts[e]));
            }
        }
    }

    let partials: Vec<Polynomial> = (0..=budget)
        .into_par_iter()
        .map(|e_last| {
            let mut walk = Walk { weights: &weights, facts: &facts, top, acc: Polynomial::zero(n) };
            let prefix = weights.get(n, e_last + 1).clone();
            walk.visit(n - 1, budget - e_last, &prefix, &facts[e_last]);
            walk.acc
        })
        .collect();
    let mut out = Polynomial::zero(n);
    for p in &partials {
        out.add_assign_checked(p)?;
    }
    Ok(out)
}

pub fn lhs_degree_seq(identity: IdentityId, n: usize) -> Result<Polynomial> {
    lhs_degree_seq_family(identity.weight_family()?, n)
}

pub fn rhs_closed_form_family(family: WeightFamily, n: usize) -> Result<Polynomial> {
    require_n(n)?;
    let m = (n - 2) as i64;
    let top = n as i64 - 1;
    Ok(match family {
        WeightFamily::DegreePower => {
            &Polynomial::product_of_vars(n) * &Polynomial::sum_of_vars(n).pow(m as u32)
        }
        WeightFamily::Plane => &Polynomial::product_of_vars(n) * &Polynomial::rising_sum_product(n, top, m)?,
        WeightFamily::PlaneDivided => Polynomial::rising_sum_product(n, top, m)?,
        WeightFamily::PlaneShifted => Polynomial::rising_sum_product(n, -1, m)?,
    })
}

/// Closed-form right-hand side, fully expanded.
pub fn rhs_closed_form(identity: IdentityId, n: usize) -> Result<Polynomial> {
    rhs_closed_form_family(identity.weight_family()?, n)
}

/// Closed-form right-hand side evaluated factor by factor, without expansion.
pub fn rhs_eval_family(family: WeightFamily, n: usize, pt: &EvalPoint) -> Result<BigRational> {
    require_n(n)?;
    if pt.len() != n {
        return Err(Error::Arity { expected: n, found: pt.len() });
    }
    let sum: BigRational = pt.coordinates().iter().fold(BigRational::zero(), |a, c| a + c);
    let prod: BigRational = pt.coordinates().iter().fold(BigRational::one(), |a, c| a * c);
    let rising = |a: i64, m: i64| {
        (a + 1..=a + m).fold(BigRational::one(), |acc, j| acc * (&sum + BigRational::from_integer(j.into())))
    };
    let m = n as i64 - 2;
    Ok(match family {
        WeightFamily::DegreePower => prod * Pow::pow(&sum, m as u32),
        WeightFamily::Plane => prod * rising(n as i64 - 1, m),
        WeightFamily::PlaneDivided => rising(n as i64 - 1, m),
        WeightFamily::PlaneShifted => rising(-1, m),
    })
}

pub fn rhs_eval(identity: IdentityId, n: usize, pt: &EvalPoint) -> Result<BigRational> {
    rhs_eval_family(identity.weight_family()?, n, pt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::enumerate_trees;

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    fn tree(s: &str) -> LabeledTree {
        s.parse().unwrap()
    }

    #[test]
    fn weight_y_examples() {
        assert_eq!(tree_weight_y(&LabeledTree::path(3).unwrap()), poly("x2", 3));
        assert_eq!(tree_weight_y(&LabeledTree::star(4, 1).unwrap()), poly("x1^2 + x1", 4));
        assert_eq!(tree_weight_y(&LabeledTree::path(4).unwrap()), poly("x2*x3", 4));
    }

    #[test]
    fn weight_x_examples() {
        assert_eq!(tree_weight_x(&LabeledTree::path(3).unwrap()), poly("x1*x2^2*x3", 3));
        assert_eq!(tree_weight_x(&tree("2:1-2")), poly("x1*x2", 2));
        assert_eq!(tree_weight_x(&LabeledTree::star(4, 4).unwrap()), poly("x1*x2*x3*x4^3", 4));
    }

    #[test]
    fn weights_have_degree_n_minus_two() {
        for n in 2..=6 {
            for t in enumerate_trees(n).unwrap() {
                assert_eq!(tree_weight_y(&t).total_degree(), Some(n as u32 - 2));
                assert_eq!(tree_weight_x(&t).total_degree(), Some(2 * n as u32 - 2));
            }
        }
    }

    #[test]
    fn small_enumerations() {
        use IdentityId::*;
        assert_eq!(lhs_enumerate(PlaneWeightedNormalized, 3).unwrap(), poly("x1 + x2 + x3", 3));
        assert_eq!(
            lhs_enumerate(PlaneWeighted, 3).unwrap(),
            poly("x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2 + 3*x1*x2*x3", 3)
        );
        assert_eq!(
            lhs_enumerate(CayleyWeighted, 3).unwrap(),
            poly("x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2", 3)
        );
        assert!(matches!(lhs_enumerate(PlaneWeighted, 1), Err(Error::Domain(_))));
        assert!(matches!(lhs_enumerate(LerouxMiloudi, 3), Err(Error::Domain(_))));
    }

    #[test]
    fn closed_forms() {
        use IdentityId::*;
        assert_eq!(rhs_closed_form(PlaneWeighted, 2).unwrap(), poly("x1*x2", 2));
        assert_eq!(
            rhs_closed_form(PlaneWeighted, 3).unwrap().to_string(),
            "x1^2*x2*x3 + x1*x2^2*x3 + x1*x2*x3^2 + 3*x1*x2*x3"
        );
        let s = Polynomial::sum_of_vars(4);
        assert_eq!(rhs_closed_form(PlaneWeightedNormalized, 4).unwrap(), &s * &(&s + &Polynomial::one(4)));
        assert!(rhs_closed_form(InductionStep, 4).is_err());
    }

    #[test]
    fn degree_seq_at_four_is_expanded_r4() {
        let lhs = lhs_degree_seq(IdentityId::PlaneWeightedNormalized, 4).unwrap();
        assert_eq!(lhs, Polynomial::rising_sum_product(4, -1, 2).unwrap());
    }

    #[test]
    fn composition_multiplicities_count_all_trees() {
        for n in 2..=8 {
            let total: BigInt =
                compositions_colex(n).unwrap().iter().map(|d| trees_with_degrees(d).unwrap()).sum();
            assert_eq!(total, BigInt::from(n).pow(n as u32 - 2), "n = {n}");
        }
        assert_eq!(trees_with_degrees(&[3, 1, 1, 1]).unwrap(), BigInt::from(1));
        assert_eq!(trees_with_degrees(&[2, 2, 1, 1]).unwrap(), BigInt::from(2));
        assert!(trees_with_degrees(&[2, 2, 2, 1]).is_err());
    }

    #[test]
    fn compositions_are_colex_and_complete() {
        let all = compositions_colex(4).unwrap();
        // C(2n-3, n-1) = C(5, 3)
        assert_eq!(all.len(), 10);
        let key = |d: &Vec<usize>| d.iter().rev().copied().collect::<Vec<_>>();
        assert!(all.windows(2).all(|w| key(&w[0]) < key(&w[1])));
        assert_eq!(all[0], vec![3, 1, 1, 1]);
        assert_eq!(all[9], vec![1, 1, 1, 3]);
    }

    #[test]
    fn degree_counts_match_enumeration() {
        use std::collections::HashMap;
        let n = 6;
        let mut seen: HashMap<Vec<usize>, BigInt> = HashMap::new();
        for t in enumerate_trees(n).unwrap() {
            *seen.entry(degree_sequence(&t).as_slice().to_vec()).or_default() += 1;
        }
        for d in compositions_colex(n).unwrap() {
            assert_eq!(seen.get(&d).cloned().unwrap_or_default(), trees_with_degrees(&d).unwrap());
        }
    }

    #[test]
    fn rhs_eval_matches_expanded() {
        let pt: EvalPoint = "1/2,3,-2,5/7,1".parse().unwrap();
        for family in [
            WeightFamily::DegreePower,
            WeightFamily::Plane,
            WeightFamily::PlaneDivided,
            WeightFamily::PlaneShifted,
        ] {
            let expanded = rhs_closed_form_family(family, 5).unwrap();
            assert_eq!(expanded.evaluate(&pt).unwrap(), rhs_eval_family(family, 5, &pt).unwrap());
        }
    }
}
