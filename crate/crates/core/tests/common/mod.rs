//! Test oracles written without the crate's own helpers.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use cayley_forge::{EvalPoint, IdentityId, Polynomial};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

/// Dense exponent vectors of every term.
pub fn dense_terms(p: &Polynomial) -> HashMap<Vec<u32>, BigInt> {
    p.terms()
        .map(|(m, c)| {
            let mut e = vec![0u32; p.nvars()];
            for (v, k) in m.iter() {
                e[v - 1] = k;
            }
            (e, c.clone())
        })
        .collect()
}

/// Graded lexicographic order with `x1 > x2 > ...`.
pub fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// Largest monomial, in graded lex order, whose coefficients differ.
pub fn first_difference_oracle(lhs: &Polynomial, rhs: &Polynomial) -> Option<(Vec<u32>, BigInt, BigInt)> {
    let (l, r) = (dense_terms(lhs), dense_terms(rhs));
    let mut keys: Vec<&Vec<u32>> = l.keys().chain(r.keys()).collect();
    keys.sort_by(|a, b| grlex(b, a));
    keys.dedup();
    keys.into_iter().find_map(|k| {
        let a = l.get(k).cloned().unwrap_or_default();
        let b = r.get(k).cloned().unwrap_or_default();
        (a != b).then(|| (k.clone(), a, b))
    })
}

pub fn monomial_text(e: &[u32]) -> String {
    let parts: Vec<String> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k > 0)
        .map(|(i, &k)| if k == 1 { format!("x{}", i + 1) } else { format!("x{}^{k}", i + 1) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Every spanning tree of `K_n` by testing all `(n-1)`-edge subsets. Small `n` only.
pub fn brute_force_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
    let all: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 1..=n).map(move |v| (u, v))).collect();
    let k = n - 1;
    let mut out = Vec::new();
    let mut pick: Vec<usize> = (0..k).collect();
    loop {
        let edges: Vec<(usize, usize)> = pick.iter().map(|&i| all[i]).collect();
        if acyclic(n, &edges) {
            out.push(edges);
        }
        // next k-combination of all.len()
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if pick[i] < all.len() - k + i {
                pick[i] += 1;
                for j in i + 1..k {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..=n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    edges.iter().all(|&(u, v)| {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        parent[a] = b;
        a != b
    })
}

pub fn degrees(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut d = vec![0; n];
    for &(u, v) in edges {
        d[u - 1] += 1;
        d[v - 1] += 1;
    }
    d
}

pub fn factorial(k: u64) -> u128 {
    (1..=k as u128).product()
}

/// A point with coordinates `a/b`, `a` in `[lo, hi]`, `b` in `[1, max_den]`.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, lo: i64, hi: i64, max_den: i64) -> EvalPoint {
    EvalPoint::new(
        (0..n)
            .map(|_| BigRational::new(rng.random_range(lo..=hi).into(), rng.random_range(1..=max_den).into()))
            .collect(),
    )
}

/// `(x + a + 1)(x + a + 2) ... (x + a + m)`.
pub fn rising(x: &BigRational, a: i64, m: i64) -> BigRational {
    (a + 1..=a + m).fold(BigRational::one(), |acc, j| acc * (x + BigRational::from_integer(j.into())))
}

/// The right-hand side at `pt`, straight from the closed forms.
pub fn rhs_oracle(identity: IdentityId, pt: &EvalPoint) -> BigRational {
    let xs = pt.coordinates();
    let n = xs.len() as i64;
    let s: BigRational = xs.iter().fold(BigRational::zero(), |a, x| a + x);
    let prod_x: BigRational = xs.iter().fold(BigRational::one(), |a, x| a * x);
    let shifted = |from: i64, to: i64| {
        (from..=to).fold(BigRational::one(), |acc, j| acc * (&s + BigRational::from_integer(j.into())))
    };
    match identity {
        IdentityId::CayleyWeighted => (0..n - 2).fold(prod_x, |acc, _| acc * &s),
        IdentityId::PlaneWeighted => prod_x * shifted(n, 2 * n - 3),
        IdentityId::PlaneWeightedNormalized => shifted(0, n - 3),
        other => panic!("{other} has no polynomial right-hand side"),
    }
}

/// The per-vertex weight at degree `d` for a polynomial identity, evaluated at `x`.
pub fn vertex_weight_oracle(identity: IdentityId, d: usize, x: &BigRational) -> BigRational {
    let d = d as i64;
    match identity {
        IdentityId::CayleyWeighted => (0..d).fold(BigRational::one(), |acc, _| acc * x),
        IdentityId::PlaneWeighted => rising(x, -1, d),
        IdentityId::PlaneWeightedNormalized => rising(x, -1, d - 1),
        other => panic!("{other} has no vertex weight"),
    }
}
