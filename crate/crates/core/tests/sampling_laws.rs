mod common;

use cayley_forge::identity::lhs_enumerate;
use cayley_forge::sampling::monte_carlo_lhs;
use cayley_forge::tree::enumerate_trees;
use cayley_forge::{EvalPoint, IdentityId};
use common::{rhs_oracle, vertex_weight_oracle};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

#[test]
fn exhaustive_average_is_the_lhs() {
    let pt: EvalPoint = "1,3/2,0,2".parse().unwrap();
    for id in IdentityId::SYMBOLIC {
        for n in 3..=4usize {
            let pt = EvalPoint::new(pt.coordinates()[..n].to_vec());
            let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
            let total = trees.iter().fold(BigRational::zero(), |acc, t| {
                acc + (1..=n).fold(BigRational::from_integer(1.into()), |w, v| {
                    w * vertex_weight_oracle(id, t.degree(v), pt.get(v))
                })
            });
            let count = BigRational::from_integer(BigInt::from(n).pow(n as u32 - 2));
            let mean = &total / BigRational::from_integer(BigInt::from(trees.len()));
            assert_eq!(&mean * &count, lhs_enumerate(id, n).unwrap().evaluate(&pt).unwrap(), "{id} n={n}");
            assert_eq!(total, rhs_oracle(id, &pt), "{id} n={n}");
        }
    }
}

#[test]
fn seed_determinism() {
    let pt = EvalPoint::from_integers([1, 2, 4, 3, 1]);
    let a = monte_carlo_lhs(IdentityId::PlaneWeighted, 5, &pt, 500, 42).unwrap();
    let b = monte_carlo_lhs(IdentityId::PlaneWeighted, 5, &pt, 500, 42).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let c = monte_carlo_lhs(IdentityId::PlaneWeighted, 5, &pt, 500, 43).unwrap();
    assert_ne!(a.mean, c.mean);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(3).build().unwrap();
    let d = pool.install(|| monte_carlo_lhs(IdentityId::PlaneWeighted, 5, &pt, 500, 42).unwrap());
    assert_eq!(a.to_json(), d.to_json());
}

#[test]
fn calibration_over_100_seeds() {
    let pt = EvalPoint::from_integers([1, 2, 1, 2, 1, 2]);
    let outside = (0..100u64)
        .filter(|&seed| {
            let est = monte_carlo_lhs(IdentityId::PlaneWeighted, 6, &pt, 400, seed).unwrap();
            !est.passes(1.96)
        })
        .count();
    assert!(outside < 12, "{outside} of 100 runs beyond 1.96");
}
