//! Both sides of the weighted tree identities, built by independent engines.
//!
//! | identity                    | per-vertex weight at degree `d`   | right-hand side                          |
//! |-----------------------------|-----------------------------------|------------------------------------------|
//! | `cayley-weighted`           | `x^d`                             | `prod x_i * (sum x_i)^(n-2)`             |
//! | `plane-weighted`            | `x (x+1) ... (x+d-1)`             | `prod x_i * prod_{j=n}^{2n-3} (S + j)`   |
//! | `plane-weighted-normalized` | `y (y+1) ... (y+d-2)`             | `prod_{j=0}^{n-3} (S + j)`               |
//! | `leroux-miloudi`            | `(d-1)!`, the plane embeddings    | `prod_{j=n}^{2n-3} j`                    |
//!
//! `S` is the sum of all variables. The normalized identity is the plane
//! identity divided by `prod x_i` (weights `(x+1) ... (x+d-1)`) and then
//! rewritten in `y_i = x_i + 1`; both intermediate forms are available through
//! [`WeightFamily`].

mod egf;
mod engines;
mod induction;
mod leroux;
mod report;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::poly::{Polynomial, VarIndex};

pub use egf::{lhs_egf_eval, lhs_egf_eval_family};
pub use engines::{
    compositions_colex, lhs_degree_seq, lhs_degree_seq_family, lhs_enumerate, lhs_enumerate_by,
    lhs_enumerate_family, rhs_closed_form, rhs_closed_form_family, rhs_eval, rhs_eval_family, tree_weight,
    tree_weight_x, tree_weight_y, trees_with_degrees, VertexWeights,
};
pub use induction::{check_induction_step, InductionReport, SubCheck};
pub use leroux::{
    leroux_miloudi_closed_form, leroux_miloudi_count, leroux_miloudi_count_degree_seq,
    leroux_miloudi_count_enumerate, plane_embeddings,
};
pub use report::{
    compare_polynomials, compare_values, verify_egf, verify_leroux_miloudi, verify_symbolic, Verdict,
    VerificationReport, Witness,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityId {
    CayleyWeighted,
    PlaneWeighted,
    PlaneWeightedNormalized,
    LerouxMiloudi,
    InductionStep,
}

impl IdentityId {
    pub const ALL: [IdentityId; 5] = [
        IdentityId::CayleyWeighted,
        IdentityId::PlaneWeighted,
        IdentityId::PlaneWeightedNormalized,
        IdentityId::LerouxMiloudi,
        IdentityId::InductionStep,
    ];

    /// The identities whose two sides are polynomials.
    pub const SYMBOLIC: [IdentityId; 3] =
        [IdentityId::CayleyWeighted, IdentityId::PlaneWeighted, IdentityId::PlaneWeightedNormalized];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::CayleyWeighted => "cayley-weighted",
            IdentityId::PlaneWeighted => "plane-weighted",
            IdentityId::PlaneWeightedNormalized => "plane-weighted-normalized",
            IdentityId::LerouxMiloudi => "leroux-miloudi",
            IdentityId::InductionStep => "induction-step",
        }
    }

    /// Weight family of a polynomial identity.
    pub fn weight_family(self) -> Result<WeightFamily> {
        match self {
            IdentityId::CayleyWeighted => Ok(WeightFamily::DegreePower),
            IdentityId::PlaneWeighted => Ok(WeightFamily::Plane),
            IdentityId::PlaneWeightedNormalized => Ok(WeightFamily::PlaneShifted),
            other => Err(domain(format!("{other} is not a polynomial identity"))),
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown identity {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EngineId {
    Enumerate,
    DegreeSeq,
    EgfEval,
    MonteCarlo,
}

impl EngineId {
    pub const ALL: [EngineId; 4] =
        [EngineId::Enumerate, EngineId::DegreeSeq, EngineId::EgfEval, EngineId::MonteCarlo];

    pub fn name(self) -> &'static str {
        match self {
            EngineId::Enumerate => "enumerate",
            EngineId::DegreeSeq => "degree-seq",
            EngineId::EgfEval => "egf-eval",
            EngineId::MonteCarlo => "monte-carlo",
        }
    }

    pub fn is_symbolic(self) -> bool {
        matches!(self, EngineId::Enumerate | EngineId::DegreeSeq)
    }
}

impl fmt::Display for EngineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EngineId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown engine {s:?}")))
    }
}

/// Per-vertex weight as a function of the vertex degree `d >= 1`.
///
/// The three plane families are rising products `prod_{j=a+1}^{a+m} (x + j)`
/// with different `(a, m)`; keeping them apart matters because dividing by
/// `prod x_i` and shifting the variables each change the weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightFamily {
    /// `x^d`.
    DegreePower,
    /// `x (x+1) ... (x+d-1)`: `a = -1, m = d`.
    Plane,
    /// `(x+1) ... (x+d-1)`: `a = 0, m = d - 1`.
    PlaneDivided,
    /// `y (y+1) ... (y+d-2)`: `a = -1, m = d - 1`.
    PlaneShifted,
}

impl WeightFamily {
    /// `(a, m)` of the rising product at degree `d`; `None` for [`WeightFamily::DegreePower`].
    pub fn rising_params(self, d: usize) -> Option<(i64, i64)> {
        let d = d as i64;
        match self {
            WeightFamily::DegreePower => None,
            WeightFamily::Plane => Some((-1, d)),
            WeightFamily::PlaneDivided => Some((0, d - 1)),
            WeightFamily::PlaneShifted => Some((-1, d - 1)),
        }
    }

    /// Degree in `x` of the weight at vertex degree `d`.
    pub fn weight_degree(self, d: usize) -> u32 {
        match self.rising_params(d) {
            None => d as u32,
            Some((_, m)) => m as u32,
        }
    }

    pub fn vertex_poly(self, v: VarIndex, d: usize, nvars: usize) -> Polynomial {
        match self.rising_params(d) {
            None => Polynomial::var(v, nvars).pow(d as u32),
            Some((a, m)) => Polynomial::rising_product(v, a, m, nvars).expect("m >= 0 for d >= 1"),
        }
    }

    pub fn vertex_value(self, d: usize, x: &BigRational) -> BigRational {
        match self.rising_params(d) {
            None => Pow::pow(x, d as u32),
            Some((a, m)) => (a + 1..=a + m)
                .fold(BigRational::one(), |acc, j| acc * (x + BigRational::from_integer(j.into()))),
        }
    }

    /// Numerators of the weights for `d = 1..=max_d` at `x = p / q`, the
    /// weight at degree `d` written over `q^{weight_degree(d)}`.
    pub(crate) fn scaled_values(self, max_d: usize, p: &BigInt, q: &BigInt) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(max_d);
        let mut num = BigInt::one();
        let mut deg = 0u32;
        for d in 1..=max_d {
            match self.rising_params(d) {
                None => {
                    num *= p;
                    deg += 1;
                }
                Some((a, m)) => {
                    // extend the previous product by the factors it is missing
                    while (deg as i64) < m {
                        let j = a + 1 + deg as i64;
                        num *= p + q * BigInt::from(j);
                        deg += 1;
                    }
                }
            }
            out.push(num.clone());
        }
        out
    }
}
