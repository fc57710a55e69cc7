use std::time::{Duration, Instant};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use super::{
    check_induction_step, leroux::leroux_miloudi_count_enumerate, leroux_miloudi_closed_form,
    leroux_miloudi_count_degree_seq, lhs_degree_seq, lhs_egf_eval, lhs_enumerate, rhs_closed_form, rhs_eval,
    EngineId, IdentityId,
};
use crate::error::{domain, Result};
use crate::poly::{first_difference, format_rational, EvalPoint, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

/// Where the two sides disagree. Coefficients and values are exact decimal or
/// `p/q` strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Monomial { monomial: String, lhs: String, rhs: String, context: Option<String> },
    Point { point: String, lhs: String, rhs: String, context: Option<String> },
}

impl Witness {
    pub fn with_context(mut self, ctx: impl Into<String>) -> Self {
        match &mut self {
            Witness::Monomial { context, .. } | Witness::Point { context, .. } => *context = Some(ctx.into()),
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub n: usize,
    pub engine: EngineId,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub lhs_terms: u64,
    #[serde(with = "millis")]
    pub elapsed: Duration,
    pub seed: Option<u64>,
    pub trials: Option<u64>,
}

mod millis {
    use serde::{Deserialize, Deserializer, Serializer};
    use std::time::Duration;

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_u64(d.as_millis() as u64)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_millis(u64::deserialize(d)?))
    }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }
}

/// Compares two canonical polynomials; the witness is the first differing
/// monomial in descending graded-lex order.
pub fn compare_polynomials(
    identity: IdentityId,
    n: usize,
    engine: EngineId,
    lhs: &Polynomial,
    rhs: &Polynomial,
) -> VerificationReport {
    let witness = polynomial_witness(lhs, rhs);
    VerificationReport {
        identity,
        n,
        engine,
        verdict: Verdict::from_bool(witness.is_none()),
        witness,
        lhs_terms: lhs.len() as u64,
        elapsed: Duration::ZERO,
        seed: None,
        trials: None,
    }
}

pub(crate) fn polynomial_witness(lhs: &Polynomial, rhs: &Polynomial) -> Option<Witness> {
    if lhs.nvars() != rhs.nvars() {
        return Some(Witness::Monomial {
            monomial: "1".into(),
            lhs: format!("{} variables", lhs.nvars()),
            rhs: format!("{} variables", rhs.nvars()),
            context: Some("ring mismatch".into()),
        });
    }
    first_difference(lhs, rhs).map(|(m, a, b)| Witness::Monomial {
        monomial: m.to_string(),
        lhs: a.to_string(),
        rhs: b.to_string(),
        context: None,
    })
}

pub fn compare_values(
    identity: IdentityId,
    n: usize,
    engine: EngineId,
    pt: &EvalPoint,
    lhs: &BigRational,
    rhs: &BigRational,
) -> VerificationReport {
    let pass = lhs == rhs;
    VerificationReport {
        identity,
        n,
        engine,
        verdict: Verdict::from_bool(pass),
        witness: (!pass).then(|| Witness::Point {
            point: pt.to_string(),
            lhs: format_rational(lhs),
            rhs: format_rational(rhs),
            context: None,
        }),
        lhs_terms: 1,
        elapsed: Duration::ZERO,
        seed: None,
        trials: None,
    }
}

/// Exact symbolic check with one of the polynomial engines.
///
/// `leroux-miloudi` compares integer counts and `induction-step` replays the
/// inductive argument; both are accepted here since neither needs a point.
pub fn verify_symbolic(identity: IdentityId, n: usize, engine: EngineId) -> Result<VerificationReport> {
    if !engine.is_symbolic() {
        return Err(domain(format!("{engine} is not a symbolic engine")));
    }
    let started = Instant::now();
    let mut report = match identity {
        IdentityId::LerouxMiloudi => verify_leroux_miloudi(n, engine)?,
        IdentityId::InductionStep => {
            if engine != EngineId::Enumerate {
                return Err(domain("the induction replay runs on the enumerate engine only"));
            }
            check_induction_step(n)?.report
        }
        _ => {
            let lhs = match engine {
                EngineId::Enumerate => lhs_enumerate(identity, n)?,
                _ => lhs_degree_seq(identity, n)?,
            };
            let rhs = rhs_closed_form(identity, n)?;
            compare_polynomials(identity, n, engine, &lhs, &rhs)
        }
    };
    report.elapsed = started.elapsed();
    Ok(report)
}

pub fn verify_leroux_miloudi(n: usize, engine: EngineId) -> Result<VerificationReport> {
    let started = Instant::now();
    let count = match engine {
        EngineId::Enumerate => leroux_miloudi_count_enumerate(n)?,
        EngineId::DegreeSeq => leroux_miloudi_count_degree_seq(n)?,
        other => return Err(domain(format!("leroux-miloudi does not run on {other}"))),
    };
    let closed = leroux_miloudi_closed_form(n)?;
    let (lhs, rhs) = (BigRational::from_integer(count), BigRational::from_integer(closed));
    let mut report =
        compare_values(IdentityId::LerouxMiloudi, n, engine, &EvalPoint::new(vec![]), &lhs, &rhs);
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Point check: generating-function LHS against the closed-form RHS.
pub fn verify_egf(identity: IdentityId, n: usize, pt: &EvalPoint) -> Result<VerificationReport> {
    let started = Instant::now();
    let lhs = lhs_egf_eval(identity, n, pt)?;
    let rhs = rhs_eval(identity, n, pt)?;
    let mut report = compare_values(identity, n, EngineId::EgfEval, pt, &lhs, &rhs);
    report.elapsed = started.elapsed();
    Ok(report)
}
