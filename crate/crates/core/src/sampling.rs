//! Monte Carlo estimation of a left-hand side at a point.
//!
//! Trees are drawn uniformly through random Prüfer codes, so
//! `n^{n-2} * E[w(T)(pt)]` is the left-hand side at `pt`. Trial `k` always uses
//! ChaCha8 stream `k` under the caller's seed, which makes the estimate
//! independent of how trials are split across threads. Sums are exact
//! rationals; only the final square roots (standard error, z-score) are
//! rounded, into a [`Decimal`].

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::identity::{rhs_eval, EngineId, IdentityId, Verdict, VerificationReport, WeightFamily, Witness};
use crate::poly::{format_rational, EvalPoint};
use crate::tree::{degree_sequence, random_tree};

/// Identifier of the per-trial generator recorded alongside every seed.
pub const GENERATOR_ID: &str = "chacha8-stream-per-trial";

/// Default `|z|` above which an estimate counts as a failure.
pub const DEFAULT_Z_THRESHOLD: f64 = 5.0;

/// The generator for trial `k`: ChaCha8 seeded from `seed`, on stream `k`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// A decimal `mantissa * 10^exponent`, used for rounded diagnostics only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decimal {
    mantissa: BigInt,
    exponent: i64,
}

impl Decimal {
    /// Significant digits kept internally.
    const PRECISION: i64 = 24;
    /// Significant digits when rendered.
    pub const DISPLAY_DIGITS: usize = 12;

    /// `sqrt(r)` truncated to `PRECISION` significant digits; `r` must be nonnegative.
    pub fn sqrt(r: &BigRational) -> Decimal {
        assert!(!r.is_negative(), "square root of a negative rational");
        if r.is_zero() {
            return Decimal { mantissa: BigInt::zero(), exponent: 0 };
        }
        let digits = |x: &BigInt| x.to_string().trim_start_matches('-').len() as i64;
        let magnitude = digits(r.numer()) - digits(r.denom());
        // choose k so that r * 10^(2k) has about 2 * PRECISION digits
        let k = Self::PRECISION - magnitude / 2 + 1;
        let ten = BigInt::from(10);
        let scaled = if k >= 0 {
            r.numer() * Pow::pow(&ten, (2 * k) as u32) / r.denom()
        } else {
            r.numer() / (r.denom() * Pow::pow(&ten, (-2 * k) as u32))
        };
        Decimal { mantissa: scaled.sqrt(), exponent: -k }
    }

    pub fn negate(mut self) -> Decimal {
        self.mantissa = -self.mantissa;
        self
    }

    pub fn to_f64(&self) -> f64 {
        let m = self.mantissa.to_f64().unwrap_or(f64::NAN);
        m * 10f64.powi(self.exponent as i32)
    }
}

impl fmt::Display for Decimal {
    /// Scientific notation with 12 significant digits, e.g. `-1.23456789012e3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mantissa.is_zero() {
            return f.write_str("0");
        }
        let sign = if self.mantissa.sign() == Sign::Minus { "-" } else { "" };
        let mut digits = self.mantissa.abs().to_string();
        let mut exp = self.exponent + digits.len() as i64 - 1;
        if digits.len() > Self::DISPLAY_DIGITS {
            // round half up on the first dropped digit
            let round_up = digits.as_bytes()[Self::DISPLAY_DIGITS] >= b'5';
            let mut kept: BigInt = digits[..Self::DISPLAY_DIGITS].parse().expect("decimal digits");
            if round_up {
                kept += 1;
            }
            digits = kept.to_string();
            if digits.len() > Self::DISPLAY_DIGITS {
                digits.truncate(Self::DISPLAY_DIGITS);
                exp += 1;
            }
        }
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            write!(f, "{sign}{head}e{exp}")
        } else {
            write!(f, "{sign}{head}.{tail}e{exp}")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonteCarloEstimate {
    pub identity: IdentityId,
    pub n: usize,
    pub point: EvalPoint,
    pub trials: u64,
    pub seed: u64,
    /// `(n^{n-2} / trials) * sum_k w(T_k)(pt)`.
    pub mean: BigRational,
    pub exact_rhs: BigRational,
    /// Squared standard error of the mean, exact; `None` for a single trial.
    pub std_error_sq: Option<BigRational>,
    pub sample_std_error: Option<Decimal>,
    /// `(mean - exact_rhs) / sample_std_error`, when the standard error is positive.
    pub z_score: Option<Decimal>,
    pub elapsed: Duration,
}

#[derive(Serialize)]
struct EstimateJson {
    identity: IdentityId,
    n: usize,
    point: String,
    trials: u64,
    mean: String,
    sample_std_error: Option<String>,
    exact_rhs: String,
    z_score: Option<String>,
    seed: u64,
}

impl MonteCarloEstimate {
    /// `|z| < threshold`, decided exactly on `z^2`. With zero spread the mean must be exact.
    pub fn passes(&self, z_threshold: f64) -> bool {
        let diff = &self.mean - &self.exact_rhs;
        match &self.std_error_sq {
            Some(se_sq) if !se_sq.is_zero() => {
                let thr = BigRational::from_float(z_threshold).expect("finite threshold");
                &diff * &diff < &thr * &thr * se_sq
            }
            _ => diff.is_zero(),
        }
    }

    pub fn z_squared(&self) -> Option<BigRational> {
        let se_sq = self.std_error_sq.as_ref().filter(|s| !s.is_zero())?;
        let diff = &self.mean - &self.exact_rhs;
        Some(&diff * &diff / se_sq)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.json_view()).expect("estimates always serialize")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self.json_view()).expect("estimates always serialize")
    }

    fn json_view(&self) -> EstimateJson {
        EstimateJson {
            identity: self.identity,
            n: self.n,
            point: self.point.to_string(),
            trials: self.trials,
            mean: format_rational(&self.mean),
            sample_std_error: self.sample_std_error.as_ref().map(Decimal::to_string),
            exact_rhs: format_rational(&self.exact_rhs),
            z_score: self.z_score.as_ref().map(Decimal::to_string),
            seed: self.seed,
        }
    }

    pub fn to_report(&self, z_threshold: f64) -> VerificationReport {
        let pass = self.passes(z_threshold);
        let context = match &self.z_score {
            Some(z) => format!("z = {z}, threshold {z_threshold}"),
            None => "zero sample spread".to_string(),
        };
        VerificationReport {
            identity: self.identity,
            n: self.n,
            engine: EngineId::MonteCarlo,
            verdict: Verdict::from_bool(pass),
            witness: (!pass).then(|| Witness::Point {
                point: self.point.to_string(),
                lhs: format_rational(&self.mean),
                rhs: format_rational(&self.exact_rhs),
                context: Some(context),
            }),
            lhs_terms: 1,
            elapsed: self.elapsed,
            seed: Some(self.seed),
            trials: Some(self.trials),
        }
    }
}

/// Unbiased estimate of the left-hand side of `identity` at `pt` from
/// `trials` uniform trees.
pub fn monte_carlo_lhs(
    identity: IdentityId,
    n: usize,
    pt: &EvalPoint,
    trials: u64,
    seed: u64,
) -> Result<MonteCarloEstimate> {
    let family = identity.weight_family()?;
    if n < 2 {
        return Err(domain(format!("the identities are stated for n >= 2, got n = {n}")));
    }
    if trials < 1 {
        return Err(domain("at least one trial is required"));
    }
    if pt.len() != n {
        return Err(Error::Arity { expected: n, found: pt.len() });
    }
    if !pt.is_nonnegative() {
        return Err(domain("Monte Carlo points must have nonnegative coordinates"));
    }
    let started = Instant::now();
    let table = value_table(family, n, pt);

    let (sum, sum_sq) = (0..trials)
        .into_par_iter()
        .fold(
            || (BigRational::zero(), BigRational::zero()),
            |(s, s2), k| {
                let tree = random_tree(n, &mut trial_rng(seed, k)).expect("n >= 2");
                let w = degree_sequence(&tree)
                    .as_slice()
                    .iter()
                    .enumerate()
                    .fold(BigRational::one(), |acc, (i, &d)| acc * &table[i][d - 1]);
                let w2 = &w * &w;
                (s + w, s2 + w2)
            },
        )
        .reduce(|| (BigRational::zero(), BigRational::zero()), |(a, a2), (b, b2)| (a + b, a2 + b2));

    let count = BigRational::from_integer(BigInt::from(n).pow((n - 2) as u32));
    let t = BigRational::from_integer(BigInt::from(trials));
    let mean = &count * &sum / &t;
    let std_error_sq = (trials > 1).then(|| {
        // s^2 of the scaled samples, divided by the trial count
        let centered = &sum_sq - &sum * &sum / &t;
        let var = &count * &count * centered / (&t - BigRational::one());
        var / &t
    });
    let exact_rhs = rhs_eval(identity, n, pt)?;
    let sample_std_error = std_error_sq.as_ref().map(Decimal::sqrt);
    let z_score = std_error_sq.as_ref().filter(|s| !s.is_zero()).map(|se_sq| {
        let diff = &mean - &exact_rhs;
        let z = Decimal::sqrt(&(&diff * &diff / se_sq));
        match diff.cmp(&BigRational::zero()) {
            Ordering::Less => z.negate(),
            _ => z,
        }
    });
    Ok(MonteCarloEstimate {
        identity,
        n,
        point: pt.clone(),
        trials,
        seed,
        mean,
        exact_rhs,
        std_error_sq,
        sample_std_error,
        z_score,
        elapsed: started.elapsed(),
    })
}

fn value_table(family: WeightFamily, n: usize, pt: &EvalPoint) -> Vec<Vec<BigRational>> {
    let max_d = (n - 1).max(1);
    pt.coordinates().iter().map(|x| (1..=max_d).map(|d| family.vertex_value(d, x)).collect()).collect()
}

/// Runs the estimator and turns it into a pass/fail report at `z_threshold`.
pub fn verify_monte_carlo(
    identity: IdentityId,
    n: usize,
    pt: &EvalPoint,
    trials: u64,
    seed: u64,
    z_threshold: f64,
) -> Result<(VerificationReport, MonteCarloEstimate)> {
    let est = monte_carlo_lhs(identity, n, pt, trials, seed)?;
    Ok((est.to_report(z_threshold), est))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identity::lhs_enumerate;
    use crate::tree::enumerate_trees;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    #[test]
    fn decimal_sqrt_and_rendering() {
        assert_eq!(Decimal::sqrt(&rat(4, 1)).to_string(), "2e0");
        assert_eq!(Decimal::sqrt(&rat(2, 1)).to_string(), "1.41421356237e0");
        assert_eq!(Decimal::sqrt(&rat(1, 100)).to_string(), "1e-1");
        assert_eq!(Decimal::sqrt(&rat(0, 1)).to_string(), "0");
        assert_eq!(Decimal::sqrt(&rat(10_i64.pow(18) * 9, 1)).to_string(), "3e9");
        assert_eq!(Decimal::sqrt(&rat(2, 1)).negate().to_string(), "-1.41421356237e0");
        // 0.999999999999999 rounds up across a digit boundary
        let nearly = Decimal { mantissa: BigInt::from(999_999_999_999_999i64), exponent: -15 };
        assert_eq!(nearly.to_string(), "1e0");
        assert!((Decimal::sqrt(&rat(1, 3)).to_f64() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn single_tree_is_exact() {
        let pt: EvalPoint = "3,1/2".parse().unwrap();
        let est = monte_carlo_lhs(IdentityId::PlaneWeighted, 2, &pt, 50, 1).unwrap();
        assert_eq!(est.mean, est.exact_rhs);
        assert_eq!(est.mean, rat(3, 2));
        assert!(est.z_score.is_none());
        assert!(est.passes(DEFAULT_Z_THRESHOLD));
        let one = monte_carlo_lhs(IdentityId::PlaneWeighted, 2, &pt, 1, 1).unwrap();
        assert!(one.std_error_sq.is_none());
    }

    #[test]
    fn plane_n4_within_five_sigma() {
        let pt = EvalPoint::constant(4, 1);
        let est = monte_carlo_lhs(IdentityId::PlaneWeighted, 4, &pt, 10_000, 17).unwrap();
        // 1 * (4 + 4)(4 + 5)
        assert_eq!(est.exact_rhs, rat(72, 1));
        assert!(est.passes(5.0), "z = {:?}", est.z_score);
    }

    #[test]
    fn seed_determinism_and_thread_independence() {
        let pt = EvalPoint::constant(6, 2);
        let a = monte_carlo_lhs(IdentityId::PlaneWeightedNormalized, 6, &pt, 500, 42).unwrap();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b =
            pool.install(|| monte_carlo_lhs(IdentityId::PlaneWeightedNormalized, 6, &pt, 500, 42)).unwrap();
        assert_eq!(a.mean, b.mean);
        assert_eq!(a.to_json(), b.to_json());
        let c = monte_carlo_lhs(IdentityId::PlaneWeightedNormalized, 6, &pt, 500, 43).unwrap();
        assert_ne!(a.mean, c.mean);
    }

    #[test]
    fn exhaustive_average_reproduces_lhs() {
        for n in [3usize, 4] {
            let pt: EvalPoint =
                if n == 3 { "1,2,5/3".parse().unwrap() } else { "2,1/2,3,1".parse().unwrap() };
            let table = value_table(WeightFamily::Plane, n, &pt);
            let trees: Vec<_> = enumerate_trees(n).unwrap().collect();
            let total: BigRational = trees
                .iter()
                .map(|t| {
                    degree_sequence(t)
                        .as_slice()
                        .iter()
                        .enumerate()
                        .fold(BigRational::one(), |acc, (i, &d)| acc * &table[i][d - 1])
                })
                .fold(BigRational::zero(), |a, b| a + b);
            let count = BigRational::from_integer(BigInt::from(trees.len()));
            let mean = &total / &count;
            let expected = lhs_enumerate(IdentityId::PlaneWeighted, n).unwrap().evaluate(&pt).unwrap();
            assert_eq!(mean * count, expected);
        }
    }

    #[test]
    fn errors() {
        let pt = EvalPoint::constant(3, 1);
        assert!(monte_carlo_lhs(IdentityId::PlaneWeighted, 3, &pt, 0, 1).is_err());
        assert!(monte_carlo_lhs(IdentityId::PlaneWeighted, 4, &pt, 10, 1).is_err());
        assert!(monte_carlo_lhs(IdentityId::InductionStep, 3, &pt, 10, 1).is_err());
        let neg: EvalPoint = "1,-1,1".parse().unwrap();
        assert!(monte_carlo_lhs(IdentityId::PlaneWeighted, 3, &neg, 10, 1).is_err());
    }

    #[test]
    fn json_layout() {
        let pt = EvalPoint::constant(5, 1);
        let est = monte_carlo_lhs(IdentityId::CayleyWeighted, 5, &pt, 100, 9).unwrap();
        let v = est.to_json_value();
        assert_eq!(v["identity"], "cayley-weighted");
        assert_eq!(v["point"], "1,1,1,1,1");
        // every tree has weight 1 at the all-ones point
        assert_eq!(v["mean"], "125");
        assert_eq!(v["exact_rhs"], "125");
        assert_eq!(v["sample_std_error"], "0");
        assert!(v["z_score"].is_null());
        assert_eq!(v.as_object().unwrap().len(), 9);
    }
}
