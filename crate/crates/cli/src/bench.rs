//! Fixed-workload timing suites.
//!
//! Every row carries its own correctness check, so a fast wrong answer shows
//! up as a failed row rather than a good time.

use std::time::{Duration, Instant};

use cayley_forge::identity::{lhs_degree_seq, lhs_egf_eval, lhs_enumerate, rhs_closed_form, rhs_eval};
use cayley_forge::poly::format_rational;
use cayley_forge::tree::{par_fold_trees, tree_count};
use cayley_forge::{EngineId, EvalPoint, IdentityId, Result};
use num_rational::BigRational;
use serde_json::json;

pub const SUITES: [&str; 3] = ["enumerate", "degree-seq", "egf-eval"];

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub engine: EngineId,
    pub identity: IdentityId,
    pub elapsed: Duration,
    /// `terms` for symbolic rows, `value` for point rows.
    pub result_kind: &'static str,
    pub result: String,
    pub check: bool,
}

impl BenchRow {
    pub fn to_json_value(&self) -> serde_json::Value {
        json!({
            "n": self.n,
            "engine": self.engine,
            "identity": self.identity,
            "elapsed_us": self.elapsed.as_micros() as u64,
            "result_kind": self.result_kind,
            "result": self.result,
            "check": self.check,
        })
    }
}

/// The point used by the `egf-eval` suite: `x_i = 1 + (i mod 3)/2`.
pub fn bench_point(n: usize) -> EvalPoint {
    EvalPoint::new((1..=n).map(|i| BigRational::new((2 + (i % 3) as i64).into(), 2.into())).collect())
}

/// Runs a suite; `None` for an unknown suite name.
pub fn run_suite(suite: &str) -> Option<Result<Vec<BenchRow>>> {
    let rows = match suite {
        "enumerate" => [6, 7, 8].into_iter().map(enumerate_row).collect(),
        "degree-seq" => [8, 10, 12].into_iter().map(degree_seq_row).collect(),
        "egf-eval" => [50, 100, 200].into_iter().map(egf_row).collect(),
        _ => return None,
    };
    Some(rows)
}

fn enumerate_row(n: usize) -> Result<BenchRow> {
    let identity = IdentityId::PlaneWeighted;
    let started = Instant::now();
    let lhs = lhs_enumerate(identity, n)?;
    let elapsed = started.elapsed();
    let visited = par_fold_trees(n, || 0u64, |c, _| c + 1, |a, b| a + b)?;
    let check = tree_count(n) == visited.into() && lhs == rhs_closed_form(identity, n)?;
    Ok(BenchRow {
        n,
        engine: EngineId::Enumerate,
        identity,
        elapsed,
        result_kind: "terms",
        result: lhs.len().to_string(),
        check,
    })
}

fn degree_seq_row(n: usize) -> Result<BenchRow> {
    let identity = IdentityId::PlaneWeightedNormalized;
    let started = Instant::now();
    let lhs = lhs_degree_seq(identity, n)?;
    let elapsed = started.elapsed();
    let check = lhs == rhs_closed_form(identity, n)?;
    Ok(BenchRow {
        n,
        engine: EngineId::DegreeSeq,
        identity,
        elapsed,
        result_kind: "terms",
        result: lhs.len().to_string(),
        check,
    })
}

fn egf_row(n: usize) -> Result<BenchRow> {
    let identity = IdentityId::PlaneWeighted;
    let pt = bench_point(n);
    let started = Instant::now();
    let value = lhs_egf_eval(identity, n, &pt)?;
    let elapsed = started.elapsed();
    let check = value == rhs_eval(identity, n, &pt)?;
    Ok(BenchRow {
        n,
        engine: EngineId::EgfEval,
        identity,
        elapsed,
        result_kind: "value",
        result: format_rational(&value),
        check,
    })
}
