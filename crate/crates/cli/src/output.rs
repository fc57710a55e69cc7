//! Rendering of reports, estimates and tree listings in the three formats.

use cayley_forge::identity::SubCheck;
use cayley_forge::{LabeledTree, MonteCarloEstimate, VerificationReport, Witness};
use serde_json::json;

use crate::bench::BenchRow;
use crate::config::OutputFormat;

pub fn witness_line(w: &Witness) -> String {
    let (what, lhs, rhs, context) = match w {
        Witness::Monomial { monomial, lhs, rhs, context } => {
            (format!("monomial {monomial}"), lhs, rhs, context)
        }
        Witness::Point { point, lhs, rhs, context } => (format!("point ({point})"), lhs, rhs, context),
    };
    match context {
        Some(c) => format!("witness: {what}: lhs {lhs}, rhs {rhs} [{c}]"),
        None => format!("witness: {what}: lhs {lhs}, rhs {rhs}"),
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = format!(
        "{} n={} engine={}: {} (lhs terms {}, {} ms)\n",
        r.identity,
        r.n,
        r.engine,
        if r.passed() { "pass" } else { "FAIL" },
        r.lhs_terms,
        r.elapsed.as_millis()
    );
    if let Some(w) = &r.witness {
        out.push_str(&witness_line(w));
        out.push('\n');
    }
    out
}

fn subcheck_text(s: &SubCheck) -> String {
    let status = if s.passed { "pass" } else { "fail" };
    format!(
        "  {} {status} ({} case{}): {}\n",
        s.name,
        s.cases,
        if s.cases == 1 { "" } else { "s" },
        s.description
    )
}

fn estimate_text(e: &MonteCarloEstimate) -> String {
    let opt = |d: &Option<cayley_forge::sampling::Decimal>| {
        d.as_ref().map_or_else(|| "undefined".to_string(), |d| d.to_string())
    };
    format!(
        "  trials {} seed {} point ({})\n  mean {}\n  exact rhs {}\n  std error {}\n  z {}\n",
        e.trials,
        e.seed,
        e.point,
        cayley_forge::poly::format_rational(&e.mean),
        cayley_forge::poly::format_rational(&e.exact_rhs),
        opt(&e.sample_std_error),
        opt(&e.z_score)
    )
}

const REPORT_HEADER: [&str; 13] = [
    "identity",
    "n",
    "engine",
    "verdict",
    "lhs_terms",
    "elapsed_ms",
    "seed",
    "trials",
    "witness_kind",
    "witness_at",
    "witness_lhs",
    "witness_rhs",
    "witness_context",
];

fn report_record(r: &VerificationReport) -> Vec<String> {
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    let mut rec = vec![
        r.identity.to_string(),
        r.n.to_string(),
        r.engine.to_string(),
        if r.passed() { "pass" } else { "fail" }.to_string(),
        r.lhs_terms.to_string(),
        r.elapsed.as_millis().to_string(),
        opt(r.seed),
        opt(r.trials),
    ];
    match &r.witness {
        None => rec.extend(std::iter::repeat_n(String::new(), 5)),
        Some(Witness::Monomial { monomial, lhs, rhs, context }) => rec.extend([
            "monomial".into(),
            monomial.clone(),
            lhs.clone(),
            rhs.clone(),
            context.clone().unwrap_or_default(),
        ]),
        Some(Witness::Point { point, lhs, rhs, context }) => rec.extend([
            "point".into(),
            point.clone(),
            lhs.clone(),
            rhs.clone(),
            context.clone().unwrap_or_default(),
        ]),
    }
    rec
}

fn csv_string<I, R>(header: &[&str], records: I) -> String
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for r in records {
        w.write_record(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 fields")
}

/// A verification report. Induction runs add their sub-check lines in text form.
pub fn render_report(r: &VerificationReport, subchecks: &[SubCheck], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = report_text(r);
            for s in subchecks {
                out.push_str(&subcheck_text(s));
            }
            out
        }
        OutputFormat::Json => r.to_json() + "\n",
        OutputFormat::Csv => csv_string(&REPORT_HEADER, [report_record(r)]),
    }
}

/// A Monte Carlo run: the report and the estimate behind it.
pub fn render_sample(r: &VerificationReport, e: &MonteCarloEstimate, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => report_text(r) + &estimate_text(e),
        OutputFormat::Json => sample_json(r, e) + "\n",
        OutputFormat::Csv => {
            let mut header = REPORT_HEADER.to_vec();
            header.extend(["point", "mean", "exact_rhs", "sample_std_error", "z_score"]);
            let v = e.to_json_value();
            let field = |k: &str| v[k].as_str().unwrap_or_default().to_string();
            let mut rec = report_record(r);
            rec.extend(["point", "mean", "exact_rhs", "sample_std_error", "z_score"].map(field));
            csv_string(&header, [rec])
        }
    }
}

pub fn sample_json(r: &VerificationReport, e: &MonteCarloEstimate) -> String {
    let report: serde_json::Value = serde_json::from_str(&r.to_json()).expect("report json");
    json!({ "report": report, "estimate": e.to_json_value() }).to_string()
}

pub fn render_trees(n: usize, trees: &[LabeledTree], total: &str, format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = String::new();
            for t in trees {
                out.push_str(&t.to_string());
                out.push('\n');
            }
            out + &format!("total: {total}\n")
        }
        OutputFormat::Json => {
            let list: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
            json!({ "n": n, "trees": list, "total": total }).to_string() + "\n"
        }
        OutputFormat::Csv => {
            let mut rows: Vec<[String; 2]> =
                trees.iter().enumerate().map(|(i, t)| [i.to_string(), t.to_string()]).collect();
            rows.push(["total".into(), total.into()]);
            csv_string(&["index", "tree"], rows)
        }
    }
}

pub fn render_bench(suite: &str, rows: &[BenchRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Text => {
            let mut out = format!("suite {suite}\n");
            for r in rows {
                out.push_str(&format!(
                    "  n={:<4} {:<11} {:>10.3} ms  {} {}  {}\n",
                    r.n,
                    r.engine.to_string(),
                    r.elapsed.as_secs_f64() * 1e3,
                    r.result_kind,
                    r.result,
                    if r.check { "pass" } else { "FAIL" }
                ));
            }
            out
        }
        OutputFormat::Json => {
            let list: Vec<_> = rows.iter().map(BenchRow::to_json_value).collect();
            json!({ "suite": suite, "rows": list }).to_string() + "\n"
        }
        OutputFormat::Csv => csv_string(
            &["suite", "n", "engine", "identity", "elapsed_us", "result_kind", "result", "check"],
            rows.iter().map(|r| {
                [
                    suite.to_string(),
                    r.n.to_string(),
                    r.engine.to_string(),
                    r.identity.to_string(),
                    r.elapsed.as_micros().to_string(),
                    r.result_kind.to_string(),
                    r.result.clone(),
                    if r.check { "pass" } else { "fail" }.to_string(),
                ]
            }),
        ),
    }
}
