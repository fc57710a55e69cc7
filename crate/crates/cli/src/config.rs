use std::path::PathBuf;
use std::str::FromStr;

use cayley_forge::{EngineId, EvalPoint, IdentityId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format {other:?} (expected text, json or csv)")),
        }
    }
}

/// One fully specified verification run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub identity: IdentityId,
    pub n: usize,
    pub engine: EngineId,
    pub point: Option<EvalPoint>,
    pub trials: Option<u64>,
    pub seed: Option<u64>,
    pub z_threshold: f64,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub ledger_path: Option<PathBuf>,
}

impl RunConfig {
    /// Checks the flag combinations: a point exactly for the point engines,
    /// trials and seed exactly for Monte Carlo.
    pub fn validate(&self) -> Result<(), String> {
        let point_engine = matches!(self.engine, EngineId::EgfEval | EngineId::MonteCarlo);
        match (&self.point, point_engine) {
            (None, true) => return Err(format!("--point is required for --engine {}", self.engine)),
            (Some(_), false) => {
                return Err(format!("--point only applies to egf-eval and monte-carlo, not {}", self.engine))
            }
            (Some(p), true) if p.len() != self.n => {
                return Err(format!("--point has {} coordinates but n = {}", p.len(), self.n))
            }
            _ => {}
        }
        let mc = self.engine == EngineId::MonteCarlo;
        if mc != self.trials.is_some() || mc != self.seed.is_some() {
            return Err(if mc {
                "--trials and --seed are required for --engine monte-carlo".to_string()
            } else {
                "--trials and --seed only apply to --engine monte-carlo".to_string()
            });
        }
        if !(self.z_threshold.is_finite() && self.z_threshold > 0.0) {
            return Err("--z-threshold must be a positive number".to_string());
        }
        Ok(())
    }
}
