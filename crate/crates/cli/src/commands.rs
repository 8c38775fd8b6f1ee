use std::fs;
use std::path::Path;

use sicfair_core::generate::{self, GenKind, GenParams};
use sicfair_core::oracle::{certify_with, OracleOptions};
use sicfair_core::rates::{min_rate_within, rate_vector_with};
use sicfair_core::scenario::{parse_scenario, render_scenario};
use sicfair_core::{
    greedy_profile, validate_rank_axioms, EnumerationBudget, Error, RankFunctionSet,
    SolveOptions, Tolerances,
};
use thiserror::Error;

use crate::profile::{parse_profile_arg, parse_profile_report};
use crate::report;
use crate::{Common, GenKindArg};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;
pub const EXIT_CERTIFY: u8 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => EXIT_PARSE,
            CliError::Validation(_) => EXIT_VALIDATION,
            CliError::Budget(_) => EXIT_BUDGET,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Capacity { .. } => CliError::Budget(e.to_string()),
            other => CliError::Validation(other.to_string()),
        }
    }
}

/// What to print and which exit code to return.
pub struct Outcome {
    pub output: String,
    pub code: u8,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            code: EXIT_OK,
        }
    }
}

fn tolerances(common: &Common) -> Tolerances {
    Tolerances {
        axiom: common.tol,
        ..Tolerances::default()
    }
}

fn load(path: &Path) -> Result<RankFunctionSet, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    parse_scenario(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn solve(scenario: &Path, common: &Common) -> Result<Outcome, CliError> {
    let rs = load(scenario)?;
    let opts = SolveOptions {
        force: common.force,
        tolerances: tolerances(common),
    };
    let solved = greedy_profile(&rs, &opts)?;
    Ok(Outcome::ok(report::solve(&solved, common.format)))
}

pub fn rates(
    scenario: &Path,
    profile: Option<&str>,
    profile_file: Option<&Path>,
    common: &Common,
) -> Result<Outcome, CliError> {
    let rs = load(scenario)?;
    let profile = match (profile, profile_file) {
        (Some(text), _) => parse_profile_arg(text, rs.k())?,
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            parse_profile_report(&text, rs.k())?
        }
        (None, None) => return Err(CliError::Validation("no profile given".into())),
    };
    let tol = tolerances(common);
    let rv = rate_vector_with(&rs, &profile, &tol)?;
    let min = min_rate_within(&rv, tol.equality)?;
    Ok(Outcome::ok(report::rates(&rs, &profile, &rv, &min, common.format)))
}

pub fn certify(scenario: &Path, common: &Common) -> Result<Outcome, CliError> {
    let rs = load(scenario)?;
    let opts = OracleOptions {
        budget: EnumerationBudget::default(),
        tolerances: tolerances(common),
        jobs: common.jobs,
    };
    let cert = certify_with(&rs, &opts, common.force)?;
    Ok(Outcome {
        output: report::certify(&cert, common.format),
        code: if cert.passed { EXIT_OK } else { EXIT_CERTIFY },
    })
}

pub fn validate(scenario: &Path, common: &Common) -> Result<Outcome, CliError> {
    let rs = load(scenario)?;
    let axioms = validate_rank_axioms(&rs, common.tol)?;
    Ok(Outcome {
        output: report::validate(&axioms, common.format),
        code: if axioms.passed() { EXIT_OK } else { EXIT_VALIDATION },
    })
}

pub fn gen(
    kind: GenKindArg,
    seed: u64,
    k: usize,
    power: f64,
    noise: f64,
    out: Option<&Path>,
) -> Result<Outcome, CliError> {
    let kind = match kind {
        GenKindArg::Gaussian => GenKind::Gaussian,
        GenKindArg::Dmc => GenKind::Dmc,
        GenKindArg::TabulatedSubmodular => GenKind::TabulatedSubmodular,
    };
    if k == 0 {
        return Err(CliError::Validation("--k must be at least 1".into()));
    }
    if kind != GenKind::Gaussian && k > 12 {
        return Err(CliError::Budget(format!("--k {k} is too large for {kind:?} generation (max 12)")));
    }
    let params = GenParams {
        k,
        seed,
        power,
        noise,
    };
    let text = render_scenario(&generate::generate(kind, &params)?);
    match out {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            fs::write(path, text)
                .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
    }
}
