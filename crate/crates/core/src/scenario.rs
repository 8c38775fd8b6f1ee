//! TOML scenario files, one channel per file.
//!
//! ```toml
//! kind = "gaussian"
//! k = 2
//! gains = [[1.0, 2.0], [0.1, 1.0]]   # gains[j][i]: transmitter i -> receiver j
//! powers = [1.0, 1.0]
//! noise_vars = [1.0, 1.0]
//! ```
//!
//! `kind = "dmc"` takes `k`, `input_sizes`, `output_sizes`, `input_pmfs` and
//! `transitions` (per receiver, one row per joint input tuple in row-major
//! order over `x_1, .., x_K`). `kind = "tabulated"` takes `k` and a
//! `[[receivers]]` list with `receiver` and `entries = [{ users = [..], value = .. }]`.
//! All indices in files are 1-based. Unknown fields are rejected.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{DmcChannel, Error, GaussianChannel, RankFunctionSet, RankTable, UserSet};

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("malformed scenario: {0}")]
    Syntax(String),
    #[error("scenario is missing the `kind` field")]
    MissingKind,
    #[error("unknown scenario kind `{0}` (expected gaussian, dmc or tabulated)")]
    UnknownKind(String),
    #[error("invalid {kind} scenario: {message}")]
    Schema { kind: &'static str, message: String },
    #[error(transparent)]
    Channel(#[from] Error),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianDoc {
    k: usize,
    gains: Vec<Vec<f64>>,
    powers: Vec<f64>,
    noise_vars: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DmcDoc {
    k: usize,
    input_sizes: Vec<usize>,
    output_sizes: Vec<usize>,
    input_pmfs: Vec<Vec<f64>>,
    transitions: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TabulatedDoc {
    k: usize,
    receivers: Vec<ReceiverDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ReceiverDoc {
    receiver: usize,
    entries: Vec<EntryDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryDoc {
    users: Vec<usize>,
    value: f64,
}

fn schema(kind: &'static str, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Schema {
        kind,
        message: message.into(),
    }
}

fn body<T: DeserializeOwned>(kind: &'static str, table: toml::Table) -> Result<T, ScenarioError> {
    toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| schema(kind, e.message().to_string()))
}

fn check_k(kind: &'static str, declared: usize, field: &'static str, found: usize) -> Result<(), ScenarioError> {
    if declared != found {
        return Err(schema(
            kind,
            format!("`{field}` has {found} entries but k = {declared}"),
        ));
    }
    Ok(())
}

/// Parses a scenario document into its rank-function set.
pub fn parse_scenario(text: &str) -> Result<RankFunctionSet, ScenarioError> {
    let mut table: toml::Table = text
        .parse()
        .map_err(|e: toml::de::Error| ScenarioError::Syntax(e.to_string()))?;
    let kind = match table.remove("kind") {
        None => return Err(ScenarioError::MissingKind),
        Some(toml::Value::String(s)) => s,
        Some(other) => {
            return Err(ScenarioError::Syntax(format!(
                "`kind` must be a string, found {}",
                other.type_str()
            )))
        }
    };
    match kind.as_str() {
        "gaussian" => {
            let doc: GaussianDoc = body("gaussian", table)?;
            check_k("gaussian", doc.k, "powers", doc.powers.len())?;
            check_k("gaussian", doc.k, "gains", doc.gains.len())?;
            Ok(RankFunctionSet::Gaussian(GaussianChannel::new(
                doc.gains,
                doc.powers,
                doc.noise_vars,
            )?))
        }
        "dmc" => {
            let doc: DmcDoc = body("dmc", table)?;
            check_k("dmc", doc.k, "input_sizes", doc.input_sizes.len())?;
            check_k("dmc", doc.k, "output_sizes", doc.output_sizes.len())?;
            check_k("dmc", doc.k, "input_pmfs", doc.input_pmfs.len())?;
            check_k("dmc", doc.k, "transitions", doc.transitions.len())?;
            for (u, (size, pmf)) in doc.input_sizes.iter().zip(&doc.input_pmfs).enumerate() {
                if *size != pmf.len() {
                    return Err(schema(
                        "dmc",
                        format!("`input_pmfs` entry {} has {} values but `input_sizes` says {size}", u + 1, pmf.len()),
                    ));
                }
            }
            for (j, (size, rows)) in doc.output_sizes.iter().zip(&doc.transitions).enumerate() {
                if rows.iter().any(|r| r.len() != *size) {
                    return Err(schema(
                        "dmc",
                        format!("`transitions` for receiver {} has rows not of length `output_sizes` = {size}", j + 1),
                    ));
                }
            }
            Ok(RankFunctionSet::Dmc(DmcChannel::new(
                doc.input_pmfs,
                doc.transitions,
            )?))
        }
        "tabulated" => {
            let doc: TabulatedDoc = body("tabulated", table)?;
            let k = doc.k;
            if k == 0 || k > crate::channel::MAX_TABULATED_USERS {
                return Err(schema("tabulated", format!("`k` = {k} is out of range")));
            }
            let mut per_rx: Vec<Option<Vec<(UserSet, f64)>>> = vec![None; k];
            for rx in doc.receivers {
                if rx.receiver == 0 || rx.receiver > k {
                    return Err(schema(
                        "tabulated",
                        format!("`receiver` = {} is outside 1..={k}", rx.receiver),
                    ));
                }
                let slot = &mut per_rx[rx.receiver - 1];
                if slot.is_some() {
                    return Err(schema(
                        "tabulated",
                        format!("`receiver` = {} listed twice", rx.receiver),
                    ));
                }
                let mut entries = Vec::with_capacity(rx.entries.len());
                for e in rx.entries {
                    if e.users.windows(2).any(|w| w[0] >= w[1]) {
                        return Err(schema(
                            "tabulated",
                            format!("`users` {:?} must be sorted ascending without repeats", e.users),
                        ));
                    }
                    if e.users.contains(&0) {
                        return Err(schema("tabulated", "`users` are 1-based"));
                    }
                    entries.push((UserSet::from_users(k, e.users.iter().map(|u| u - 1))?, e.value));
                }
                *slot = Some(entries);
            }
            let receivers = per_rx
                .into_iter()
                .enumerate()
                .map(|(j, e)| e.ok_or_else(|| schema("tabulated", format!("`receivers` has no entry for receiver {}", j + 1))))
                .collect::<Result<_, _>>()?;
            Ok(RankFunctionSet::Tabulated(RankTable::new(k, receivers)?))
        }
        other => Err(ScenarioError::UnknownKind(other.to_string())),
    }
}

/// Renders a rank-function set as a scenario document. Output is a pure
/// function of the input, and floats round-trip exactly.
pub fn render_scenario(rs: &RankFunctionSet) -> String {
    let (kind, body) = match rs {
        RankFunctionSet::Gaussian(ch) => (
            "gaussian",
            toml::to_string(&GaussianDoc {
                k: ch.k(),
                gains: ch.gains().to_vec(),
                powers: ch.powers().to_vec(),
                noise_vars: ch.noise_vars().to_vec(),
            }),
        ),
        RankFunctionSet::Dmc(ch) => (
            "dmc",
            toml::to_string(&DmcDoc {
                k: ch.k(),
                input_sizes: ch.input_sizes(),
                output_sizes: ch.output_sizes().to_vec(),
                input_pmfs: ch.input_pmfs().to_vec(),
                transitions: (0..ch.k()).map(|j| ch.transition_rows(j)).collect(),
            }),
        ),
        RankFunctionSet::Tabulated(t) => (
            "tabulated",
            toml::to_string(&TabulatedDoc {
                k: t.k(),
                receivers: (0..t.k())
                    .map(|j| ReceiverDoc {
                        receiver: j + 1,
                        entries: UserSet::all_subsets(t.k())
                            .filter_map(|s| {
                                t.get(j, s).map(|value| EntryDoc {
                                    users: s.iter().map(|u| u + 1).collect(),
                                    value,
                                })
                            })
                            .collect(),
                    })
                    .collect(),
            }),
        ),
    };
    format!(
        "kind = \"{kind}\"\n{}",
        body.expect("scenario documents always serialize")
    )
}
