//! Human and structured (TOML) renderings. Indices are 1-based. Structured
//! field names are stable; see the README.

use std::fmt::Write as _;

use serde::Serialize;
use sicfair_core::rates::MinRate;
use sicfair_core::{
    AxiomCheck, AxiomReport, CertifyReport, DecodingProfile, RankFunctionSet, RateVector,
    SolveReport, UserSet,
};

use crate::Format;

#[derive(Serialize)]
struct ReceiverOut {
    receiver: usize,
    decode_order: Vec<usize>,
    undecoded: Vec<usize>,
}

#[derive(Serialize)]
struct UserOut {
    user: usize,
    rate: f64,
    decoders: Vec<usize>,
}

#[derive(Serialize)]
struct SolveOut<'a> {
    command: &'a str,
    kind: &'a str,
    k: usize,
    min_rate: f64,
    bottleneck_users: Vec<usize>,
    rates: Vec<f64>,
    receivers: Vec<ReceiverOut>,
    users: Vec<UserOut>,
}

fn one_based(users: impl IntoIterator<Item = usize>) -> Vec<usize> {
    users.into_iter().map(|u| u + 1).collect()
}

fn receivers_out(profile: &DecodingProfile) -> Vec<ReceiverOut> {
    profile
        .orders()
        .iter()
        .map(|o| {
            let mut undecoded = o.undecoded().to_vec();
            undecoded.sort_unstable();
            ReceiverOut {
                receiver: o.receiver() + 1,
                decode_order: one_based(o.decode_sequence()),
                undecoded: one_based(undecoded),
            }
        })
        .collect()
}

fn users_out(profile: &DecodingProfile, rates: &RateVector) -> Vec<UserOut> {
    (0..profile.k())
        .map(|k| UserOut {
            user: k + 1,
            rate: rates[k],
            decoders: one_based(profile.decoder_set(k).iter()),
        })
        .collect()
}

fn to_toml<T: Serialize>(doc: &T) -> String {
    toml::to_string(doc).expect("report serializes")
}

fn set_list(s: &UserSet) -> String {
    s.to_string()
}

fn human_profile(out: &mut String, profile: &DecodingProfile, rates: &RateVector) {
    out.push_str("decoding orders (receiver: [undecoded] first decoded, .., own user):\n");
    for o in profile.orders() {
        writeln!(out, "  {o}").unwrap();
    }
    out.push_str("decoded sets:\n");
    for o in profile.orders() {
        writeln!(out, "  receiver {}: {}", o.receiver() + 1, set_list(&o.decoded_set())).unwrap();
    }
    out.push_str("users:\n");
    for k in 0..profile.k() {
        writeln!(
            out,
            "  user {}: rate {:.9} bits, decoded at receivers {}",
            k + 1,
            rates[k],
            set_list(&profile.decoder_set(k))
        )
        .unwrap();
    }
}

pub fn solve(r: &SolveReport, format: Format) -> String {
    match format {
        Format::Structured => to_toml(&SolveOut {
            command: "solve",
            kind: r.backend.as_str(),
            k: r.profile.k(),
            min_rate: r.min_rate,
            bottleneck_users: one_based(r.bottleneck_users.iter().copied()),
            rates: r.rates.as_slice().to_vec(),
            receivers: receivers_out(&r.profile),
            users: users_out(&r.profile, &r.rates),
        }),
        Format::Human => {
            let mut out = format!("backend: {} (K = {})\n", r.backend, r.profile.k());
            human_profile(&mut out, &r.profile, &r.rates);
            writeln!(
                out,
                "min rate: {:.9} bits (bottleneck users {:?})",
                r.min_rate,
                one_based(r.bottleneck_users.iter().copied())
            )
            .unwrap();
            out
        }
    }
}

pub fn rates(
    rs: &RankFunctionSet,
    profile: &DecodingProfile,
    rv: &RateVector,
    min: &MinRate,
    format: Format,
) -> String {
    match format {
        Format::Structured => to_toml(&SolveOut {
            command: "rates",
            kind: rs.kind().as_str(),
            k: profile.k(),
            min_rate: min.value,
            bottleneck_users: one_based(min.users.iter().copied()),
            rates: rv.as_slice().to_vec(),
            receivers: receivers_out(profile),
            users: users_out(profile, rv),
        }),
        Format::Human => {
            let mut out = format!("backend: {} (K = {})\n", rs.kind(), profile.k());
            human_profile(&mut out, profile, rv);
            writeln!(
                out,
                "min rate: {:.9} bits (bottleneck users {:?})",
                min.value,
                one_based(min.users.iter().copied())
            )
            .unwrap();
            out
        }
    }
}

#[derive(Serialize)]
struct CertifyOut<'a> {
    command: &'a str,
    passed: bool,
    greedy_min_rate: f64,
    oracle_min_rate: f64,
    gap: f64,
    num_configs: u64,
    greedy_profile: Vec<Vec<usize>>,
    oracle_profile: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<Vec<Vec<usize>>>,
}

fn sequences(p: &DecodingProfile) -> Vec<Vec<usize>> {
    p.orders().iter().map(|o| one_based(o.decode_sequence())).collect()
}

pub fn certify(c: &CertifyReport, format: Format) -> String {
    match format {
        Format::Structured => to_toml(&CertifyOut {
            command: "certify",
            passed: c.passed,
            greedy_min_rate: c.greedy_min_rate,
            oracle_min_rate: c.oracle_min_rate,
            gap: c.gap,
            num_configs: c.num_configs,
            greedy_profile: sequences(&c.greedy_profile),
            oracle_profile: sequences(&c.oracle_profile),
            counterexample: c.counterexample.as_ref().map(sequences),
        }),
        Format::Human => {
            let mut out = String::new();
            writeln!(out, "profiles enumerated: {}", c.num_configs).unwrap();
            writeln!(out, "greedy min rate:     {:.12}", c.greedy_min_rate).unwrap();
            writeln!(out, "exhaustive optimum:  {:.12}", c.oracle_min_rate).unwrap();
            writeln!(out, "gap:                 {:e}", c.gap).unwrap();
            out.push_str("greedy profile:\n");
            for o in c.greedy_profile.orders() {
                writeln!(out, "  {o}").unwrap();
            }
            if let Some(ce) = &c.counterexample {
                out.push_str("better profile found:\n");
                for o in ce.orders() {
                    writeln!(out, "  {o}").unwrap();
                }
            }
            writeln!(out, "{}", if c.passed { "PASS" } else { "FAIL" }).unwrap();
            out
        }
    }
}

#[derive(Serialize)]
struct CheckOut {
    passed: bool,
    worst_violation: f64,
}

impl From<&AxiomCheck> for CheckOut {
    fn from(c: &AxiomCheck) -> Self {
        Self {
            passed: c.passed,
            worst_violation: c.worst_violation,
        }
    }
}

#[derive(Serialize)]
struct AxiomsOut {
    receiver: usize,
    passed: bool,
    normalization: CheckOut,
    monotonicity: CheckOut,
    submodularity: CheckOut,
    missing: Vec<Vec<usize>>,
}

#[derive(Serialize)]
struct ValidateOut<'a> {
    command: &'a str,
    passed: bool,
    tol: f64,
    receivers: Vec<AxiomsOut>,
}

pub fn validate(report: &AxiomReport, format: Format) -> String {
    match format {
        Format::Structured => to_toml(&ValidateOut {
            command: "validate",
            passed: report.passed(),
            tol: report.tol,
            receivers: report
                .receivers
                .iter()
                .map(|r| AxiomsOut {
                    receiver: r.receiver + 1,
                    passed: r.passed(),
                    normalization: (&r.normalization).into(),
                    monotonicity: (&r.monotonicity).into(),
                    submodularity: (&r.submodularity).into(),
                    missing: r.missing.iter().map(|s| one_based(s.iter())).collect(),
                })
                .collect(),
        }),
        Format::Human => {
            let mut out = format!("tolerance: {:e}\n", report.tol);
            let mark = |c: &AxiomCheck| if c.passed { "ok  " } else { "FAIL" };
            for r in &report.receivers {
                writeln!(out, "receiver {}:", r.receiver + 1).unwrap();
                if !r.missing.is_empty() {
                    writeln!(out, "  missing {} subsets", r.missing.len()).unwrap();
                }
                for (name, c) in [
                    ("normalization", &r.normalization),
                    ("monotonicity", &r.monotonicity),
                    ("submodularity", &r.submodularity),
                ] {
                    writeln!(out, "  {} {name:<14} worst violation {:e}", mark(c), c.worst_violation).unwrap();
                }
            }
            writeln!(out, "{}", if report.passed() { "PASS" } else { "FAIL" }).unwrap();
            out
        }
    }
}
