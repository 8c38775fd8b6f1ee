//! User-supplied decoding profiles.

use serde::Deserialize;
use sicfair_core::DecodingProfile;

use crate::commands::CliError;

/// Parses `1:2,1;2:2`: per receiver, the decoded users (1-based) in decoding
/// order. Every receiver must appear exactly once.
pub fn parse_profile_arg(text: &str, k: usize) -> Result<DecodingProfile, CliError> {
    let mut sequences: Vec<Option<Vec<usize>>> = vec![None; k];
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (rx, users) = part
            .split_once(':')
            .ok_or_else(|| CliError::Validation(format!("profile entry `{part}` lacks `receiver:`")))?;
        let rx = parse_index(rx, k, "receiver")?;
        let seq = users
            .split(',')
            .map(str::trim)
            .filter(|u| !u.is_empty())
            .map(|u| parse_index(u, k, "user"))
            .collect::<Result<Vec<_>, _>>()?;
        if sequences[rx].replace(seq).is_some() {
            return Err(CliError::Validation(format!("receiver {} listed twice", rx + 1)));
        }
    }
    build(sequences)
}

fn parse_index(s: &str, k: usize, what: &str) -> Result<usize, CliError> {
    match s.trim().parse::<usize>() {
        Ok(i) if (1..=k).contains(&i) => Ok(i - 1),
        _ => Err(CliError::Validation(format!("{what} `{}` is not in 1..={k}", s.trim()))),
    }
}

fn build(sequences: Vec<Option<Vec<usize>>>) -> Result<DecodingProfile, CliError> {
    let seqs = sequences
        .into_iter()
        .enumerate()
        .map(|(j, s)| s.ok_or_else(|| CliError::Validation(format!("no decoding order for receiver {}", j + 1))))
        .collect::<Result<Vec<_>, _>>()?;
    DecodingProfile::from_decode_sequences(&seqs).map_err(|e| CliError::Validation(e.to_string()))
}

#[derive(Deserialize)]
struct ReportDoc {
    receivers: Vec<ReceiverDoc>,
}

#[derive(Deserialize)]
struct ReceiverDoc {
    receiver: usize,
    decode_order: Vec<usize>,
}

/// Reads the profile out of a structured `solve` report.
pub fn parse_profile_report(text: &str, k: usize) -> Result<DecodingProfile, CliError> {
    let doc: ReportDoc = toml::from_str(text).map_err(|e| CliError::Parse(format!("profile file: {e}")))?;
    let mut sequences: Vec<Option<Vec<usize>>> = vec![None; k];
    for rx in doc.receivers {
        let j = parse_index(&rx.receiver.to_string(), k, "receiver")?;
        let seq = rx
            .decode_order
            .iter()
            .map(|u| parse_index(&u.to_string(), k, "user"))
            .collect::<Result<Vec<_>, _>>()?;
        if sequences[j].replace(seq).is_some() {
            return Err(CliError::Validation(format!("receiver {} listed twice", j + 1)));
        }
    }
    build(sequences)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_profile_argument() {
        let p = parse_profile_arg("1:2,1; 2:2", 2).unwrap();
        assert_eq!(p.order(0).decode_sequence().collect::<Vec<_>>(), vec![1, 0]);
        assert_eq!(p.order(1).decode_sequence().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn rejects_bad_profiles() {
        // receiver 1 must end with itself
        assert!(parse_profile_arg("1:2;2:2", 2).is_err());
        assert!(parse_profile_arg("1:1", 2).is_err());
        assert!(parse_profile_arg("1:1;1:1;2:2", 2).is_err());
        assert!(parse_profile_arg("1:3,1;2:2", 2).is_err());
        assert!(parse_profile_arg("x", 2).is_err());
    }

    #[test]
    fn reads_solve_report() {
        let text = r#"
command = "solve"
min_rate = 0.5

[[receivers]]
receiver = 2
decode_order = [2]
undecoded = [1]

[[receivers]]
receiver = 1
decode_order = [2, 1]
undecoded = []
"#;
        let p = parse_profile_report(text, 2).unwrap();
        assert_eq!(p, parse_profile_arg("1:2,1;2:2", 2).unwrap());
    }
}
