//! Exhaustive check of the rank-function axioms: normalized, increasing,
//! submodular.

use crate::{Error, RankFunctionSet, Result, UserSet};

/// Largest user count [`validate_rank_axioms`] will enumerate.
pub const MAX_VALIDATION_USERS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxiomCheck {
    pub passed: bool,
    /// Largest violation found, `0.0` when the axiom holds exactly.
    pub worst_violation: f64,
}

impl AxiomCheck {
    fn from_violation(worst: f64, tol: f64) -> Self {
        Self {
            passed: worst <= tol,
            worst_violation: worst,
        }
    }

    fn failed() -> Self {
        Self {
            passed: false,
            worst_violation: f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReceiverAxioms {
    pub receiver: usize,
    pub normalization: AxiomCheck,
    pub monotonicity: AxiomCheck,
    pub submodularity: AxiomCheck,
    /// Subsets a tabulated backend has no value for. Any entry fails every axiom.
    pub missing: Vec<UserSet>,
}

impl ReceiverAxioms {
    pub fn passed(&self) -> bool {
        self.normalization.passed && self.monotonicity.passed && self.submodularity.passed
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    pub tol: f64,
    pub receivers: Vec<ReceiverAxioms>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.receivers.iter().all(ReceiverAxioms::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReceiverAxioms> {
        self.receivers.iter().filter(|r| !r.passed())
    }
}

/// Checks every receiver's rank function over all subsets (monotonicity)
/// and all subset pairs (submodularity).
pub fn validate_rank_axioms(rs: &RankFunctionSet, tol: f64) -> Result<AxiomReport> {
    let k = rs.k();
    if k > MAX_VALIDATION_USERS {
        return Err(Error::Capacity {
            what: "rank-axiom validation (users)",
            needed: k as u128,
            limit: MAX_VALIDATION_USERS as u128,
        });
    }
    let receivers = (0..k)
        .map(|j| validate_receiver(rs, j, tol))
        .collect::<Result<_>>()?;
    Ok(AxiomReport { tol, receivers })
}

fn validate_receiver(rs: &RankFunctionSet, j: usize, tol: f64) -> Result<ReceiverAxioms> {
    let k = rs.k();
    let n = 1usize << k;
    let mut values = Vec::with_capacity(n);
    let mut missing = Vec::new();
    for s in UserSet::all_subsets(k) {
        match rs.eval(j, s) {
            Ok(v) => values.push(v),
            Err(Error::IncompleteTable { .. }) => {
                missing.push(s);
                values.push(f64::NAN);
            }
            Err(e) => return Err(e),
        }
    }
    if !missing.is_empty() {
        return Ok(ReceiverAxioms {
            receiver: j,
            normalization: AxiomCheck::failed(),
            monotonicity: AxiomCheck::failed(),
            submodularity: AxiomCheck::failed(),
            missing,
        });
    }

    let normalization = AxiomCheck::from_violation(values[0].abs(), tol);

    // S ⊂ T: walk T and every proper subset S of T.
    let mut worst_mono = 0.0f64;
    for t in 1..n {
        let mut s = (t - 1) & t;
        loop {
            worst_mono = worst_mono.max(values[s] - values[t]);
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
    }

    let mut worst_sub = 0.0f64;
    for s in 0..n {
        for t in (s + 1)..n {
            let lhs = values[s] + values[t];
            let rhs = values[s | t] + values[s & t];
            worst_sub = worst_sub.max(rhs - lhs);
        }
    }

    Ok(ReceiverAxioms {
        receiver: j,
        normalization,
        monotonicity: AxiomCheck::from_violation(worst_mono, tol),
        submodularity: AxiomCheck::from_violation(worst_sub, tol),
        missing,
    })
}
