//! Channel descriptions and the per-receiver rank functions they induce.
//!
//! For receiver `j` the rank function is
//! `f_j(S) = I(y_j ; x_S | x_{S^c})`, in bits. Every backend here is
//! normalized so that `f_j(∅) = 0`.

use std::fmt;

use crate::{Error, Result, UserSet, MAX_USERS};

/// Default cap on `|X_1 × .. × X_K| · |Y_j|` for exact mutual-information sums.
pub const DEFAULT_MAX_JOINT_TERMS: u64 = 1 << 24;

/// Largest user count accepted by the tabulated backend (`2^K` entries per receiver).
pub const MAX_TABULATED_USERS: usize = 20;

const PMF_TOL: f64 = 1e-12;

fn check_receiver(j: usize, k: usize) -> Result<()> {
    if j >= k {
        return Err(Error::ReceiverOutOfRange { index: j, k });
    }
    Ok(())
}

fn check_set(s: UserSet, k: usize) -> Result<()> {
    if s.k() != k {
        return Err(Error::UserCountMismatch {
            expected: k,
            found: s.k(),
        });
    }
    Ok(())
}

fn check_user_count(field: &'static str, k: usize) -> Result<()> {
    if k == 0 || k > MAX_USERS {
        return Err(Error::InvalidChannel {
            field,
            reason: format!("user count {k} outside 1..={MAX_USERS}"),
        });
    }
    Ok(())
}

/// Sums nonnegative terms in ascending order so the result depends only on
/// the multiset of terms, not on user indices.
pub(crate) fn sorted_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_by(f64::total_cmp);
    terms.iter().sum()
}

/// Gaussian interference channel: `gains[j][i]` is the power gain from
/// transmitter `i` to receiver `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    gains: Vec<Vec<f64>>,
    powers: Vec<f64>,
    noise_vars: Vec<f64>,
}

impl GaussianChannel {
    pub fn new(gains: Vec<Vec<f64>>, powers: Vec<f64>, noise_vars: Vec<f64>) -> Result<Self> {
        let k = powers.len();
        check_user_count("powers", k)?;
        if gains.len() != k || gains.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidChannel {
                field: "gains",
                reason: format!("expected a {k}x{k} matrix"),
            });
        }
        if gains.iter().flatten().any(|g| !g.is_finite() || *g < 0.0) {
            return Err(Error::InvalidChannel {
                field: "gains",
                reason: "entries must be finite and nonnegative".into(),
            });
        }
        if powers.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidChannel {
                field: "powers",
                reason: "entries must be finite and nonnegative".into(),
            });
        }
        if noise_vars.len() != k {
            return Err(Error::InvalidChannel {
                field: "noise_vars",
                reason: format!("expected {k} entries, found {}", noise_vars.len()),
            });
        }
        if noise_vars.iter().any(|s| !s.is_finite() || *s <= 0.0) {
            return Err(Error::InvalidChannel {
                field: "noise_vars",
                reason: "entries must be finite and strictly positive".into(),
            });
        }
        Ok(Self {
            gains,
            powers,
            noise_vars,
        })
    }

    pub fn k(&self) -> usize {
        self.powers.len()
    }

    pub fn gains(&self) -> &[Vec<f64>] {
        &self.gains
    }

    pub fn powers(&self) -> &[f64] {
        &self.powers
    }

    pub fn noise_vars(&self) -> &[f64] {
        &self.noise_vars
    }

    /// Received power `g_{j,i} p_i` of user `i` at receiver `j`.
    pub fn received_power(&self, j: usize, i: usize) -> f64 {
        self.gains[j][i] * self.powers[i]
    }

    pub(crate) fn received_sum(&self, j: usize, s: UserSet) -> f64 {
        sorted_sum(s.iter().map(|i| self.received_power(j, i)).collect())
    }

    /// `log2(1 + Σ_{i∈S} g_{j,i} p_i / σ_j²)`.
    pub fn rank(&self, j: usize, s: UserSet) -> Result<f64> {
        check_receiver(j, self.k())?;
        check_set(s, self.k())?;
        Ok(self.rank_unchecked(j, s))
    }

    pub(crate) fn rank_unchecked(&self, j: usize, s: UserSet) -> f64 {
        (1.0 + self.received_sum(j, s) / self.noise_vars[j]).log2()
    }
}

/// Discrete memoryless interference channel restricted to the per-receiver
/// marginals `Pr(y_j | x_1, .., x_K)`. Inputs are independent across users.
#[derive(Debug, Clone, PartialEq)]
pub struct DmcChannel {
    input_pmfs: Vec<Vec<f64>>,
    /// `transitions[j]` holds one row per joint input tuple (row-major over
    /// `x_1, .., x_K`, last user fastest), flattened with stride `output_sizes[j]`.
    transitions: Vec<Vec<f64>>,
    output_sizes: Vec<usize>,
    max_joint_terms: u64,
}

fn check_pmf(field: &'static str, what: &str, pmf: &[f64]) -> Result<()> {
    if pmf.is_empty() {
        return Err(Error::InvalidChannel {
            field,
            reason: format!("{what} has an empty alphabet"),
        });
    }
    if pmf.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::InvalidChannel {
            field,
            reason: format!("{what} has a negative or non-finite probability"),
        });
    }
    let total: f64 = pmf.iter().sum();
    if (total - 1.0).abs() > PMF_TOL {
        return Err(Error::InvalidChannel {
            field,
            reason: format!("{what} sums to {total}, not 1"),
        });
    }
    Ok(())
}

impl DmcChannel {
    /// `transitions[j][t]` is the pmf of `y_j` given the joint input tuple with
    /// row-major index `t`.
    pub fn new(input_pmfs: Vec<Vec<f64>>, transitions: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        let k = input_pmfs.len();
        check_user_count("input_pmfs", k)?;
        for (u, pmf) in input_pmfs.iter().enumerate() {
            check_pmf("input_pmfs", &format!("input pmf of user {}", u + 1), pmf)?;
        }
        let rows = input_pmfs
            .iter()
            .try_fold(1usize, |acc, p| acc.checked_mul(p.len()))
            .ok_or(Error::InvalidChannel {
                field: "input_pmfs",
                reason: "joint input alphabet overflows".into(),
            })?;
        if transitions.len() != k {
            return Err(Error::InvalidChannel {
                field: "transitions",
                reason: format!("expected {k} receivers, found {}", transitions.len()),
            });
        }
        let mut flat = Vec::with_capacity(k);
        let mut output_sizes = Vec::with_capacity(k);
        for (j, table) in transitions.into_iter().enumerate() {
            if table.len() != rows {
                return Err(Error::InvalidChannel {
                    field: "transitions",
                    reason: format!(
                        "receiver {} has {} rows, expected one per joint input ({rows})",
                        j + 1,
                        table.len()
                    ),
                });
            }
            let ny = table[0].len();
            let mut out = Vec::with_capacity(rows * ny);
            for (t, row) in table.iter().enumerate() {
                if row.len() != ny {
                    return Err(Error::InvalidChannel {
                        field: "transitions",
                        reason: format!("receiver {} row {t} has the wrong output size", j + 1),
                    });
                }
                check_pmf(
                    "transitions",
                    &format!("receiver {} row {t}", j + 1),
                    row,
                )?;
                out.extend_from_slice(row);
            }
            flat.push(out);
            output_sizes.push(ny);
        }
        Ok(Self {
            input_pmfs,
            transitions: flat,
            output_sizes,
            max_joint_terms: DEFAULT_MAX_JOINT_TERMS,
        })
    }

    #[must_use]
    pub fn with_max_joint_terms(mut self, cap: u64) -> Self {
        self.max_joint_terms = cap;
        self
    }

    pub fn k(&self) -> usize {
        self.input_pmfs.len()
    }

    pub fn input_pmfs(&self) -> &[Vec<f64>] {
        &self.input_pmfs
    }

    pub fn input_sizes(&self) -> Vec<usize> {
        self.input_pmfs.iter().map(Vec::len).collect()
    }

    pub fn output_sizes(&self) -> &[usize] {
        &self.output_sizes
    }

    pub fn max_joint_terms(&self) -> u64 {
        self.max_joint_terms
    }

    /// Number of joint input tuples.
    pub fn joint_inputs(&self) -> usize {
        self.input_pmfs.iter().map(Vec::len).product()
    }

    /// Transition table of receiver `j` as nested rows.
    pub fn transition_rows(&self, j: usize) -> Vec<Vec<f64>> {
        self.transitions[j]
            .chunks(self.output_sizes[j])
            .map(<[f64]>::to_vec)
            .collect()
    }

    /// `Pr(y_j = y | joint input t)`.
    pub fn transition(&self, j: usize, t: usize, y: usize) -> f64 {
        self.transitions[j][t * self.output_sizes[j] + y]
    }

    /// Splits a row-major joint index into per-user symbols.
    pub fn decode_joint(&self, mut t: usize) -> Vec<usize> {
        let mut xs = vec![0; self.k()];
        for u in (0..self.k()).rev() {
            let n = self.input_pmfs[u].len();
            xs[u] = t % n;
            t /= n;
        }
        xs
    }

    /// Exact `I(y_j ; x_S | x_{S^c})` in bits by exhaustive summation.
    pub fn rank(&self, j: usize, s: UserSet) -> Result<f64> {
        check_receiver(j, self.k())?;
        check_set(s, self.k())?;
        let needed = self.joint_inputs() as u128 * self.output_sizes[j] as u128;
        if needed > self.max_joint_terms as u128 {
            return Err(Error::Capacity {
                what: "exact mutual information",
                needed,
                limit: self.max_joint_terms as u128,
            });
        }
        if s.is_empty() {
            return Ok(0.0);
        }
        Ok(self.rank_unchecked(j, s))
    }

    // H(y | x_{S^c}) - H(y | x_E), accumulating Pr(x_{S^c}, y) per
    // conditioning assignment.
    fn rank_unchecked(&self, j: usize, s: UserSet) -> f64 {
        let k = self.k();
        let ny = self.output_sizes[j];
        let cond = s.complement();
        let cond_states: usize = cond.iter().map(|u| self.input_pmfs[u].len()).product();
        let mut joint_cy = vec![0.0; cond_states * ny];
        let mut joint_c = vec![0.0; cond_states];
        let mut h_full = 0.0;

        for t in 0..self.joint_inputs() {
            let xs = self.decode_joint(t);
            let px: f64 = (0..k).map(|u| self.input_pmfs[u][xs[u]]).product();
            if px == 0.0 {
                continue;
            }
            let mut c = 0;
            for u in cond.iter() {
                c = c * self.input_pmfs[u].len() + xs[u];
            }
            joint_c[c] += px;
            for y in 0..ny {
                let w = self.transition(j, t, y);
                if w > 0.0 {
                    joint_cy[c * ny + y] += px * w;
                    h_full -= px * w * w.log2();
                }
            }
        }

        let mut h_cond = 0.0;
        for c in 0..cond_states {
            if joint_c[c] == 0.0 {
                continue;
            }
            for y in 0..ny {
                let q = joint_cy[c * ny + y];
                if q > 0.0 {
                    h_cond -= q * (q / joint_c[c]).log2();
                }
            }
        }
        (h_cond - h_full).max(0.0)
    }
}

/// Explicit per-receiver table of rank values, one entry per subset.
#[derive(Debug, Clone, PartialEq)]
pub struct RankTable {
    k: usize,
    /// `values[j][bits]`; `None` marks a subset the source did not provide.
    values: Vec<Vec<Option<f64>>>,
}

impl RankTable {
    /// Builds a table from `(subset, value)` entries per receiver. Missing
    /// subsets are allowed here and reported at evaluation or validation time.
    pub fn new(k: usize, receivers: Vec<Vec<(UserSet, f64)>>) -> Result<Self> {
        if k == 0 || k > MAX_TABULATED_USERS {
            return Err(Error::InvalidChannel {
                field: "k",
                reason: format!("tabulated rank sets support 1..={MAX_TABULATED_USERS} users"),
            });
        }
        if receivers.len() != k {
            return Err(Error::InvalidChannel {
                field: "receivers",
                reason: format!("expected {k} receivers, found {}", receivers.len()),
            });
        }
        let mut values = vec![vec![None; 1 << k]; k];
        for (j, entries) in receivers.into_iter().enumerate() {
            for (s, v) in entries {
                check_set(s, k)?;
                if !v.is_finite() {
                    return Err(Error::InvalidChannel {
                        field: "entries",
                        reason: format!("receiver {} value for {s} is not finite", j + 1),
                    });
                }
                let slot = &mut values[j][s.bits() as usize];
                if slot.is_some() {
                    return Err(Error::InvalidChannel {
                        field: "entries",
                        reason: format!("receiver {} lists {s} twice", j + 1),
                    });
                }
                *slot = Some(v);
            }
        }
        Ok(Self { k, values })
    }

    /// Fills every entry from `f(receiver, subset)`.
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, UserSet) -> f64) -> Result<Self> {
        let receivers = (0..k)
            .map(|j| UserSet::all_subsets(k).map(|s| (s, f(j, s))).collect())
            .collect();
        Self::new(k, receivers)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, j: usize, s: UserSet) -> Option<f64> {
        self.values[j][s.bits() as usize]
    }

    /// Subsets without an entry at receiver `j`.
    pub fn missing(&self, j: usize) -> Vec<UserSet> {
        UserSet::all_subsets(self.k)
            .filter(|s| self.get(j, *s).is_none())
            .collect()
    }

    pub fn rank(&self, j: usize, s: UserSet) -> Result<f64> {
        check_receiver(j, self.k)?;
        check_set(s, self.k)?;
        self.get(j, s)
            .ok_or(Error::IncompleteTable { receiver: j, subset: s })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BackendKind {
    Gaussian,
    Dmc,
    Tabulated,
}

impl BackendKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BackendKind::Gaussian => "gaussian",
            BackendKind::Dmc => "dmc",
            BackendKind::Tabulated => "tabulated",
        }
    }
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The K per-receiver rank functions of a channel, behind one evaluation call.
#[derive(Debug, Clone, PartialEq)]
pub enum RankFunctionSet {
    Gaussian(GaussianChannel),
    Dmc(DmcChannel),
    Tabulated(RankTable),
}

impl RankFunctionSet {
    pub fn k(&self) -> usize {
        match self {
            RankFunctionSet::Gaussian(ch) => ch.k(),
            RankFunctionSet::Dmc(ch) => ch.k(),
            RankFunctionSet::Tabulated(t) => t.k(),
        }
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            RankFunctionSet::Gaussian(_) => BackendKind::Gaussian,
            RankFunctionSet::Dmc(_) => BackendKind::Dmc,
            RankFunctionSet::Tabulated(_) => BackendKind::Tabulated,
        }
    }

    /// `f_j(S)` in bits.
    pub fn eval(&self, j: usize, s: UserSet) -> Result<f64> {
        match self {
            RankFunctionSet::Gaussian(ch) => ch.rank(j, s),
            RankFunctionSet::Dmc(ch) => ch.rank(j, s),
            RankFunctionSet::Tabulated(t) => t.rank(j, s),
        }
    }

    /// All `2^K` values of `f_j`, indexed by subset bitmask.
    pub fn eval_all(&self, j: usize) -> Result<Vec<f64>> {
        UserSet::all_subsets(self.k())
            .map(|s| self.eval(j, s))
            .collect()
    }
}
