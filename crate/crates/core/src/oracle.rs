//! Exhaustive max-min search over every decoding profile, used to certify the
//! greedy solver at small `K`.
//!
//! Only distinct configurations are enumerated: the order of the undecoded
//! users never changes a rate, so each receiver contributes one canonical
//! order per (decoded set, decoding sequence) pair, that is
//! `Σ_{t=0}^{K-1} (K-1)!/t!` orders.

use rayon::prelude::*;

use crate::greedy::greedy_profile;
use crate::rates::{min_rate_within, rate_vector_with, receiver_caps};
use crate::{
    DecodingOrder, DecodingProfile, Error, RankFunctionSet, Result, SolveOptions, Tolerances,
};

/// Gap above which a certification fails.
pub const CERTIFY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationBudget {
    /// Cap on the number of joint profiles evaluated.
    pub max_joint_configs: u64,
    /// Largest user count enumerated.
    pub k_limit: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        Self {
            max_joint_configs: 10_000_000,
            k_limit: 4,
        }
    }
}

impl EnumerationBudget {
    fn check_k(&self, k: usize) -> Result<()> {
        if k > self.k_limit {
            return Err(Error::Capacity {
                what: "exhaustive enumeration (users)",
                needed: k as u128,
                limit: self.k_limit as u128,
            });
        }
        Ok(())
    }
}

/// Number of distinct orders per receiver for `k` users.
pub fn configs_per_receiver(k: usize) -> u128 {
    // Σ_{t=0}^{k-1} (k-1)!/t!, accumulated from t = k-1 downward
    let mut total = 0u128;
    let mut term = 1u128;
    for t in (0..k).rev() {
        total += term;
        term *= t as u128;
    }
    total
}

/// Every distinct decoding order for receiver `j`, sorted by permutation.
pub fn enumerate_orders(
    k: usize,
    j: usize,
    budget: &EnumerationBudget,
) -> Result<Vec<DecodingOrder>> {
    budget.check_k(k)?;
    if j >= k {
        return Err(Error::ReceiverOutOfRange { index: j, k });
    }
    let others: Vec<usize> = (0..k).filter(|&u| u != j).collect();
    let mut out = Vec::new();
    let mut seq = Vec::with_capacity(k);
    extend_sequences(&others, &mut vec![false; others.len()], &mut seq, &mut |s| {
        let mut full = s.to_vec();
        full.push(j);
        out.push(DecodingOrder::from_decode_sequence(k, j, &full).expect("valid sequence"));
    });
    out.sort();
    Ok(out)
}

// Visits every ordered selection (of any length) from `pool`.
fn extend_sequences(
    pool: &[usize],
    used: &mut Vec<bool>,
    seq: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]),
) {
    visit(seq);
    for i in 0..pool.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        seq.push(pool[i]);
        extend_sequences(pool, used, seq, visit);
        seq.pop();
        used[i] = false;
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub opt_min_rate: f64,
    /// Optimal profile with the lexicographically smallest permutation encoding.
    pub best_profile: DecodingProfile,
    pub num_configs: u64,
}

/// Options for the exhaustive search.
#[derive(Debug, Clone, Copy, Default)]
pub struct OracleOptions {
    pub budget: EnumerationBudget,
    pub tolerances: Tolerances,
    /// Worker threads; `None` uses the global rayon pool.
    pub jobs: Option<usize>,
}

/// Evaluates the minimum rate of every joint profile and returns the best.
pub fn brute_force_maxmin(rs: &RankFunctionSet, budget: &EnumerationBudget) -> Result<OracleResult> {
    brute_force_maxmin_with(
        rs,
        &OracleOptions {
            budget: *budget,
            ..Default::default()
        },
    )
}

pub fn brute_force_maxmin_with(rs: &RankFunctionSet, opts: &OracleOptions) -> Result<OracleResult> {
    let k = rs.k();
    opts.budget.check_k(k)?;
    let needed = configs_per_receiver(k)
        .checked_pow(k as u32)
        .unwrap_or(u128::MAX);
    if needed > opts.budget.max_joint_configs as u128 {
        return Err(Error::Capacity {
            what: "exhaustive enumeration (joint profiles)",
            needed,
            limit: opts.budget.max_joint_configs as u128,
        });
    }

    let orders: Vec<Vec<DecodingOrder>> = (0..k)
        .map(|j| enumerate_orders(k, j, &opts.budget))
        .collect::<Result<_>>()?;
    let caps: Vec<Vec<Vec<f64>>> = orders
        .iter()
        .map(|per_rx| {
            per_rx
                .iter()
                .map(|o| receiver_caps(rs, o, &opts.tolerances))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let radix: Vec<u64> = orders.iter().map(|o| o.len() as u64).collect();
    let total = needed as u64;

    // Flat index with receiver 0 most significant; orders are sorted per
    // receiver, so a smaller index is a lexicographically smaller encoding.
    let evaluate = |idx: u64| -> (f64, u64) {
        let mut rest = idx;
        let mut rates = vec![f64::INFINITY; k];
        for j in (0..k).rev() {
            let c = (rest % radix[j]) as usize;
            rest /= radix[j];
            for (r, cap) in rates.iter_mut().zip(&caps[j][c]) {
                *r = r.min(*cap);
            }
        }
        let min = rates.into_iter().fold(f64::INFINITY, f64::min);
        (min, idx)
    };
    let better = |a: (f64, u64), b: (f64, u64)| -> (f64, u64) {
        match a.0.total_cmp(&b.0) {
            std::cmp::Ordering::Greater => a,
            std::cmp::Ordering::Less => b,
            std::cmp::Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        }
    };
    let search = || {
        (0..total as usize)
            .into_par_iter()
            .with_min_len(4096)
            .map(|i| evaluate(i as u64))
            .reduce(|| (f64::NEG_INFINITY, u64::MAX), better)
    };
    let (opt, idx) = match opts.jobs {
        None => search(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::ThreadPool(e.to_string()))?
            .install(search),
    };

    let mut rest = idx;
    let mut chosen = vec![0usize; k];
    for j in (0..k).rev() {
        chosen[j] = (rest % radix[j]) as usize;
        rest /= radix[j];
    }
    let best_profile = DecodingProfile::new(
        chosen
            .iter()
            .enumerate()
            .map(|(j, &c)| orders[j][c].clone())
            .collect(),
    )?;
    Ok(OracleResult {
        opt_min_rate: opt,
        best_profile,
        num_configs: total,
    })
}

#[derive(Debug, Clone)]
pub struct CertifyReport {
    pub greedy_min_rate: f64,
    pub oracle_min_rate: f64,
    /// `|oracle - greedy|`.
    pub gap: f64,
    pub passed: bool,
    pub greedy_profile: DecodingProfile,
    pub oracle_profile: DecodingProfile,
    /// A profile beating greedy by more than the tolerance, on failure.
    pub counterexample: Option<DecodingProfile>,
    pub num_configs: u64,
}

/// Compares the greedy solution against the exhaustive optimum.
pub fn certify(rs: &RankFunctionSet, budget: &EnumerationBudget) -> Result<CertifyReport> {
    certify_with(
        rs,
        &OracleOptions {
            budget: *budget,
            ..Default::default()
        },
        false,
    )
}

pub fn certify_with(rs: &RankFunctionSet, opts: &OracleOptions, force: bool) -> Result<CertifyReport> {
    let solve_opts = SolveOptions {
        force,
        tolerances: opts.tolerances,
    };
    let greedy = greedy_profile(rs, &solve_opts)?;
    let oracle = brute_force_maxmin_with(rs, opts)?;
    // recompute from the profile rather than trusting the solver's report
    let greedy_min = min_rate_within(
        &rate_vector_with(rs, &greedy.profile, &opts.tolerances)?,
        opts.tolerances.equality,
    )?
    .value;
    let gap = (oracle.opt_min_rate - greedy_min).abs();
    let passed = gap <= CERTIFY_TOL;
    Ok(CertifyReport {
        greedy_min_rate: greedy_min,
        oracle_min_rate: oracle.opt_min_rate,
        gap,
        passed,
        counterexample: (!passed).then(|| oracle.best_profile.clone()),
        greedy_profile: greedy.profile,
        oracle_profile: oracle.best_profile,
        num_configs: oracle.num_configs,
    })
}
