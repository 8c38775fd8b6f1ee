//! Greedy per-receiver decoding orders that maximize the minimum user rate.
//!
//! Receiver `j` fills its permutation from the last position downward. At each
//! step it decodes next the not-yet-placed user `z` that leaves the smallest
//! rank `f_j(E - D - {z})` behind, i.e. the user whose removal hurts the
//! remaining signal the least. It stops as soon as it has placed its own user.
//! The undecoded users fill the low positions in ascending order.
//!
//! For Gaussian channels this reduces to sorting received powers, which
//! [`gaussian_fast_order`] and [`gaussian_rate_formula`] do directly.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::axioms::{validate_rank_axioms, MAX_VALIDATION_USERS};
use crate::channel::sorted_sum;
use crate::rates::{min_rate_within, rate_vector_with};
use crate::{
    BackendKind, DecodingOrder, DecodingProfile, Error, GaussianChannel, RankFunctionSet,
    RateVector, Result, Tolerances, UserSet,
};

#[derive(Debug, Clone, Copy, Default)]
pub struct SolveOptions {
    /// Run on tabulated inputs that fail (or cannot be checked against) the
    /// rank axioms. Optimality is not guaranteed in that case.
    pub force: bool,
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub backend: BackendKind,
    pub profile: DecodingProfile,
    pub rates: RateVector,
    pub min_rate: f64,
    pub bottleneck_users: Vec<usize>,
    /// Users decoded at each receiver.
    pub decoded_sets: Vec<UserSet>,
    /// Receivers decoding each user.
    pub decoder_sets: Vec<UserSet>,
    pub elapsed: Duration,
}

/// Refuses tabulated rank sets that are not rank functions unless forced.
/// Gaussian and DMC backends are rank functions by construction.
pub fn admit(rs: &RankFunctionSet, opts: &SolveOptions) -> Result<()> {
    if opts.force || rs.kind() != BackendKind::Tabulated {
        return Ok(());
    }
    if rs.k() > MAX_VALIDATION_USERS {
        return Err(Error::Refused(format!(
            "cannot verify rank axioms for K = {} > {MAX_VALIDATION_USERS}; use force to run anyway",
            rs.k()
        )));
    }
    let report = validate_rank_axioms(rs, opts.tolerances.axiom)?;
    if let Some(bad) = report.failures().next() {
        let detail = if !bad.missing.is_empty() {
            format!("{} subsets missing", bad.missing.len())
        } else {
            format!(
                "normalization {:e}, monotonicity {:e}, submodularity {:e}",
                bad.normalization.worst_violation,
                bad.monotonicity.worst_violation,
                bad.submodularity.worst_violation
            )
        };
        return Err(Error::Refused(format!(
            "receiver {} is not a rank function ({detail}); use force to run anyway",
            bad.receiver + 1
        )));
    }
    Ok(())
}

/// Greedy decoding order for receiver `j`.
pub fn greedy_order(rs: &RankFunctionSet, j: usize, opts: &SolveOptions) -> Result<DecodingOrder> {
    if j >= rs.k() {
        return Err(Error::ReceiverOutOfRange { index: j, k: rs.k() });
    }
    admit(rs, opts)?;
    greedy_order_admitted(rs, j)
}

fn greedy_order_admitted(rs: &RankFunctionSet, j: usize) -> Result<DecodingOrder> {
    let k = rs.k();
    let everyone = UserSet::full(k);
    let mut placed = UserSet::empty(k);
    let mut sequence = Vec::new();

    loop {
        let remaining = everyone.intersection(placed.complement());
        let mut best: Option<(f64, usize)> = None;
        for z in remaining.iter() {
            let value = rs.eval(j, remaining.without(z))?;
            let better = match best {
                None => true,
                Some((bv, bz)) => match value.partial_cmp(&bv) {
                    Some(Ordering::Less) => true,
                    // ties go to a non-designated user, then to the lower index;
                    // candidates arrive in ascending order, so only j can lose a tie
                    Some(Ordering::Equal) => bz == j,
                    _ => false,
                },
            };
            if better {
                best = Some((value, z));
            }
        }
        let (_, chosen) = best.expect("designated user is always a candidate");
        sequence.push(chosen);
        placed = placed.with(chosen);
        if chosen == j {
            break;
        }
    }
    DecodingOrder::from_decode_sequence(k, j, &sequence)
}

/// Runs [`greedy_order`] at every receiver and evaluates the resulting profile.
pub fn greedy_profile(rs: &RankFunctionSet, opts: &SolveOptions) -> Result<SolveReport> {
    let start = Instant::now();
    admit(rs, opts)?;
    let orders = (0..rs.k())
        .map(|j| greedy_order_admitted(rs, j))
        .collect::<Result<Vec<_>>>()?;
    let profile = DecodingProfile::new(orders)?;
    let rates = rate_vector_with(rs, &profile, &opts.tolerances)?;
    let min = min_rate_within(&rates, opts.tolerances.equality)?;
    let decoded_sets = profile.orders().iter().map(DecodingOrder::decoded_set).collect();
    let decoder_sets = (0..rs.k()).map(|k| profile.decoder_set(k)).collect();
    Ok(SolveReport {
        backend: rs.kind(),
        profile,
        rates,
        min_rate: min.value,
        bottleneck_users: min.users,
        decoded_sets,
        decoder_sets,
        elapsed: start.elapsed(),
    })
}

/// Users sorted for decoding at receiver `j`: received power descending,
/// ties by ascending index with `j` last in its tie class.
fn power_ranking(ch: &GaussianChannel, j: usize) -> Vec<usize> {
    let mut users: Vec<usize> = (0..ch.k()).collect();
    users.sort_by(|&a, &b| {
        ch.received_power(j, b)
            .total_cmp(&ch.received_power(j, a))
            .then((a == j).cmp(&(b == j)))
            .then(a.cmp(&b))
    });
    users
}

/// Closed-form greedy order for a Gaussian channel: receiver `j` decodes every
/// user received at least as strongly as its own, strongest first.
pub fn gaussian_fast_order(ch: &GaussianChannel, j: usize) -> Result<DecodingOrder> {
    if j >= ch.k() {
        return Err(Error::ReceiverOutOfRange { index: j, k: ch.k() });
    }
    let ranking = power_ranking(ch, j);
    let own = ranking.iter().position(|&u| u == j).unwrap();
    DecodingOrder::from_decode_sequence(ch.k(), j, &ranking[..=own])
}

/// Closed-form rates of the greedy profile on a Gaussian channel:
/// `log2(1 + g_{j,k} p_k / (σ_j² + interference))` minimized over the
/// receivers that decode `k`, where the interference counts every user ranked
/// after `k` at receiver `j`.
pub fn gaussian_rate_formula(ch: &GaussianChannel) -> RateVector {
    let k = ch.k();
    let mut rates = vec![f64::INFINITY; k];
    for j in 0..k {
        let ranking = power_ranking(ch, j);
        let own = ranking.iter().position(|&u| u == j).unwrap();
        for (pos, &user) in ranking[..=own].iter().enumerate() {
            let interference = sorted_sum(
                ranking[pos + 1..]
                    .iter()
                    .map(|&i| ch.received_power(j, i))
                    .collect(),
            );
            let cap = (1.0
                + ch.received_power(j, user) / (ch.noise_vars()[j] + interference))
                .log2();
            rates[user] = rates[user].min(cap);
        }
    }
    RateVector::new(rates)
}
