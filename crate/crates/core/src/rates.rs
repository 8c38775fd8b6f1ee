//! Achievable rates under a decoding profile.
//!
//! At receiver `j`, a decoded user at position `m` can carry at most
//! `f_j(P_m) - f_j(P_{m-1})` bits, where `P_m` holds the users at positions
//! `0..=m` (everything not yet cancelled when that user is decoded). A user's
//! rate is the smallest such cap over all receivers that decode it.

use std::fmt;
use std::ops::Index;

use crate::{DecodingOrder, DecodingProfile, Error, RankFunctionSet, Result, Tolerances};

/// Per-user rates in bits per channel use.
#[derive(Debug, Clone, PartialEq)]
pub struct RateVector(Vec<f64>);

impl RateVector {
    pub fn new(rates: Vec<f64>) -> Self {
        Self(rates)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl Index<usize> for RateVector {
    type Output = f64;

    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl fmt::Display for RateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, r) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r:.6}")?;
        }
        f.write_str(")")
    }
}

/// Minimum rate and every user attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct MinRate {
    pub value: f64,
    pub users: Vec<usize>,
}

/// Rate cap that receiver `order.receiver()` imposes on each user;
/// `f64::INFINITY` for users it does not decode.
///
/// Marginals below zero by at most `tol.axiom` are clamped to zero; anything
/// more negative means the rank input is not monotone.
pub fn receiver_caps(
    rs: &RankFunctionSet,
    order: &DecodingOrder,
    tol: &Tolerances,
) -> Result<Vec<f64>> {
    let j = order.receiver();
    let k = order.k();
    let mut caps = vec![f64::INFINITY; k];
    let from = order.decoded_from();
    let mut below = rs.eval(j, order.prefix_set(from))?;
    for m in from..k {
        let user = order.perm()[m];
        let upto = rs.eval(j, order.prefix_set(m + 1))?;
        let delta = upto - below;
        caps[user] = if delta >= 0.0 {
            delta
        } else if delta >= -tol.axiom {
            0.0
        } else {
            return Err(Error::NonMonotone {
                receiver: j,
                user,
                delta,
            });
        };
        below = upto;
    }
    Ok(caps)
}

/// Rate of `user`: the smallest cap among the receivers that decode it.
pub fn rate_of_user(rs: &RankFunctionSet, profile: &DecodingProfile, user: usize) -> Result<f64> {
    rate_of_user_with(rs, profile, user, &Tolerances::default())
}

pub fn rate_of_user_with(
    rs: &RankFunctionSet,
    profile: &DecodingProfile,
    user: usize,
    tol: &Tolerances,
) -> Result<f64> {
    check_profile(rs, profile)?;
    if user >= profile.k() {
        return Err(Error::UserOutOfRange {
            index: user,
            k: profile.k(),
        });
    }
    let mut rate = f64::INFINITY;
    for j in profile.decoder_set(user).iter() {
        let caps = receiver_caps(rs, profile.order(j), tol)?;
        rate = rate.min(caps[user]);
    }
    Ok(rate)
}

pub fn rate_vector(rs: &RankFunctionSet, profile: &DecodingProfile) -> Result<RateVector> {
    rate_vector_with(rs, profile, &Tolerances::default())
}

pub fn rate_vector_with(
    rs: &RankFunctionSet,
    profile: &DecodingProfile,
    tol: &Tolerances,
) -> Result<RateVector> {
    check_profile(rs, profile)?;
    let mut rates = vec![f64::INFINITY; profile.k()];
    for order in profile.orders() {
        let caps = receiver_caps(rs, order, tol)?;
        for (r, c) in rates.iter_mut().zip(caps) {
            *r = r.min(c);
        }
    }
    Ok(RateVector(rates))
}

fn check_profile(rs: &RankFunctionSet, profile: &DecodingProfile) -> Result<()> {
    if rs.k() != profile.k() {
        return Err(Error::UserCountMismatch {
            expected: rs.k(),
            found: profile.k(),
        });
    }
    Ok(())
}

/// Minimum entry and all users within `Tolerances::DEFAULT_EQUALITY` of it.
pub fn min_rate(rv: &RateVector) -> Result<MinRate> {
    min_rate_within(rv, Tolerances::DEFAULT_EQUALITY)
}

pub fn min_rate_within(rv: &RateVector, tol: f64) -> Result<MinRate> {
    let value = rv
        .0
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptyRateVector)?;
    let users = rv
        .0
        .iter()
        .enumerate()
        .filter(|(_, r)| **r - value <= tol)
        .map(|(k, _)| k)
        .collect();
    Ok(MinRate { value, users })
}
