//! Per-receiver decoding orders and the sets derived from them.
//!
//! A [`DecodingOrder`] stores a permutation of all users indexed by position.
//! The user at the last position is decoded first; decoding proceeds toward
//! lower positions and ends at the receiver's own user. Users at positions
//! below that are never decoded and are treated as noise.

use std::fmt;

use crate::{Error, Result, UserSet};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecodingOrder {
    receiver: usize,
    perm: Vec<usize>,
    decoded_from: usize,
}

impl DecodingOrder {
    /// Wraps a position-indexed permutation (`perm[m]` is the user at position `m`).
    pub fn new(receiver: usize, perm: Vec<usize>) -> Result<Self> {
        let k = perm.len();
        if k == 0 {
            return Err(Error::InvalidOrder("empty permutation".into()));
        }
        if receiver >= k {
            return Err(Error::ReceiverOutOfRange { index: receiver, k });
        }
        let mut seen = vec![false; k];
        for &u in &perm {
            if u >= k {
                return Err(Error::UserOutOfRange { index: u, k });
            }
            if std::mem::replace(&mut seen[u], true) {
                return Err(Error::InvalidOrder(format!("user {} appears twice", u + 1)));
            }
        }
        let decoded_from = perm.iter().position(|&u| u == receiver).unwrap();
        Ok(Self {
            receiver,
            perm,
            decoded_from,
        })
    }

    /// Builds a canonical order from the decoded users listed in decoding
    /// order (first decoded first). The list must end with `receiver`.
    pub fn from_decode_sequence(k: usize, receiver: usize, sequence: &[usize]) -> Result<Self> {
        if receiver >= k {
            return Err(Error::ReceiverOutOfRange { index: receiver, k });
        }
        match sequence.last() {
            Some(&last) if last == receiver => {}
            _ => {
                return Err(Error::InvalidOrder(format!(
                    "receiver {} must decode its own user last",
                    receiver + 1
                )))
            }
        }
        let decoded = UserSet::from_users(k, sequence.iter().copied())?;
        let mut perm: Vec<usize> = decoded.complement().iter().collect();
        perm.extend(sequence.iter().rev());
        Self::new(receiver, perm)
    }

    pub fn receiver(&self) -> usize {
        self.receiver
    }

    pub fn k(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    /// Position of the receiver's own user; positions at or above it are decoded.
    pub fn decoded_from(&self) -> usize {
        self.decoded_from
    }

    /// Position of `user` in the permutation.
    pub fn position_of(&self, user: usize) -> usize {
        self.perm
            .iter()
            .position(|&u| u == user)
            .unwrap_or_else(|| panic!("user {user} not in a permutation of {}", self.k()))
    }

    pub fn decoded_set(&self) -> UserSet {
        UserSet::from_users(self.k(), self.perm[self.decoded_from..].iter().copied())
            .expect("valid permutation")
    }

    /// Users at positions `0..t`.
    pub fn prefix_set(&self, t: usize) -> UserSet {
        UserSet::from_users(self.k(), self.perm[..t].iter().copied()).expect("valid permutation")
    }

    /// Users never decoded, in stored order.
    pub fn undecoded(&self) -> &[usize] {
        &self.perm[..self.decoded_from]
    }

    /// Decoded users from first decoded to last (the receiver's own user).
    pub fn decode_sequence(&self) -> impl Iterator<Item = usize> + '_ {
        self.perm[self.decoded_from..].iter().rev().copied()
    }

    pub fn is_canonical(&self) -> bool {
        self.undecoded().windows(2).all(|w| w[0] < w[1])
    }

    /// Sorts the undecoded prefix ascending; the decoded suffix is untouched.
    #[must_use]
    pub fn canonicalize(&self) -> Self {
        let mut perm = self.perm.clone();
        perm[..self.decoded_from].sort_unstable();
        Self {
            perm,
            ..self.clone()
        }
    }
}

/// Renders as `j: [undecoded ascending] first-decoded, .., j` with 1-based indices.
impl fmt::Display for DecodingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut undecoded = self.undecoded().to_vec();
        undecoded.sort_unstable();
        let join = |users: &mut dyn Iterator<Item = usize>| {
            users
                .map(|u| (u + 1).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}: [{}] {}",
            self.receiver + 1,
            join(&mut undecoded.into_iter()),
            join(&mut self.decode_sequence())
        )
    }
}

/// One decoding order per receiver.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DecodingProfile {
    orders: Vec<DecodingOrder>,
}

impl DecodingProfile {
    pub fn new(orders: Vec<DecodingOrder>) -> Result<Self> {
        let k = orders.len();
        if k == 0 {
            return Err(Error::InvalidOrder("profile has no receivers".into()));
        }
        for (j, o) in orders.iter().enumerate() {
            if o.k() != k {
                return Err(Error::InvalidOrder(format!(
                    "order for receiver {} covers {} users, expected {k}",
                    j + 1,
                    o.k()
                )));
            }
            if o.receiver() != j {
                return Err(Error::InvalidOrder(format!(
                    "entry {} holds the order of receiver {}",
                    j + 1,
                    o.receiver() + 1
                )));
            }
        }
        Ok(Self { orders })
    }

    /// Builds a profile from per-receiver decode sequences (see
    /// [`DecodingOrder::from_decode_sequence`]).
    pub fn from_decode_sequences(sequences: &[Vec<usize>]) -> Result<Self> {
        let k = sequences.len();
        let orders = sequences
            .iter()
            .enumerate()
            .map(|(j, seq)| DecodingOrder::from_decode_sequence(k, j, seq))
            .collect::<Result<_>>()?;
        Self::new(orders)
    }

    pub fn k(&self) -> usize {
        self.orders.len()
    }

    pub fn orders(&self) -> &[DecodingOrder] {
        &self.orders
    }

    pub fn order(&self, receiver: usize) -> &DecodingOrder {
        &self.orders[receiver]
    }

    /// Receivers that decode `user`.
    pub fn decoder_set(&self, user: usize) -> UserSet {
        let k = self.k();
        let mut receivers = UserSet::empty(k);
        for o in &self.orders {
            if o.decoded_set().contains(user) {
                receivers = receivers.with(o.receiver());
            }
        }
        receivers
    }

    #[must_use]
    pub fn canonicalize(&self) -> Self {
        Self {
            orders: self.orders.iter().map(DecodingOrder::canonicalize).collect(),
        }
    }

    /// Concatenated permutations, the key used to order equally good profiles.
    pub fn encoding(&self) -> Vec<usize> {
        self.orders.iter().flat_map(|o| o.perm().iter().copied()).collect()
    }
}

impl fmt::Display for DecodingProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, o) in self.orders.iter().enumerate() {
            if n > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{o}")?;
        }
        Ok(())
    }
}
