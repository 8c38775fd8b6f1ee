use std::fmt;

use crate::{Error, Result};

/// Largest user count a [`UserSet`] can describe.
pub const MAX_USERS: usize = 64;

/// A subset of the users `{0, .., k-1}` stored as a bitmask.
///
/// Two sets compare equal only if they are built for the same `k`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct UserSet {
    bits: u64,
    k: usize,
}

fn universe_bits(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

impl UserSet {
    pub fn empty(k: usize) -> Self {
        assert!(
            (1..=MAX_USERS).contains(&k),
            "user count {k} outside 1..={MAX_USERS}"
        );
        Self { bits: 0, k }
    }

    pub fn full(k: usize) -> Self {
        let mut s = Self::empty(k);
        s.bits = universe_bits(k);
        s
    }

    pub fn singleton(k: usize, user: usize) -> Result<Self> {
        Self::from_users(k, [user])
    }

    /// Builds a set from user indices, rejecting out-of-range or repeated users.
    pub fn from_users(k: usize, users: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(k);
        for u in users {
            if u >= k {
                return Err(Error::UserOutOfRange { index: u, k });
            }
            if s.contains(u) {
                return Err(Error::InvalidOrder(format!("user {} listed twice", u + 1)));
            }
            s.bits |= 1 << u;
        }
        Ok(s)
    }

    pub fn from_bits(k: usize, bits: u64) -> Result<Self> {
        let s = Self::empty(k);
        if bits & !universe_bits(k) != 0 {
            return Err(Error::UserOutOfRange {
                index: 63 - bits.leading_zeros() as usize,
                k,
            });
        }
        Ok(Self { bits, ..s })
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, user: usize) -> bool {
        user < self.k && self.bits & (1 << user) != 0
    }

    #[must_use]
    pub fn with(mut self, user: usize) -> Self {
        debug_assert!(user < self.k);
        self.bits |= 1 << user;
        self
    }

    #[must_use]
    pub fn without(mut self, user: usize) -> Self {
        if user < self.k {
            self.bits &= !(1 << user);
        }
        self
    }

    #[must_use]
    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & universe_bits(self.k),
            k: self.k,
        }
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        Self {
            bits: self.bits | other.bits,
            k: self.k,
        }
    }

    #[must_use]
    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.k, other.k);
        Self {
            bits: self.bits & other.bits,
            k: self.k,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits & !other.bits == 0
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.k).filter(move |&u| bits & (1 << u) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `2^k` subsets in increasing bitmask order. Panics if `k` is too large
    /// to enumerate.
    pub fn all_subsets(k: usize) -> impl Iterator<Item = UserSet> {
        assert!(k < 32, "refusing to enumerate 2^{k} subsets");
        (0..1u64 << k).map(move |bits| UserSet { bits, k })
    }
}

impl fmt::Display for UserSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, u) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", u + 1)?;
        }
        f.write_str("}")
    }
}
