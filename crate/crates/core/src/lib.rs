//! Optimal successive-decoding orders for max-min fairness in K-user
//! memoryless interference channels.
//!
//! Every receiver `j` decodes a subset of the transmitters one after another
//! before it decodes its own (designated) user. The achievable rate of a user
//! is capped by every receiver that decodes it, and the binding cap is the
//! smallest one. This crate computes, per receiver, the decoding order that
//! maximizes the minimum user rate using a greedy rule over the receiver's
//! rank function, and checks the result against exhaustive enumeration.
//!
//! Users and receivers are indexed from `0` in the library API. Text
//! renderings and scenario files use 1-based indices.
//!
//! ```
//! use sicfair_core::{GaussianChannel, RankFunctionSet, greedy_profile, SolveOptions};
//!
//! let ch = GaussianChannel::new(
//!     vec![vec![1.0, 2.0], vec![0.1, 1.0]],
//!     vec![1.0, 1.0],
//!     vec![1.0, 1.0],
//! )
//! .unwrap();
//! let report = greedy_profile(&RankFunctionSet::Gaussian(ch), &SolveOptions::default()).unwrap();
//! assert!((report.min_rate - (21.0f64 / 11.0).log2()).abs() < 1e-12);
//! assert_eq!(report.bottleneck_users, vec![1]);
//! ```

pub mod axioms;
pub mod channel;
mod error;
pub mod generate;
pub mod greedy;
pub mod oracle;
pub mod ordering;
pub mod rates;
pub mod scenario;
mod userset;

pub use axioms::{validate_rank_axioms, AxiomCheck, AxiomReport, ReceiverAxioms};
pub use channel::{BackendKind, DmcChannel, GaussianChannel, RankFunctionSet, RankTable};
pub use error::{Error, Result};
pub use greedy::{
    gaussian_fast_order, gaussian_rate_formula, greedy_order, greedy_profile, SolveOptions,
    SolveReport,
};
pub use oracle::{
    brute_force_maxmin, certify, enumerate_orders, CertifyReport, EnumerationBudget, OracleResult,
};
pub use ordering::{DecodingOrder, DecodingProfile};
pub use rates::{min_rate, rate_of_user, rate_vector, MinRate, RateVector};
pub use userset::{UserSet, MAX_USERS};

/// Floating-point tolerances shared by validation, rate evaluation and reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Slack allowed on the rank-function axioms and on negative marginal rates.
    pub axiom: f64,
    /// Band used when grouping equal rates (e.g. the bottleneck set).
    pub equality: f64,
}

impl Tolerances {
    pub const DEFAULT_AXIOM: f64 = 1e-9;
    pub const DEFAULT_EQUALITY: f64 = 1e-12;
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            axiom: Self::DEFAULT_AXIOM,
            equality: Self::DEFAULT_EQUALITY,
        }
    }
}
