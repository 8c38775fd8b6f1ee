//! Seeded random instances.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! fully determines the generated channel.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{DmcChannel, GaussianChannel, RankFunctionSet, RankTable, Result};

/// Number of concave terms summed in a tabulated-submodular instance.
const TABULATED_TERMS: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenKind {
    Gaussian,
    Dmc,
    TabulatedSubmodular,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub k: usize,
    pub seed: u64,
    /// Transmit power of every user (Gaussian only).
    pub power: f64,
    /// Noise variance at every receiver (Gaussian only).
    pub noise: f64,
}

impl GenParams {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            power: 1.0,
            noise: 1.0,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Unit-mean exponential draw by inversion; zero only if the uniform draw is exactly 0.
fn exp1(rng: &mut impl Rng) -> f64 {
    let u: f64 = rng.gen();
    -(1.0 - u).ln()
}

pub fn generate(kind: GenKind, params: &GenParams) -> Result<RankFunctionSet> {
    match kind {
        GenKind::Gaussian => gaussian(params).map(RankFunctionSet::Gaussian),
        GenKind::Dmc => dmc(params.k, params.seed).map(RankFunctionSet::Dmc),
        GenKind::TabulatedSubmodular => {
            tabulated_submodular(params.k, params.seed).map(RankFunctionSet::Tabulated)
        }
    }
}

/// Gains i.i.d. unit-mean exponential (Rayleigh-faded power gains).
pub fn gaussian(params: &GenParams) -> Result<GaussianChannel> {
    let mut rng = rng(params.seed);
    let k = params.k;
    let gains = (0..k)
        .map(|_| (0..k).map(|_| exp1(&mut rng)).collect())
        .collect();
    GaussianChannel::new(gains, vec![params.power; k], vec![params.noise; k])
}

/// Binary inputs and outputs with uniformly drawn input pmfs and transition rows.
pub fn dmc(k: usize, seed: u64) -> Result<DmcChannel> {
    let mut rng = rng(seed);
    let binary = |rng: &mut ChaCha8Rng| {
        let p: f64 = rng.gen();
        vec![p, 1.0 - p]
    };
    let input_pmfs = (0..k).map(|_| binary(&mut rng)).collect();
    let transitions = (0..k)
        .map(|_| (0..1usize << k).map(|_| binary(&mut rng)).collect())
        .collect();
    DmcChannel::new(input_pmfs, transitions)
}

/// `f_j(S) = Σ_m c_{j,m} log2(1 + Σ_{i∈S} w_{j,m,i})`, a sum of concave
/// functions of nonnegative modular functions, hence a rank function.
pub fn tabulated_submodular(k: usize, seed: u64) -> Result<RankTable> {
    let mut rng = rng(seed);
    let coeffs: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..TABULATED_TERMS).map(|_| rng.gen_range(0.2..1.0)).collect())
        .collect();
    let weights: Vec<Vec<Vec<f64>>> = (0..k)
        .map(|_| {
            (0..TABULATED_TERMS)
                .map(|_| (0..k).map(|_| exp1(&mut rng)).collect())
                .collect()
        })
        .collect();
    RankTable::from_fn(k, |j, s| {
        (0..TABULATED_TERMS)
            .map(|m| {
                let sum: f64 = s.iter().map(|i| weights[j][m][i]).sum();
                coeffs[j][m] * (1.0 + sum).log2()
            })
            .sum()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::validate_rank_axioms;

    #[test]
    fn same_seed_same_channel() {
        for kind in [GenKind::Gaussian, GenKind::Dmc, GenKind::TabulatedSubmodular] {
            let p = GenParams::new(3, 42);
            assert_eq!(generate(kind, &p).unwrap(), generate(kind, &p).unwrap());
            assert_ne!(
                generate(kind, &p).unwrap(),
                generate(kind, &GenParams::new(3, 43)).unwrap()
            );
        }
    }

    #[test]
    fn generated_sets_are_rank_functions() {
        for kind in [GenKind::Gaussian, GenKind::Dmc, GenKind::TabulatedSubmodular] {
            for seed in 0..5 {
                let rs = generate(kind, &GenParams::new(3, seed)).unwrap();
                assert!(validate_rank_axioms(&rs, 1e-9).unwrap().passed(), "{kind:?} {seed}");
            }
        }
    }
}
