//! Seeded `G(n,p)` sampling, stringency rates and the primeness union bound.
//!
//! # Sampling stream
//!
//! `sample_gnp(n, p, seed)` seeds `ChaCha8Rng` with `seed_from_u64(seed)`
//! and visits vertex pairs in graph6 order: for `j` in `1..n`, for `i` in
//! `0..j`. Each pair draws one `next_u64()`, keeps its top 53 bits `x`, and
//! gets an edge iff `x * den < num * 2^53` where `p = num/den` in lowest
//! terms. The comparison is exact, so `p` is honoured to the last bit.
//!
//! Trial `i` of a rate estimate, and attempt `i` of [`find_stringent`], uses
//! the seed `seed ^ i`.

use num::bigint::BigInt;
use num::{One, ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Rational;
use crate::structure::{is_asymmetric, is_prime};

/// Seed used when none is given.
pub const DEFAULT_SEED: RngSeed = RngSeed(7);

/// Attempts [`find_stringent`] makes before giving up.
pub const DEFAULT_ATTEMPT_CAP: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct RngSeed(pub u64);

impl RngSeed {
    /// Seed for the `index`-th trial.
    pub fn trial(self, index: u64) -> RngSeed {
        RngSeed(self.0 ^ index)
    }

    /// An independent-looking seed for sub-stream `stream` (splitmix64 of
    /// `seed + (stream + 1) * golden`).
    pub fn derive(self, stream: u64) -> RngSeed {
        let mut z = self.0.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        RngSeed(z ^ (z >> 31))
    }
}

fn check_probability(p: &Rational) -> Result<()> {
    if *p <= Rational::zero() || *p >= Rational::one() {
        return Err(Error::InvalidParameter(format!("p = {p} is not in (0,1)")));
    }
    Ok(())
}

enum Threshold {
    Small { num: u128, den: u128 },
    Big { num: BigInt, den: BigInt },
}

impl Threshold {
    fn new(p: &Rational) -> Self {
        match (p.numer().to_u64(), p.denom().to_u64()) {
            (Some(num), Some(den)) => Threshold::Small { num: num as u128, den: den as u128 },
            _ => Threshold::Big { num: p.numer().clone(), den: p.denom().clone() },
        }
    }

    fn hit(&self, draw: u64) -> bool {
        let x = draw >> 11;
        match self {
            Threshold::Small { num, den } => (x as u128) * den < num << 53,
            Threshold::Big { num, den } => BigInt::from(x) * den < num << 53,
        }
    }
}

pub fn sample_gnp(n: usize, p: &Rational, seed: RngSeed) -> Result<Graph> {
    check_probability(p)?;
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    let threshold = Threshold::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.0);
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if threshold.hit(rng.next_u64()) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// `sum_{k=2}^{n-1} C(n,k) ((1-p)^k + p^k)^(n-k)`: a union bound on the
/// probability that `G(n,p)` has a homogeneous set of size `k`, summed over
/// the sizes that break primeness.
pub fn prime_failure_bound(n: usize, p: &Rational) -> Result<Rational> {
    check_probability(p)?;
    if n < 2 {
        return Err(Error::InvalidParameter("n must be at least 2".into()));
    }
    Ok((2..n).map(|k| prime_failure_term(n, k, p)).fold(Rational::zero(), |a, b| a + b))
}

/// The size-`k` term of [`prime_failure_bound`].
pub fn prime_failure_term(n: usize, k: usize, p: &Rational) -> Rational {
    let q = Rational::one() - p;
    let inner = num::pow(q, k) + num::pow(p.clone(), k);
    Rational::from_integer(binomial(n, k)) * num::pow(inner, n - k)
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TrialOutcome {
    pub index: u64,
    pub seed: u64,
    pub edges: usize,
    pub prime: bool,
    pub asymmetric: bool,
}

impl TrialOutcome {
    pub fn stringent(&self) -> bool {
        self.prime && self.asymmetric
    }
}

pub fn run_trial(n: usize, p: &Rational, seed: RngSeed, index: u64) -> Result<TrialOutcome> {
    let s = seed.trial(index);
    let g = sample_gnp(n, p, s)?;
    let prime = is_prime(&g);
    Ok(TrialOutcome { index, seed: s.0, edges: g.edge_count(), prime, asymmetric: is_asymmetric(&g) })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RateEstimate {
    pub trials: u64,
    pub passed: u64,
    /// Seeds of the samples that were not stringent.
    pub failures: Vec<u64>,
}

impl RateEstimate {
    pub fn rate(&self) -> Rational {
        Rational::new(BigInt::from(self.passed), BigInt::from(self.trials))
    }
}

pub fn estimate_stringent_rate(n: usize, p: &Rational, trials: u64, seed: RngSeed) -> Result<RateEstimate> {
    estimate_with(n, p, trials, seed, |_| {})
}

/// As [`estimate_stringent_rate`], handing every outcome to `sink` in
/// trial order.
pub fn estimate_with<F>(n: usize, p: &Rational, trials: u64, seed: RngSeed, mut sink: F) -> Result<RateEstimate>
where
    F: FnMut(&TrialOutcome),
{
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let mut est = RateEstimate { trials, passed: 0, failures: Vec::new() };
    for index in 0..trials {
        let t = run_trial(n, p, seed, index)?;
        if t.stringent() {
            est.passed += 1;
        } else {
            est.failures.push(t.seed);
        }
        sink(&t);
    }
    Ok(est)
}

/// First stringent graph in the stream `seed ^ 0, seed ^ 1, ...`, together
/// with the number of samples drawn.
pub fn find_stringent(n: usize, p: &Rational, seed: RngSeed, cap: u64) -> Result<(Graph, u64)> {
    if n < 6 {
        return Err(Error::InvalidParameter(format!(
            "no stringent graph has {n} vertices in the sampled range; need n >= 6"
        )));
    }
    for index in 0..cap {
        let g = sample_gnp(n, p, seed.trial(index))?;
        if is_prime(&g) && is_asymmetric(&g) {
            return Ok((g, index + 1));
        }
    }
    Err(Error::GaveUp { attempts: cap, what: format!("no stringent sample of G({n}, {p})") })
}
