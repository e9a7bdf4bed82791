//! Probabilistic upper bounds on the k- and alpha-domination numbers, and
//! the sampling probability derived from them.
//!
//! Binomials and fractional powers are evaluated in log space; reachability
//! graphs of city networks have minimum degrees in the hundreds and average
//! degrees in the thousands, far beyond what direct evaluation survives.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::reachability::ReachabilityGraph;

/// `ln C(n, r)`, `-inf` when `r > n`.
pub fn ln_binomial(n: u64, r: u64) -> f64 {
    if r > n {
        return f64::NEG_INFINITY;
    }
    let r = r.min(n - r);
    (1..=r)
        .map(|i| ((n - r + i) as f64 / i as f64).ln())
        .sum()
}

/// `⌈alpha · d⌉`, treating products within 1e-9 relative of an integer as
/// that integer so that e.g. `0.3 · 10` is 3 rather than 4.
pub fn ceil_alpha(alpha: f64, d: usize) -> usize {
    let x = alpha * d as f64;
    let nearest = x.round();
    if (x - nearest).abs() <= 1e-9 * x.abs().max(1.0) {
        nearest as usize
    } else {
        x.ceil() as usize
    }
}

/// `ln(δ') - ln(b)/δ' - (1 + 1/δ') ln(1 + δ')`: log of the fraction of `n`
/// the bounds subtract.
fn ln_saving(delta_prime: f64, ln_b: f64) -> f64 {
    delta_prime.ln() - ln_b / delta_prime - (1.0 + 1.0 / delta_prime) * (1.0 + delta_prime).ln()
}

/// Sampling probability `p = 1 - (b_{k-1} (1 + δ'))^{-1/δ'}` with
/// `δ' = δ - k + 1` and `b_{k-1} = C(δ, k-1)`. A fractional `delta_eff` (the
/// average degree) is floored first.
pub fn compute_probability_p(delta_eff: f64, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    if !(delta_eff.is_finite() && delta_eff.floor() >= k as f64) {
        return Err(Error::DegreeBelowK { delta: delta_eff, k });
    }
    let delta = delta_eff.floor() as u64;
    let delta_prime = (delta - k as u64 + 1) as f64;
    let ln_b = ln_binomial(delta, k as u64 - 1);
    let x = (ln_b + (1.0 + delta_prime).ln()) / delta_prime;
    Ok(-(-x).exp_m1())
}

/// Upper bound on the k-domination number of any graph with `n` vertices and
/// minimum degree `delta ≥ k`.
pub fn bound_theorem1(n: usize, delta: usize, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    if delta < k {
        return Err(Error::DegreeBelowK { delta: delta as f64, k });
    }
    let delta_prime = (delta - k + 1) as f64;
    let ln_b = ln_binomial(delta as u64, k as u64 - 1);
    Ok(-ln_saving(delta_prime, ln_b).exp_m1() * n as f64)
}

/// Upper bound on the alpha-domination number from a degree sequence.
/// `δ̂ = ⌊δ(1 - α)⌋ + 1`, `d̂_α = (1/n) Σ C(dᵢ, ⌈α dᵢ⌉ - 1)`.
pub fn bound_theorem2(degree_sequence: &[usize], alpha: f64) -> Result<f64> {
    let parts = alpha_bound_parts(degree_sequence, alpha)?;
    Ok(parts.bound)
}

struct AlphaBoundParts {
    delta_hat: usize,
    ln_dhat: f64,
    bound: f64,
}

fn alpha_bound_parts(degree_sequence: &[usize], alpha: f64) -> Result<AlphaBoundParts> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let n = degree_sequence.len();
    let delta = *degree_sequence.iter().min().ok_or(Error::EmptyDegreeSequence)?;
    if delta == 0 {
        return Err(Error::ZeroDegree);
    }
    let delta_hat = (delta as f64 * (1.0 - alpha)).floor() as usize + 1;
    let logs: Vec<f64> = degree_sequence
        .iter()
        .map(|&d| ln_binomial(d as u64, ceil_alpha(alpha, d) as u64 - 1))
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_sum = top + logs.iter().map(|&l| (l - top).exp()).sum::<f64>().ln();
    let ln_dhat = ln_sum - (n as f64).ln();
    let bound = -ln_saving(delta_hat as f64, ln_dhat).exp_m1() * n as f64;
    Ok(AlphaBoundParts { delta_hat, ln_dhat, bound })
}

/// Both bounds evaluated on a reachability graph, with the inputs that feed
/// them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta: usize,
    pub dbar: f64,
    pub k: usize,
    pub delta_prime: usize,
    /// `ln C(δ, k - 1)`
    pub b_k_minus_1: f64,
    pub p: f64,
    pub theorem1_bound: f64,
    pub alpha: Option<f64>,
    pub delta_hat: Option<usize>,
    /// `ln d̂_α`
    pub dhat_alpha: Option<f64>,
    pub theorem2_bound: Option<f64>,
}

impl BoundReport {
    pub fn compute(r: &ReachabilityGraph, k: usize, alpha: Option<f64>) -> Result<Self> {
        let stats = r.degree_stats();
        let delta = stats.min;
        let theorem1_bound = bound_theorem1(r.num_vertices(), delta, k)?;
        let p = compute_probability_p(delta as f64, k)?;
        let (delta_hat, dhat_alpha, theorem2_bound) = match alpha {
            Some(a) => {
                let parts = alpha_bound_parts(&r.degree_sequence(), a)?;
                (Some(parts.delta_hat), Some(parts.ln_dhat), Some(parts.bound))
            }
            None => (None, None, None),
        };
        Ok(Self {
            n: r.num_vertices(),
            delta,
            dbar: stats.mean,
            k,
            delta_prime: delta - k + 1,
            b_k_minus_1: ln_binomial(delta as u64, k as u64 - 1),
            p,
            theorem1_bound,
            alpha,
            delta_hat,
            dhat_alpha,
            theorem2_bound,
        })
    }
}
