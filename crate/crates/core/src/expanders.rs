//! Random regular graphs, exact edge expansion at small scale, and the
//! subdivision-separator experiment: subdividing a 3-regular expander
//! cannot create small balanced separations, and the lower-bound formula
//! is checked against the exact minimum separator.

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{subdivide_uniform, Graph};
use crate::mathx;
use crate::separators::exact_min_balanced_separation;
use crate::{Error, Result};

const PAIRING_ATTEMPTS: usize = 10_000;
const CONNECTIVITY_RESAMPLES: usize = 1_000;

pub const DEFAULT_EXPANSION_LIMIT: usize = 24;

fn pairing_sample(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Result<Graph> {
    for _ in 0..PAIRING_ATTEMPTS {
        let mut points: alloc::vec::Vec<usize> = (0..n * d).collect();
        points.shuffle(rng);
        let mut edges = alloc::vec::Vec::with_capacity(n * d / 2);
        let mut simple = true;
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0] / d, pair[1] / d);
            if u == v || edges.contains(&(u.min(v), u.max(v))) {
                simple = false;
                break;
            }
            edges.push((u.min(v), u.max(v)));
        }
        if simple {
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::RejectionBudget(alloc::format!(
        "no simple {d}-regular pairing on {n} vertices after {PAIRING_ATTEMPTS} attempts"
    )))
}

/// Random simple `d`-regular graph from the pairing model, rejecting
/// pairings with loops or parallel edges. Deterministic under the seed.
pub fn random_regular(n: usize, d: usize, rng_seed: u64) -> Result<Graph> {
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidArgument(alloc::format!(
            "n*d must be even, got n={n}, d={d}"
        )));
    }
    if n <= d {
        return Err(Error::InvalidArgument(alloc::format!(
            "need n > d for a simple {d}-regular graph, got n={n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    pairing_sample(n, d, &mut rng)
}

/// Exact edge expansion: the minimum of `e(S, V\S) / |S|` over nonempty
/// sets with `|S| <= n/2`, by subset enumeration. Zero iff the graph is
/// disconnected (or has no valid `S`).
pub fn edge_expansion_exact(g: &Graph, n_limit: usize) -> Result<Rational64> {
    if g.n() > n_limit {
        return Err(Error::TooLarge(alloc::format!(
            "exact expansion limited to {n_limit} vertices, got {}",
            g.n()
        )));
    }
    let n = g.n();
    if n > 32 {
        return Err(Error::TooLarge(alloc::format!(
            "exact expansion enumerates subsets and supports at most 32 vertices, got {n}"
        )));
    }
    let mut adj = alloc::vec![0u64; n];
    for v in 0..n {
        for &u in g.neighbors(v) {
            adj[v] |= 1 << u;
        }
    }
    let half = n / 2;
    let mut best: Option<Rational64> = None;
    let limit: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let mut s = 1u64;
    while s != 0 && s <= limit {
        let size = s.count_ones() as usize;
        if size <= half {
            let mut cut = 0i64;
            let mut f = s;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                cut += (adj[v] & !s).count_ones() as i64;
            }
            let ratio = Rational64::new(cut, size as i64);
            if best.as_ref().is_none_or(|b| ratio < *b) {
                best = Some(ratio);
            }
        }
        if s == limit {
            break;
        }
        s += 1;
    }
    Ok(best.unwrap_or_else(|| Rational64::new(0, 1)))
}

/// The separator lower bound `n' / (3 (1 + 3m/2) (6/alpha + 2))` for a
/// subdivision (each edge at most `m` times) of a 3-regular
/// `alpha`-expander on `n'` total vertices.
pub fn expsep_bound(n_prime: usize, m: usize, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::InvalidArgument(alloc::format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    if n_prime == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "n_prime must be at least 1",
        )));
    }
    Ok(n_prime as f64 / (3.0 * (1.0 + 1.5 * m as f64) * (6.0 / alpha + 2.0)))
}

/// One run of the subdivision-separator experiment.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpanderReport {
    pub n: usize,
    pub d: usize,
    pub alpha_exact: Rational64,
    pub m_subdiv: usize,
    pub n_prime: usize,
    pub separator_found: usize,
    pub bound: f64,
    /// Disconnected pairing-model samples rejected before this one.
    pub resamples: usize,
    pub seed: u64,
}

/// Sample a connected random 3-regular graph (disconnected draws are
/// rejected and counted), measure its exact edge expansion, subdivide
/// every edge exactly `m` times, and compare the exact minimum balanced
/// separation of the subdivision against [`expsep_bound`]. The
/// inequality `separator_found >= bound` is a proved property of
/// expander subdivisions and must hold on every report.
pub fn expander_separator_experiment(n: usize, m: usize, rng_seed: u64) -> Result<ExpanderReport> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(alloc::format!(
            "n must be even for 3-regular graphs, got {n}"
        )));
    }
    if n > 20 {
        return Err(Error::TooLarge(alloc::format!(
            "experiment limited to n <= 20 base vertices, got {n}"
        )));
    }
    let n_prime = n + m * (3 * n / 2);
    if n_prime > 64 {
        return Err(Error::TooLarge(alloc::format!(
            "subdivided size {n_prime} exceeds the exact-separator range (64)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut resamples = 0;
    let (g, alpha) = loop {
        let g = pairing_sample(n, 3, &mut rng)?;
        let alpha = edge_expansion_exact(&g, DEFAULT_EXPANSION_LIMIT)?;
        if alpha > Rational64::new(0, 1) {
            break (g, alpha);
        }
        resamples += 1;
        if resamples > CONNECTIVITY_RESAMPLES {
            return Err(Error::RejectionBudget(alloc::format!(
                "no connected sample within {CONNECTIVITY_RESAMPLES} redraws"
            )));
        }
    };
    let subdivided = subdivide_uniform(&g, m);
    debug_assert_eq!(subdivided.n(), n_prime);
    let sep = exact_min_balanced_separation(&subdivided, 64)?;
    let alpha_f = *alpha.numer() as f64 / *alpha.denom() as f64;
    let bound = expsep_bound(n_prime, m, alpha_f)?;
    Ok(ExpanderReport {
        n,
        d: 3,
        alpha_exact: alpha,
        m_subdiv: m,
        n_prime,
        separator_found: sep.size,
        bound,
        resamples,
        seed: rng_seed,
    })
}

/// Reference curve for expansion profiles: `gamma * e^(k^(3/4))`.
pub fn subexponential_reference(gamma: f64, k: usize) -> f64 {
    gamma * mathx::exp(mathx::powf(k as f64, 0.75))
}
