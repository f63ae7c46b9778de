//! Fractional complementary packings: distributions over vertex-removal
//! sets whose residuals land in a bounded-component-size class, their
//! thickness, and the constructions that produce them (modular grid
//! sets, decomposition layering, and the iterated layered packing).

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::mathx;
use crate::treedecomp::{
    build_bounded_reuse_decomposition, validate_decomposition, TreeDecomposition,
};
use crate::{Error, Result};

/// Weighted family of removal sets with weights summing to exactly 1.
/// Duplicate sets are kept merged; weights are exact rationals in every
/// mode so that thickness claims check exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalPacking {
    entries: Vec<(VertexSet, BigRational)>,
}

impl FractionalPacking {
    /// Normalize: merge duplicate sets, drop zero weights, then require
    /// nonnegative weights with exact sum 1.
    pub fn new(entries: Vec<(VertexSet, BigRational)>) -> Result<Self> {
        let mut merged: Vec<(VertexSet, BigRational)> = Vec::new();
        for (set, w) in entries {
            if w.is_negative() {
                return Err(Error::InvalidArgument(alloc::format!(
                    "negative packing weight {w}"
                )));
            }
            if w.is_zero() {
                continue;
            }
            match merged.binary_search_by(|(s, _)| s.cmp(&set)) {
                Ok(i) => merged[i].1 += w,
                Err(i) => merged.insert(i, (set, w)),
            }
        }
        let total: BigRational = merged.iter().map(|(_, w)| w.clone()).sum();
        if !total.is_one() {
            return Err(Error::InvalidArgument(alloc::format!(
                "packing weights sum to {total}, expected 1"
            )));
        }
        Ok(FractionalPacking { entries: merged })
    }

    /// The thickness-0 packing putting all weight on the empty set.
    pub fn trivial() -> Self {
        FractionalPacking {
            entries: alloc::vec![(VertexSet::new(), BigRational::one())],
        }
    }

    /// Equal weight `1/sets.len()` on each listed set (duplicates merge).
    pub fn uniform(sets: Vec<VertexSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "uniform packing over no sets",
            )));
        }
        let w = BigRational::new(BigInt::one(), BigInt::from(sets.len()));
        FractionalPacking::new(sets.into_iter().map(|s| (s, w.clone())).collect())
    }

    pub fn entries(&self) -> &[(VertexSet, BigRational)] {
        &self.entries
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        for (set, _) in &self.entries {
            set.validate_for(g)?;
        }
        Ok(())
    }
}

/// Maximum over vertices of the total weight of sets containing it;
/// zero on the empty graph.
pub fn thickness(g: &Graph, pi: &FractionalPacking) -> Result<BigRational> {
    pi.validate_for(g)?;
    let mut per_vertex = alloc::vec![BigRational::zero(); g.n()];
    for (set, w) in pi.entries() {
        for v in set.iter() {
            per_vertex[v] += w;
        }
    }
    Ok(per_vertex.into_iter().max().unwrap_or_else(BigRational::zero))
}

/// The witness class: graphs whose components all have at most `bound`
/// vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WitnessClassSpec {
    pub bound: usize,
}

impl WitnessClassSpec {
    pub fn new(bound: usize) -> Result<Self> {
        if bound == 0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "component bound must be at least 1",
            )));
        }
        Ok(WitnessClassSpec { bound })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryViolation {
    pub entry_index: usize,
    pub component: VertexSet,
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementaryCheck {
    pub holds: bool,
    pub first_violation: Option<ComplementaryViolation>,
}

/// Does every support set leave only components of at most `w.bound`
/// vertices? Reports the first oversized component otherwise.
pub fn validate_complementary(
    g: &Graph,
    pi: &FractionalPacking,
    w: WitnessClassSpec,
) -> Result<ComplementaryCheck> {
    pi.validate_for(g)?;
    for (i, (set, _)) in pi.entries().iter().enumerate() {
        let alive = set.complement(g.n());
        let (sub, map) = induced_subgraph(g, &alive)?;
        for comp in sub.components() {
            if comp.len() > w.bound {
                return Ok(ComplementaryCheck {
                    holds: false,
                    first_violation: Some(ComplementaryViolation {
                        entry_index: i,
                        component: comp.iter().map(|&v| map[v]).collect(),
                        bound: w.bound,
                    }),
                });
            }
        }
    }
    Ok(ComplementaryCheck {
        holds: true,
        first_violation: None,
    })
}

fn max_component_size(g: &Graph, removed: &VertexSet) -> usize {
    let alive = removed.complement(g.n());
    let (sub, _) = induced_subgraph(g, &alive).expect("complement is valid");
    sub.components().iter().map(Vec::len).max().unwrap_or(0)
}

/// Packing produced by [`grid_packing`], together with the modulus and
/// the component bound `(u-1)^3` its residuals satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridPacking {
    pub packing: FractionalPacking,
    pub u: usize,
    pub component_bound: usize,
}

/// The modular packing on the strong product of three `n`-paths: with
/// `u = ceil(3/eps)`, the set for residue `t` removes all triples with a
/// coordinate congruent to `t` mod `u`; each vertex lies in at most three
/// of the `u` sets, so the thickness is at most `3/u <= eps`, and every
/// residual component fits in a `(u-1)^3` box. Degenerates to the
/// trivial packing when `n <= u - 1`.
pub fn grid_packing(n: usize, eps: Rational64) -> Result<GridPacking> {
    if n == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "grid packing requires n >= 1",
        )));
    }
    if eps <= Rational64::zero() || eps > Rational64::one() {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    let u = (Rational64::from_integer(3) / eps).ceil().to_integer() as usize;
    let component_bound = (u - 1).pow(3);
    if n < u {
        return Ok(GridPacking {
            packing: FractionalPacking::trivial(),
            u,
            component_bound,
        });
    }
    let flat = |i: usize, j: usize, k: usize| (i - 1) * n * n + (j - 1) * n + (k - 1);
    let mut sets = Vec::with_capacity(u);
    for t in 0..u {
        let mut set = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                for k in 1..=n {
                    if i % u == t || j % u == t || k % u == t {
                        set.push(flat(i, j, k));
                    }
                }
            }
        }
        sets.push(VertexSet::from_unsorted(set));
    }
    Ok(GridPacking {
        packing: FractionalPacking::uniform(sets)?,
        u,
        component_bound,
    })
}

/// Residue-class removal sets of a tree decomposition: `X_i` is the
/// union of bags at depths congruent to `i` mod `k`. Every vertex of `g`
/// appears in at most as many sets as its level span in `t`.
pub fn layered_removal_sets(
    g: &Graph,
    t: &TreeDecomposition,
    k: usize,
) -> Result<Vec<VertexSet>> {
    if k == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "layer count k must be at least 1",
        )));
    }
    let report = validate_decomposition(g, t);
    if let Some(first) = report.violations.first() {
        return Err(Error::InvalidArgument(alloc::format!(
            "invalid tree decomposition: {first}"
        )));
    }
    let depths = t.depths().expect("validated decomposition has depths");
    let mut sets = alloc::vec![Vec::new(); k];
    for (node, d) in depths.iter().enumerate() {
        sets[d % k].extend(t.nodes[node].bag.iter());
    }
    Ok(sets.into_iter().map(VertexSet::from_unsorted).collect())
}

/// The constant profile of the iterated packing construction, derived
/// from a separator profile `s(n) <= c * n^delta`, a slack exponent
/// `iota`, and a degree bound. Natural logarithms throughout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitConstants {
    pub c: f64,
    pub delta: f64,
    pub iota: f64,
    pub max_deg: usize,
    pub c1: f64,
    pub c2: f64,
    pub c2prime: f64,
    pub c3: f64,
    pub c4: f64,
    pub c5: f64,
    pub b: f64,
}

impl SplitConstants {
    /// Check the structural invariants without recomputing the chain:
    /// callers may carry hand-scaled constants, as long as they stay
    /// internally consistent.
    pub fn validate(&self) -> Result<()> {
        if !(self.c3 > 1.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "c3 must exceed 1, got {}",
                self.c3
            )));
        }
        if !(self.b > 1.0) {
            return Err(Error::InvalidArgument(alloc::format!(
                "b must exceed 1, got {}",
                self.b
            )));
        }
        let prod = self.c2prime * self.c5;
        if !((self.b - prod).abs() <= 1e-9 * self.b.max(1.0)) {
            return Err(Error::InvalidArgument(alloc::format!(
                "b = {} differs from c2prime * c5 = {prod}",
                self.b
            )));
        }
        if self.c2 < 1.0 || self.c1 <= 0.0 || self.c4 <= 0.0 || self.c5 <= 0.0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "split constants must be positive with c2 >= 1",
            )));
        }
        if !(self.iota > 0.0) || !(self.delta >= 0.0) || self.delta + self.iota >= 1.0 {
            return Err(Error::InvalidArgument(alloc::string::String::from(
                "need iota > 0, delta >= 0 and delta + iota < 1",
            )));
        }
        Ok(())
    }
}

/// Evaluate the constant chain: `c1 = 105c`, `c2 = 24(c1+1)(max_deg+1)`,
/// `c2' = c2^(1/(1-(delta+iota)))`, `c3 = 1/(delta+iota)`,
/// `c4 = (2 + 4 ln(max_deg+1)) / ((c3-1) * iota)`, `c5 = e^(c3*c4)`,
/// `b = c2' * c5`.
pub fn split_constants(c: f64, delta: f64, iota: f64, max_deg: usize) -> Result<SplitConstants> {
    if !(c >= 1.0) {
        return Err(Error::InvalidArgument(alloc::format!("need c >= 1, got {c}")));
    }
    if !(0.0..1.0).contains(&delta) {
        return Err(Error::InvalidArgument(alloc::format!(
            "need 0 <= delta < 1, got {delta}"
        )));
    }
    if !(iota > 0.0) || delta + iota >= 1.0 {
        return Err(Error::InvalidArgument(alloc::format!(
            "need iota > 0 and delta + iota < 1, got iota={iota}, delta+iota={}",
            delta + iota
        )));
    }
    let dpi = delta + iota;
    let c1 = 105.0 * c;
    let c2 = 24.0 * (c1 + 1.0) * (max_deg as f64 + 1.0);
    let c2prime = mathx::powf(c2, 1.0 / (1.0 - dpi));
    let c3 = 1.0 / dpi;
    let c4 = (2.0 + 4.0 * mathx::ln(max_deg as f64 + 1.0)) / ((c3 - 1.0) * iota);
    let c5 = mathx::exp(c3 * c4);
    let b = c2prime * c5;
    let consts = SplitConstants {
        c,
        delta,
        iota,
        max_deg,
        c1,
        c2,
        c2prime,
        c3,
        c4,
        c5,
        b,
    };
    consts.validate()?;
    Ok(consts)
}

/// How [`iterated_vs_packing`] realizes the distribution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PackingMode {
    /// Full product distribution; errors out past `support_budget` sets.
    Enumerate { support_budget: usize },
    /// `count` equally weighted draws from the same distribution.
    Sample { count: usize },
}

pub const DEFAULT_ENUMERATION_BUDGET: usize = 4096;

/// Outcome of the iterated construction.
#[derive(Clone, Debug, PartialEq)]
pub struct IteratedPacking {
    pub packing: FractionalPacking,
    /// Largest residual component over the support (the tightest witness
    /// bound the packing actually certifies).
    pub achieved_bound: usize,
    /// The profile's claimed bound `b^(1/eps)`.
    pub claimed_bound: f64,
    /// Number of layering rounds applied.
    pub rounds: usize,
    /// Whether the small-graph branch returned the trivial packing.
    pub trivial: bool,
}

/// The iterated layered packing: repeatedly (a) decompose each residual
/// component, (b) remove one residue class of decomposition levels
/// chosen uniformly among `k_i = ceil(iota * ln n_i)`, independently per
/// component, with the component-size target following
/// `n_{i+1} = c2 * n_i^(delta+iota)`. The number of rounds is the
/// largest `t` with `c4 * c3^t / ln n <= eps`; graphs with
/// `ln n < c4 / eps` take the trivial packing outright.
pub fn iterated_vs_packing(
    g: &Graph,
    eps: Rational64,
    consts: &SplitConstants,
    mode: PackingMode,
    rng_seed: u64,
) -> Result<IteratedPacking> {
    if g.n() == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "iterated packing requires a nonempty graph",
        )));
    }
    if eps <= Rational64::zero() || eps > Rational64::one() {
        return Err(Error::InvalidArgument(alloc::format!(
            "eps must lie in (0, 1], got {eps}"
        )));
    }
    consts.validate()?;
    let eps_f = eps.to_f64().expect("rational eps fits f64");
    let ln_n = mathx::ln(g.n() as f64);
    let claimed_bound = mathx::powf(consts.b, 1.0 / eps_f);
    if ln_n < consts.c4 / eps_f {
        return Ok(IteratedPacking {
            packing: FractionalPacking::trivial(),
            achieved_bound: max_component_size(g, &VertexSet::new()),
            claimed_bound,
            rounds: 0,
            trivial: true,
        });
    }
    let mut t = 0usize;
    while t < 1000 && consts.c4 * mathx::powf(consts.c3, (t + 1) as f64) / ln_n <= eps_f {
        t += 1;
    }

    let entries = match mode {
        PackingMode::Enumerate { support_budget } => {
            run_rounds_enumerate(g, consts, t, support_budget)?
        }
        PackingMode::Sample { count } => run_rounds_sample(g, consts, t, count, rng_seed)?,
    };
    let packing = FractionalPacking::new(entries)?;
    let achieved_bound = packing
        .entries()
        .iter()
        .map(|(set, _)| max_component_size(g, set))
        .max()
        .unwrap_or(0);
    Ok(IteratedPacking {
        packing,
        achieved_bound,
        claimed_bound,
        rounds: t,
        trivial: false,
    })
}

/// Per-component menu for one round: the merged distribution of removal
/// sets (in host labels) for each component of `g` minus `removed`.
fn round_component_menus(
    g: &Graph,
    removed: &VertexSet,
    k: usize,
    tw_budget: usize,
) -> Result<Vec<Vec<(VertexSet, BigRational)>>> {
    let alive = removed.complement(g.n());
    let (sub, map) = induced_subgraph(g, &alive)?;
    let mut menus = Vec::new();
    for comp in sub.components() {
        let comp_set: VertexSet = comp.iter().copied().collect();
        let (cg, cmap) = induced_subgraph(&sub, &comp_set)?;
        let dec = build_bounded_reuse_decomposition(&cg, cg.max_degree(), tw_budget)?;
        let sets = layered_removal_sets(&cg, &dec, k)?;
        let w = BigRational::new(BigInt::one(), BigInt::from(k));
        let mut menu: Vec<(VertexSet, BigRational)> = Vec::new();
        for local in sets {
            let host: VertexSet = local.iter().map(|v| map[cmap[v]]).collect();
            match menu.iter_mut().find(|(s, _)| *s == host) {
                Some((_, weight)) => *weight += w.clone(),
                None => menu.push((host, w.clone())),
            }
        }
        menus.push(menu);
    }
    Ok(menus)
}

fn round_params(consts: &SplitConstants, n_i: f64) -> (usize, usize) {
    let k = mathx::ceil(consts.iota * mathx::ln(n_i)).max(1.0) as usize;
    let tw_budget = mathx::floor(consts.c1 * mathx::powf(n_i, consts.delta)) as usize;
    (k, tw_budget)
}

fn run_rounds_enumerate(
    g: &Graph,
    consts: &SplitConstants,
    t: usize,
    support_budget: usize,
) -> Result<Vec<(VertexSet, BigRational)>> {
    let mut branches: Vec<(VertexSet, BigRational)> =
        alloc::vec![(VertexSet::new(), BigRational::one())];
    let mut n_i = g.n() as f64;
    for _ in 0..t {
        let (k, tw_budget) = round_params(consts, n_i);
        let mut next: Vec<(VertexSet, BigRational)> = Vec::new();
        for (removed, weight) in &branches {
            let menus = round_component_menus(g, removed, k, tw_budget)?;
            let mut partial: Vec<(VertexSet, BigRational)> =
                alloc::vec![(removed.clone(), weight.clone())];
            for menu in &menus {
                let mut grown = Vec::with_capacity(partial.len() * menu.len());
                for (acc_set, acc_w) in &partial {
                    for (choice, cw) in menu {
                        grown.push((acc_set.union(choice), acc_w * cw));
                    }
                }
                partial = grown;
                if partial.len() > support_budget {
                    return Err(Error::EnumerationBudget {
                        limit: support_budget,
                    });
                }
            }
            next.extend(partial);
        }
        // Merge identical removal sets across branches.
        next.sort_by(|(a, _), (b, _)| a.cmp(b));
        let mut merged: Vec<(VertexSet, BigRational)> = Vec::new();
        for (set, w) in next {
            match merged.last_mut() {
                Some((last, lw)) if *last == set => *lw += w,
                _ => merged.push((set, w)),
            }
        }
        if merged.len() > support_budget {
            return Err(Error::EnumerationBudget {
                limit: support_budget,
            });
        }
        branches = merged;
        n_i = consts.c2 * mathx::powf(n_i, consts.delta + consts.iota);
    }
    Ok(branches)
}

fn run_rounds_sample(
    g: &Graph,
    consts: &SplitConstants,
    t: usize,
    count: usize,
    rng_seed: u64,
) -> Result<Vec<(VertexSet, BigRational)>> {
    if count == 0 {
        return Err(Error::InvalidArgument(alloc::string::String::from(
            "sample mode requires at least one draw",
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let draw_weight = BigRational::new(BigInt::one(), BigInt::from(count));
    let mut entries = Vec::with_capacity(count);
    for _ in 0..count {
        let mut removed = VertexSet::new();
        let mut n_i = g.n() as f64;
        for _ in 0..t {
            let (k, tw_budget) = round_params(consts, n_i);
            let alive = removed.complement(g.n());
            let (sub, map) = induced_subgraph(g, &alive)?;
            let mut union = removed.clone();
            for comp in sub.components() {
                let comp_set: VertexSet = comp.iter().copied().collect();
                let (cg, cmap) = induced_subgraph(&sub, &comp_set)?;
                let dec =
                    build_bounded_reuse_decomposition(&cg, cg.max_degree(), tw_budget)?;
                let sets = layered_removal_sets(&cg, &dec, k)?;
                let pick = rng.random_range(0..k);
                let host: VertexSet = sets[pick].iter().map(|v| map[cmap[v]]).collect();
                union = union.union(&host);
            }
            removed = union;
            n_i = consts.c2 * mathx::powf(n_i, consts.delta + consts.iota);
        }
        entries.push((removed, draw_weight.clone()));
    }
    Ok(entries)
}

/// Two-stage composition: draw `X1` from `pi1`, then `X2` from the inner
/// packing supplied for that support set (over `g - X1`, in local
/// labels), and return the distribution of `X1 ∪ X2`. The thickness is
/// at most the sum of the two stage thicknesses.
pub fn compose_packings<F>(
    g: &Graph,
    pi1: &FractionalPacking,
    mut inner: F,
) -> Result<FractionalPacking>
where
    F: FnMut(usize, &Graph, &[usize]) -> Result<FractionalPacking>,
{
    pi1.validate_for(g)?;
    let mut entries = Vec::new();
    for (i, (x1, w1)) in pi1.entries().iter().enumerate() {
        let alive = x1.complement(g.n());
        let (sub, map) = induced_subgraph(g, &alive)?;
        let pi2 = inner(i, &sub, &map)?;
        pi2.validate_for(&sub)?;
        for (x2, w2) in pi2.entries() {
            let translated: VertexSet = x2.iter().map(|v| map[v]).collect();
            entries.push((x1.union(&translated), w1 * w2));
        }
    }
    FractionalPacking::new(entries)
}
