//! Ground truth by exhaustive subset enumeration.
//!
//! Every count here reduces to one primitive: given closed-neighborhood
//! masks, a candidate vertex set `C` and a target set `T`, tally the subsets
//! `S ⊆ C` with `N[S] ⊇ T` by size. The candidate bits are split into a low
//! and a high half; covers of all low subsets and all high subsets are
//! tabulated once, so testing a subset is a single OR and compare. The high
//! half is the unit of parallel work.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet, MAX_VERTICES};
use crate::poly::Polynomial;

/// Default soft bound on the order of graphs handed to the oracle.
pub const DEFAULT_SOFT_MAX_N: usize = 24;

/// Environment variable overriding [`DEFAULT_SOFT_MAX_N`].
pub const MAX_N_ENV: &str = "DOMIPOLY_MAX_N";

/// The soft bound in effect, honoring `DOMIPOLY_MAX_N` (clamped to 63).
pub fn soft_max_n() -> usize {
    std::env::var(MAX_N_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .map_or(DEFAULT_SOFT_MAX_N, |n| n.min(MAX_VERTICES))
}

/// `counts[i] = d(G, i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationTally {
    pub counts: Vec<u64>,
}

impl DominationTally {
    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_u64s(&self.counts)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| u128::from(c)).sum()
    }
}

/// Which execution path the covering count takes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

struct Halves {
    lo_cover: Vec<u64>,
    lo_size: Vec<u8>,
    hi_cover: Vec<u64>,
    target: u64,
    width: usize,
}

fn cover_table(masks: &[u64]) -> Vec<u64> {
    let mut table = vec![0u64; 1 << masks.len()];
    for s in 1..table.len() {
        let low = s.trailing_zeros() as usize;
        table[s] = table[s & (s - 1)] | masks[low];
    }
    table
}

impl Halves {
    fn new(closed: &[u64], candidates: VertexSet, target: VertexSet) -> Self {
        let masks: Vec<u64> = candidates.iter().map(|v| closed[v]).collect();
        let width = masks.len();
        let lo_bits = width.div_ceil(2);
        let (lo, hi) = masks.split_at(lo_bits);
        let lo_cover = cover_table(lo);
        let lo_size = (0..lo_cover.len()).map(|s| s.count_ones() as u8).collect();
        Halves {
            lo_cover,
            lo_size,
            hi_cover: cover_table(hi),
            target: target.bits(),
            width,
        }
    }

    fn tally_high(&self, h: usize, counts: &mut [u64]) {
        let need = self.target & !self.hi_cover[h];
        let base = h.count_ones() as usize;
        for (cover, &size) in self.lo_cover.iter().zip(&self.lo_size) {
            if cover & need == need {
                counts[base + size as usize] += 1;
            }
        }
    }

    fn run_sequential(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.width + 1];
        for h in 0..self.hi_cover.len() {
            self.tally_high(h, &mut counts);
        }
        counts
    }

    #[cfg(feature = "parallel")]
    fn run_parallel(&self) -> Vec<u64> {
        use rayon::prelude::*;
        let zero = || vec![0u64; self.width + 1];
        (0..self.hi_cover.len())
            .into_par_iter()
            .fold(zero, |mut acc, h| {
                self.tally_high(h, &mut acc);
                acc
            })
            .reduce(zero, |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            })
    }
}

/// Tally, by size, the subsets of `candidates` whose closed neighborhood
/// covers `target`. Entry `i` of the result counts subsets of size `i`; the
/// result has `|candidates| + 1` entries.
pub fn count_covering_with(
    closed: &[u64],
    candidates: VertexSet,
    target: VertexSet,
    strategy: Strategy,
) -> Vec<u64> {
    let halves = Halves::new(closed, candidates, target);
    match strategy {
        Strategy::Sequential => halves.run_sequential(),
        #[cfg(feature = "parallel")]
        Strategy::Parallel => halves.run_parallel(),
    }
}

fn check_capacity(g: &Graph) -> Result<()> {
    if g.n() > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "oracle graph order",
            got: g.n(),
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

/// `d(G, i)` for `i = 0..=n`. The empty graph is dominated by the empty
/// set, so its tally is `[1]`.
pub fn domination_tally(g: &Graph) -> Result<DominationTally> {
    domination_tally_with(g, Strategy::default())
}

pub fn domination_tally_with(g: &Graph, strategy: Strategy) -> Result<DominationTally> {
    check_capacity(g)?;
    let counts = count_covering_with(&g.closed_masks(), g.vertices(), g.vertices(), strategy);
    Ok(DominationTally { counts })
}

/// `D(G, x)` by enumeration of all `2^n` vertex subsets.
pub fn domination_polynomial(g: &Graph) -> Result<Polynomial> {
    domination_tally(g).map(|t| t.to_polynomial())
}

/// Like [`domination_polynomial`] but refusing graphs above `max_n`.
pub fn domination_polynomial_bounded(g: &Graph, max_n: usize) -> Result<Polynomial> {
    if g.n() > max_n {
        return Err(Error::Capacity {
            what: "oracle graph order",
            got: g.n(),
            limit: max_n,
        });
    }
    domination_polynomial(g)
}

/// `γ(G)`, the least degree of the oracle polynomial. Zero for the empty
/// graph.
pub fn domination_number(g: &Graph) -> Result<usize> {
    domination_polynomial(g)?.min_degree()
}

/// `p_u(G, x)`: sets `S ⊆ V ∖ N[u]` that dominate `G - u`, by size.
pub fn restricted_count_pu(g: &Graph, u: usize) -> Result<Polynomial> {
    check_capacity(g)?;
    let closed_u = g.closed_neighborhood(u)?;
    let candidates = g.vertices().difference(closed_u);
    let target = g.vertices().without(u);
    // masks still carry edges to u, but u is not in the target
    let counts = count_covering_with(&g.closed_masks(), candidates, target, Strategy::default());
    Ok(Polynomial::from_u64s(&counts))
}

/// Checks one set directly against the definition.
pub fn is_dominating(g: &Graph, s: VertexSet) -> bool {
    let covered = s
        .iter()
        .filter_map(|v| g.closed_neighborhood(v).ok())
        .fold(VertexSet::empty(), VertexSet::union);
    covered.bits() & g.vertices().bits() == g.vertices().bits()
}
