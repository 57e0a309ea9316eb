//! Decidable hypotheses of the Sperner-type theorems. A failing verdict always
//! carries a witness that can be replayed against the raw definition.
//!
//! Item and coordinate indices are 0-based throughout this module.

use serde_json::{json, Value};

use crate::clique::BitGraph;
use crate::error::{invalid, Result};
use crate::model::{CompositionFamily, Subset, WeakComposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `sets[smaller]` is a proper subset of `sets[larger]`.
    Comparable { smaller: usize, larger: usize },
    /// `r + 1` sets forming a chain, smallest first.
    Chain(Vec<usize>),
    /// Part `coordinate` of item `smaller` is a proper subset of the same
    /// part of item `larger`.
    CoordinateComparable { coordinate: usize, smaller: usize, larger: usize },
    /// Items whose parts at `coordinate` form a chain of `r + 1` distinct sets.
    CoordinateChain { coordinate: usize, items: Vec<usize> },
    /// `r + 1` items that are pairwise bad: at `coordinate` for the unifying
    /// condition, or with respect to the pair intersection rule when `None`.
    BadClique { coordinate: Option<usize>, items: Vec<usize> },
    /// `A_a` misses `B_b` for two distinct pairs.
    MissingIntersection { a_item: usize, b_item: usize },
    /// `|A_j| + |B_j|` exceeds the cap.
    SizeCap { item: usize, size: u32, cap: u32 },
    NotFull { item: usize },
}

impl Witness {
    /// JSON form with 1-based item and coordinate indices.
    pub fn to_json(&self) -> Value {
        let one = |v: &[usize]| v.iter().map(|i| i + 1).collect::<Vec<_>>();
        match self {
            Witness::Comparable { smaller, larger } => {
                json!({"type": "comparable", "smaller": smaller + 1, "larger": larger + 1})
            }
            Witness::Chain(items) => json!({"type": "chain", "items": one(items)}),
            Witness::CoordinateComparable { coordinate, smaller, larger } => json!({
                "type": "coordinate-comparable",
                "coordinate": coordinate + 1,
                "smaller": smaller + 1,
                "larger": larger + 1,
            }),
            Witness::CoordinateChain { coordinate, items } => json!({
                "type": "coordinate-chain",
                "coordinate": coordinate + 1,
                "items": one(items),
            }),
            Witness::BadClique { coordinate, items } => json!({
                "type": "bad-clique",
                "coordinate": coordinate.map(|k| k + 1),
                "items": one(items),
            }),
            Witness::MissingIntersection { a_item, b_item } => {
                json!({"type": "missing-intersection", "a_item": a_item + 1, "b_item": b_item + 1})
            }
            Witness::SizeCap { item, size, cap } => {
                json!({"type": "size-cap", "item": item + 1, "size": size, "cap": cap})
            }
            Witness::NotFull { item } => json!({"type": "not-full", "item": item + 1}),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl HypothesisVerdict {
    pub fn holds() -> Self {
        HypothesisVerdict { holds: true, witness: None }
    }

    pub fn violated(witness: Witness) -> Self {
        HypothesisVerdict { holds: false, witness: Some(witness) }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

/// Indices of the first occurrence of each distinct set.
fn first_occurrences(sets: &[Subset]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        if !out.iter().any(|&j| sets[j] == *s) {
            out.push(i);
        }
    }
    out
}

/// Repeated sets count once.
pub fn is_antichain(sets: &[Subset]) -> HypothesisVerdict {
    let distinct = first_occurrences(sets);
    for (a, &i) in distinct.iter().enumerate() {
        for &j in &distinct[a + 1..] {
            if sets[i].is_subset_of(sets[j]) {
                return HypothesisVerdict::violated(Witness::Comparable { smaller: i, larger: j });
            }
            if sets[j].is_subset_of(sets[i]) {
                return HypothesisVerdict::violated(Witness::Comparable { smaller: j, larger: i });
            }
        }
    }
    HypothesisVerdict::holds()
}

/// Longest chain ending at each distinct set, indexed like `distinct`.
fn chain_heights(sets: &[Subset], distinct: &[usize]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..distinct.len()).collect();
    order.sort_by_key(|&a| (sets[distinct[a]].len(), distinct[a]));
    let mut height = vec![0usize; distinct.len()];
    for (pos, &a) in order.iter().enumerate() {
        let below = order[..pos]
            .iter()
            .filter(|&&b| sets[distinct[b]].is_proper_subset_of(sets[distinct[a]]))
            .map(|&b| height[b])
            .max()
            .unwrap_or(0);
        height[a] = below + 1;
    }
    height
}

/// Number of elements in the longest inclusion chain among the distinct sets.
pub fn longest_chain(sets: &[Subset]) -> usize {
    let distinct = first_occurrences(sets);
    chain_heights(sets, &distinct).into_iter().max().unwrap_or(0)
}

/// Holds iff no chain among the distinct sets has more than `r` elements.
pub fn is_r_chain_free(sets: &[Subset], r: usize) -> HypothesisVerdict {
    let distinct = first_occurrences(sets);
    let height = chain_heights(sets, &distinct);
    let Some(top) = (0..distinct.len()).find(|&a| height[a] > r) else {
        return HypothesisVerdict::holds();
    };
    let mut chain = vec![distinct[top]];
    let mut cur = top;
    while chain.len() <= r {
        // some strict subset one level lower always exists by construction of `height`
        let next = (0..distinct.len())
            .find(|&b| {
                height[b] + 1 == height[cur]
                    && sets[distinct[b]].is_proper_subset_of(sets[distinct[cur]])
            })
            .expect("chain heights are consistent");
        chain.push(distinct[next]);
        cur = next;
    }
    chain.reverse();
    HypothesisVerdict::violated(Witness::Chain(chain))
}

/// Partition of the distinct sets into antichains by repeatedly removing the
/// minimal elements. The number of antichains equals the longest chain length.
pub fn mirsky_decomposition(sets: &[Subset]) -> Vec<Vec<usize>> {
    let mut remaining = first_occurrences(sets);
    let mut layers = Vec::new();
    while !remaining.is_empty() {
        let (minimal, rest): (Vec<usize>, Vec<usize>) = remaining.iter().partition(|&&i| {
            !remaining.iter().any(|&j| sets[j].is_proper_subset_of(sets[i]))
        });
        layers.push(minimal);
        remaining = rest;
    }
    layers
}

/// Part `k` of `c1` meets the other parts of `c2`, and part `k` of `c2` meets
/// the other parts of `c1`.
pub fn crossing(c1: &WeakComposition, c2: &WeakComposition, k: usize) -> bool {
    c1.part(k).intersects(c2.union_except(k)) && c2.part(k).intersects(c1.union_except(k))
}

/// Items `i, j` are adjacent when their parts at `k` differ and do not cross.
pub fn bad_pair_graph(f: &CompositionFamily, k: usize) -> BitGraph {
    let items = f.items();
    BitGraph::from_fn(items.len(), |i, j| {
        items[i].part(k) != items[j].part(k) && !crossing(&items[i], &items[j], k)
    })
}

/// Every `r + 1` items contain, at every coordinate, a pair that agrees or
/// crosses there; equivalently every bad-pair graph has clique number `<= r`.
pub fn unifying_condition(f: &CompositionFamily, r: usize) -> HypothesisVerdict {
    for k in 0..f.p() {
        if let Some(items) = bad_pair_graph(f, k).find_clique(r + 1) {
            return HypothesisVerdict::violated(Witness::BadClique { coordinate: Some(k), items });
        }
    }
    HypothesisVerdict::holds()
}

fn require_pairs(f: &CompositionFamily) -> Result<()> {
    if f.p() != 2 {
        return invalid(format!("pair conditions need p = 2, got p = {}", f.p()));
    }
    Ok(())
}

/// Disjoint pairs with `A_j ∩ B_k ≠ ∅` for all `j ≠ k`, and optionally
/// `|A_j| + |B_j| <= cap`. Disjointness within a pair is guaranteed by
/// [`WeakComposition`].
pub fn gst_condition(f: &CompositionFamily, cap: Option<u32>) -> Result<HypothesisVerdict> {
    require_pairs(f)?;
    let items = f.items();
    if let Some(cap) = cap {
        if let Some(item) = items.iter().position(|c| c.total() > cap) {
            let size = items[item].total();
            return Ok(HypothesisVerdict::violated(Witness::SizeCap { item, size, cap }));
        }
    }
    for (j, a) in items.iter().enumerate() {
        for (k, b) in items.iter().enumerate() {
            if j != k && !a.part(0).intersects(b.part(1)) {
                return Ok(HypothesisVerdict::violated(Witness::MissingIntersection {
                    a_item: j,
                    b_item: k,
                }));
            }
        }
    }
    Ok(HypothesisVerdict::holds())
}

/// Two pairs intersect mutually when `A_j ∩ B_k ≠ ∅ ≠ A_k ∩ B_j`.
pub fn mutually_intersecting(x: &WeakComposition, y: &WeakComposition) -> bool {
    x.part(0).intersects(y.part(1)) && y.part(0).intersects(x.part(1))
}

/// Among any `r + 1` pairs, two intersect mutually.
pub fn eg_condition(f: &CompositionFamily, r: usize) -> Result<HypothesisVerdict> {
    require_pairs(f)?;
    let items = f.items();
    let g = BitGraph::from_fn(items.len(), |i, j| !mutually_intersecting(&items[i], &items[j]));
    Ok(match g.find_clique(r + 1) {
        Some(items) => HypothesisVerdict::violated(Witness::BadClique { coordinate: None, items }),
        None => HypothesisVerdict::holds(),
    })
}

/// Every listed coordinate slice is `r`-chain-free.
pub fn coordinate_chain_free(f: &CompositionFamily, r: usize, coordinates: &[usize]) -> Result<HypothesisVerdict> {
    for &k in coordinates {
        let slice = f.coordinate_slice(k)?;
        if let Some(Witness::Chain(items)) = is_r_chain_free(&slice.all, r).witness {
            return Ok(HypothesisVerdict::violated(Witness::CoordinateChain { coordinate: k, items }));
        }
    }
    Ok(HypothesisVerdict::holds())
}

/// Every coordinate slice is an antichain, and with `require_full` every item
/// covers the ground set.
pub fn meshalkin_condition(f: &CompositionFamily, require_full: bool) -> HypothesisVerdict {
    if require_full {
        if let Some(item) = f.first_partial_item() {
            return HypothesisVerdict::violated(Witness::NotFull { item });
        }
    }
    for k in 0..f.p() {
        let all: Vec<Subset> = f.items().iter().map(|c| c.part(k)).collect();
        if let Some(Witness::Comparable { smaller, larger }) = is_antichain(&all).witness {
            return HypothesisVerdict::violated(Witness::CoordinateComparable {
                coordinate: k,
                smaller,
                larger,
            });
        }
    }
    HypothesisVerdict::holds()
}
