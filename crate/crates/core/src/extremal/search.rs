//! Exact branch and bound for the largest family of a finite universe that
//! satisfies a hereditary condition.
//!
//! Every supported condition is checked incrementally. Conditions that only
//! depend on the set of values seen in each coordinate (chain-freeness) make
//! items free once all their values are present; such items are always added.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::clique::BitGraph;
use crate::coeffs::{binomial, multinomial};
use crate::error::{invalid, Error, Result};
use crate::hyp::{
    coordinate_chain_free, crossing, eg_condition, is_r_chain_free, mutually_intersecting, unifying_condition,
    HypothesisVerdict,
};
use crate::model::{CompositionFamily, Family, GroundSet, SetFamily, Subset, WeakComposition};

/// Largest universe the search accepts.
pub const MAX_UNIVERSE: usize = 10_000;
/// Largest ground set for symmetry reduction, which walks all permutations.
pub const MAX_SYMMETRY_N: u32 = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Universe {
    Subsets { n: u32 },
    FullCompositions { n: u32, p: usize },
    PartialCompositions { n: u32, p: usize },
    /// Disjoint pairs `(A, B)`, optionally with `|A| + |B| <= cap`.
    DisjointPairs { n: u32, cap: Option<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniverseItems {
    Subsets(Vec<Subset>),
    Compositions { p: usize, items: Vec<WeakComposition> },
}

impl UniverseItems {
    pub fn len(&self) -> usize {
        match self {
            UniverseItems::Subsets(v) => v.len(),
            UniverseItems::Compositions { items, .. } => items.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn family(&self, ground: GroundSet, picks: &[usize]) -> Result<Family> {
        Ok(match self {
            UniverseItems::Subsets(v) => SetFamily::new(ground, picks.iter().map(|&i| v[i]).collect())?.into(),
            UniverseItems::Compositions { p, items } => {
                CompositionFamily::new(ground, *p, picks.iter().map(|&i| items[i].clone()).collect())?.into()
            }
        })
    }

    fn relabel(&self, perm: &[u32], i: usize) -> ItemKey {
        match self {
            UniverseItems::Subsets(v) => ItemKey::Set(v[i].relabel(perm)),
            UniverseItems::Compositions { items, .. } => ItemKey::Comp(items[i].relabel(perm)),
        }
    }

    fn key(&self, i: usize) -> ItemKey {
        match self {
            UniverseItems::Subsets(v) => ItemKey::Set(v[i]),
            UniverseItems::Compositions { items, .. } => ItemKey::Comp(items[i].clone()),
        }
    }

    /// The coefficient whose reciprocal is the item's LYM weight.
    fn coefficient(&self, n: u32, i: usize) -> BigUint {
        match self {
            UniverseItems::Subsets(v) => binomial(n, i64::from(v[i].len())),
            UniverseItems::Compositions { items, .. } => multinomial(&items[i].shape()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum ItemKey {
    Set(Subset),
    Comp(WeakComposition),
}

/// Items labelled by base-`states` codes: element `e` goes to part
/// `digit_e` when the digit is below `p`, and is left out otherwise.
fn labelled(n: u32, p: usize, states: u64) -> Result<Vec<WeakComposition>> {
    let count = states
        .checked_pow(n)
        .filter(|&c| c <= MAX_UNIVERSE as u64)
        .ok_or_else(|| Error::InvalidParameters(format!("universe exceeds {MAX_UNIVERSE} items")))?;
    Ok((0..count)
        .map(|mut code| {
            let mut parts = vec![Subset::EMPTY; p];
            for e in 0..n {
                let label = (code % states) as usize;
                code /= states;
                if label < p {
                    parts[label] = parts[label].union(Subset::singleton(e));
                }
            }
            WeakComposition::new(parts).expect("labels give disjoint parts")
        })
        .collect())
}

impl Universe {
    pub fn n(&self) -> u32 {
        match *self {
            Universe::Subsets { n }
            | Universe::FullCompositions { n, .. }
            | Universe::PartialCompositions { n, .. }
            | Universe::DisjointPairs { n, .. } => n,
        }
    }

    pub fn items(&self) -> Result<UniverseItems> {
        let n = self.n();
        GroundSet::new(n)?;
        match *self {
            Universe::Subsets { n } => {
                if n >= 64 || (1u64 << n) > MAX_UNIVERSE as u64 {
                    return invalid(format!("universe exceeds {MAX_UNIVERSE} items"));
                }
                Ok(UniverseItems::Subsets((0..1u64 << n).map(Subset::from_bits).collect()))
            }
            Universe::FullCompositions { p, .. } | Universe::PartialCompositions { p, .. } if p == 0 => {
                Err(Error::NoParts)
            }
            Universe::FullCompositions { n, p } => {
                Ok(UniverseItems::Compositions { p, items: labelled(n, p, p as u64)? })
            }
            Universe::PartialCompositions { n, p } => {
                Ok(UniverseItems::Compositions { p, items: labelled(n, p, p as u64 + 1)? })
            }
            Universe::DisjointPairs { n, cap } => {
                let items = labelled(n, 2, 3)?
                    .into_iter()
                    .filter(|c| cap.map_or(true, |cap| c.total() <= cap))
                    .collect();
                Ok(UniverseItems::Compositions { p: 2, items })
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coordinates {
    All,
    /// Coordinates `1..p-1`, leaving the last one free.
    AllButLast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// Set families without chains of `r + 1` sets.
    ChainFree { r: usize },
    CoordinateChainFree { r: usize, coordinates: Coordinates },
    Unifying { r: usize },
    /// Pairs, no `r + 1` of which are pairwise not mutually intersecting.
    Eg { r: usize },
}

impl Constraint {
    fn coordinates(&self, p: usize) -> Vec<usize> {
        match self {
            Constraint::CoordinateChainFree { coordinates: Coordinates::AllButLast, .. } => (0..p - 1).collect(),
            _ => (0..p).collect(),
        }
    }

    pub fn verify(&self, f: &Family) -> Result<HypothesisVerdict> {
        match (self, f) {
            (Constraint::ChainFree { r }, Family::Subsets(f)) => Ok(is_r_chain_free(f.sets(), *r)),
            (Constraint::CoordinateChainFree { r, .. }, Family::Compositions(f)) => {
                coordinate_chain_free(f, *r, &self.coordinates(f.p()))
            }
            (Constraint::Unifying { r }, Family::Compositions(f)) => Ok(unifying_condition(f, *r)),
            (Constraint::Eg { r }, Family::Compositions(f)) => eg_condition(f, *r),
            (Constraint::ChainFree { .. }, _) => invalid("chain-freeness applies to set families"),
            _ => invalid("this condition applies to composition families"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub symmetry: bool,
    pub budget: Option<Duration>,
    /// Prune with `sum 1/coefficient <= lym_budget`. Only sound when that
    /// inequality holds for every family satisfying the constraint.
    pub lym_budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub optimum: usize,
    pub witness: Family,
    /// False when the time budget ran out; `optimum` is then a lower bound.
    pub exhausted: bool,
    pub nodes: u64,
}

impl SearchResult {
    pub fn to_json(&self) -> Value {
        json!({
            "optimum": self.optimum,
            "proof_of_optimality": if self.exhausted { "exhausted" } else { "budget-exceeded" },
            "nodes": self.nodes,
            "witness": self.witness.to_json_value(),
        })
    }
}

enum Step<S> {
    Rejected,
    Free,
    Grown(S),
}

trait Incremental {
    type State: Clone;
    fn empty(&self) -> Self::State;
    fn extend(&self, state: &Self::State, item: usize) -> Step<Self::State>;
}

#[derive(Clone, Debug, Default)]
struct Layer {
    values: Vec<Subset>,
    /// Longest chain of present values ending at / starting from each value.
    down: Vec<usize>,
    up: Vec<usize>,
}

impl Layer {
    fn through(&self, v: Subset) -> usize {
        let mut below = 0;
        let mut above = 0;
        for (i, &u) in self.values.iter().enumerate() {
            if u.is_proper_subset_of(v) {
                below = below.max(self.down[i]);
            } else if v.is_proper_subset_of(u) {
                above = above.max(self.up[i]);
            }
        }
        below + 1 + above
    }

    fn insert(&mut self, v: Subset) {
        self.values.push(v);
        let m = self.values.len();
        let order: Vec<usize> = (0..m).sorted_by_key(|&i| self.values[i].len()).collect();
        self.down = vec![1; m];
        self.up = vec![1; m];
        for (a, &i) in order.iter().enumerate() {
            for &j in &order[..a] {
                if self.values[j].is_proper_subset_of(self.values[i]) {
                    self.down[i] = self.down[i].max(self.down[j] + 1);
                }
            }
        }
        for (a, &i) in order.iter().enumerate().rev() {
            for &j in &order[a + 1..] {
                if self.values[i].is_proper_subset_of(self.values[j]) {
                    self.up[i] = self.up[i].max(self.up[j] + 1);
                }
            }
        }
    }
}

/// Chain-freeness of the value sets of chosen coordinates.
struct ValueChains {
    r: usize,
    values: Vec<Vec<Subset>>,
    width: usize,
}

impl Incremental for ValueChains {
    type State = Vec<Layer>;

    fn empty(&self) -> Vec<Layer> {
        vec![Layer::default(); self.width]
    }

    fn extend(&self, state: &Vec<Layer>, item: usize) -> Step<Vec<Layer>> {
        let mut fresh = Vec::new();
        for (k, &v) in self.values[item].iter().enumerate() {
            if state[k].values.contains(&v) {
                continue;
            }
            if state[k].through(v) > self.r {
                return Step::Rejected;
            }
            fresh.push((k, v));
        }
        if fresh.is_empty() {
            return Step::Free;
        }
        let mut next = state.clone();
        for (k, v) in fresh {
            next[k].insert(v);
        }
        Step::Grown(next)
    }
}

/// No `r + 1` chosen items form a clique in any of the graphs.
struct BadCliques {
    r: usize,
    graphs: Vec<BitGraph>,
    len: usize,
}

impl Incremental for BadCliques {
    type State = FixedBitSet;

    fn empty(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len)
    }

    fn extend(&self, state: &FixedBitSet, item: usize) -> Step<FixedBitSet> {
        for g in &self.graphs {
            let mut within = g.neighbors(item).clone();
            within.intersect_with(state);
            if g.find_clique_in(&within, self.r).is_some() {
                return Step::Rejected;
            }
        }
        let mut next = state.clone();
        next.insert(item);
        Step::Grown(next)
    }
}

pub fn max_family_search(universe: Universe, constraint: Constraint, options: &SearchOptions) -> Result<SearchResult> {
    let items = universe.items()?;
    max_family_search_items(GroundSet::new(universe.n())?, &items, constraint, options)
}

/// Search over an explicit item list. Symmetry reduction needs the list to be
/// closed under relabelling the ground set.
pub fn max_family_search_items(
    ground: GroundSet,
    items: &UniverseItems,
    constraint: Constraint,
    options: &SearchOptions,
) -> Result<SearchResult> {
    if items.len() > MAX_UNIVERSE {
        return invalid(format!("universe has {} items, limit {MAX_UNIVERSE}", items.len()));
    }
    // validates item fit and constraint/universe compatibility up front
    constraint.verify(&items.family(ground, &[])?)?;
    let picks = match (constraint, items) {
        (Constraint::ChainFree { r }, UniverseItems::Subsets(sets)) => {
            let checker = ValueChains { r, values: sets.iter().map(|&a| vec![a]).collect(), width: 1 };
            run(&checker, ground, items, options)?
        }
        (Constraint::CoordinateChainFree { r, .. }, UniverseItems::Compositions { p, items: comps }) => {
            let coords = constraint.coordinates(*p);
            let values = comps.iter().map(|c| coords.iter().map(|&k| c.part(k)).collect()).collect();
            run(&ValueChains { r, values, width: coords.len() }, ground, items, options)?
        }
        (Constraint::Unifying { r }, UniverseItems::Compositions { p, items: comps }) => {
            let graphs = (0..*p)
                .map(|k| {
                    BitGraph::from_fn(comps.len(), |i, j| {
                        comps[i].part(k) != comps[j].part(k) && !crossing(&comps[i], &comps[j], k)
                    })
                })
                .collect();
            run(&BadCliques { r, graphs, len: comps.len() }, ground, items, options)?
        }
        (Constraint::Eg { r }, UniverseItems::Compositions { items: comps, .. }) => {
            let g = BitGraph::from_fn(comps.len(), |i, j| !mutually_intersecting(&comps[i], &comps[j]));
            run(&BadCliques { r, graphs: vec![g], len: comps.len() }, ground, items, options)?
        }
        _ => unreachable!("verify rejects mismatched universes"),
    };
    let (mut best, exhausted, nodes) = picks;
    best.sort_unstable();
    let witness = items.family(ground, &best)?;
    if !constraint.verify(&witness)?.holds {
        return Err(Error::WitnessRejected);
    }
    for dropped in 0..best.len() {
        let mut sub = best.clone();
        sub.remove(dropped);
        if !constraint.verify(&items.family(ground, &sub)?)?.holds {
            return Err(Error::NonHereditary { dropped });
        }
    }
    Ok(SearchResult { optimum: best.len(), witness, exhausted, nodes })
}

struct Weights {
    /// Class of each item; classes sorted by increasing weight.
    class: Vec<usize>,
    class_weight: Vec<u128>,
    item_weight: Vec<u128>,
    budget: u128,
}

impl Weights {
    fn new(ground: GroundSet, items: &UniverseItems, budget: u64) -> Result<Self> {
        let coeffs: Vec<BigUint> = (0..items.len()).map(|i| items.coefficient(ground.n(), i)).collect();
        let lcm = coeffs.iter().fold(BigUint::one(), |acc, c| acc.lcm(c));
        let too_big = || Error::InvalidParameters("LYM weights overflow 128 bits".into());
        let scaled = |big: BigUint| big.to_u128().ok_or_else(too_big);
        let item_weight = coeffs.iter().map(|c| scaled(&lcm / c)).collect::<Result<Vec<_>>>()?;
        let budget = scaled(lcm * BigUint::from(budget))?;
        let class_weight: Vec<u128> = item_weight.iter().copied().sorted().dedup().collect();
        let class = item_weight.iter().map(|w| class_weight.binary_search(w).expect("present")).collect();
        Ok(Weights { class, class_weight, item_weight, budget })
    }

    /// Most items that fit in the remaining budget, cheapest first.
    fn greedy(&self, counts: &[usize], used: u128) -> usize {
        let mut room = self.budget.saturating_sub(used);
        if used > self.budget {
            return 0;
        }
        let mut taken = 0;
        for (w, &c) in self.class_weight.iter().zip(counts) {
            let fit = if *w == 0 { c } else { c.min((room / w) as usize) };
            taken += fit;
            room -= *w * fit as u128;
            if fit < c {
                break;
            }
        }
        taken
    }
}

struct Searcher<'a, C: Incremental> {
    checker: &'a C,
    weights: Option<Weights>,
    best: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<C: Incremental> Searcher<'_, C> {
    fn weight(&self, i: usize) -> u128 {
        self.weights.as_ref().map_or(0, |w| w.item_weight[i])
    }

    fn explore(&mut self, state: &C::State, chosen: Vec<usize>, used: u128, cands: Vec<usize>, excluded: Vec<usize>) {
        self.nodes += 1;
        if self.nodes % 256 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out = true;
        }
        if self.timed_out {
            return;
        }
        if chosen.len() > self.best.len() {
            self.best = chosen.clone();
        }
        let mut counts = self.weights.as_ref().map(|w| {
            let mut counts = vec![0usize; w.class_weight.len()];
            for &c in &cands {
                counts[w.class[c]] += 1;
            }
            counts
        });
        let mut excluded = excluded;
        for idx in 0..cands.len() {
            let room = match (&self.weights, &counts) {
                (Some(w), Some(counts)) => w.greedy(counts, used),
                _ => cands.len() - idx,
            };
            if chosen.len() + room <= self.best.len() {
                return;
            }
            let c = cands[idx];
            if let (Some(w), Some(counts)) = (&self.weights, &mut counts) {
                counts[w.class[c]] -= 1;
            }
            if let Step::Grown(next) = self.checker.extend(state, c) {
                // an earlier sibling that would now come for free was already
                // explored together with everything reachable from here
                let mut child_excluded = Vec::with_capacity(excluded.len());
                let mut dominated = false;
                for &e in &excluded {
                    match self.checker.extend(&next, e) {
                        Step::Rejected => {}
                        Step::Free => {
                            dominated = true;
                            break;
                        }
                        Step::Grown(_) => child_excluded.push(e),
                    }
                }
                if !dominated {
                    let mut child = chosen.clone();
                    child.push(c);
                    let mut child_used = used + self.weight(c);
                    let mut child_cands = Vec::new();
                    for &y in &cands[idx + 1..] {
                        match self.checker.extend(&next, y) {
                            Step::Rejected => {}
                            Step::Free => {
                                child.push(y);
                                child_used += self.weight(y);
                            }
                            Step::Grown(_) => child_cands.push(y),
                        }
                    }
                    self.explore(&next, child, child_used, child_cands, child_excluded);
                    if self.timed_out {
                        return;
                    }
                }
            }
            excluded.push(c);
        }
    }
}

/// Orbit index of every item under relabelling of the ground set.
fn orbits(ground: GroundSet, items: &UniverseItems) -> Result<Vec<usize>> {
    let n = ground.n();
    if n > MAX_SYMMETRY_N {
        return invalid(format!("symmetry reduction supports n <= {MAX_SYMMETRY_N}"));
    }
    let index: HashMap<ItemKey, usize> = (0..items.len()).map(|i| (items.key(i), i)).collect();
    let perms: Vec<Vec<u32>> = (0..n).permutations(n as usize).collect();
    let mut orbit = vec![usize::MAX; items.len()];
    let mut next = 0;
    for i in 0..items.len() {
        if orbit[i] != usize::MAX {
            continue;
        }
        for perm in &perms {
            let j = *index
                .get(&items.relabel(perm, i))
                .ok_or_else(|| Error::InvalidParameters("universe is not closed under relabelling".into()))?;
            orbit[j] = next;
        }
        next += 1;
    }
    Ok(orbit)
}

fn run<C: Incremental>(
    checker: &C,
    ground: GroundSet,
    items: &UniverseItems,
    options: &SearchOptions,
) -> Result<(Vec<usize>, bool, u64)> {
    let len = items.len();
    let empty = checker.empty();
    let singles: Vec<Option<C::State>> = (0..len)
        .map(|i| match checker.extend(&empty, i) {
            Step::Grown(s) => Some(s),
            _ => None,
        })
        .collect();
    let degree: Vec<usize> = (0..len)
        .map(|i| match &singles[i] {
            Some(s) => (0..len).filter(|&j| j != i && !matches!(checker.extend(s, j), Step::Rejected)).count(),
            None => 0,
        })
        .collect();
    let order: Vec<usize> = (0..len)
        .filter(|&i| singles[i].is_some())
        .sorted_by_key(|&i| (std::cmp::Reverse(degree[i]), i))
        .collect();
    let weights = options.lym_budget.map(|b| Weights::new(ground, items, b)).transpose()?;
    let mut searcher = Searcher {
        checker,
        weights,
        best: Vec::new(),
        nodes: 0,
        deadline: options.budget.map(|b| Instant::now() + b),
        timed_out: false,
    };

    // root problems: (forced item, items ruled out)
    let roots: Vec<(Option<usize>, Vec<usize>)> = if options.symmetry {
        let orbit = orbits(ground, items)?;
        let mut reps: Vec<usize> = Vec::new();
        for &i in &order {
            if !reps.iter().any(|&r| orbit[r] == orbit[i]) {
                reps.push(i);
            }
        }
        reps.iter()
            .enumerate()
            .map(|(j, &rep)| {
                let earlier: Vec<usize> = reps[..j].iter().map(|&r| orbit[r]).collect();
                (Some(rep), (0..len).filter(|&i| earlier.contains(&orbit[i])).collect())
            })
            .collect()
    } else {
        vec![(None, Vec::new())]
    };

    for (forced, ruled_out) in roots {
        let mut state = empty.clone();
        let mut chosen = Vec::new();
        let mut used = 0;
        if let Some(rep) = forced {
            state = singles[rep].clone().expect("representatives are feasible");
            chosen.push(rep);
            used += searcher.weight(rep);
        }
        let mut cands = Vec::new();
        for &i in &order {
            if Some(i) == forced || ruled_out.contains(&i) {
                continue;
            }
            match checker.extend(&state, i) {
                Step::Rejected => {}
                Step::Free => {
                    chosen.push(i);
                    used += searcher.weight(i);
                }
                Step::Grown(_) => cands.push(i),
            }
        }
        let excluded = ruled_out
            .into_iter()
            .filter(|&e| !matches!(checker.extend(&state, e), Step::Rejected))
            .collect();
        searcher.explore(&state, chosen, used, cands, excluded);
        if searcher.timed_out {
            break;
        }
    }
    Ok((searcher.best, !searcher.timed_out, searcher.nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{largest_multinomial, sum_of_largest, Scope};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn plain() -> SearchOptions {
        SearchOptions::default()
    }

    fn optimum(u: Universe, c: Constraint, o: &SearchOptions) -> usize {
        let res = max_family_search(u, c, o).unwrap();
        assert!(res.exhausted);
        assert_eq!(res.witness.len(), res.optimum);
        res.optimum
    }

    /// Largest feasible subfamily by trying every subset of the universe.
    fn brute(items: &UniverseItems, ground: GroundSet, c: Constraint) -> usize {
        let len = items.len();
        assert!(len <= 16);
        (0u32..1 << len)
            .filter(|mask| {
                let picks: Vec<usize> = (0..len).filter(|i| mask >> i & 1 == 1).collect();
                c.verify(&items.family(ground, &picks).unwrap()).unwrap().holds
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn antichains_of_small_cubes() {
        let expect = [1, 1, 2, 3, 6, 10];
        for n in 0..=5u32 {
            for symmetry in [false, true] {
                let o = SearchOptions { symmetry, ..plain() };
                assert_eq!(optimum(Universe::Subsets { n }, Constraint::ChainFree { r: 1 }, &o), expect[n as usize]);
            }
        }
    }

    #[test]
    fn chain_free_matches_layer_sums() {
        for n in 1..=5u32 {
            for r in 1..=3usize {
                let want = sum_of_largest(n, 2, r as u64, Scope::ExactTotal);
                for lym in [None, Some(r as u64)] {
                    let o = SearchOptions { lym_budget: lym, ..plain() };
                    let got = optimum(Universe::Subsets { n }, Constraint::ChainFree { r }, &o);
                    assert_eq!(BigUint::from(got), want, "n={n} r={r}");
                }
            }
        }
    }

    #[test]
    fn meshalkin_families() {
        let c = Constraint::CoordinateChainFree { r: 1, coordinates: Coordinates::All };
        assert_eq!(optimum(Universe::FullCompositions { n: 3, p: 3 }, c, &plain()), 6);
        for n in 0..=4u32 {
            let got = optimum(Universe::FullCompositions { n, p: 2 }, c, &plain());
            assert_eq!(BigUint::from(got), largest_multinomial(n, 2).1);
        }
    }

    #[test]
    fn pairs_with_eg_condition() {
        let want = [1usize, 1, 2, 3, 6];
        for n in 0..=4u32 {
            let got = optimum(Universe::DisjointPairs { n, cap: Some(n) }, Constraint::Eg { r: 1 }, &plain());
            assert_eq!(got, want[n as usize]);
        }
    }

    #[test]
    fn matches_brute_force_on_tiny_universes() {
        let g2 = GroundSet::new(2).unwrap();
        let g4 = GroundSet::new(4).unwrap();
        let cases = [
            (g2, Universe::PartialCompositions { n: 2, p: 2 }.items().unwrap(), Constraint::Unifying { r: 1 }),
            (g2, Universe::PartialCompositions { n: 2, p: 2 }.items().unwrap(), Constraint::Unifying { r: 2 }),
            (g2, Universe::DisjointPairs { n: 2, cap: None }.items().unwrap(), Constraint::Eg { r: 2 }),
            (g4, Universe::Subsets { n: 4 }.items().unwrap(), Constraint::ChainFree { r: 2 }),
            (
                g2,
                Universe::PartialCompositions { n: 2, p: 2 }.items().unwrap(),
                Constraint::CoordinateChainFree { r: 1, coordinates: Coordinates::AllButLast },
            ),
        ];
        for (g, items, c) in cases {
            let got = max_family_search_items(g, &items, c, &plain()).unwrap().optimum;
            assert_eq!(got, brute(&items, g, c), "{c:?}");
            let sym = SearchOptions { symmetry: true, ..plain() };
            assert_eq!(max_family_search_items(g, &items, c, &sym).unwrap().optimum, got);
        }
    }

    #[test]
    fn two_chain_free_compositions_of_three() {
        let c = Constraint::CoordinateChainFree { r: 2, coordinates: Coordinates::All };
        let got = optimum(Universe::FullCompositions { n: 3, p: 3 }, c, &plain());
        assert_eq!(got, 12);
    }

    #[test]
    fn mismatched_constraint_is_rejected() {
        let o = plain();
        assert!(max_family_search(Universe::Subsets { n: 3 }, Constraint::Unifying { r: 1 }, &o).is_err());
        assert!(max_family_search(Universe::FullCompositions { n: 2, p: 3 }, Constraint::Eg { r: 1 }, &o).is_err());
        assert!(max_family_search(Universe::Subsets { n: 20 }, Constraint::ChainFree { r: 1 }, &o).is_err());
    }

    #[test]
    fn exhausted_budget_is_flagged() {
        let c = Constraint::CoordinateChainFree { r: 2, coordinates: Coordinates::All };
        let o = SearchOptions { budget: Some(Duration::ZERO), ..plain() };
        let res = max_family_search(Universe::FullCompositions { n: 4, p: 3 }, c, &o).unwrap();
        assert!(!res.exhausted);
        assert!(c.verify(&res.witness).unwrap().holds);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn optimum_invariant_under_relabelling(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut perm: Vec<u32> = (0..3).collect();
            perm.shuffle(&mut rng);
            let g = GroundSet::new(3).unwrap();
            let UniverseItems::Compositions { p, items } = Universe::PartialCompositions { n: 3, p: 2 }.items().unwrap() else {
                unreachable!()
            };
            let mut moved: Vec<WeakComposition> = items.iter().map(|c| c.relabel(&perm)).collect();
            moved.shuffle(&mut rng);
            let moved = UniverseItems::Compositions { p, items: moved };
            let items = UniverseItems::Compositions { p, items };
            for c in [Constraint::Unifying { r: 1 }, Constraint::CoordinateChainFree { r: 1, coordinates: Coordinates::All }] {
                let a = max_family_search_items(g, &items, c, &plain()).unwrap().optimum;
                let b = max_family_search_items(g, &moved, c, &plain()).unwrap().optimum;
                prop_assert_eq!(a, b);
            }
        }
    }
}
