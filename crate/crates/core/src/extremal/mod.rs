//! Extremal constructions, the structure test for families meeting the
//! multinomial bound, and exact maximum-family search.

pub mod search;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::coeffs::{binomial, descending_order, largest_multinomial, saturating_pow, Scope};
use crate::error::{invalid, Error, Result};
use crate::lym::notr_layers;
use crate::model::{CompositionFamily, GroundSet, SetFamily, Shape, Subset, WeakComposition};

pub use search::{
    max_family_search, max_family_search_items, Constraint, Coordinates, SearchOptions, SearchResult, Universe,
};

/// All `k`-subsets of `within`, in lexicographic order of their elements.
pub fn k_subsets(within: Subset, k: u32) -> Vec<Subset> {
    within
        .elements()
        .combinations(k as usize)
        .map(Subset::from_elements)
        .collect()
}

/// All full compositions of `within` whose part sizes are `shape`.
pub fn compositions_of_shape(within: Subset, shape: &Shape) -> Vec<WeakComposition> {
    fn go(rest: Subset, sizes: &[u32], prefix: &mut Vec<Subset>, out: &mut Vec<WeakComposition>) {
        match sizes {
            [] => {
                if rest.is_empty() {
                    out.push(WeakComposition::new(prefix.clone()).expect("parts are disjoint"));
                }
            }
            [a, tail @ ..] => {
                for part in k_subsets(rest, *a) {
                    prefix.push(part);
                    go(rest.difference(part), tail, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    if shape.total() == within.len() {
        go(within, shape.sizes(), &mut Vec::with_capacity(shape.p()), &mut out);
    }
    out
}

/// The `r` consecutive layer sizes of `P([n])` with the largest total,
/// smallest start on ties. Every layer when `r > n + 1`.
pub fn middle_window(n: u32, r: u32) -> Result<std::ops::RangeInclusive<u32>> {
    if r == 0 {
        return invalid("need r >= 1");
    }
    let r = r.min(n + 1);
    let mut best: Option<(BigUint, u32)> = None;
    for start in 0..=n + 1 - r {
        let total: BigUint = (start..start + r).map(|k| binomial(n, i64::from(k))).sum();
        if best.as_ref().map_or(true, |(b, _)| total > *b) {
            best = Some((total, start));
        }
    }
    let start = best.expect("at least one window").1;
    Ok(start..=start + r - 1)
}

pub fn construct_middle_layers(n: u32, r: u32) -> Result<SetFamily> {
    let ground = GroundSet::new(n)?;
    let sets = middle_window(n, r)?.flat_map(|k| k_subsets(ground.full(), k)).collect();
    SetFamily::new(ground, sets)
}

pub fn construct_meshalkin(n: u32, p: usize) -> Result<CompositionFamily> {
    if p == 0 {
        return Err(Error::NoParts);
    }
    let ground = GroundSet::new(n)?;
    let (shape, _) = largest_multinomial(n, p);
    CompositionFamily::new(ground, p, compositions_of_shape(ground.full(), &shape))
}

pub fn construct_eg_pairs(n: u32, r: u32) -> Result<CompositionFamily> {
    let ground = GroundSet::new(n)?;
    let full = ground.full();
    let items = middle_window(n, r)?
        .flat_map(|k| k_subsets(full, k))
        .map(|a| WeakComposition::pair(a, full.difference(a)))
        .collect::<Result<Vec<_>>>()?;
    CompositionFamily::new(ground, 2, items)
}

/// Items `(A, {n-1}, {n-2}, .., {n-p+1})` with `A` running over the chosen
/// layers of `{0, .., n-p}`.
pub fn construct_notr(n: u32, p: usize, r: u32) -> Result<CompositionFamily> {
    let layers = notr_layers(n, p, r)?;
    let ground = GroundSet::new(n)?;
    let base = Subset::from_elements(0..n + 1 - p as u32);
    let tail: Vec<Subset> = (1..p as u32).map(|i| Subset::singleton(n - i)).collect();
    let items = layers
        .flat_map(|k| k_subsets(base, k))
        .map(|a| {
            let mut parts = Vec::with_capacity(p);
            parts.push(a);
            parts.extend_from_slice(&tail);
            WeakComposition::new(parts)
        })
        .collect::<Result<Vec<_>>>()?;
    CompositionFamily::new(ground, p, items)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Presence {
    All,
    Some,
    None,
}

impl Presence {
    pub fn as_str(self) -> &'static str {
        match self {
            Presence::All => "all",
            Presence::Some => "some",
            Presence::None => "none",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapePresence {
    pub shape: Shape,
    pub coefficient: BigUint,
    pub count: usize,
    pub presence: Presence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SharpStructure {
    /// `R = r^(p-1)`.
    pub rank: u64,
    pub m_rank: BigUint,
    pub m_next: BigUint,
    /// In descending coefficient order.
    pub shapes: Vec<ShapePresence>,
    /// Shapes with coefficient above `M_(R+1)` that are not fully present.
    pub missing: Vec<Shape>,
    /// Present shapes with coefficient below `M_R`.
    pub unexpected: Vec<Shape>,
}

impl SharpStructure {
    pub fn condition_met(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let shapes: Vec<Value> = self
            .shapes
            .iter()
            .map(|s| {
                json!({
                    "shape": s.shape.sizes(),
                    "coefficient": s.coefficient.to_string(),
                    "count": s.count,
                    "presence": s.presence.as_str(),
                })
            })
            .collect();
        json!({
            "rank": self.rank,
            "m_rank": self.m_rank.to_string(),
            "m_next": self.m_next.to_string(),
            "condition_met": self.condition_met(),
            "missing": self.missing.iter().map(|s| s.sizes().to_vec()).collect::<Vec<_>>(),
            "unexpected": self.unexpected.iter().map(|s| s.sizes().to_vec()).collect::<Vec<_>>(),
            "shapes": shapes,
        })
    }
}

/// Which shapes a family of full compositions uses, and whether it has the
/// structure forced on a family whose size reaches the sum of the
/// `r^(p-1)` largest coefficients.
pub fn verify_sharp_structure(f: &CompositionFamily, r: u32) -> Result<SharpStructure> {
    if let Some(item) = f.first_partial_item() {
        return Err(Error::NotFull { item });
    }
    let rank = saturating_pow(u64::from(r), f.p() - 1);
    let order = descending_order(f.n(), f.p(), Scope::ExactTotal);
    let idx = |k: u64| usize::try_from(k).unwrap_or(usize::MAX);
    let m_rank = order.value_at(idx(rank));
    let m_next = order.value_at(idx(rank).saturating_add(1));
    let mut counts: BTreeMap<Shape, usize> = BTreeMap::new();
    for c in f.items() {
        *counts.entry(c.shape()).or_default() += 1;
    }
    let mut out = SharpStructure { rank, m_rank, m_next, shapes: Vec::new(), missing: Vec::new(), unexpected: Vec::new() };
    for e in &order.entries {
        let count = counts.get(&e.shape).copied().unwrap_or(0);
        let presence = match count {
            0 => Presence::None,
            c if BigUint::from(c) == e.value => Presence::All,
            _ => Presence::Some,
        };
        if e.value > out.m_next && presence != Presence::All {
            out.missing.push(e.shape.clone());
        }
        if e.value < out.m_rank && presence != Presence::None {
            out.unexpected.push(e.shape.clone());
        }
        out.shapes.push(ShapePresence { shape: e.shape.clone(), coefficient: e.value.clone(), count, presence });
    }
    Ok(out)
}
