//! Maximal chains of the subset lattice, viewed as permutations of the
//! ground set, and the separation of weak compositions by them.

use itertools::Itertools;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::coeffs::{binomial, factorial};
use crate::error::{invalid, Result};
use crate::model::{CompositionFamily, Shape, WeakComposition};

/// Largest ground set for which every maximal chain is inspected.
pub const ALL_CHAINS_LIMIT: u32 = 8;

/// The chain `{} ⊂ {x_1} ⊂ {x_1, x_2} ⊂ .. ⊂ S`, stored as `(x_1, .., x_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MaximalChain {
    order: Vec<u32>,
}

impl MaximalChain {
    pub fn new(order: Vec<u32>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &x in &order {
            match seen.get_mut(x as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => return invalid(format!("{order:?} is not a permutation of 0..{n}")),
            }
        }
        Ok(MaximalChain { order })
    }

    pub fn identity(n: u32) -> Self {
        MaximalChain { order: (0..n).collect() }
    }

    pub fn order(&self) -> &[u32] {
        &self.order
    }

    pub fn n(&self) -> u32 {
        self.order.len() as u32
    }
}

/// Whether cut points along the chain put every part inside its own
/// consecutive segment, in order. Reading the chain from the bottom, the part
/// labels of the covered elements must never decrease; empty parts impose
/// nothing.
pub fn separates(chain: &MaximalChain, c: &WeakComposition) -> bool {
    let mut last = 0usize;
    for &x in &chain.order {
        if let Some(k) = c.parts().iter().position(|part| part.contains(x)) {
            if k < last {
                return false;
            }
            last = k;
        }
    }
    true
}

/// Number of maximal chains of an `n`-set separating any fixed composition of
/// the given shape: `C(n, t) a_1! .. a_p! (n - t)!` with `t` the total.
pub fn count_separating(n: u32, shape: &Shape) -> Result<BigUint> {
    let t = shape.total();
    if t > n {
        return invalid(format!("shape {shape} has total {t} > n = {n}"));
    }
    let parts: BigUint = shape.sizes().iter().map(|&a| factorial(a)).product();
    Ok(binomial(n, i64::from(t)) * parts * factorial(n - t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChainMode {
    AllChains,
    Sampled { count: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparationMax {
    pub max: usize,
    /// First inspected chain reaching the maximum; in all-chains mode this is
    /// the lexicographically smallest one.
    pub witness: Option<MaximalChain>,
    pub inspected: u64,
    pub seed: Option<u64>,
}

pub fn separated_count(chain: &MaximalChain, f: &CompositionFamily) -> usize {
    f.items().iter().filter(|c| separates(chain, c)).count()
}

/// Largest number of family members separated by one maximal chain.
pub fn max_separated(f: &CompositionFamily, mode: ChainMode) -> Result<SeparationMax> {
    let n = f.n();
    let mut best = SeparationMax { max: 0, witness: None, inspected: 0, seed: None };
    let visit = |order: Vec<u32>, best: &mut SeparationMax| {
        let chain = MaximalChain { order };
        let count = separated_count(&chain, f);
        best.inspected += 1;
        if best.witness.is_none() || count > best.max {
            best.max = count;
            best.witness = Some(chain);
        }
    };
    match mode {
        ChainMode::AllChains => {
            if n > ALL_CHAINS_LIMIT {
                return invalid(format!(
                    "all-chains mode supports n <= {ALL_CHAINS_LIMIT}, got n = {n}; use sampling"
                ));
            }
            // itertools yields permutations of a sorted input in lexicographic order
            for order in (0..n).permutations(n as usize) {
                visit(order, &mut best);
            }
        }
        ChainMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut order: Vec<u32> = (0..n).collect();
            for _ in 0..count {
                order.shuffle(&mut rng);
                visit(order.clone(), &mut best);
            }
            best.seed = Some(seed);
        }
    }
    Ok(best)
}
