//! Exact binomial and multinomial coefficients, the descending order of
//! `p`-multinomial coefficients and sums of its leading entries.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::model::Shape;

/// Which totals a set of `p`-multinomial coefficients ranges over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    /// Coefficients `n! / (a_1! .. a_p!)` with `a_1 + .. + a_p = n`.
    ExactTotal,
    /// Coefficients for every total `n' <= n`.
    AtMost,
}

impl Scope {
    pub fn as_str(self) -> &'static str {
        match self {
            Scope::ExactTotal => "exact-total",
            Scope::AtMost => "at-most",
        }
    }
}

pub fn factorial(n: u32) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn factorials(n: u32) -> Vec<BigUint> {
    let mut table = Vec::with_capacity(n as usize + 1);
    table.push(BigUint::one());
    for k in 1..=n {
        let next = &table[k as usize - 1] * k;
        table.push(next);
    }
    table
}

/// `n choose k`, zero outside `0 <= k <= n`.
pub fn binomial(n: u32, k: i64) -> BigUint {
    if k < 0 || k > i64::from(n) {
        return BigUint::zero();
    }
    let k = (k as u32).min(n - k as u32);
    // each partial product is itself a binomial coefficient, so the division is exact
    (0..k).fold(BigUint::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `(a_1 + .. + a_p)! / (a_1! .. a_p!)`.
pub fn multinomial(shape: &Shape) -> BigUint {
    let total = shape.total();
    let fact = factorials(total);
    multinomial_with(&fact, shape)
}

fn multinomial_with(fact: &[BigUint], shape: &Shape) -> BigUint {
    let denom = shape
        .sizes()
        .iter()
        .fold(BigUint::one(), |acc, &a| acc * &fact[a as usize]);
    &fact[shape.total() as usize] / denom
}

/// The balanced shape (`rho` parts of size `floor(n/p) + 1` followed by
/// `p - rho` parts of size `floor(n/p)`) and its coefficient, evaluated
/// through the closed form `n! / (((nu+1)!)^rho (nu!)^(p-rho))`.
pub fn largest_multinomial(n: u32, p: usize) -> (Shape, BigUint) {
    assert!(p >= 1, "need at least one part");
    let nu = n / p as u32;
    let rho = (n - nu * p as u32) as usize;
    let sizes: Vec<u32> = (0..p).map(|i| if i < rho { nu + 1 } else { nu }).collect();
    let value = factorial(n)
        / (num_traits::pow(factorial(nu + 1), rho) * num_traits::pow(factorial(nu), p - rho));
    (Shape::new(sizes), value)
}

/// All shapes with `p` parts in the given scope, in lexicographic order.
pub fn shapes(n: u32, p: usize, scope: Scope) -> Vec<Shape> {
    fn fill(prefix: &mut Vec<u32>, parts_left: usize, remaining: u32, exact: bool, out: &mut Vec<Shape>) {
        if parts_left == 1 {
            let lo = if exact { remaining } else { 0 };
            for a in lo..=remaining {
                prefix.push(a);
                out.push(Shape::new(prefix.clone()));
                prefix.pop();
            }
            return;
        }
        for a in 0..=remaining {
            prefix.push(a);
            fill(prefix, parts_left - 1, remaining - a, exact, out);
            prefix.pop();
        }
    }
    assert!(p >= 1, "need at least one part");
    let mut out = Vec::new();
    fill(&mut Vec::with_capacity(p), p, n, scope == Scope::ExactTotal, &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffEntry {
    pub shape: Shape,
    /// Sizes sorted descending.
    pub form: Vec<u32>,
    pub value: BigUint,
    /// 1-based position in the descending order.
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescendingOrder {
    pub n: u32,
    pub p: usize,
    pub scope: Scope,
    pub entries: Vec<CoeffEntry>,
}

/// Ties between equal values are broken by form, then by raw shape, both
/// compared lexicographically with larger first.
pub fn descending_cmp(a: (&BigUint, &[u32], &Shape), b: (&BigUint, &[u32], &Shape)) -> Ordering {
    b.0.cmp(a.0)
        .then_with(|| b.1.cmp(a.1))
        .then_with(|| b.2.cmp(a.2))
}

pub fn descending_order(n: u32, p: usize, scope: Scope) -> DescendingOrder {
    let fact = factorials(n);
    let mut entries: Vec<CoeffEntry> = shapes(n, p, scope)
        .into_iter()
        .map(|shape| CoeffEntry {
            value: multinomial_with(&fact, &shape),
            form: shape.form(),
            shape,
            rank: 0,
        })
        .collect();
    entries.sort_by(|a, b| {
        descending_cmp((&a.value, &a.form, &a.shape), (&b.value, &b.form, &b.shape))
    });
    for (i, e) in entries.iter_mut().enumerate() {
        e.rank = i + 1;
    }
    DescendingOrder { n, p, scope, entries }
}

impl DescendingOrder {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `M_k` for 1-based `k`; zero past the end.
    pub fn value_at(&self, rank: usize) -> BigUint {
        rank.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.value.clone())
            .unwrap_or_default()
    }

    /// `M_1 + .. + M_R`, padding with zeros past the end.
    pub fn sum_of_largest(&self, r: u64) -> BigUint {
        let take = usize::try_from(r).unwrap_or(usize::MAX);
        self.entries.iter().take(take).map(|e| &e.value).sum()
    }
}

pub fn sum_of_largest(n: u32, p: usize, r: u64, scope: Scope) -> BigUint {
    if r == 0 {
        return BigUint::zero();
    }
    descending_order(n, p, scope).sum_of_largest(r)
}

/// `base^exp`, saturating at `u64::MAX`.
pub fn saturating_pow(base: u64, exp: usize) -> u64 {
    let exp = u32::try_from(exp).unwrap_or(u32::MAX);
    base.saturating_pow(exp)
}
