//! Exact LYM sums, the Harper-Klain-Rota rearrangement lemma with its
//! equality characterization, and the passage from LYM sums to cardinality
//! bounds.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::coeffs::{binomial, descending_order, multinomial, Scope};
use crate::error::{invalid, Error, Result};
use crate::model::{CompositionFamily, SetFamily, Shape};

pub fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub fn integer(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `"num/den"`, always with an explicit denominator.
pub fn format_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LymReport {
    pub sum: BigRational,
    pub bound: BigRational,
    pub satisfied: bool,
    /// Number of family members of each shape. For set families the shape of
    /// `A` is `(|A|, n - |A|)`.
    pub per_shape: BTreeMap<Shape, usize>,
}

impl LymReport {
    fn from_shapes(shapes: impl IntoIterator<Item = Shape>, bound: u64) -> Self {
        let mut per_shape = BTreeMap::new();
        for s in shapes {
            *per_shape.entry(s).or_insert(0usize) += 1;
        }
        let sum = per_shape
            .iter()
            .map(|(shape, &count)| ratio(&BigUint::from(count), &multinomial(shape)))
            .fold(BigRational::zero(), |acc, x| acc + x);
        let bound = integer(bound);
        LymReport { satisfied: sum <= bound, sum, bound, per_shape }
    }

    pub fn to_json(&self) -> Value {
        let shapes: Vec<Value> = self
            .per_shape
            .iter()
            .map(|(s, c)| {
                json!({
                    "shape": s.sizes(),
                    "count": c,
                    "coefficient": multinomial(s).to_string(),
                })
            })
            .collect();
        json!({
            "sum": format_ratio(&self.sum),
            "bound": format_ratio(&self.bound),
            "satisfied": self.satisfied,
            "per_shape": shapes,
        })
    }
}

/// `sum 1 / C(n, |A|)` over the family.
pub fn lym_subsets(f: &SetFamily, bound: u64) -> LymReport {
    let n = f.n();
    LymReport::from_shapes(f.sets().iter().map(|a| Shape::new(vec![a.len(), n - a.len()])), bound)
}

/// `sum 1 / multinomial(n; |A_1|, .., |A_p|)` for compositions of the whole
/// ground set.
pub fn lym_compositions_full(f: &CompositionFamily, bound: u64) -> Result<LymReport> {
    if let Some(item) = f.first_partial_item() {
        return Err(Error::NotFull { item });
    }
    Ok(LymReport::from_shapes(f.items().iter().map(|c| c.shape()), bound))
}

/// Like [`lym_compositions_full`] but the top of each multinomial is the
/// item's own total rather than `n`.
pub fn lym_compositions_partial(f: &CompositionFamily, bound: u64) -> LymReport {
    LymReport::from_shapes(f.items().iter().map(|c| c.shape()), bound)
}

/// Layers of `[n - p + 1]` used by the divergent family: `r` consecutive
/// sizes starting at `ceil((n - p + 1 - r) / 2)`.
pub fn notr_layers(n: u32, p: usize, r: u32) -> Result<RangeInclusive<u32>> {
    if p < 2 || n as usize <= p {
        return invalid(format!("need n > p >= 2, got n = {n}, p = {p}"));
    }
    if r == 0 {
        return invalid("need r >= 1");
    }
    let base = n + 1 - p as u32;
    if r > base + 1 {
        return invalid(format!("{r} layers do not fit in subsets of a {base}-element set"));
    }
    let start = if r > base { 0 } else { (base - r).div_ceil(2) };
    Ok(start..=start + r - 1)
}

/// Closed form `sum_{j in I} C(n-p+1, j) j! / (j+p-1)!` of the divergent
/// family's LYM sum.
pub fn lym_example_notr(n: u32, p: usize, r: u32) -> Result<BigRational> {
    let layers = notr_layers(n, p, r)?;
    let base = n + 1 - p as u32;
    Ok(layers
        .map(|j| {
            let rising: BigUint = (j + 1..=j + p as u32 - 1).map(BigUint::from).product();
            ratio(&binomial(base, i64::from(j)), &rising)
        })
        .fold(BigRational::zero(), |acc, x| acc + x))
}

/// `M_1 >= .. >= M_N >= 0`, `q_k` in `[0, 1]`, `1 <= R <= N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrInstance {
    m: Vec<BigRational>,
    q: Vec<BigRational>,
    r: usize,
}

impl HkrInstance {
    pub fn new(m: Vec<BigRational>, q: Vec<BigRational>, r: usize) -> Result<Self> {
        if m.len() != q.len() {
            return Err(Error::MalformedInstance(format!(
                "{} values but {} weights",
                m.len(),
                q.len()
            )));
        }
        if r == 0 || r > m.len() {
            return Err(Error::MalformedInstance(format!("R = {r} outside 1..={}", m.len())));
        }
        if m.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::MalformedInstance("values are not weakly decreasing".into()));
        }
        if m.last().is_some_and(|x| x.is_negative()) {
            return Err(Error::MalformedInstance("negative value".into()));
        }
        if q.iter().any(|x| x.is_negative() || *x > BigRational::one()) {
            return Err(Error::MalformedInstance("weight outside [0, 1]".into()));
        }
        Ok(HkrInstance { m, q, r })
    }

    pub fn values(&self) -> &[BigRational] {
        &self.m
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Whether `q_1 + .. + q_N <= R`, the premise of the lemma.
    pub fn premise(&self) -> bool {
        self.q.iter().fold(BigRational::zero(), |a, x| a + x) <= integer(self.r as u64)
    }

    pub fn lhs(&self) -> BigRational {
        self.m.iter().zip(&self.q).fold(BigRational::zero(), |acc, (m, q)| acc + m * q)
    }

    pub fn rhs(&self) -> BigRational {
        self.m[..self.r].iter().fold(BigRational::zero(), |acc, m| acc + m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrOutcome {
    pub lhs: BigRational,
    pub rhs: BigRational,
    pub holds: bool,
    pub premise: bool,
}

/// `q_1 M_1 + .. + q_N M_N <= M_1 + .. + M_R`; guaranteed when the premise
/// holds.
pub fn hkr_check(inst: &HkrInstance) -> HkrOutcome {
    let (lhs, rhs) = (inst.lhs(), inst.rhs());
    HkrOutcome { holds: lhs <= rhs, lhs, rhs, premise: inst.premise() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkrEquality {
    /// Direct comparison of both sides.
    pub equality: bool,
    /// Whether the weights have the sharp form: all 1 above `M_R`, all 0
    /// below it, and the block of values equal to `M_R` carrying `R - R'`.
    pub characterization: bool,
    /// `R'`: number of values strictly larger than `M_R`.
    pub r_prime: usize,
    /// `R''`: number of values at least `M_R`.
    pub r_double_prime: usize,
}

pub fn hkr_equality(inst: &HkrInstance) -> Result<HkrEquality> {
    let r = inst.r;
    let m_r = &inst.m[r - 1];
    if m_r.is_zero() {
        return Err(Error::MalformedInstance("M_R = 0".into()));
    }
    if !inst.premise() {
        return Err(Error::MalformedInstance("weights sum to more than R".into()));
    }
    let r_prime = inst.m.iter().take_while(|m| *m > m_r).count();
    let r_double_prime = inst.m.iter().take_while(|m| *m >= m_r).count();
    let one = BigRational::one();
    let upper = inst.q[..r_prime].iter().all(|q| *q == one);
    let lower = inst.q[r_double_prime..].iter().all(Zero::is_zero);
    let block = inst.q[r_prime..r_double_prime]
        .iter()
        .fold(BigRational::zero(), |a, q| a + q);
    let characterization = upper && lower && block == integer((r - r_prime) as u64);
    Ok(HkrEquality {
        equality: inst.lhs() == inst.rhs(),
        characterization,
        r_prime,
        r_double_prime,
    })
}

/// The cardinality bound obtained by feeding LYM occupancies through the
/// rearrangement lemma: `M_1 + .. + M_min(N, R)` over the descending order.
pub fn cardinality_bound_from_lym(n: u32, p: usize, r: u64, scope: Scope) -> Result<BigUint> {
    if r == 0 {
        return invalid("need R >= 1");
    }
    let order = descending_order(n, p, scope);
    let capped = r.min(order.len() as u64);
    Ok(order.sum_of_largest(capped))
}

/// Lemma instance built from a report: `M_k` runs over the descending order
/// and `q_k = |C(shape_k)| / M_k`. Shapes present in the report must belong
/// to the order.
pub fn hkr_instance_from_report(report: &LymReport, n: u32, p: usize, scope: Scope, r: u64) -> Result<HkrInstance> {
    let order = descending_order(n, p, scope);
    let mut unmatched = report.per_shape.len();
    let mut m = Vec::with_capacity(order.len());
    let mut q = Vec::with_capacity(order.len());
    for e in &order.entries {
        let count = report.per_shape.get(&e.shape).copied().unwrap_or(0);
        if count > 0 {
            unmatched -= 1;
        }
        m.push(ratio(&e.value, &BigUint::one()));
        q.push(ratio(&BigUint::from(count), &e.value));
    }
    if unmatched > 0 {
        return invalid("report contains shapes outside the coefficient order");
    }
    let capped = r.min(order.len() as u64) as usize;
    HkrInstance::new(m, q, capped)
}
