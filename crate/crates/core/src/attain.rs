//! First appearances of part sizes in the descending order of multinomial
//! coefficients, and the non-attainment criteria built on them.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::coeffs::{descending_order, saturating_pow, DescendingOrder, Scope};
use crate::error::{invalid, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Appearance {
    pub size: u32,
    /// 1-based rank of the first coefficient whose form contains `size`.
    pub rank: usize,
    pub value: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstAppearanceTable {
    pub n: u32,
    pub p: usize,
    pub nu: u32,
    pub rho: u32,
    pub by_size: BTreeMap<u32, Appearance>,
    /// `L*_1, L*_2, ..`: appearances in order, sizes appearing together
    /// sorted ascending.
    pub lstar: Vec<Appearance>,
}

impl FirstAppearanceTable {
    /// `L*_k` for 1-based `k`.
    pub fn lstar_value(&self, k: usize) -> Option<&BigUint> {
        k.checked_sub(1).and_then(|i| self.lstar.get(i)).map(|a| &a.value)
    }

    pub fn l_value(&self, size: u32) -> Option<&BigUint> {
        self.by_size.get(&size).map(|a| &a.value)
    }

    pub fn to_json(&self) -> Value {
        let entry = |a: &Appearance| json!({"size": a.size, "rank": a.rank, "value": a.value.to_string()});
        json!({
            "n": self.n,
            "p": self.p,
            "nu": self.nu,
            "rho": self.rho,
            "tie_break": "ascending size",
            "lstar": self.lstar.iter().map(entry).collect::<Vec<_>>(),
        })
    }
}

fn table_from(order: &DescendingOrder) -> FirstAppearanceTable {
    let (n, p) = (order.n, order.p);
    let mut by_size = BTreeMap::new();
    let mut lstar = Vec::new();
    for e in &order.entries {
        let mut sizes = e.shape.sizes().to_vec();
        sizes.sort_unstable();
        sizes.dedup();
        for size in sizes {
            if !by_size.contains_key(&size) {
                let a = Appearance { size, rank: e.rank, value: e.value.clone() };
                by_size.insert(size, a.clone());
                lstar.push(a);
            }
        }
    }
    FirstAppearanceTable { n, p, nu: n / p as u32, rho: n % p as u32, by_size, lstar }
}

pub fn first_appearances(n: u32, p: usize) -> Result<FirstAppearanceTable> {
    if p < 2 {
        return invalid(format!("need p >= 2, got {p}"));
    }
    Ok(table_from(&descending_order(n, p, Scope::ExactTotal)))
}

/// A strict comparison `lhs > rhs` between two coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub holds: bool,
    pub lhs: BigUint,
    pub rhs: BigUint,
    /// `r^(p-1)`.
    pub rank: u64,
}

impl Criterion {
    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "rank": self.rank,
        })
    }
}

fn check_range(n: u32, p: usize, r: u32) -> Result<()> {
    if r < 2 || p < 3 || (n as usize) < p {
        return invalid(format!("parameter range violated: need r >= 2, p >= 3, n >= p (n = {n}, p = {p}, r = {r})"));
    }
    // with r = n + 1 every size is among the first r and the whole universe
    // is feasible, so the criteria would misreport
    if r > n {
        return invalid(format!("parameter range violated: need r <= n (n = {n}, r = {r})"));
    }
    Ok(())
}

/// `L*_r > M_(r^(p-1)+1)`: when true, the sum of the `r^(p-1)` largest
/// coefficients is not the size of any family of full compositions with
/// every coordinate `r`-chain-free.
pub fn criterion_thm_attain(n: u32, p: usize, r: u32) -> Result<Criterion> {
    check_range(n, p, r)?;
    let order = descending_order(n, p, Scope::ExactTotal);
    let table = table_from(&order);
    let rank = saturating_pow(u64::from(r), p - 1);
    let lhs = table.lstar_value(r as usize).cloned().unwrap_or_default();
    let rhs = order.value_at(usize::try_from(rank).unwrap_or(usize::MAX).saturating_add(1));
    Ok(Criterion { holds: lhs > rhs, lhs, rhs, rank })
}

/// `L*_r > L*_(r+1)`.
pub fn criterion_cor_attain(n: u32, p: usize, r: u32) -> Result<Criterion> {
    check_range(n, p, r)?;
    let table = first_appearances(n, p)?;
    let lhs = table.lstar_value(r as usize).cloned().unwrap_or_default();
    let rhs = table.lstar_value(r as usize + 1).cloned().unwrap_or_default();
    Ok(Criterion { holds: lhs > rhs, lhs, rhs, rank: saturating_pow(u64::from(r), p - 1) })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaCheck {
    /// The first `r` sizes in order of appearance.
    pub sizes: Vec<u32>,
    /// Coefficients all of whose sizes are among `sizes`.
    pub count: usize,
    pub total: BigUint,
    pub rank: u64,
    /// Sum of the `rank` largest coefficients.
    pub bound: BigUint,
    pub ok: bool,
}

impl LemmaCheck {
    pub fn to_json(&self) -> Value {
        json!({
            "sizes": self.sizes,
            "count": self.count,
            "total": self.total.to_string(),
            "rank": self.rank,
            "bound": self.bound.to_string(),
            "ok": self.ok,
        })
    }
}

pub fn attainlemma_check(n: u32, p: usize, r: u32) -> Result<LemmaCheck> {
    if r < 2 || p < 3 {
        return invalid(format!("parameter range violated: need r >= 2, p >= 3 (p = {p}, r = {r})"));
    }
    let order = descending_order(n, p, Scope::ExactTotal);
    let table = table_from(&order);
    if table.lstar.len() < r as usize {
        return invalid(format!("only {} sizes exist, fewer than r = {r}", table.lstar.len()));
    }
    let mut sizes: Vec<u32> = table.lstar[..r as usize].iter().map(|a| a.size).collect();
    sizes.sort_unstable();
    let qualifying: Vec<&BigUint> = order
        .entries
        .iter()
        .filter(|e| e.shape.sizes().iter().all(|s| sizes.contains(s)))
        .map(|e| &e.value)
        .collect();
    let count = qualifying.len();
    let total: BigUint = qualifying.into_iter().sum();
    let rank = saturating_pow(u64::from(r), p - 1);
    let bound = order.sum_of_largest(rank);
    let ok = (count as u64) < rank && total < bound;
    Ok(LemmaCheck { sizes, count, total, rank, bound, ok })
}

/// `=` or `>` between consecutive entries of `L*_1..L*_6`.
pub fn lstar_pattern(table: &FirstAppearanceTable) -> String {
    let head: Vec<&BigUint> = table.lstar.iter().take(6).map(|a| &a.value).collect();
    head.windows(2).map(|w| if w[0] == w[1] { '=' } else { '>' }).collect()
}

/// The pattern predicted from `n` and `p` alone, cut to `len` symbols.
pub fn predicted_pattern(n: u32, p: usize, len: usize) -> String {
    let (nu, rho) = (n / p as u32, n % p as u32);
    let mut out: Vec<char> = if rho == 0 { ">=>>>".chars().collect() } else { "=>>>>".chars().collect() };
    if rho != 0 && rho == p as u32 - 1 && p >= 4 && nu == 1 {
        out[3] = '=';
    }
    if rho == 1 && p == 3 && nu == 3 {
        out[4] = '=';
    }
    out.into_iter().take(len).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepStatus {
    /// `L*_r > L*_(r+1)`.
    Cor,
    /// Only the weaker comparison with `M_(r^(p-1)+1)` holds.
    Thm,
    Undecided,
    OutOfRange,
}

impl SweepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SweepStatus::Cor => "cor",
            SweepStatus::Thm => "thm",
            SweepStatus::Undecided => "undecided",
            SweepStatus::OutOfRange => "out-of-range",
        }
    }
}

/// The listed exceptional classes of parameters.
pub fn is_listed_exception(n: u32, p: usize, r: u32) -> bool {
    let divisible = n % p as u32 == 0;
    (r == 2 && divisible && (3..=5).contains(&p))
        || (r == 4 && p >= 4 && n as usize == 2 * p - 1)
        || (r == 5 && p == 3 && n == 10)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: u32,
    pub p: usize,
    pub nu: u32,
    pub rho: u32,
    pub lstar: Vec<BigUint>,
    pub pattern: String,
    pub predicted: String,
    /// `(r, status, listed exception)` for each swept `r`.
    pub statuses: Vec<(u32, SweepStatus, bool)>,
}

impl SweepRow {
    pub fn matches(&self) -> bool {
        self.pattern == self.predicted
    }
}

pub const SWEEP_R: std::ops::RangeInclusive<u32> = 2..=5;

pub fn sweep_row(n: u32, p: usize) -> Result<SweepRow> {
    let table = first_appearances(n, p)?;
    let pattern = lstar_pattern(&table);
    let predicted = predicted_pattern(n, p, pattern.len());
    let mut statuses = Vec::new();
    for r in SWEEP_R {
        let status = if check_range(n, p, r).is_err() {
            SweepStatus::OutOfRange
        } else if criterion_cor_attain(n, p, r)?.holds {
            SweepStatus::Cor
        } else if criterion_thm_attain(n, p, r)?.holds {
            SweepStatus::Thm
        } else {
            SweepStatus::Undecided
        };
        statuses.push((r, status, is_listed_exception(n, p, r)));
    }
    Ok(SweepRow {
        n,
        p,
        nu: table.nu,
        rho: table.rho,
        lstar: table.lstar.iter().take(6).map(|a| a.value.clone()).collect(),
        pattern,
        predicted,
        statuses,
    })
}

/// Rows for every `p` in `p_range` and `n` in `n_range` with `n >= p`.
pub fn proposition_sweep(
    p_range: std::ops::RangeInclusive<usize>,
    n_range: std::ops::RangeInclusive<u32>,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for p in p_range {
        for n in n_range.clone() {
            if n as usize >= p {
                rows.push(sweep_row(n, p)?);
            }
        }
    }
    Ok(rows)
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("n,p,nu,rho,lstar,pattern,predicted,matches");
    for r in SWEEP_R {
        let _ = write!(out, ",r{r}");
    }
    out.push_str(",exceptions\n");
    for row in rows {
        let lstar: Vec<String> = row.lstar.iter().map(|v| v.to_string()).collect();
        let _ = write!(
            out,
            "{},{},{},{},{},{},{},{}",
            row.n,
            row.p,
            row.nu,
            row.rho,
            lstar.join(";"),
            row.pattern,
            row.predicted,
            row.matches()
        );
        for (_, status, _) in &row.statuses {
            let _ = write!(out, ",{}", status.as_str());
        }
        let exceptions: Vec<String> =
            row.statuses.iter().filter(|s| s.2).map(|s| s.0.to_string()).collect();
        let _ = writeln!(out, ",{}", exceptions.join(";"));
    }
    out
}
