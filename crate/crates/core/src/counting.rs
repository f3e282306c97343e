//! Exact counts of partitions avoiding k-crossings, Bell numbers, binomials, and the
//! identity checks built on them.
//!
//! All arithmetic is checked `u64`; an overflow is reported, never wrapped.
//! Enumeration-backed counts are limited by [`CountOptions::cap`] and may be split
//! across threads with [`CountOptions::parts`]; the result does not depend on the
//! split.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::{arcs_classical, arcs_enhanced, ArcSet, Mode};
use crate::bijection::{forward, reverse};
use crate::crossing::{find_witness, max_crossing_number, max_nesting_number, Kind, MAX_K};
use crate::error::{Error, Result};
use crate::partition::{enumerate_full, enumerate_partial, split_range, PartialPartition, MAX_N};

pub const DEFAULT_CAP: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    /// Largest ground-set size that may be enumerated.
    pub cap: usize,
    /// Number of enumeration ranges counted in parallel.
    pub parts: usize,
    /// Test hook: perturbs the left-hand side of identity reports by one.
    #[doc(hidden)]
    pub inject_fault: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            parts: 1,
            inject_fault: false,
        }
    }
}

impl CountOptions {
    pub fn with_parts(parts: usize) -> Self {
        Self {
            parts,
            ..Self::default()
        }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::OutOfBudget { n, cap: self.cap })
        } else {
            Ok(())
        }
    }
}

fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidK(k))
    }
}

fn checked_sum<I: IntoIterator<Item = u64>>(what: &str, it: I) -> Result<u64> {
    it.into_iter()
        .try_fold(0u64, |acc, x| acc.checked_add(x))
        .ok_or_else(|| Error::Overflow(what.to_string()))
}

/// Counts partitions in the (full or partial) enumeration of `[n]` satisfying `pred`.
pub fn count_where<F>(n: usize, partial: bool, opts: &CountOptions, pred: F) -> Result<u64>
where
    F: Fn(&PartialPartition) -> bool + Sync,
{
    opts.check(n)?;
    let ranges = split_range(n, opts.parts, partial)?;
    let counts: Vec<u64> = ranges
        .par_iter()
        .map(|r| r.iter().filter(|p| pred(p)).count() as u64)
        .collect();
    checked_sum("partition count", counts)
}

fn avoids(arcs: &ArcSet, k: usize, mode: Mode) -> bool {
    // k is validated by the callers
    matches!(find_witness(arcs, k, Kind::Crossing, mode), Ok(None))
}

/// `C_k(n)`: partitions of `[n]` with no classical k-crossing.
pub fn count_c(k: usize, n: usize, opts: &CountOptions) -> Result<u64> {
    check_k(k)?;
    count_where(n, false, opts, |p| {
        avoids(&arcs_classical(p), k, Mode::Classical)
    })
}

/// `E_k(n)`: partitions of `[n]` with no enhanced k-crossing.
pub fn count_e(k: usize, n: usize, opts: &CountOptions) -> Result<u64> {
    check_k(k)?;
    count_where(n, false, opts, |p| {
        avoids(&arcs_enhanced(p), k, Mode::Enhanced)
    })
}

/// Partitions of subsets of `[n]` with no enhanced k-crossing.
pub fn count_partial_e(k: usize, n: usize, opts: &CountOptions) -> Result<u64> {
    check_k(k)?;
    count_where(n, true, opts, |p| {
        avoids(&arcs_enhanced(p), k, Mode::Enhanced)
    })
}

/// Exact `binom(n, i)` for `0 <= i <= n <= 62`.
pub fn binomial(n: u64, i: u64) -> Result<u64> {
    if i > n || n > 62 {
        return Err(Error::BinomialRange { n, i });
    }
    let i = i.min(n - i);
    let mut acc: u64 = 1;
    for j in 0..i {
        // acc * (n - j) is divisible by j + 1
        let wide = acc as u128 * (n - j) as u128 / (j + 1) as u128;
        acc = u64::try_from(wide).map_err(|_| Error::Overflow(format!("binomial({n}, {i})")))?;
    }
    Ok(acc)
}

/// Bell number via the Bell triangle.
pub fn bell(n: usize) -> Result<u64> {
    if n == 0 {
        return Ok(1);
    }
    // row r starts with B_r and ends with B_{r+1}
    let mut row = vec![1u64];
    for r in 1..n {
        let mut next = Vec::with_capacity(r + 1);
        next.push(*row.last().unwrap());
        for &x in &row {
            let v = next
                .last()
                .unwrap()
                .checked_add(x)
                .ok_or_else(|| Error::Overflow(format!("bell({n})")))?;
            next.push(v);
        }
        row = next;
    }
    Ok(*row.last().unwrap())
}

/// One independent computation of a quantity that should equal the identity's sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Route {
    pub name: String,
    pub value: u64,
}

/// Both sides of a binomial-transform identity at one `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub family: String,
    pub k: Option<usize>,
    pub n: usize,
    pub lhs: u64,
    pub rhs_terms: Vec<u64>,
    pub rhs: u64,
    /// Additional routes to the same number.
    pub routes: Vec<Route>,
    pub holds: bool,
}

impl IdentityReport {
    fn new(
        family: &str,
        k: Option<usize>,
        n: usize,
        lhs: u64,
        rhs_terms: Vec<u64>,
        routes: Vec<Route>,
    ) -> Result<Self> {
        let rhs = checked_sum("binomial sum", rhs_terms.iter().copied())?;
        Ok(Self {
            family: family.to_string(),
            k,
            n,
            lhs,
            rhs_terms,
            rhs,
            routes,
            holds: lhs == rhs,
        })
    }

    /// True when the identity holds and every extra route agrees with it.
    pub fn all_agree(&self) -> bool {
        self.holds && self.routes.iter().all(|r| r.value == self.lhs)
    }
}

fn weighted_terms(n: usize, mut term: impl FnMut(usize) -> Result<u64>) -> Result<Vec<u64>> {
    (0..=n)
        .map(|i| {
            let b = binomial(n as u64, i as u64)?;
            b.checked_mul(term(i)?)
                .ok_or_else(|| Error::Overflow(format!("binom({n},{i}) term")))
        })
        .collect()
}

/// Checks `C_k(n+1) = sum_i binom(n, i) E_k(i)`, with the right side also counted
/// directly as partitions of subsets of `[n]` avoiding enhanced k-crossings.
pub fn verify_identity(k: usize, n: usize, opts: &CountOptions) -> Result<IdentityReport> {
    check_k(k)?;
    opts.check(n + 1)?;
    let mut lhs = count_c(k, n + 1, opts)?;
    if opts.inject_fault {
        lhs += 1;
    }
    let terms = weighted_terms(n, |i| count_e(k, i, opts))?;
    let direct = count_partial_e(k, n, opts)?;
    IdentityReport::new(
        "C",
        Some(k),
        n,
        lhs,
        terms,
        vec![Route {
            name: "partial-partitions".into(),
            value: direct,
        }],
    )
}

/// Checks `B_{n+1} = sum_i binom(n, i) B_i` by the triangle recurrence, by
/// enumerating partitions of `[n+1]`, and by pulling every partition of `[n+1]` back
/// through the bijection.
pub fn verify_eigensequence(n: usize, opts: &CountOptions) -> Result<IdentityReport> {
    opts.check(n + 1)?;
    let mut lhs = bell(n + 1)?;
    if opts.inject_fault {
        lhs += 1;
    }
    let terms = weighted_terms(n, bell)?;
    let enumerated = count_where(n + 1, false, opts, |_| true)?;
    // reverse is injective on the partitions it is checked against (forward undoes it),
    // and it lands in the partitions of subsets of [n]; matching the partial count
    // makes it onto as well.
    let pulled_back = count_where(n + 1, false, opts, |q| {
        reverse(q).is_ok_and(|p| p.n() == n && forward(&p).is_ok_and(|back| &back == q))
    })?;
    let partial = count_where(n, true, opts, |_| true)?;
    IdentityReport::new(
        "Bell",
        None,
        n,
        lhs,
        terms,
        vec![
            Route {
                name: "enumeration".into(),
                value: enumerated,
            },
            Route {
                name: "bijection".into(),
                value: pulled_back,
            },
            Route {
                name: "partial-enumeration".into(),
                value: partial,
            },
        ],
    )
}

/// Row of a [`DistributionTable`]: how many sources have maximum enhanced statistic
/// exactly `k`, and how many images have maximum classical statistic exactly `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionRow {
    pub kind: Kind,
    pub k: usize,
    pub partial_enhanced: u64,
    pub full_classical: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub n: usize,
    pub rows: Vec<DistributionRow>,
}

impl DistributionTable {
    pub fn columns_match(&self) -> bool {
        self.rows
            .iter()
            .all(|r| r.partial_enhanced == r.full_classical)
    }
}

/// Distribution of maximum crossing and nesting numbers over partitions of subsets of
/// `[n]` (enhanced) and partitions of `[n+1]` (classical), for `k = 0..=k_max`.
pub fn distribution_table(
    n: usize,
    k_max: usize,
    opts: &CountOptions,
) -> Result<DistributionTable> {
    opts.check(n + 1)?;
    if n + 1 > MAX_N {
        return Err(Error::TooLargeN(n + 1));
    }
    let stat = |kind: Kind, a: &ArcSet, mode: Mode| match kind {
        Kind::Crossing => max_crossing_number(a, mode),
        Kind::Nesting => max_nesting_number(a, mode),
    };
    let histogram = |partial: bool, size: usize, kind: Kind, mode: Mode| -> Vec<u64> {
        let iter: Box<dyn Iterator<Item = PartialPartition>> = if partial {
            Box::new(enumerate_partial(size).expect("size checked"))
        } else {
            Box::new(enumerate_full(size).expect("size checked"))
        };
        let mut h = vec![0u64; k_max + 1];
        for p in iter {
            let arcs = match mode {
                Mode::Classical => arcs_classical(&p),
                Mode::Enhanced => arcs_enhanced(&p),
            };
            let s = stat(kind, &arcs, mode);
            if s <= k_max {
                h[s] += 1;
            }
        }
        h
    };
    let mut rows = Vec::new();
    for kind in [Kind::Crossing, Kind::Nesting] {
        let src = histogram(true, n, kind, Mode::Enhanced);
        let img = histogram(false, n + 1, kind, Mode::Classical);
        for k in 0..=k_max {
            rows.push(DistributionRow {
                kind,
                k,
                partial_enhanced: src[k],
                full_classical: img[k],
            });
        }
    }
    Ok(DistributionTable { n, rows })
}

/// Sequence families that can be tabulated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "C")]
    C,
    #[serde(rename = "E")]
    E,
    #[serde(rename = "Bell")]
    Bell,
    #[serde(rename = "partial-E")]
    PartialE,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::C => "C",
            Family::E => "E",
            Family::Bell => "Bell",
            Family::PartialE => "partial-E",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "C" | "c" => Ok(Family::C),
            "E" | "e" => Ok(Family::E),
            "Bell" | "bell" | "B" => Ok(Family::Bell),
            "partial-E" | "partial-e" => Ok(Family::PartialE),
            _ => Err(format!(
                "unknown family {s:?} (expected C, E, Bell or partial-E)"
            )),
        }
    }
}

impl Family {
    /// Value of this family at `(k, n)`; `k` is ignored for Bell numbers.
    pub fn value(self, k: usize, n: usize, opts: &CountOptions) -> Result<u64> {
        match self {
            Family::C => count_c(k, n, opts),
            Family::E => count_e(k, n, opts),
            Family::Bell => bell(n),
            Family::PartialE => count_partial_e(k, n, opts),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceRow {
    pub family: Family,
    pub k: Option<usize>,
    pub n: usize,
    pub value: u64,
}

/// Rows `(family, k, n, value)`, unique on `(family, k, n)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTable {
    pub rows: Vec<SequenceRow>,
}

impl SequenceTable {
    /// Adds a row, replacing any existing row with the same key.
    pub fn insert(&mut self, row: SequenceRow) {
        match self
            .rows
            .iter_mut()
            .find(|r| r.family == row.family && r.k == row.k && r.n == row.n)
        {
            Some(r) => *r = row,
            None => self.rows.push(row),
        }
    }

    pub fn get(&self, family: Family, k: Option<usize>, n: usize) -> Option<u64> {
        self.rows
            .iter()
            .find(|r| r.family == family && r.k == k && r.n == n)
            .map(|r| r.value)
    }

    /// Tabulates one family for `n = 0..=n_max`.
    pub fn compute(family: Family, k: usize, n_max: usize, opts: &CountOptions) -> Result<Self> {
        let mut t = Self::default();
        let k = (family != Family::Bell).then_some(k);
        for n in 0..=n_max {
            let value = family.value(k.unwrap_or(0), n, opts)?;
            t.insert(SequenceRow {
                family,
                k,
                n,
                value,
            });
        }
        Ok(t)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("family,k,n,value\n");
        for r in &self.rows {
            let k = r.k.map(|k| k.to_string()).unwrap_or_default();
            s.push_str(&format!("{},{},{},{}\n", r.family, k, r.n, r.value));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}
