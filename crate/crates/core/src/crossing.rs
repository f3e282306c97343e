//! Detection and counting of k-crossings and k-nestings.
//!
//! Writing a set of k arcs sorted by left endpoint as `(a_1,b_1), ..., (a_k,b_k)`:
//!
//! * a **crossing** has `a_1 < ... < a_k <= b_1 < ... < b_k`, with `a_k < b_1` in the
//!   classical mode;
//! * a **nesting** has `a_1 < ... < a_k <= b_k < ... < b_1`, with `a_k < b_k` in the
//!   classical mode.
//!
//! Loops take part only in the enhanced mode. A loop can never satisfy the strict
//! classical bounds, so classical queries skip loops up front; in the enhanced mode a
//! loop can only be a 1-crossing or the innermost arc of a nesting.

use std::fmt;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::arcs::{Arc, ArcSet, Mode};
use crate::error::{Error, Result};

/// Largest k accepted by the k-parameterised queries.
pub const MAX_K: usize = 8;
/// Largest arc set the brute-force oracle will examine.
pub const ORACLE_MAX_ARCS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Crossing,
    Nesting,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Crossing => "crossing",
            Kind::Nesting => "nesting",
        })
    }
}

/// k arcs certifying a k-crossing or k-nesting, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CrossingWitness {
    pub kind: Kind,
    pub mode: Mode,
    pub arcs: Vec<Arc>,
}

impl CrossingWitness {
    pub fn k(&self) -> usize {
        self.arcs.len()
    }

    /// Checks the chain inequalities for this witness's kind and mode.
    pub fn is_valid(&self) -> bool {
        chain_holds(&self.arcs, self.kind, self.mode)
    }
}

fn chain_holds(arcs: &[Arc], kind: Kind, mode: Mode) -> bool {
    let Some((first, last)) = arcs.first().zip(arcs.last()) else {
        return false;
    };
    if !arcs.windows(2).all(|w| w[0].left < w[1].left) {
        return false;
    }
    let (rights_ok, inner_right) = match kind {
        Kind::Crossing => (
            arcs.windows(2).all(|w| w[0].right < w[1].right),
            first.right,
        ),
        Kind::Nesting => (arcs.windows(2).all(|w| w[0].right > w[1].right), last.right),
    };
    let bound_ok = match mode {
        Mode::Classical => last.left < inner_right,
        Mode::Enhanced => last.left <= inner_right,
    };
    rights_ok && bound_ok
}

fn check_k(k: usize) -> Result<()> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidK(k))
    }
}

/// Depth-first walk over chains in left-endpoint order, pruned on the chain bounds.
struct ChainSearch<'a> {
    arcs: Vec<&'a Arc>,
    kind: Kind,
    mode: Mode,
    chain: Vec<usize>,
}

impl<'a> ChainSearch<'a> {
    fn new(a: &'a ArcSet, kind: Kind, mode: Mode) -> Self {
        let arcs = a
            .arcs()
            .iter()
            .filter(|arc| mode == Mode::Enhanced || !arc.is_loop())
            .collect();
        Self {
            arcs,
            kind,
            mode,
            chain: Vec::new(),
        }
    }

    fn fits(&self, next: &Arc) -> Extend {
        let first = self.arcs[self.chain[0]];
        let last = self.arcs[*self.chain.last().unwrap()];
        match self.kind {
            Kind::Crossing => {
                let within = match self.mode {
                    Mode::Classical => next.left < first.right,
                    Mode::Enhanced => next.left <= first.right,
                };
                if !within {
                    Extend::Stop
                } else if next.right > last.right {
                    Extend::Yes
                } else {
                    Extend::Skip
                }
            }
            Kind::Nesting => {
                // next.left <= next.right < last.right is required, lefts only grow
                if next.left >= last.right {
                    Extend::Stop
                } else if next.right < last.right {
                    Extend::Yes
                } else {
                    Extend::Skip
                }
            }
        }
    }

    fn walk<F>(&mut self, k: usize, start: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.chain.len() == k {
            return visit(&self.chain);
        }
        let need = k - self.chain.len();
        for i in start..self.arcs.len() {
            if self.arcs.len() - i < need {
                break;
            }
            if !self.chain.is_empty() {
                match self.fits(self.arcs[i]) {
                    Extend::Stop => break,
                    Extend::Skip => continue,
                    Extend::Yes => {}
                }
            }
            self.chain.push(i);
            let flow = self.walk(k, i + 1, visit);
            self.chain.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn longest(&mut self, start: usize) -> usize {
        let mut best = self.chain.len();
        for i in start..self.arcs.len() {
            if !self.chain.is_empty() {
                match self.fits(self.arcs[i]) {
                    Extend::Stop => break,
                    Extend::Skip => continue,
                    Extend::Yes => {}
                }
            }
            self.chain.push(i);
            best = best.max(self.longest(i + 1));
            self.chain.pop();
        }
        best
    }

    fn witness(&self, idx: &[usize]) -> CrossingWitness {
        CrossingWitness {
            kind: self.kind,
            mode: self.mode,
            arcs: idx.iter().map(|&i| *self.arcs[i]).collect(),
        }
    }
}

enum Extend {
    Yes,
    Skip,
    Stop,
}

/// Lexicographically least witness (by left endpoints) of a k-crossing or k-nesting.
pub fn find_witness(
    a: &ArcSet,
    k: usize,
    kind: Kind,
    mode: Mode,
) -> Result<Option<CrossingWitness>> {
    check_k(k)?;
    let mut search = ChainSearch::new(a, kind, mode);
    let mut found = None;
    let _ = search.walk(k, 0, &mut |idx| {
        found = Some(idx.to_vec());
        ControlFlow::Break(())
    });
    Ok(found.map(|idx| search.witness(&idx)))
}

pub fn find_k_crossing(a: &ArcSet, k: usize, mode: Mode) -> Result<Option<CrossingWitness>> {
    find_witness(a, k, Kind::Crossing, mode)
}

pub fn find_k_nesting(a: &ArcSet, k: usize, mode: Mode) -> Result<Option<CrossingWitness>> {
    find_witness(a, k, Kind::Nesting, mode)
}

/// True when `a` contains a k-crossing (or k-nesting) in the given mode.
pub fn contains(a: &ArcSet, k: usize, kind: Kind, mode: Mode) -> Result<bool> {
    Ok(find_witness(a, k, kind, mode)?.is_some())
}

/// Number of k-subsets of arcs forming a witness.
pub fn count_k_witnesses(a: &ArcSet, k: usize, kind: Kind, mode: Mode) -> Result<u64> {
    check_k(k)?;
    let mut search = ChainSearch::new(a, kind, mode);
    let mut count = 0u64;
    let _ = search.walk(k, 0, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    });
    Ok(count)
}

fn max_chain(a: &ArcSet, kind: Kind, mode: Mode) -> usize {
    ChainSearch::new(a, kind, mode).longest(0)
}

/// Largest k with a k-crossing; 0 when no arc qualifies.
pub fn max_crossing_number(a: &ArcSet, mode: Mode) -> usize {
    max_chain(a, Kind::Crossing, mode)
}

/// Largest k with a k-nesting; 0 when no arc qualifies.
pub fn max_nesting_number(a: &ArcSet, mode: Mode) -> usize {
    max_chain(a, Kind::Nesting, mode)
}

/// Brute-force witness search over every k-subset of arcs, loops included, checked
/// directly against the defining inequalities.
pub fn oracle_find(
    a: &ArcSet,
    k: usize,
    kind: Kind,
    mode: Mode,
) -> Result<Option<CrossingWitness>> {
    let mut found = None;
    oracle_walk(a, k, kind, mode, |arcs| {
        found = Some(arcs.to_vec());
        true
    })?;
    Ok(found.map(|arcs| CrossingWitness { kind, mode, arcs }))
}

/// Brute-force witness count; see [`oracle_find`].
pub fn oracle_count(a: &ArcSet, k: usize, kind: Kind, mode: Mode) -> Result<u64> {
    let mut count = 0;
    oracle_walk(a, k, kind, mode, |_| {
        count += 1;
        false
    })?;
    Ok(count)
}

fn oracle_walk<F>(a: &ArcSet, k: usize, kind: Kind, mode: Mode, mut hit: F) -> Result<()>
where
    F: FnMut(&[Arc]) -> bool,
{
    check_k(k)?;
    let arcs = a.arcs();
    if arcs.len() > ORACLE_MAX_ARCS {
        return Err(Error::TooManyArcs(arcs.len()));
    }
    if k > arcs.len() {
        return Ok(());
    }
    // combinations in lexicographic index order
    let mut idx: Vec<usize> = (0..k).collect();
    let mut pick = Vec::with_capacity(k);
    loop {
        pick.clear();
        pick.extend(idx.iter().map(|&i| arcs[i]));
        pick.sort();
        if oracle_accepts(&pick, kind, mode) && hit(&pick) {
            return Ok(());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            if idx[i] < arcs.len() - k + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn oracle_accepts(s: &[Arc], kind: Kind, mode: Mode) -> bool {
    let k = s.len();
    let strict = mode == Mode::Classical;
    let lt = |x: usize, y: usize, allow_eq: bool| if allow_eq { x <= y } else { x < y };
    for i in 0..k {
        if s[i].left > s[i].right || (strict && s[i].left == s[i].right) {
            return false;
        }
        for j in i + 1..k {
            if s[i].left >= s[j].left {
                return false;
            }
            let ok = match kind {
                Kind::Crossing => s[i].right < s[j].right,
                Kind::Nesting => s[i].right > s[j].right,
            };
            if !ok {
                return false;
            }
        }
    }
    match kind {
        Kind::Crossing => lt(s[k - 1].left, s[0].right, !strict),
        Kind::Nesting => lt(s[k - 1].left, s[k - 1].right, !strict),
    }
}

/// Maximum crossing/nesting numbers and witness counts for every k up to the maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingReport {
    pub mode: Mode,
    pub max_crossing: usize,
    pub max_nesting: usize,
    pub counts: Vec<WitnessCount>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCount {
    pub kind: Kind,
    pub k: usize,
    pub count: u64,
}

impl CrossingReport {
    pub fn new(a: &ArcSet, mode: Mode) -> Result<Self> {
        let max_crossing = max_crossing_number(a, mode);
        let max_nesting = max_nesting_number(a, mode);
        let mut counts = Vec::new();
        for (kind, max) in [(Kind::Crossing, max_crossing), (Kind::Nesting, max_nesting)] {
            for k in 1..=max.min(MAX_K) {
                counts.push(WitnessCount {
                    kind,
                    k,
                    count: count_k_witnesses(a, k, kind, mode)?,
                });
            }
        }
        Ok(Self {
            mode,
            max_crossing,
            max_nesting,
            counts,
        })
    }

    pub fn count(&self, kind: Kind, k: usize) -> u64 {
        self.counts
            .iter()
            .find(|c| c.kind == kind && c.k == k)
            .map_or(0, |c| c.count)
    }
}
