//! Arc diagrams of partitions.
//!
//! Classical arcs join consecutive elements of a block. The enhanced convention adds a
//! loop `(u, u)` for every singleton block `{u}`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::partition::PartialPartition;
use crate::union_find::UnionFind;

/// Which arc convention (and which crossing inequalities) apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Enhanced,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Classical => "classical",
            Mode::Enhanced => "enhanced",
        })
    }
}

/// A pair `left <= right` of elements consecutive within a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Arc {
    pub left: usize,
    pub right: usize,
}

impl Arc {
    pub fn new(left: usize, right: usize) -> Self {
        debug_assert!(1 <= left && left <= right);
        Self { left, right }
    }

    pub fn is_loop(&self) -> bool {
        self.left == self.right
    }

    pub fn length(&self) -> usize {
        self.right - self.left
    }
}

impl From<[usize; 2]> for Arc {
    fn from([left, right]: [usize; 2]) -> Self {
        Self { left, right }
    }
}

impl From<Arc> for [usize; 2] {
    fn from(a: Arc) -> Self {
        [a.left, a.right]
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// Arcs of one partition, sorted by left endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArcSet {
    pub mode: Mode,
    arcs: Vec<Arc>,
}

impl ArcSet {
    /// Builds an arc set from arbitrary arcs, sorting them. Used for hand-built
    /// fixtures; extraction from a partition goes through [`arcs_classical`] and
    /// [`arcs_enhanced`].
    pub fn from_arcs(mode: Mode, mut arcs: Vec<Arc>) -> Self {
        arcs.sort();
        Self { mode, arcs }
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn loops(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.iter().filter(|a| a.is_loop())
    }

    /// Checks that left endpoints are distinct, right endpoints are distinct, and
    /// classical sets carry no loops.
    pub fn endpoints_distinct(&self) -> bool {
        let mut lefts: Vec<usize> = self.arcs.iter().map(|a| a.left).collect();
        let mut rights: Vec<usize> = self.arcs.iter().map(|a| a.right).collect();
        lefts.sort_unstable();
        rights.sort_unstable();
        let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        distinct(&lefts)
            && distinct(&rights)
            && (self.mode == Mode::Enhanced || self.arcs.iter().all(|a| !a.is_loop()))
    }
}

/// One arc per pair of consecutive elements within a block.
pub fn arcs_classical(p: &PartialPartition) -> ArcSet {
    let mut last: Vec<usize> = vec![0; p.num_blocks() + 1];
    let mut arcs = Vec::new();
    for (j, &l) in p.labels().iter().enumerate() {
        if l == 0 {
            continue;
        }
        let prev = &mut last[l as usize];
        if *prev != 0 {
            arcs.push(Arc::new(*prev, j + 1));
        }
        *prev = j + 1;
    }
    ArcSet::from_arcs(Mode::Classical, arcs)
}

/// Classical arcs plus a loop for each singleton block.
pub fn arcs_enhanced(p: &PartialPartition) -> ArcSet {
    let mut arcs = arcs_classical(p).arcs;
    let mut size = vec![0usize; p.num_blocks() + 1];
    for &l in p.labels() {
        size[l as usize] += 1;
    }
    for (j, &l) in p.labels().iter().enumerate() {
        if l != 0 && size[l as usize] == 1 {
            arcs.push(Arc::new(j + 1, j + 1));
        }
    }
    ArcSet::from_arcs(Mode::Enhanced, arcs)
}

/// `right - left` for each arc, sorted ascending.
pub fn distance_multiset(a: &ArcSet) -> Vec<usize> {
    let mut d: Vec<usize> = a.arcs.iter().map(Arc::length).collect();
    d.sort_unstable();
    d
}

/// Rebuilds the partition of a subset of `[n]` whose enhanced arcs are `arcs`: arc
/// endpoints are merged, loops become singletons, untouched elements are absent.
pub fn partition_from_arcs(n: usize, arcs: &[Arc]) -> Result<PartialPartition> {
    let mut uf = UnionFind::new(n);
    let mut present = vec![false; n];
    for a in arcs {
        present[a.left - 1] = true;
        present[a.right - 1] = true;
        uf.union(a.left - 1, a.right - 1);
    }
    let owner: Vec<Option<usize>> = (0..n).map(|j| present[j].then(|| uf.find(j))).collect();
    PartialPartition::from_labels(PartialPartition::relabel(n, &owner).labels().to_vec())
}
