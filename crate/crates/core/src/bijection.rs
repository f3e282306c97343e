//! The map from partitions of subsets of `[n]` to partitions of `[n+1]`.
//!
//! Forward: every enhanced arc `(x, y)` of the source (loops included) becomes the
//! classical arc `(x, y + 1)` of the image; elements of `[n+1]` touched by no arc are
//! singletons. Reverse: a classical arc `(x, x + 1)` becomes the loop `(x, x)`, any
//! other classical arc `(x, y)` becomes `(x, y - 1)`.

use crate::arcs::{arcs_classical, arcs_enhanced, partition_from_arcs, Arc, Mode};
use crate::crossing::CrossingWitness;
use crate::error::{Error, Result};
use crate::partition::{PartialPartition, MAX_N};
use crate::union_find::UnionFind;

/// Image of `p` (over `[n]`) as a full partition of `[n+1]`.
pub fn forward(p: &PartialPartition) -> Result<PartialPartition> {
    let m = p.n() + 1;
    if m > MAX_N {
        return Err(Error::TooLargeN(m));
    }
    let mut uf = UnionFind::new(m);
    for arc in arcs_enhanced(p).arcs() {
        // pair v<w joins v and w+1; singleton u joins u and u+1
        uf.union(arc.left - 1, arc.right);
    }
    let owner: Vec<Option<usize>> = (0..m).map(|j| Some(uf.find(j))).collect();
    Ok(PartialPartition::relabel(m, &owner))
}

/// Preimage of a full partition `q` of `[n+1]`, as a partition of a subset of `[n]`.
pub fn reverse(q: &PartialPartition) -> Result<PartialPartition> {
    if let Some(absent) = q.first_absent() {
        return Err(Error::NotFull(absent));
    }
    let n = q.n().saturating_sub(1);
    let arcs: Vec<Arc> = arcs_classical(q)
        .arcs()
        .iter()
        .map(|a| Arc::new(a.left, a.right - 1))
        .collect();
    partition_from_arcs(n, &arcs)
}

/// Image of an enhanced witness of `p` as a classical witness of `forward(p)`.
///
/// Returns `None` unless `w` is an enhanced witness.
pub fn witness_forward(w: &CrossingWitness) -> Option<CrossingWitness> {
    (w.mode == Mode::Enhanced).then(|| CrossingWitness {
        kind: w.kind,
        mode: Mode::Classical,
        arcs: w
            .arcs
            .iter()
            .map(|a| Arc::new(a.left, a.right + 1))
            .collect(),
    })
}

/// Image of a classical witness of `q` as an enhanced witness of `reverse(q)`.
///
/// Returns `None` unless `w` is a classical witness.
pub fn witness_reverse(w: &CrossingWitness) -> Option<CrossingWitness> {
    (w.mode == Mode::Classical && w.arcs.iter().all(|a| a.left < a.right)).then(|| {
        CrossingWitness {
            kind: w.kind,
            mode: Mode::Enhanced,
            arcs: w
                .arcs
                .iter()
                .map(|a| Arc::new(a.left, a.right - 1))
                .collect(),
        }
    })
}
