//! Set partitions of subsets of `[n]`, stored as restricted-growth label arrays.
//!
//! Position `j` of the label array describes element `j + 1`: label `0` means the
//! element is absent from the ground subset, a positive label is a block id. Block ids
//! first appear in the order `1, 2, 3, ...` when scanning left to right, which makes
//! the encoding canonical. A full partition of `[n]` is one with no `0` labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest ambient ground-set size accepted anywhere in the crate.
pub const MAX_N: usize = 20;

/// A block: a nonempty, strictly increasing list of elements.
pub type Block = Vec<usize>;

/// A set partition of a subset of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialPartition {
    n: usize,
    labels: Vec<u8>,
}

impl PartialPartition {
    /// The partition of the empty subset of `[n]`.
    pub fn empty(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            labels: vec![0; n],
        })
    }

    /// The partition of `[n]` into singletons.
    pub fn all_singletons(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self {
            n,
            labels: (1..=n as u8).collect(),
        })
    }

    /// Validates a label array.
    pub fn from_labels(labels: Vec<u8>) -> Result<Self> {
        check_n(labels.len())?;
        let mut max = 0u8;
        for (j, &v) in labels.iter().enumerate() {
            if v > max + 1 {
                return Err(Error::InvalidLabels(format!(
                    "label {v} at position {} skips ahead of {}",
                    j + 1,
                    max + 1
                )));
            }
            max = max.max(v);
        }
        Ok(Self {
            n: labels.len(),
            labels,
        })
    }

    /// Builds the canonical partition whose blocks equal `blocks` as sets.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self> {
        check_n(n)?;
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::EmptyBlock);
            }
            for &e in block {
                if e < 1 || e > n {
                    return Err(Error::OutOfRange { element: e, n });
                }
                if owner[e - 1].replace(b).is_some() {
                    return Err(Error::DuplicateElement(e));
                }
            }
        }
        Ok(Self::relabel(n, &owner))
    }

    /// Canonical relabeling of an arbitrary block assignment (`None` = absent).
    pub(crate) fn relabel(n: usize, owner: &[Option<usize>]) -> Self {
        let mut map: Vec<(usize, u8)> = Vec::new();
        let mut labels = Vec::with_capacity(n);
        for o in owner {
            let label = match o {
                None => 0,
                Some(b) => match map.iter().find(|(k, _)| k == b) {
                    Some(&(_, l)) => l,
                    None => {
                        let l = map.len() as u8 + 1;
                        map.push((*b, l));
                        l
                    }
                },
            };
            labels.push(label);
        }
        Self { n, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Number of blocks.
    pub fn num_blocks(&self) -> usize {
        self.labels.iter().copied().max().unwrap_or(0) as usize
    }

    /// Number of elements of `[n]` that belong to some block.
    pub fn num_present(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }

    /// True when every element of `[n]` belongs to a block.
    pub fn is_full(&self) -> bool {
        self.labels.iter().all(|&l| l != 0)
    }

    /// First absent element, if any.
    pub fn first_absent(&self) -> Option<usize> {
        self.labels.iter().position(|&l| l == 0).map(|j| j + 1)
    }

    /// Blocks sorted by their minimum element.
    pub fn blocks(&self) -> Vec<Block> {
        let mut blocks: Vec<Block> = vec![Vec::new(); self.num_blocks()];
        for (j, &l) in self.labels.iter().enumerate() {
            if l != 0 {
                blocks[l as usize - 1].push(j + 1);
            }
        }
        blocks
    }
}

/// Free-function form of [`PartialPartition::blocks`].
pub fn blocks_of(p: &PartialPartition) -> Vec<Block> {
    p.blocks()
}

/// Free-function form of [`PartialPartition::from_blocks`].
pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<PartialPartition> {
    PartialPartition::from_blocks(n, blocks)
}

fn check_n(n: usize) -> Result<()> {
    if n > MAX_N {
        Err(Error::TooLargeN(n))
    } else {
        Ok(())
    }
}

// Text form: `n:` followed by blocks joined with `/`, elements joined with `,`.
impl fmt::Display for PartialPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.n)?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for PartialPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let (n, rest) = s.trim().split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| bad("ambient size is not a number"))?;
        let rest = rest.trim();
        let mut blocks = Vec::new();
        if !rest.is_empty() {
            for block in rest.split('/') {
                let block = block.trim();
                if block.is_empty() {
                    return Err(Error::EmptyBlock);
                }
                let elems = block
                    .split(',')
                    .map(|e| e.trim().parse::<usize>())
                    .collect::<std::result::Result<Vec<_>, _>>()
                    .map_err(|_| bad("element is not a number"))?;
                blocks.push(elems);
            }
        }
        Self::from_blocks(n, &blocks)
    }
}

/// A slice of the lexicographic enumeration: all partitions whose label array
/// starts with one of `prefixes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumRange {
    pub n: usize,
    pub partial: bool,
    pub prefixes: Vec<Vec<u8>>,
}

impl EnumRange {
    pub fn iter(&self) -> impl Iterator<Item = PartialPartition> + '_ {
        self.prefixes
            .iter()
            .flat_map(move |prefix| RgsIter::with_prefix(self.n, self.partial, prefix.clone()))
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }
}

/// Lexicographic walk over label arrays, optionally with absent elements, with a
/// fixed prefix.
#[derive(Debug, Clone)]
pub struct RgsIter {
    labels: Vec<u8>,
    // prefix_max[j] = max(labels[..j])
    prefix_max: Vec<u8>,
    fixed: usize,
    min_label: u8,
    done: bool,
    started: bool,
}

impl RgsIter {
    fn with_prefix(n: usize, partial: bool, prefix: Vec<u8>) -> Self {
        let min_label = if partial { 0 } else { 1 };
        let fixed = prefix.len();
        let mut labels = prefix;
        labels.resize(n, min_label);
        let mut it = Self {
            labels,
            prefix_max: vec![0; n + 1],
            fixed,
            min_label,
            done: false,
            started: false,
        };
        it.refresh_max(0);
        it
    }

    fn refresh_max(&mut self, from: usize) {
        for j in from..self.labels.len() {
            self.prefix_max[j + 1] = self.prefix_max[j].max(self.labels[j]);
        }
    }

    fn advance(&mut self) -> bool {
        let n = self.labels.len();
        let mut j = n;
        while j > self.fixed {
            j -= 1;
            if self.labels[j] <= self.prefix_max[j] {
                self.labels[j] += 1;
                for l in &mut self.labels[j + 1..] {
                    *l = self.min_label;
                }
                self.refresh_max(j);
                return true;
            }
        }
        false
    }
}

impl Iterator for RgsIter {
    type Item = PartialPartition;

    fn next(&mut self) -> Option<PartialPartition> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        Some(PartialPartition {
            n: self.labels.len(),
            labels: self.labels.clone(),
        })
    }
}

/// Every partition of `[n]`, in lexicographic label order.
pub fn enumerate_full(n: usize) -> Result<RgsIter> {
    check_n(n)?;
    Ok(RgsIter::with_prefix(n, false, Vec::new()))
}

/// Every partition of every subset of `[n]`, in lexicographic label order (absent first).
pub fn enumerate_partial(n: usize) -> Result<RgsIter> {
    check_n(n)?;
    Ok(RgsIter::with_prefix(n, true, Vec::new()))
}

/// Splits the enumeration into `parts` disjoint ranges.
///
/// The shortest prefix length with at least `parts` valid prefixes is chosen (or the
/// whole array when there are fewer partitions than parts); prefixes are dealt
/// round-robin, so trailing ranges may be empty.
pub fn split_range(n: usize, parts: usize, partial: bool) -> Result<Vec<EnumRange>> {
    check_n(n)?;
    let parts = parts.max(1);
    let min_label = if partial { 0 } else { 1 };
    let mut prefixes: Vec<Vec<u8>> = vec![Vec::new()];
    while prefixes.len() < parts && prefixes.first().is_some_and(|p| p.len() < n) {
        prefixes = prefixes
            .into_iter()
            .flat_map(|p| {
                let top = p.iter().copied().max().unwrap_or(0) + 1;
                (min_label..=top).map(move |l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    let mut ranges: Vec<EnumRange> = (0..parts)
        .map(|_| EnumRange {
            n,
            partial,
            prefixes: Vec::new(),
        })
        .collect();
    for (i, p) in prefixes.into_iter().enumerate() {
        ranges[i % parts].prefixes.push(p);
    }
    Ok(ranges)
}
