//! Set partitions of subsets of `[n]`, their classical and enhanced arc diagrams,
//! k-crossing and k-nesting detection, and the bijection onto partitions of `[n+1]`
//! that carries enhanced crossings to classical ones.
//!
//! The counting module uses the bijection to check
//! `C_k(n+1) = sum_i binom(n, i) E_k(i)` exhaustively, where `C_k` and `E_k` count
//! partitions of `[n]` avoiding classical and enhanced k-crossings.

pub mod arcs;
pub mod bijection;
pub mod cli;
pub mod counting;
pub mod crossing;
pub mod diagram;
pub mod error;
pub mod oeis;
pub mod partition;
pub mod union_find;

pub use arcs::{arcs_classical, arcs_enhanced, distance_multiset, Arc, ArcSet, Mode};
pub use bijection::{forward, reverse, witness_forward, witness_reverse};
pub use crossing::{
    count_k_witnesses, find_k_crossing, find_k_nesting, max_crossing_number, max_nesting_number,
    oracle_count, oracle_find, CrossingReport, CrossingWitness, Kind,
};
pub use error::{Error, Result};
pub use partition::{enumerate_full, enumerate_partial, split_range, EnumRange, PartialPartition};
