//! Long locally maximal exact matches (LEMs) between a pattern and the
//! indexed text.
//!
//! A LEM is a common substring `P[i..i+len) = T[t..t+len)` that cannot be
//! extended by one symbol to the left in both strings at once, nor to the
//! right. [`long_lem_query`] reports every LEM of length at least 𝓛 by
//! sliding a window of length 𝓛 from the end of the pattern to the start,
//! keeping the text suffixes that match the current window in a dictionary
//! keyed by diagonal.

mod interval;
mod long;
mod ms;

pub use interval::{extend_salcp, SaLcpInterval};
pub use long::{
    advance_long_interval, long_lem_query, long_lem_query_direct, long_lem_query_direct_into, long_lem_query_into,
    output_matches_down, output_matches_up, DiagonalDict,
};
pub use ms::{compute_matching_statistics, AugmentedMs, MsEntry};

use std::collections::BTreeSet;

/// A match `P[p_start..p_start+len) = T[t_start..t_start+len)`, 1-based.
///
/// Ordering is by pattern start, then text start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lem {
    pub p_start: usize,
    pub t_start: usize,
    pub len: usize,
}

/// Receives matches as they are found.
pub trait LemSink {
    fn emit(&mut self, lem: Lem);
}

impl LemSink for Vec<Lem> {
    fn emit(&mut self, lem: Lem) {
        self.push(lem);
    }
}

impl LemSink for BTreeSet<Lem> {
    fn emit(&mut self, lem: Lem) {
        self.insert(lem);
    }
}

/// Adapts a closure into a [`LemSink`].
pub struct FnSink<F>(pub F);

impl<F: FnMut(Lem)> LemSink for FnSink<F> {
    fn emit(&mut self, lem: Lem) {
        (self.0)(lem)
    }
}
