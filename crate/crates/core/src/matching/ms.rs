//! Matching statistics, augmented with the interval indices the long-LEM
//! query needs to start from a row.
//!
//! Computed with the uncompressed suffix array. No compressed-space method
//! is used here.

use crate::error::{Error, Result};
use crate::index::Optbwtrl;
use crate::text::SuffixStructures;

/// Matching statistics at one pattern position f.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MsEntry {
    /// Length of the longest prefix of `P[f..]` occurring in the text.
    pub len: usize,
    /// Text position of that occurrence (0 when `len` is 0).
    pub suff: usize,
    /// SA row of `suff`, the smallest among occurrences.
    pub row: usize,
    /// LF interval of `row`.
    pub i_lf: usize,
    /// φ interval of `suff`.
    pub w_phi: usize,
    /// φ⁻¹ interval of `suff`.
    pub x_phi_inv: usize,
}

/// Matching statistics of a whole pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedMs {
    pattern: Vec<u8>,
    entries: Vec<MsEntry>,
}

impl AugmentedMs {
    /// Assembles statistics from parts; `entries[f - 1]` belongs to position f.
    pub fn from_entries(pattern: Vec<u8>, entries: Vec<MsEntry>) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if entries.len() != pattern.len() {
            return Err(Error::Internal(format!(
                "{} matching statistics entries for a pattern of length {}",
                entries.len(),
                pattern.len()
            )));
        }
        Ok(AugmentedMs { pattern, entries })
    }

    pub fn pattern(&self) -> &[u8] {
        &self.pattern
    }

    /// Pattern length m.
    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Entry for 1-based pattern position `f`.
    pub fn get(&self, f: usize) -> &MsEntry {
        &self.entries[f - 1]
    }

    pub fn entries(&self) -> &[MsEntry] {
        &self.entries
    }
}

/// Matching statistics by binary search over the suffix array, one pattern
/// position at a time.
pub fn compute_matching_statistics(s: &SuffixStructures, ix: &Optbwtrl, pattern: &[u8]) -> Result<AugmentedMs> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let n = s.n();
    let suffix = |row: usize| &s.text[s.sa[row]..];
    let rows = &s.sa[1..];
    let mut entries = Vec::with_capacity(pattern.len());
    for f in 0..pattern.len() {
        let q = &pattern[f..];
        let pos = 1 + rows.partition_point(|&t| &s.text[t..] < q);
        let common = |row: usize| suffix(row).iter().zip(q).take_while(|(a, b)| a == b).count();
        let mut len = 0;
        if pos > 1 {
            len = common(pos - 1);
        }
        if pos <= n {
            len = len.max(common(pos));
        }
        if len == 0 {
            entries.push(MsEntry::default());
            continue;
        }
        let prefix = &q[..len];
        let row = 1 + rows.partition_point(|&t| {
            let suf = &s.text[t..];
            &suf[..suf.len().min(len)] < prefix
        });
        let suff = s.sa[row];
        entries.push(MsEntry {
            len,
            suff,
            row,
            i_lf: ix.f_lf().interval_of(row)?,
            w_phi: ix.f_phi().interval_of(suff)?,
            x_phi_inv: ix.f_phi_inv().interval_of(suff)?,
        });
    }
    AugmentedMs::from_entries(pattern.to_vec(), entries)
}
