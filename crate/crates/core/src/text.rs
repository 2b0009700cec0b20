//! Texts, uncompressed suffix structures and the run-length BWT.
//!
//! Everything here is the desk-scale ground truth: the compressed index is
//! built from these arrays and every compressed query is tested against them.
//!
//! All positions are 1-based. Arrays in [`SuffixStructures`] are padded with
//! an unused slot at index 0 so that `sa[i]` reads exactly like the usual
//! formulas.

use crate::error::{Error, Result};

/// Dense code of the terminating sentinel `$`.
pub const SENTINEL: u8 = 0;
/// Dense code of the record separator used for multi-record input.
pub const SEPARATOR: u8 = 1;

const SENTINEL_BYTE: u8 = b'$';
// Only used when rendering a separator back to bytes.
const SEPARATOR_BYTE: u8 = b'#';

/// Mapping between original bytes and dense symbols `[0, σ)`.
///
/// Dense order follows byte order, except that the sentinel is always `0`
/// and (when present) the record separator is always `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    bytes: Vec<u8>,
    has_separator: bool,
}

impl Alphabet {
    fn from_bytes(present: &[bool; 256], has_separator: bool) -> Result<Self> {
        let mut bytes = vec![SENTINEL_BYTE];
        if has_separator {
            bytes.push(SEPARATOR_BYTE);
        }
        bytes.extend((0..=255u8).filter(|&b| b != SENTINEL_BYTE && present[b as usize]));
        // With a separator some byte is always absent, and it needs a free code.
        if bytes.len() > 256 || (has_separator && bytes.len() > 255) {
            return Err(Error::AlphabetTooLarge(bytes.len()));
        }
        Ok(Alphabet { bytes, has_separator })
    }

    /// Rebuilds an alphabet from its dense-to-byte table.
    pub fn from_table(bytes: Vec<u8>, has_separator: bool) -> Result<Self> {
        if bytes.is_empty() || bytes[0] != SENTINEL_BYTE || bytes.len() > 256 {
            return Err(Error::Construction("alphabet table must start with '$'".into()));
        }
        Ok(Alphabet { bytes, has_separator })
    }

    /// Number of dense symbols, σ.
    pub fn sigma(&self) -> usize {
        self.bytes.len()
    }

    pub fn has_separator(&self) -> bool {
        self.has_separator
    }

    /// Dense-to-byte table.
    pub fn table(&self) -> &[u8] {
        &self.bytes
    }

    fn lookup(&self) -> [Option<u8>; 256] {
        let mut table = [None; 256];
        for (dense, &b) in self.bytes.iter().enumerate() {
            if self.has_separator && dense == SEPARATOR as usize {
                continue;
            }
            table[b as usize] = Some(dense as u8);
        }
        table
    }

    /// Encodes a pattern into dense symbols.
    ///
    /// Bytes that do not occur in the text are mapped to σ, a code that no
    /// text position carries, so they never match. (When σ = 256 every byte
    /// occurs and no such code is needed.)
    pub fn encode(&self, raw: &[u8]) -> Vec<u8> {
        let table = self.lookup();
        let absent = self.sigma().min(255) as u8;
        raw.iter().map(|&b| table[b as usize].unwrap_or(absent)).collect()
    }

    /// Renders dense symbols back to bytes. Codes outside the alphabet become `?`.
    pub fn decode(&self, dense: &[u8]) -> Vec<u8> {
        dense
            .iter()
            .map(|&c| self.bytes.get(c as usize).copied().unwrap_or(b'?'))
            .collect()
    }
}

/// A validated text over a dense alphabet, terminated by a unique sentinel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<u8>,
    alphabet: Alphabet,
}

impl Text {
    /// Validates raw bytes as a single text. See [`validate_text`].
    pub fn new(raw: &[u8]) -> Result<Self> {
        validate_text(raw)
    }

    /// Concatenates several records, separated by [`SEPARATOR`] and closed by
    /// a single sentinel.
    pub fn from_records<R: AsRef<[u8]>>(records: &[R]) -> Result<Self> {
        if records.is_empty() || records.iter().all(|r| r.as_ref().is_empty()) {
            return Err(Error::EmptyInput);
        }
        let mut offset = 0;
        let mut present = [false; 256];
        for rec in records {
            let rec = rec.as_ref();
            if let Some(at) = rec.iter().position(|&b| b == SENTINEL_BYTE) {
                return Err(Error::EmbeddedSentinel(offset + at + 1));
            }
            for &b in rec {
                present[b as usize] = true;
            }
            offset += rec.len() + 1;
        }
        let alphabet = Alphabet::from_bytes(&present, records.len() > 1)?;
        let table = alphabet.lookup();
        let mut symbols = Vec::with_capacity(offset);
        for (idx, rec) in records.iter().enumerate() {
            if idx > 0 {
                symbols.push(SEPARATOR);
            }
            symbols.extend(rec.as_ref().iter().map(|&b| table[b as usize].unwrap()));
        }
        symbols.push(SENTINEL);
        Ok(Text { symbols, alphabet })
    }

    /// Wraps already-encoded symbols, e.g. a text recovered from an index.
    pub fn from_dense(symbols: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        match symbols.iter().position(|&c| c == SENTINEL) {
            None => return Err(Error::EmptyInput),
            Some(at) if at + 1 != symbols.len() => return Err(Error::EmbeddedSentinel(at + 1)),
            Some(_) => {}
        }
        if let Some(at) = symbols.iter().position(|&c| c as usize >= alphabet.sigma()) {
            return Err(Error::Construction(format!("symbol at position {} is outside the alphabet", at + 1)));
        }
        Ok(Text { symbols, alphabet })
    }

    /// Text length n, including the sentinel.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Alphabet size σ.
    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    /// Dense symbols, 0-based slice (the sentinel is the last element).
    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Symbol at 1-based position `i`.
    pub fn at(&self, i: usize) -> u8 {
        self.symbols[i - 1]
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Encodes a raw pattern with this text's alphabet.
    pub fn encode_pattern(&self, raw: &[u8]) -> Vec<u8> {
        self.alphabet.encode(raw)
    }

    /// Original bytes of the text, sentinel included.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.alphabet.decode(&self.symbols)
    }
}

/// Checks the sentinel convention and remaps the alphabet to dense codes.
///
/// The sentinel is appended when absent. A `$` anywhere but the final
/// position is rejected.
pub fn validate_text(raw: &[u8]) -> Result<Text> {
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    let body = match raw.split_last() {
        Some((&SENTINEL_BYTE, body)) => body,
        _ => raw,
    };
    if let Some(at) = body.iter().position(|&b| b == SENTINEL_BYTE) {
        return Err(Error::EmbeddedSentinel(at + 1));
    }
    let mut present = [false; 256];
    for &b in body {
        present[b as usize] = true;
    }
    let alphabet = Alphabet::from_bytes(&present, false)?;
    let table = alphabet.lookup();
    let mut symbols: Vec<u8> = body.iter().map(|&b| table[b as usize].unwrap()).collect();
    symbols.push(SENTINEL);
    Ok(Text { symbols, alphabet })
}

/// Strips one trailing line terminator from a raw text file.
pub fn parse_raw(bytes: &[u8]) -> &[u8] {
    let bytes = bytes.strip_suffix(b"\n").unwrap_or(bytes);
    bytes.strip_suffix(b"\r").unwrap_or(bytes)
}

/// A named record of a FASTA-like file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub name: String,
    pub seq: Vec<u8>,
}

/// Parses FASTA-like input: header lines start with `>`, sequence lines are
/// concatenated with surrounding whitespace removed. Sequence lines before
/// the first header form an unnamed record.
pub fn parse_fasta(bytes: &[u8]) -> Vec<Record> {
    let mut records: Vec<Record> = Vec::new();
    for line in bytes.split(|&b| b == b'\n') {
        let line = line.trim_ascii();
        if let Some(header) = line.strip_prefix(b">") {
            let name = String::from_utf8_lossy(header.trim_ascii())
                .split_whitespace()
                .next()
                .unwrap_or("")
                .to_string();
            records.push(Record { name, seq: Vec::new() });
        } else if !line.is_empty() {
            if records.is_empty() {
                records.push(Record { name: String::new(), seq: Vec::new() });
            }
            records.last_mut().unwrap().seq.extend_from_slice(line);
        }
    }
    records
}

//-----------------------------------------------------------------------------

/// Uncompressed suffix structures of a text.
///
/// Every array has length n+1 with slot 0 unused, so indices and values are
/// both 1-based. `sa`, `lcp`, `lf` and `bwt` are indexed by SA position;
/// `isa`, `plcp`, `phi` and `phi_inv` by text position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixStructures {
    pub text: Vec<u8>,
    pub sa: Vec<usize>,
    pub isa: Vec<usize>,
    pub lcp: Vec<usize>,
    pub plcp: Vec<usize>,
    pub lf: Vec<usize>,
    pub phi: Vec<usize>,
    pub phi_inv: Vec<usize>,
    pub bwt: Vec<u8>,
}

impl SuffixStructures {
    pub fn n(&self) -> usize {
        self.sa.len() - 1
    }
}

/// Builds SA by prefix doubling, then PLCP by the φ scan, then everything
/// else by permutation.
pub fn build_suffix_structures(text: &Text) -> SuffixStructures {
    let t = text.symbols();
    let n = t.len();
    let sa0 = suffix_array(t);

    let mut text1 = Vec::with_capacity(n + 1);
    text1.push(0);
    text1.extend_from_slice(t);

    let mut sa = vec![0; n + 1];
    let mut isa = vec![0; n + 1];
    for (row, &s) in sa0.iter().enumerate() {
        sa[row + 1] = s + 1;
        isa[s + 1] = row + 1;
    }

    let mut phi = vec![0; n + 1];
    let mut phi_inv = vec![0; n + 1];
    for row in 1..=n {
        let above = if row == 1 { sa[n] } else { sa[row - 1] };
        phi[sa[row]] = above;
        phi_inv[above] = sa[row];
    }

    // PLCP[i] >= PLCP[i-1] - 1, so the scan is linear overall.
    let mut plcp = vec![0; n + 1];
    let mut l = 0usize;
    for i in 1..=n {
        if i == sa[1] {
            l = 0;
            continue;
        }
        let j = phi[i];
        while i + l <= n && j + l <= n && text1[i + l] == text1[j + l] {
            l += 1;
        }
        plcp[i] = l;
        l = l.saturating_sub(1);
    }

    let mut lcp = vec![0; n + 1];
    let mut lf = vec![0; n + 1];
    let mut bwt = vec![0; n + 1];
    for row in 1..=n {
        lcp[row] = plcp[sa[row]];
        let prev = if sa[row] == 1 { n } else { sa[row] - 1 };
        lf[row] = isa[prev];
        bwt[row] = text1[prev];
    }

    SuffixStructures { text: text1, sa, isa, lcp, plcp, lf, phi, phi_inv, bwt }
}

/// 0-based suffix array by prefix doubling, O(n log² n).
fn suffix_array(t: &[u8]) -> Vec<usize> {
    let n = t.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = t.iter().map(|&c| c as usize).collect();
    let mut next = vec![0usize; n];
    let mut h = 1;
    loop {
        // Rank 0 is reserved for "past the end".
        let key = |i: usize| (rank[i] + 1, if i + h < n { rank[i + h] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        next[sa[0]] = 0;
        for w in 1..n {
            next[sa[w]] = next[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut next);
        if n == 0 || rank[sa[n - 1]] == n - 1 {
            return sa;
        }
        h *= 2;
    }
}

//-----------------------------------------------------------------------------

/// One maximal run of the BWT.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub symbol: u8,
    /// First SA position of the run.
    pub start: usize,
}

/// Run-length encoded BWT: r pairs (run symbol, run start).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rlbwt {
    pub runs: Vec<Run>,
    pub n: usize,
}

impl Rlbwt {
    /// Number of runs r.
    pub fn r(&self) -> usize {
        self.runs.len()
    }

    /// Last SA position of run `idx` (0-based run index).
    pub fn run_end(&self, idx: usize) -> usize {
        self.runs.get(idx + 1).map_or(self.n, |run| run.start - 1)
    }

    /// Expands the runs back into the BWT (0-based).
    pub fn expand(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.n);
        for (idx, run) in self.runs.iter().enumerate() {
            out.extend(std::iter::repeat_n(run.symbol, self.run_end(idx) + 1 - run.start));
        }
        out
    }

    /// Reconstructs the text by walking LF from the sentinel row.
    ///
    /// LF is recomputed from symbol counts alone, so this is independent of
    /// any suffix array.
    pub fn invert(&self) -> Vec<u8> {
        let bwt = self.expand();
        let n = bwt.len();
        let mut counts = [0usize; 257];
        for &c in &bwt {
            counts[c as usize + 1] += 1;
        }
        for c in 1..257 {
            counts[c] += counts[c - 1];
        }
        let mut seen = [0usize; 256];
        let lf: Vec<usize> = bwt
            .iter()
            .map(|&c| {
                seen[c as usize] += 1;
                counts[c as usize] + seen[c as usize] - 1
            })
            .collect();
        // Row 0 holds the sentinel suffix; its BWT symbol precedes it.
        let mut out = vec![SENTINEL; n];
        let mut row = 0;
        for pos in (0..n.saturating_sub(1)).rev() {
            out[pos] = bwt[row];
            row = lf[row];
        }
        out
    }
}

pub fn build_rlbwt(s: &SuffixStructures) -> Rlbwt {
    let n = s.n();
    let mut runs: Vec<Run> = Vec::new();
    for row in 1..=n {
        if runs.last().is_none_or(|run| run.symbol != s.bwt[row]) {
            runs.push(Run { symbol: s.bwt[row], start: row });
        }
    }
    Rlbwt { runs, n }
}
