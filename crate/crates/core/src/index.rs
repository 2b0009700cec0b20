//! The run-length index: move structures for LF, φ and φ⁻¹ (the latter two
//! carrying PLCP samples), the run-head string with rank/select, SA samples
//! at both ends of every LF interval, and jump arrays to the neighbouring
//! run with a different symbol.
//!
//! SA positions ("rows") and text positions are 1-based, and so are interval
//! indices. Per-interval arrays are padded with an unused slot 0.

use crate::error::{Error, Result};
use crate::moves::{IntervalSequence, MoveResult, MoveStructure};
use crate::text::{build_rlbwt, build_suffix_structures, Alphabet, Rlbwt, SuffixStructures, Text, SENTINEL};

/// Default balancing parameter.
pub const DEFAULT_BALANCE: usize = 2;

/// How to find the nearest LF interval with a given symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Binary search in per-symbol interval lists.
    #[default]
    Rank,
    /// Walk run by run with the ND/PD jump arrays.
    Scan,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// Instrumentation for query work.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WorkCounter {
    /// LF, φ and φ⁻¹ move queries.
    pub move_queries: u64,
    /// ND/PD jumps taken while scanning for a symbol.
    pub run_jumps: u64,
    /// Dictionary inserts, lookups and deletes.
    pub dict_ops: u64,
}

impl WorkCounter {
    pub fn total(&self) -> u64 {
        self.move_queries + self.run_jumps + self.dict_ops
    }
}

/// The sa-interval of a string with the samples needed to extend it and to
/// enumerate its occurrences.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaIntervalSimple {
    /// Top and bottom rows.
    pub b: usize,
    pub e: usize,
    /// LF intervals of `b` and `e`.
    pub i: usize,
    pub k: usize,
    /// Suffixes at `b` and `e`.
    pub sa_b: usize,
    pub sa_e: usize,
    /// φ interval of `sa_b`.
    pub v: usize,
    /// φ⁻¹ interval of `sa_b` (the locate toehold).
    pub x: usize,
    /// φ⁻¹ interval of `sa_e`.
    pub y: usize,
}

impl SaIntervalSimple {
    pub fn len(&self) -> usize {
        self.e - self.b + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Which LF interval supplies the representative row for one extension rule.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Pick {
    /// The tracked row itself precedes the right symbol.
    Same,
    /// First row of interval `h`, which starts a run.
    RunTop(usize),
    /// Last row of interval `h`, which ends a run.
    RunBottom(usize),
}

/// Summary numbers for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub n: usize,
    pub r: usize,
    pub sigma: usize,
    pub d: usize,
    /// (intervals before balancing, after balancing) per structure.
    pub lf_intervals: (usize, usize),
    pub phi_intervals: (usize, usize),
    pub phi_inv_intervals: (usize, usize),
    pub stored_integers: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Optbwtrl {
    pub(crate) n: usize,
    pub(crate) r: usize,
    pub(crate) d: usize,
    pub(crate) alphabet: Alphabet,
    pub(crate) f_lf: MoveStructure,
    pub(crate) f_phi: MoveStructure,
    pub(crate) f_phi_inv: MoveStructure,
    pub(crate) l_first: Vec<u8>,
    pub(crate) char_positions: Vec<Vec<usize>>,
    pub(crate) sa_top: Vec<usize>,
    pub(crate) sa_bot: Vec<usize>,
    pub(crate) sa_top_phi: Vec<usize>,
    pub(crate) sa_top_idx: Vec<usize>,
    pub(crate) sa_bot_idx: Vec<usize>,
    pub(crate) sa_bot_phi: Vec<usize>,
    pub(crate) nd: Vec<usize>,
    pub(crate) pd: Vec<usize>,
}

/// Builds the index from uncompressed structures. See [`Optbwtrl::build`].
pub fn build_optbwtrl(alphabet: Alphabet, s: &SuffixStructures, rl: &Rlbwt, d: usize) -> Result<Optbwtrl> {
    Optbwtrl::build(alphabet, s, rl, d)
}

fn check_sequence(seq: &IntervalSequence, what: &str) -> Result<()> {
    seq.validate()
        .map_err(|v| Error::Construction(format!("{what} do not form a disjoint interval sequence: {v}")))
}

impl Optbwtrl {
    /// Builds every intermediate structure from a text.
    pub fn from_text(text: &Text, d: usize) -> Result<Self> {
        let s = build_suffix_structures(text);
        let rl = build_rlbwt(&s);
        Self::build(text.alphabet().clone(), &s, &rl, d)
    }

    pub fn build(alphabet: Alphabet, s: &SuffixStructures, rl: &Rlbwt, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidBalance(d));
        }
        let n = s.n();
        let r = rl.r();

        // LF maps each run rigidly.
        let lf_seq = IntervalSequence::new(n, rl.runs.iter().map(|run| (run.start, s.lf[run.start])).collect());
        check_sequence(&lf_seq, "BWT runs under LF")?;

        // φ is rigid between consecutive run-top suffixes, PLCP drops by one per step.
        let mut tops: Vec<usize> = rl.runs.iter().map(|run| s.sa[run.start]).collect();
        tops.sort_unstable();
        if tops[0] != 1 {
            return Err(Error::Construction("suffix 1 is not at the top of a run".into()));
        }
        let phi_seq = IntervalSequence::new(n, tops.iter().map(|&p| (p, s.phi[p])).collect());
        check_sequence(&phi_seq, "run-top suffixes under phi")?;
        let lcp_plus: Vec<usize> = tops.iter().map(|&p| s.plcp[p]).collect();

        // φ⁻¹ is rigid between consecutive run-bottom suffixes.
        let mut bottoms: Vec<usize> = (0..r).map(|idx| s.sa[rl.run_end(idx)]).collect();
        bottoms.sort_unstable();
        let phi_inv_seq = IntervalSequence::new(n, bottoms.iter().map(|&p| (p, s.phi_inv[p])).collect());
        check_sequence(&phi_inv_seq, "run-bottom suffixes under phi inverse")?;
        let lcp_minus: Vec<usize> = bottoms.iter().map(|&p| s.plcp[s.phi_inv[p]]).collect();

        let f_lf = MoveStructure::build(&lf_seq, d, None)?;
        let f_phi = MoveStructure::build(&phi_seq, d, Some(&lcp_plus))?;
        let f_phi_inv = MoveStructure::build(&phi_inv_seq, d, Some(&lcp_minus))?;

        let k = f_lf.len();
        let mut l_first = vec![0u8; k + 1];
        let mut sa_top = vec![0; k + 1];
        let mut sa_bot = vec![0; k + 1];
        let mut sa_top_phi = vec![0; k + 1];
        let mut sa_top_idx = vec![0; k + 1];
        let mut sa_bot_idx = vec![0; k + 1];
        let mut sa_bot_phi = vec![0; k + 1];
        for x in 1..=k {
            l_first[x] = s.bwt[f_lf.start(x)];
            sa_top[x] = s.sa[f_lf.start(x)];
            sa_bot[x] = s.sa[f_lf.end(x)];
            sa_top_phi[x] = f_phi.interval_of(sa_top[x])?;
            sa_top_idx[x] = f_phi_inv.interval_of(sa_top[x])?;
            sa_bot_idx[x] = f_phi_inv.interval_of(sa_bot[x])?;
            sa_bot_phi[x] = f_phi.interval_of(sa_bot[x])?;
        }
        let (nd, pd) = jump_arrays(&l_first);
        let char_positions = char_positions(&l_first, alphabet.sigma());

        let ix = Optbwtrl {
            n,
            r,
            d,
            alphabet,
            f_lf,
            f_phi,
            f_phi_inv,
            l_first,
            char_positions,
            sa_top,
            sa_bot,
            sa_top_phi,
            sa_top_idx,
            sa_bot_idx,
            sa_bot_phi,
            nd,
            pd,
        };
        if cfg!(debug_assertions) {
            ix.verify_against(s)?;
        }
        Ok(ix)
    }

    /// Exhaustively compares every compressed map with the plain arrays.
    pub fn verify_against(&self, s: &SuffixStructures) -> Result<()> {
        let fail = |what: &str, pos: usize| Err(Error::Construction(format!("{what} disagrees at position {pos}")));
        let mut x = 1;
        for row in 1..=self.n {
            if row > self.f_lf.end(x) {
                x += 1;
            }
            if self.f_lf.move_query(row, x).pos != s.lf[row] {
                return fail("LF move structure", row);
            }
            if self.l_first[x] != s.bwt[row] {
                return fail("run-head symbols", row);
            }
        }
        let (mut v, mut y) = (1, 1);
        for t in 1..=self.n {
            if t > self.f_phi.end(v) {
                v += 1;
            }
            if t > self.f_phi_inv.end(y) {
                y += 1;
            }
            if self.phi_step(t, v).pos != s.phi[t] {
                return fail("phi move structure", t);
            }
            if self.plcp_at(t, v) != s.plcp[t] {
                return fail("PLCP samples", t);
            }
            if self.phi_inv_step(t, y).pos != s.phi_inv[t] {
                return fail("phi inverse move structure", t);
            }
            if self.plcp_below(t, y) != s.plcp[s.phi_inv[t]] {
                return fail("PLCP-below samples", t);
            }
        }
        Ok(())
    }

    /// Text length n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of BWT runs r.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.sigma()
    }

    /// Balancing parameter the move structures were built with.
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn f_lf(&self) -> &MoveStructure {
        &self.f_lf
    }

    pub fn f_phi(&self) -> &MoveStructure {
        &self.f_phi
    }

    pub fn f_phi_inv(&self) -> &MoveStructure {
        &self.f_phi_inv
    }

    /// Number of LF intervals k′.
    pub fn intervals(&self) -> usize {
        self.f_lf.len()
    }

    /// BWT symbol shared by all rows of LF interval `x`.
    pub fn l_first(&self, x: usize) -> u8 {
        self.l_first[x]
    }

    /// Suffix at the first row of LF interval `x`.
    pub fn sa_top(&self, x: usize) -> usize {
        self.sa_top[x]
    }

    /// Suffix at the last row of LF interval `x`.
    pub fn sa_bot(&self, x: usize) -> usize {
        self.sa_bot[x]
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            n: self.n,
            r: self.r,
            sigma: self.sigma(),
            d: self.d,
            lf_intervals: (self.f_lf.original_len(), self.f_lf.len()),
            phi_intervals: (self.f_phi.original_len(), self.f_phi.len()),
            phi_inv_intervals: (self.f_phi_inv.original_len(), self.f_phi_inv.len()),
            stored_integers: self.stored_integers(),
        }
    }

    /// Integers held by all per-interval arrays. The alphabet table (at most
    /// 256 bytes) is not counted.
    pub fn stored_integers(&self) -> usize {
        let k = self.intervals();
        let per_lf_interval = 1 // l_first
            + 1 // char_positions entry
            + 6 // SA samples and their pointers
            + 2; // nd, pd
        self.f_lf.stored_integers()
            + self.f_phi.stored_integers()
            + self.f_phi_inv.stored_integers()
            + per_lf_interval * k
    }

    //-------------------------------------------------------------------------
    // Constant-time maps.

    /// LF of row `pos` inside LF interval `x`.
    #[inline]
    pub fn lf_step(&self, pos: usize, x: usize) -> MoveResult {
        self.f_lf.move_query(pos, x)
    }

    /// φ of text position `t` inside φ interval `v`.
    #[inline]
    pub fn phi_step(&self, t: usize, v: usize) -> MoveResult {
        self.f_phi.move_query(t, v)
    }

    /// φ⁻¹ of text position `t` inside φ⁻¹ interval `x`.
    #[inline]
    pub fn phi_inv_step(&self, t: usize, x: usize) -> MoveResult {
        self.f_phi_inv.move_query(t, x)
    }

    /// PLCP[t], given the φ interval `v` of `t`.
    #[inline]
    pub fn plcp_at(&self, t: usize, v: usize) -> usize {
        self.f_phi.payload_unchecked(t, v)
    }

    /// PLCP[φ⁻¹(t)], given the φ⁻¹ interval `x` of `t`.
    #[inline]
    pub fn plcp_below(&self, t: usize, x: usize) -> usize {
        self.f_phi_inv.payload_unchecked(t, x)
    }

    /// Next (ND) or previous (PD) LF interval with a different symbol.
    /// Returns k′ + 1 or 0 when there is none.
    pub fn run_jump(&self, x: usize, dir: Direction) -> usize {
        match dir {
            Direction::Forward => self.nd[x],
            Direction::Backward => self.pd[x],
        }
    }

    /// Smallest LF interval in `[lo, hi]` with symbol `c`.
    pub fn first_interval_with_char(&self, c: u8, lo: usize, hi: usize) -> Option<usize> {
        self.first_with(c, lo, hi, Strategy::Rank, &mut WorkCounter::default())
    }

    /// Largest LF interval in `[lo, hi]` with symbol `c`.
    pub fn last_interval_with_char(&self, c: u8, lo: usize, hi: usize) -> Option<usize> {
        self.last_with(c, lo, hi, Strategy::Rank, &mut WorkCounter::default())
    }

    pub(crate) fn first_with(&self, c: u8, lo: usize, hi: usize, strategy: Strategy, work: &mut WorkCounter) -> Option<usize> {
        match strategy {
            Strategy::Rank => {
                let list = self.char_positions.get(c as usize)?;
                let at = list.partition_point(|&x| x < lo);
                list.get(at).copied().filter(|&x| x <= hi)
            }
            Strategy::Scan => {
                let mut o = lo;
                loop {
                    if self.l_first[o] == c {
                        return Some(o);
                    }
                    o = self.nd[o];
                    work.run_jumps += 1;
                    if o > hi {
                        return None;
                    }
                }
            }
        }
    }

    pub(crate) fn last_with(&self, c: u8, lo: usize, hi: usize, strategy: Strategy, work: &mut WorkCounter) -> Option<usize> {
        match strategy {
            Strategy::Rank => {
                let list = self.char_positions.get(c as usize)?;
                let at = list.partition_point(|&x| x <= hi);
                at.checked_sub(1).map(|a| list[a]).filter(|&x| x >= lo)
            }
            Strategy::Scan => {
                let mut o = hi;
                loop {
                    if self.l_first[o] == c {
                        return Some(o);
                    }
                    o = self.pd[o];
                    work.run_jumps += 1;
                    if o < lo {
                        return None;
                    }
                }
            }
        }
    }

    //-------------------------------------------------------------------------
    // Extension rules shared by the simple and the balanced sa-lcp intervals.

    pub(crate) fn pick_top(&self, i: usize, k: usize, c: u8, strategy: Strategy, work: &mut WorkCounter) -> Option<Pick> {
        if self.l_first[i] == c {
            Some(Pick::Same)
        } else {
            self.first_with(c, i, k, strategy, work).map(Pick::RunTop)
        }
    }

    pub(crate) fn pick_bottom(&self, i: usize, k: usize, c: u8, strategy: Strategy, work: &mut WorkCounter) -> Option<Pick> {
        if self.l_first[k] == c {
            Some(Pick::Same)
        } else {
            self.last_with(c, i, k, strategy, work).map(Pick::RunBottom)
        }
    }

    /// Prefers the nearest c-interval above `j`, then the nearest below.
    pub(crate) fn pick_middle(
        &self,
        i: usize,
        j: usize,
        k: usize,
        c: u8,
        strategy: Strategy,
        work: &mut WorkCounter,
    ) -> Option<Pick> {
        if self.l_first[j] == c {
            return Some(Pick::Same);
        }
        if let Some(h) = self.last_with(c, i, j, strategy, work) {
            return Some(Pick::RunBottom(h));
        }
        self.first_with(c, j, k, strategy, work).map(Pick::RunTop)
    }

    /// LF-maps the row chosen by `pick`; returns (row, LF interval, suffix).
    ///
    /// A picked interval always sits next to an interval with another
    /// symbol: a `RunTop` pick is the first piece of its run, so its top
    /// suffix is a run top and starts a φ interval, and a `RunBottom` pick
    /// is the last piece, so its bottom suffix starts a φ⁻¹ interval. The
    /// suffix one smaller therefore lies in the preceding interval and the
    /// conditional decrements below always fire for those cases.
    #[inline]
    pub(crate) fn apply_row(&self, pick: Pick, row: usize, x: usize, suff: usize, work: &mut WorkCounter) -> (usize, usize, usize) {
        let (from, from_x, sample) = match pick {
            Pick::Same => (row, x, suff),
            Pick::RunTop(h) => {
                debug_assert!(h == 1 || self.l_first[h - 1] != self.l_first[h]);
                (self.f_lf.start(h), h, self.sa_top[h])
            }
            Pick::RunBottom(h) => {
                debug_assert!(h == self.intervals() || self.l_first[h + 1] != self.l_first[h]);
                (self.f_lf.end(h), h, self.sa_bot[h])
            }
        };
        let moved = self.lf_step(from, from_x);
        work.move_queries += 1;
        (moved.pos, moved.interval, sample - 1)
    }

    /// φ interval of the new suffix produced by `apply_row`.
    #[inline]
    pub(crate) fn phi_after(&self, pick: Pick, suff: usize, v: usize) -> usize {
        let (s, v) = match pick {
            Pick::Same => (suff, v),
            Pick::RunTop(h) => {
                debug_assert_eq!(self.sa_top[h], self.f_phi.start(self.sa_top_phi[h]));
                (self.sa_top[h], self.sa_top_phi[h])
            }
            Pick::RunBottom(h) => (self.sa_bot[h], self.sa_bot_phi[h]),
        };
        if s == self.f_phi.start(v) { v - 1 } else { v }
    }

    /// φ⁻¹ interval of the new suffix produced by `apply_row`.
    #[inline]
    pub(crate) fn phi_inv_after(&self, pick: Pick, suff: usize, x: usize) -> usize {
        let (s, x) = match pick {
            Pick::Same => (suff, x),
            Pick::RunTop(h) => (self.sa_top[h], self.sa_top_idx[h]),
            Pick::RunBottom(h) => {
                debug_assert_eq!(self.sa_bot[h], self.f_phi_inv.start(self.sa_bot_idx[h]));
                (self.sa_bot[h], self.sa_bot_idx[h])
            }
        };
        if s == self.f_phi_inv.start(x) { x - 1 } else { x }
    }

    //-------------------------------------------------------------------------
    // Count and locate.

    /// The sa-interval of the empty string, `[1, n]`.
    pub fn full_interval(&self) -> SaIntervalSimple {
        let k = self.intervals();
        SaIntervalSimple {
            b: 1,
            e: self.n,
            i: 1,
            k,
            sa_b: self.sa_top[1],
            sa_e: self.sa_bot[k],
            v: self.sa_top_phi[1],
            x: self.sa_top_idx[1],
            y: self.sa_bot_idx[k],
        }
    }

    /// The sa-interval of `$`: row 1, suffix n, which lies in the last φ and
    /// φ⁻¹ intervals.
    pub(crate) fn sentinel_interval(&self) -> SaIntervalSimple {
        let (v, x) = (self.f_phi.len(), self.f_phi_inv.len());
        SaIntervalSimple { b: 1, e: 1, i: 1, k: 1, sa_b: self.n, sa_e: self.n, v, x, y: x }
    }

    /// Extends the sa-interval of a string P to that of cP.
    ///
    /// `c` must not be the sentinel: `$` never precedes a nonempty string.
    pub fn extend_simple(&self, t: &SaIntervalSimple, c: u8, strategy: Strategy, work: &mut WorkCounter) -> Option<SaIntervalSimple> {
        if c == SENTINEL || c as usize >= self.sigma() {
            return None;
        }
        let top = self.pick_top(t.i, t.k, c, strategy, work)?;
        let bottom = self.pick_bottom(t.i, t.k, c, strategy, work)?;
        let (b, i, sa_b) = self.apply_row(top, t.b, t.i, t.sa_b, work);
        let (e, k, sa_e) = self.apply_row(bottom, t.e, t.k, t.sa_e, work);
        Some(SaIntervalSimple {
            b,
            e,
            i,
            k,
            sa_b,
            sa_e,
            v: self.phi_after(top, t.sa_b, t.v),
            x: self.phi_inv_after(top, t.sa_b, t.x),
            y: self.phi_inv_after(bottom, t.sa_e, t.y),
        })
    }

    /// Backward search; `None` when the pattern does not occur.
    pub fn backward_search(&self, pattern: &[u8]) -> Result<Option<SaIntervalSimple>> {
        self.backward_search_counted(pattern, &mut WorkCounter::default())
    }

    pub fn backward_search_counted(&self, pattern: &[u8], work: &mut WorkCounter) -> Result<Option<SaIntervalSimple>> {
        let Some((&last, rest)) = pattern.split_last() else {
            return Err(Error::EmptyPattern);
        };
        let mut t = if last == SENTINEL {
            self.sentinel_interval()
        } else {
            match self.extend_simple(&self.full_interval(), last, Strategy::Rank, work) {
                Some(t) => t,
                None => return Ok(None),
            }
        };
        for &c in rest.iter().rev() {
            match self.extend_simple(&t, c, Strategy::Rank, work) {
                Some(next) => t = next,
                None => return Ok(None),
            }
        }
        Ok(Some(t))
    }

    /// Number of occurrences of a dense-encoded pattern.
    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        Ok(self.backward_search(pattern)?.map_or(0, |t| t.len()))
    }

    /// Occurrence start positions, in SA order.
    pub fn locate(&self, pattern: &[u8]) -> Result<Vec<usize>> {
        let Some(t) = self.backward_search(pattern)? else {
            return Ok(Vec::new());
        };
        let mut out = Vec::with_capacity(t.len());
        let (mut s, mut x) = (t.sa_b, t.x);
        out.push(s);
        for _ in t.b..t.e {
            let next = self.phi_inv_step(s, x);
            s = next.pos;
            x = next.interval;
            out.push(s);
        }
        Ok(out)
    }

    /// Reconstructs the dense text by walking LF from the sentinel row.
    pub fn extract_text(&self) -> Vec<u8> {
        let mut out = vec![SENTINEL; self.n];
        let (mut row, mut x) = (1, 1);
        for pos in (0..self.n - 1).rev() {
            out[pos] = self.l_first[x];
            let next = self.lf_step(row, x);
            row = next.pos;
            x = next.interval;
        }
        out
    }

    /// The indexed text, recovered with [`Optbwtrl::extract_text`].
    pub fn to_text(&self) -> Result<Text> {
        Text::from_dense(self.extract_text(), self.alphabet.clone())
    }
}

fn jump_arrays(l_first: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let k = l_first.len() - 1;
    let mut nd = vec![0; k + 1];
    let mut pd = vec![0; k + 1];
    if k == 0 {
        return (nd, pd);
    }
    nd[k] = k + 1;
    for x in (1..k).rev() {
        nd[x] = if l_first[x + 1] != l_first[x] { x + 1 } else { nd[x + 1] };
    }
    for x in 2..=k {
        pd[x] = if l_first[x - 1] != l_first[x] { x - 1 } else { pd[x - 1] };
    }
    (nd, pd)
}

pub(crate) fn char_positions(l_first: &[u8], sigma: usize) -> Vec<Vec<usize>> {
    let mut lists = vec![Vec::new(); sigma];
    for (x, &c) in l_first.iter().enumerate().skip(1) {
        lists[c as usize].push(x);
    }
    lists
}
