//! The long-LEM query.
//!
//! The window `P[f..f+𝓛)` slides from `f = m-𝓛+1` down to 1. Before the step
//! for f, the dictionary holds one key per suffix s in the sa-interval of
//! `P[f+1..f+𝓛]`: the diagonal `s - (f+1)`, mapped to the pattern position g
//! where the match of `P[f+1..]` against `T[s..]` ends. A step first reports
//! the suffixes not preceded by `P[f]` (their matches are left-maximal), then
//! extends the interval by `P[f]` and widens it back to window length 𝓛,
//! inserting the new suffixes. Survivors keep their key: s-1 at step f has
//! diagonal `(s-1) - f = s - (f+1)`.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::index::{Optbwtrl, Strategy, WorkCounter};
use crate::text::SENTINEL;

use super::interval::{extend_salcp, SaLcpInterval};
use super::ms::AugmentedMs;
use super::{Lem, LemSink};

/// Map from diagonal (text start minus pattern start) to pattern end.
#[derive(Clone, Debug, Default)]
pub struct DiagonalDict {
    map: HashMap<isize, usize>,
    inserts: u64,
    deletes: u64,
}

impl DiagonalDict {
    pub fn new() -> Self {
        Self::default()
    }

    /// Diagonal of text position `s` against pattern position `p`.
    pub fn key(s: usize, p: usize) -> isize {
        s as isize - p as isize
    }

    pub fn insert(&mut self, key: isize, g: usize) -> Result<()> {
        self.inserts += 1;
        match self.map.entry(key) {
            Entry::Occupied(_) => Err(Error::Internal(format!("diagonal {key} inserted twice"))),
            Entry::Vacant(slot) => {
                slot.insert(g);
                Ok(())
            }
        }
    }

    /// Removes a key and returns its pattern end.
    pub fn remove(&mut self, key: isize) -> Result<usize> {
        self.deletes += 1;
        self.map
            .remove(&key)
            .ok_or_else(|| Error::Internal(format!("diagonal {key} missing from the dictionary")))
    }

    pub fn get(&self, key: isize) -> Option<usize> {
        self.map.get(&key).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn inserts(&self) -> u64 {
        self.inserts
    }

    pub fn deletes(&self) -> u64 {
        self.deletes
    }
}

/// Per-query mutable state.
#[derive(Debug, Default)]
pub struct QueryState {
    pub dict: DiagonalDict,
    pub work: WorkCounter,
}

impl QueryState {
    fn sync_work(&mut self) {
        self.work.dict_ops = self.dict.inserts + self.dict.deletes;
    }
}

/// Reports `z` suffixes starting at `s` and walking up the SA with φ.
///
/// `iota` is the φ interval of `s`. Each suffix s'' yields
/// `Lem(f+1, s'', g-f)` where g is its dictionary value; the key is removed.
pub fn output_matches_up(
    ix: &Optbwtrl,
    state: &mut QueryState,
    s: usize,
    iota: usize,
    z: usize,
    f: usize,
    sink: &mut impl LemSink,
) -> Result<()> {
    let (mut s, mut iota) = (s, iota);
    for step in 0..z {
        if step > 0 {
            let next = ix.phi_step(s, iota);
            state.work.move_queries += 1;
            s = next.pos;
            iota = next.interval;
        }
        report(state, s, f, sink)?;
    }
    Ok(())
}

/// Like [`output_matches_up`], walking down the SA with φ⁻¹; `iota` is the
/// φ⁻¹ interval of `s`.
pub fn output_matches_down(
    ix: &Optbwtrl,
    state: &mut QueryState,
    s: usize,
    iota: usize,
    z: usize,
    f: usize,
    sink: &mut impl LemSink,
) -> Result<()> {
    let (mut s, mut iota) = (s, iota);
    for step in 0..z {
        if step > 0 {
            let next = ix.phi_inv_step(s, iota);
            state.work.move_queries += 1;
            s = next.pos;
            iota = next.interval;
        }
        report(state, s, f, sink)?;
    }
    Ok(())
}

fn report(state: &mut QueryState, s: usize, f: usize, sink: &mut impl LemSink) -> Result<()> {
    let g = state.dict.remove(DiagonalDict::key(s, f + 1))?;
    sink.emit(Lem { p_start: f + 1, t_start: s, len: g - f });
    Ok(())
}

/// Reports every suffix of `cur` whose preceding symbol is not `left`.
/// `None` reports all of them.
fn emit_window(
    ix: &Optbwtrl,
    state: &mut QueryState,
    cur: &SaLcpInterval,
    left: Option<u8>,
    f: usize,
    sink: &mut impl LemSink,
) -> Result<()> {
    let lf = ix.f_lf();
    let differs = |o: usize| left != Some(ix.l_first[o]);
    if cur.i == cur.k {
        if differs(cur.i) {
            output_matches_up(ix, state, cur.sa_d, cur.w, cur.d - cur.b + 1, f, sink)?;
            if cur.e > cur.d {
                let below = ix.phi_inv_step(cur.sa_d, cur.x);
                state.work.move_queries += 1;
                output_matches_down(ix, state, below.pos, below.interval, cur.e - cur.d, f, sink)?;
            }
        }
        return Ok(());
    }
    if differs(cur.i) {
        let (s, iota) = (ix.sa_bot[cur.i], ix.sa_bot_phi[cur.i]);
        output_matches_up(ix, state, s, iota, lf.end(cur.i) - cur.b + 1, f, sink)?;
    }
    let mut o = cur.i + 1;
    while o < cur.k {
        if differs(o) {
            let (s, iota) = (ix.sa_top[o], ix.sa_top_idx[o]);
            output_matches_down(ix, state, s, iota, lf.end(o) - lf.start(o) + 1, f, sink)?;
            o += 1;
        } else {
            o = ix.nd[o];
            state.work.run_jumps += 1;
        }
    }
    if differs(cur.k) {
        let (s, iota) = (ix.sa_top[cur.k], ix.sa_top_idx[cur.k]);
        output_matches_down(ix, state, s, iota, cur.e - lf.start(cur.k) + 1, f, sink)?;
    }
    Ok(())
}

/// How a step restarts when the interval cannot be carried over.
#[derive(Clone, Copy)]
enum Seed<'a> {
    Ms(&'a AugmentedMs),
    Direct,
}

/// One step of the sliding window at pattern position `f`.
///
/// `cur` is the tuple of `P[f+1..f+𝓛]` (or `None` if it does not occur) and
/// the dictionary holds its suffixes. Reports the LEMs starting at f+1 and
/// returns the tuple of `P[f..f+𝓛)`.
pub fn advance_long_interval(
    ix: &Optbwtrl,
    f: usize,
    cur: Option<SaLcpInterval>,
    ms: &AugmentedMs,
    min_len: usize,
    state: &mut QueryState,
    sink: &mut impl LemSink,
) -> Result<Option<SaLcpInterval>> {
    advance(ix, ms.pattern(), f, cur, Seed::Ms(ms), min_len, state, sink)
}

#[allow(clippy::too_many_arguments)]
fn advance(
    ix: &Optbwtrl,
    pattern: &[u8],
    f: usize,
    cur: Option<SaLcpInterval>,
    seed: Seed<'_>,
    min_len: usize,
    state: &mut QueryState,
    sink: &mut impl LemSink,
) -> Result<Option<SaLcpInterval>> {
    let c = pattern[f - 1];
    // Nothing is preceded by the sentinel, so every suffix is reported.
    let left = (c != SENTINEL).then_some(c);
    if let Some(cur) = &cur {
        emit_window(ix, state, cur, left, f, sink)?;
    }
    let extended = cur.and_then(|t| extend_salcp(ix, &t, c, Strategy::Scan, &mut state.work));
    let g = f + min_len - 1;
    let mut t = match extended {
        Some(t) => t,
        None => {
            if !state.dict.is_empty() {
                return Err(Error::Internal(format!(
                    "{} suffixes left in the dictionary after a failed extension at {f}",
                    state.dict.len()
                )));
            }
            match seed {
                Seed::Ms(ms) => {
                    let entry = ms.get(f);
                    if entry.len < min_len {
                        return Ok(None);
                    }
                    if entry.len > min_len {
                        return Err(Error::Internal(format!(
                            "matching statistics at {f} exceed the window, yet the window extension failed"
                        )));
                    }
                    state.dict.insert(DiagonalDict::key(entry.suff, f), g)?;
                    SaLcpInterval::from_ms(entry)
                }
                Seed::Direct => {
                    let window = &pattern[f - 1..g];
                    let Some(simple) = ix.backward_search_counted(window, &mut state.work)? else {
                        return Ok(None);
                    };
                    let (mut s, mut x) = (simple.sa_b, simple.x);
                    state.dict.insert(DiagonalDict::key(s, f), g)?;
                    for _ in simple.b..simple.e {
                        let next = ix.phi_inv_step(s, x);
                        state.work.move_queries += 1;
                        s = next.pos;
                        x = next.interval;
                        state.dict.insert(DiagonalDict::key(s, f), g)?;
                    }
                    SaLcpInterval::from_simple(&simple)
                }
            }
        }
    };

    // Widen from P[f..f+𝓛] to P[f..f+𝓛): neighbouring rows sharing at least
    // 𝓛 symbols. Their match with P[f..] is exactly 𝓛 long.
    let lf = ix.f_lf();
    while t.b > 1 && ix.plcp_at(t.sa_b, t.v) >= min_len {
        if t.b == lf.start(t.i) {
            t.i -= 1;
        }
        t.b -= 1;
        let next = ix.phi_step(t.sa_b, t.v);
        state.work.move_queries += 1;
        t.sa_b = next.pos;
        t.v = next.interval;
        state.dict.insert(DiagonalDict::key(t.sa_b, f), g)?;
    }
    while t.e < ix.n() && ix.plcp_below(t.sa_e, t.y) >= min_len {
        if t.e == lf.end(t.k) {
            t.k += 1;
        }
        t.e += 1;
        let next = ix.phi_inv_step(t.sa_e, t.y);
        state.work.move_queries += 1;
        t.sa_e = next.pos;
        t.y = next.interval;
        state.dict.insert(DiagonalDict::key(t.sa_e, f), g)?;
    }
    debug_assert!(t.is_consistent(ix));
    Ok(Some(t))
}

fn run(
    ix: &Optbwtrl,
    pattern: &[u8],
    seed: Seed<'_>,
    min_len: usize,
    sink: &mut impl LemSink,
    work: &mut WorkCounter,
) -> Result<()> {
    if min_len == 0 {
        return Err(Error::InvalidMinLength);
    }
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let m = pattern.len();
    let mut state = QueryState::default();
    let mut cur = None;
    if min_len <= m {
        for f in (1..=m - min_len + 1).rev() {
            cur = advance(ix, pattern, f, cur, seed, min_len, &mut state, sink)?;
        }
    }
    // Position 0 precedes the pattern: everything left is left-maximal.
    if let Some(cur) = &cur {
        emit_window(ix, &mut state, cur, None, 0, sink)?;
    }
    if !state.dict.is_empty() {
        return Err(Error::Internal(format!("{} suffixes never reported", state.dict.len())));
    }
    state.sync_work();
    work.move_queries += state.work.move_queries;
    work.run_jumps += state.work.run_jumps;
    work.dict_ops += state.work.dict_ops;
    Ok(())
}

/// All LEMs of length at least `min_len`, given the pattern's matching
/// statistics. Output order is unspecified.
pub fn long_lem_query(ix: &Optbwtrl, ms: &AugmentedMs, min_len: usize) -> Result<Vec<Lem>> {
    let mut out = Vec::new();
    long_lem_query_into(ix, ms, min_len, &mut out, &mut WorkCounter::default())?;
    Ok(out)
}

/// [`long_lem_query`] with a caller-supplied sink and work counter.
pub fn long_lem_query_into(
    ix: &Optbwtrl,
    ms: &AugmentedMs,
    min_len: usize,
    sink: &mut impl LemSink,
    work: &mut WorkCounter,
) -> Result<()> {
    run(ix, ms.pattern(), Seed::Ms(ms), min_len, sink, work)
}

/// All LEMs of length at least `min_len` without matching statistics:
/// whenever the window cannot be carried over, it is searched from scratch
/// with `min_len` backward steps.
pub fn long_lem_query_direct(ix: &Optbwtrl, pattern: &[u8], min_len: usize) -> Result<Vec<Lem>> {
    let mut out = Vec::new();
    long_lem_query_direct_into(ix, pattern, min_len, &mut out, &mut WorkCounter::default())?;
    Ok(out)
}

pub fn long_lem_query_direct_into(
    ix: &Optbwtrl,
    pattern: &[u8],
    min_len: usize,
    sink: &mut impl LemSink,
    work: &mut WorkCounter,
) -> Result<()> {
    run(ix, pattern, Seed::Direct, min_len, sink, work)
}
