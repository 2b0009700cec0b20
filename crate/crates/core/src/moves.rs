//! Disjoint interval sequences and move structures.
//!
//! A disjoint interval sequence `(p_1, q_1), …, (p_k, q_k)` over `[1, n]`
//! describes a bijection that shifts each input interval `[p_x, p_{x+1} - 1]`
//! rigidly onto the output interval starting at `q_x`. A [`MoveStructure`]
//! stores a balanced version of the sequence together with, for every
//! interval, the input interval that contains `q_x`. Evaluating the
//! bijection and finding the interval of the result then takes a bounded
//! forward scan.
//!
//! Intervals are numbered from 1. Positions are 1-based.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::error::{Error, Result};

/// The first condition a sequence breaks, with the offending 1-based interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("sequence has no intervals")]
    Empty,
    #[error("first input interval starts at {found}, expected 1")]
    FirstStart { found: usize },
    #[error("interval {index} does not start after its predecessor")]
    NotIncreasing { index: usize },
    #[error("interval {index} starts beyond n")]
    StartBeyondEnd { index: usize },
    #[error("no output interval starts at 1 (smallest starts in interval {index})")]
    FirstOutput { index: usize },
    #[error("output of interval {index} does not continue the tiling of [1, n]")]
    OutputGap { index: usize },
}

impl Violation {
    /// Which of the three defining conditions failed.
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Empty
            | Violation::FirstStart { .. }
            | Violation::NotIncreasing { .. }
            | Violation::StartBeyondEnd { .. } => 1,
            Violation::FirstOutput { .. } => 2,
            Violation::OutputGap { .. } => 3,
        }
    }

    /// Offending interval, if the violation concerns one.
    pub fn index(&self) -> Option<usize> {
        match *self {
            Violation::Empty => None,
            Violation::FirstStart { .. } => Some(1),
            Violation::NotIncreasing { index }
            | Violation::StartBeyondEnd { index }
            | Violation::FirstOutput { index }
            | Violation::OutputGap { index } => Some(index),
        }
    }
}

/// A sequence of `(input start, output start)` pairs over `[1, n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSequence {
    n: usize,
    pairs: Vec<(usize, usize)>,
}

impl IntervalSequence {
    /// Wraps the pairs without checking them; see [`IntervalSequence::validate`].
    pub fn new(n: usize, pairs: Vec<(usize, usize)>) -> Self {
        IntervalSequence { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of intervals k.
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn input_len(&self, idx: usize) -> usize {
        self.pairs.get(idx + 1).map_or(self.n + 1, |&(p, _)| p) - self.pairs[idx].0
    }

    /// Checks that the pairs form a disjoint interval sequence.
    pub fn validate(&self) -> Result<(), Violation> {
        let Some(&(first, _)) = self.pairs.first() else {
            return Err(Violation::Empty);
        };
        if first != 1 {
            return Err(Violation::FirstStart { found: first });
        }
        for (idx, w) in self.pairs.windows(2).enumerate() {
            if w[1].0 <= w[0].0 {
                return Err(Violation::NotIncreasing { index: idx + 2 });
            }
        }
        if self.pairs.last().unwrap().0 > self.n {
            return Err(Violation::StartBeyondEnd { index: self.pairs.len() });
        }

        let mut order: Vec<usize> = (0..self.pairs.len()).collect();
        order.sort_by_key(|&idx| self.pairs[idx].1);
        if self.pairs[order[0]].1 != 1 {
            return Err(Violation::FirstOutput { index: order[0] + 1 });
        }
        let mut expected = 1;
        for idx in order {
            if self.pairs[idx].1 != expected {
                return Err(Violation::OutputGap { index: idx + 1 });
            }
            expected += self.input_len(idx);
        }
        Ok(())
    }

    /// Evaluates the represented bijection at `i` by binary search.
    pub fn evaluate(&self, i: usize) -> usize {
        let idx = self.pairs.partition_point(|&(p, _)| p <= i) - 1;
        let (p, q) = self.pairs[idx];
        q + (i - p)
    }

    /// Splits intervals until every output interval contains at most `d`
    /// input starts after its own first position.
    pub fn balance(&self, d: usize) -> Result<IntervalSequence> {
        Ok(balance_with_payload(self, d, None)?.0)
    }
}

/// Checks the three disjoint-interval conditions.
pub fn validate_disjoint(seq: &IntervalSequence) -> Result<(), Violation> {
    seq.validate()
}

/// See [`IntervalSequence::balance`].
pub fn balance(seq: &IntervalSequence, d: usize) -> Result<IntervalSequence> {
    seq.balance(d)
}

/// Worklist balancing. A heavy output interval is cut at its median interior
/// start; the cut adds one input start, which can make the output interval
/// that receives it heavy in turn.
///
/// Cutting at the (d+1)-th start instead of the median cascades and breaks
/// the `k + k/(d-1)` size bound on some inputs.
fn balance_with_payload(
    seq: &IntervalSequence,
    d: usize,
    payload: Option<&[usize]>,
) -> Result<(IntervalSequence, Option<Vec<usize>>)> {
    if d < 2 {
        return Err(Error::InvalidBalance(d));
    }
    seq.validate().map_err(Error::InvalidIntervals)?;
    let n = seq.n;

    // input start -> (output start, payload at input start)
    let mut inputs: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
    // output start -> input start
    let mut outputs: BTreeMap<usize, usize> = BTreeMap::new();
    for (idx, &(p, q)) in seq.pairs.iter().enumerate() {
        inputs.insert(p, (q, payload.map_or(0, |v| v[idx])));
        outputs.insert(q, p);
    }

    let mut work: Vec<usize> = seq.pairs.iter().map(|&(p, _)| p).collect();
    let mut interior = Vec::new();
    while let Some(p) = work.pop() {
        let (q, value) = inputs[&p];
        let end = inputs.range(p + 1..).next().map_or(n + 1, |(&s, _)| s);
        let len = end - p;
        interior.clear();
        interior.extend(inputs.range(q + 1..q + len).map(|(&s, _)| s));
        if interior.len() <= d {
            continue;
        }
        let offset = interior[interior.len() / 2] - q;
        let value = match payload {
            Some(_) => value.checked_sub(offset).ok_or_else(|| {
                Error::Construction(format!("payload at input {p} would become negative"))
            })?,
            None => 0,
        };
        let (np, nq) = (p + offset, q + offset);
        inputs.insert(np, (nq, value));
        outputs.insert(nq, np);
        let (_, &owner) = outputs.range(..=np).next_back().unwrap();
        work.extend([p, np, owner]);
    }

    let pairs = inputs.iter().map(|(&p, &(q, _))| (p, q)).collect();
    let values = payload.map(|_| inputs.values().map(|&(_, v)| v).collect());
    Ok((IntervalSequence { n, pairs }, values))
}

//-----------------------------------------------------------------------------

/// Result of a move query: the image position and the input interval holding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MoveResult {
    pub pos: usize,
    pub interval: usize,
}

/// A balanced interval sequence with destination pointers and an optional
/// per-interval payload that decreases by one per position.
///
/// Arrays are padded: slot 0 is unused and `p[k + 1] = n + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveStructure {
    pub(crate) n: usize,
    pub(crate) d: usize,
    pub(crate) original_len: usize,
    pub(crate) p: Vec<usize>,
    pub(crate) q: Vec<usize>,
    pub(crate) dest: Vec<usize>,
    pub(crate) payload: Option<Vec<usize>>,
}

impl MoveStructure {
    /// Balances `seq` with parameter `d` and builds the structure.
    ///
    /// `payload`, when given, holds one value per interval of `seq`; the value
    /// at offset `t` inside an interval is the start value minus `t`.
    pub fn build(seq: &IntervalSequence, d: usize, payload: Option<&[usize]>) -> Result<Self> {
        if let Some(values) = payload {
            if values.len() != seq.len() {
                return Err(Error::PayloadLength { expected: seq.len(), found: values.len() });
            }
        }
        let (balanced, values) = balance_with_payload(seq, d, payload)?;
        Ok(Self::from_balanced(seq.len(), &balanced, d, values))
    }

    fn from_balanced(
        original_len: usize,
        seq: &IntervalSequence,
        d: usize,
        values: Option<Vec<usize>>,
    ) -> Self {
        let n = seq.n;
        let mut p = Vec::with_capacity(seq.len() + 2);
        let mut q = Vec::with_capacity(seq.len() + 1);
        p.push(0);
        q.push(0);
        for &(ps, qs) in &seq.pairs {
            p.push(ps);
            q.push(qs);
        }
        p.push(n + 1);
        let payload = values.map(|v| std::iter::once(0).chain(v).collect());
        let mut ms = MoveStructure { n, d, original_len, p, q, dest: Vec::new(), payload };
        let dest = (0..=ms.len()).map(|x| if x == 0 { 0 } else { ms.locate(ms.q[x]) }).collect();
        ms.dest = dest;
        ms
    }

    /// Domain size n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of balanced intervals k′.
    pub fn len(&self) -> usize {
        self.p.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of intervals before balancing.
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// First position of interval `x`; `start(k′ + 1)` is n + 1.
    #[inline]
    pub fn start(&self, x: usize) -> usize {
        self.p[x]
    }

    /// Last position of interval `x`.
    #[inline]
    pub fn end(&self, x: usize) -> usize {
        self.p[x + 1] - 1
    }

    #[inline]
    pub fn output_start(&self, x: usize) -> usize {
        self.q[x]
    }

    /// Input interval containing `output_start(x)`.
    #[inline]
    pub fn dest_interval(&self, x: usize) -> usize {
        self.dest[x]
    }

    pub fn has_payload(&self) -> bool {
        self.payload.is_some()
    }

    /// Payload stored at the start of interval `x`.
    pub fn payload_at(&self, x: usize) -> Option<usize> {
        self.payload.as_ref().map(|v| v[x])
    }

    /// The balanced sequence as plain pairs.
    pub fn sequence(&self) -> IntervalSequence {
        let pairs = (1..=self.len()).map(|x| (self.p[x], self.q[x])).collect();
        IntervalSequence { n: self.n, pairs }
    }

    fn locate(&self, i: usize) -> usize {
        self.p[1..=self.len()].partition_point(|&s| s <= i)
    }

    /// Interval containing position `i`, by binary search.
    pub fn interval_of(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::OutOfRange { pos: i, n: self.n });
        }
        Ok(self.locate(i))
    }

    /// Maps `i` (inside interval `x`) through the bijection.
    #[inline]
    pub fn move_query(&self, i: usize, x: usize) -> MoveResult {
        self.move_query_counted(i, x).0
    }

    /// Like [`MoveStructure::move_query`], also returning how many intervals
    /// the destination scan visited.
    #[inline]
    pub fn move_query_counted(&self, i: usize, x: usize) -> (MoveResult, usize) {
        debug_assert!(
            x >= 1 && x <= self.len() && self.p[x] <= i && i < self.p[x + 1],
            "position {i} is not in interval {x}"
        );
        let pos = self.q[x] + (i - self.p[x]);
        let mut y = self.dest[x];
        let mut visited = 1;
        while self.p[y + 1] <= pos {
            y += 1;
            visited += 1;
        }
        (MoveResult { pos, interval: y }, visited)
    }

    /// Payload value at `i` (inside interval `x`).
    pub fn payload_query(&self, i: usize, x: usize) -> Result<usize> {
        let values = self.payload.as_ref().ok_or(Error::NoPayload)?;
        debug_assert!(self.p[x] <= i && i < self.p[x + 1]);
        Ok(values[x] - (i - self.p[x]))
    }

    #[inline]
    pub(crate) fn payload_unchecked(&self, i: usize, x: usize) -> usize {
        debug_assert!(self.p[x] <= i && i < self.p[x + 1]);
        match &self.payload {
            Some(values) => values[x] - (i - self.p[x]),
            None => unreachable!("payload query on a structure without payload"),
        }
    }

    /// Evaluates the bijection at `i` without knowing its interval.
    pub fn evaluate(&self, i: usize) -> usize {
        let x = self.locate(i);
        self.q[x] + (i - self.p[x])
    }

    /// Largest number of intervals any move query can visit.
    pub fn max_scan(&self) -> usize {
        (1..=self.len())
            .map(|x| {
                let last = self.q[x] + (self.end(x) - self.p[x]);
                self.locate(last) - self.dest[x] + 1
            })
            .max()
            .unwrap_or(0)
    }

    /// Size bound `ceil(k·d / (d − 1))` for the balanced sequence.
    pub fn size_bound(&self) -> usize {
        (self.original_len * self.d).div_ceil(self.d - 1)
    }

    /// Number of stored integers (p, q, dest and payload).
    pub fn stored_integers(&self) -> usize {
        let per = if self.payload.is_some() { 4 } else { 3 };
        per * self.len()
    }
}
