//! Sa-intervals that carry a third tracked row and the φ/φ⁻¹ interval
//! indices needed to enumerate their suffixes in both directions.

use crate::index::{Optbwtrl, SaIntervalSimple, Strategy, WorkCounter};
use crate::text::SENTINEL;

use super::ms::MsEntry;

/// The sa-interval `[b, e]` of a string, with a middle row `d`.
///
/// `i`, `j`, `k` are the LF intervals of `b`, `d`, `e`; `v`, `w` the φ
/// intervals of `sa_b`, `sa_d`; `x`, `y` the φ⁻¹ intervals of `sa_d`, `sa_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SaLcpInterval {
    pub b: usize,
    pub d: usize,
    pub e: usize,
    pub sa_b: usize,
    pub sa_d: usize,
    pub sa_e: usize,
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub v: usize,
    pub w: usize,
    pub x: usize,
    pub y: usize,
}

impl SaLcpInterval {
    /// A single row, all three tracked positions equal.
    pub fn from_ms(entry: &MsEntry) -> Self {
        let (row, suff) = (entry.row, entry.suff);
        SaLcpInterval {
            b: row,
            d: row,
            e: row,
            sa_b: suff,
            sa_d: suff,
            sa_e: suff,
            i: entry.i_lf,
            j: entry.i_lf,
            k: entry.i_lf,
            v: entry.w_phi,
            w: entry.w_phi,
            x: entry.x_phi_inv,
            y: entry.x_phi_inv,
        }
    }

    /// Uses the top row as the middle row.
    pub fn from_simple(t: &SaIntervalSimple) -> Self {
        SaLcpInterval {
            b: t.b,
            d: t.b,
            e: t.e,
            sa_b: t.sa_b,
            sa_d: t.sa_b,
            sa_e: t.sa_e,
            i: t.i,
            j: t.i,
            k: t.k,
            v: t.v,
            w: t.v,
            x: t.x,
            y: t.y,
        }
    }

    pub fn len(&self) -> usize {
        self.e - self.b + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checks every field against the index by direct lookup.
    pub fn is_consistent(&self, ix: &Optbwtrl) -> bool {
        let lf = ix.f_lf();
        let phi = ix.f_phi();
        let phi_inv = ix.f_phi_inv();
        let inside = |ms: &crate::moves::MoveStructure, x: usize, pos: usize| {
            x >= 1 && x <= ms.len() && ms.start(x) <= pos && pos <= ms.end(x)
        };
        self.b <= self.d
            && self.d <= self.e
            && self.e <= ix.n()
            && inside(lf, self.i, self.b)
            && inside(lf, self.j, self.d)
            && inside(lf, self.k, self.e)
            && inside(phi, self.v, self.sa_b)
            && inside(phi, self.w, self.sa_d)
            && inside(phi_inv, self.x, self.sa_d)
            && inside(phi_inv, self.y, self.sa_e)
    }
}

/// Extends the tuple of a string P to the tuple of cP, or `None` when cP
/// does not occur.
///
/// The top and bottom rows follow the first and last rows preceded by `c`.
/// The middle row follows the nearest row preceded by `c` at or above `d`,
/// or failing that the nearest below it.
pub fn extend_salcp(
    ix: &Optbwtrl,
    t: &SaLcpInterval,
    c: u8,
    strategy: Strategy,
    work: &mut WorkCounter,
) -> Option<SaLcpInterval> {
    debug_assert!(t.is_consistent(ix));
    if c == SENTINEL || c as usize >= ix.sigma() {
        return None;
    }
    let top = ix.pick_top(t.i, t.k, c, strategy, work)?;
    let bottom = ix.pick_bottom(t.i, t.k, c, strategy, work)?;
    let middle = ix.pick_middle(t.i, t.j, t.k, c, strategy, work)?;
    let (b, i, sa_b) = ix.apply_row(top, t.b, t.i, t.sa_b, work);
    let (d, j, sa_d) = ix.apply_row(middle, t.d, t.j, t.sa_d, work);
    let (e, k, sa_e) = ix.apply_row(bottom, t.e, t.k, t.sa_e, work);
    let next = SaLcpInterval {
        b,
        d,
        e,
        sa_b,
        sa_d,
        sa_e,
        i,
        j,
        k,
        v: ix.phi_after(top, t.sa_b, t.v),
        w: ix.phi_after(middle, t.sa_d, t.w),
        x: ix.phi_inv_after(middle, t.sa_d, t.x),
        y: ix.phi_inv_after(bottom, t.sa_e, t.y),
    };
    debug_assert!(next.is_consistent(ix));
    Some(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_sa_interval;
    use crate::text::{build_suffix_structures, validate_text};

    fn tuple_of(ix: &Optbwtrl, p: &[u8]) -> Option<SaLcpInterval> {
        ix.backward_search(p).unwrap().map(|t| SaLcpInterval::from_simple(&t))
    }

    #[test]
    fn example_extensions() {
        let t = validate_text(b"missisismississippi$").unwrap();
        let s = build_suffix_structures(&t);
        let ix = Optbwtrl::from_text(&t, 2).unwrap();
        let mut work = WorkCounter::default();
        let enc = |raw: &[u8]| t.encode_pattern(raw);

        let is = tuple_of(&ix, &enc(b"is")).unwrap();
        let sis = extend_salcp(&ix, &is, enc(b"s")[0], Strategy::Rank, &mut work).unwrap();
        assert_eq!((sis.b, sis.e), naive_sa_interval(&enc(b"sis"), t.symbols()).unwrap());
        assert_eq!((sis.b, sis.e), (14, 16));

        let st = tuple_of(&ix, &enc(b"s")).unwrap();
        assert_eq!((st.b, st.e), (13, 20));
        let is2 = extend_salcp(&ix, &st, enc(b"i")[0], Strategy::Scan, &mut work).unwrap();
        assert_eq!((is2.b, is2.e), (4, 8));
        assert_eq!(is2.sa_b, s.sa[4]);

        let i = tuple_of(&ix, &enc(b"i")).unwrap();
        assert!(extend_salcp(&ix, &i, enc(b"z")[0], Strategy::Rank, &mut work).is_none());
        assert!(extend_salcp(&ix, &i, SENTINEL, Strategy::Rank, &mut work).is_none());
    }

    #[test]
    fn every_middle_row_extends_consistently() {
        let t = validate_text(b"abracadabraabracabracadabra").unwrap();
        let s = build_suffix_structures(&t);
        let ix = Optbwtrl::from_text(&t, 2).unwrap();
        let mut work = WorkCounter::default();
        for raw in [&b"a"[..], b"ab", b"ra", b"abra", b"c"] {
            let base = tuple_of(&ix, &t.encode_pattern(raw)).unwrap();
            // Move the middle row to every position of the interval.
            for d in base.b..=base.e {
                let sa_d = s.sa[d];
                let mut tup = base;
                tup.d = d;
                tup.sa_d = sa_d;
                tup.j = ix.f_lf().interval_of(d).unwrap();
                tup.w = ix.f_phi().interval_of(sa_d).unwrap();
                tup.x = ix.f_phi_inv().interval_of(sa_d).unwrap();
                for c in 1..ix.sigma() as u8 {
                    for strategy in [Strategy::Rank, Strategy::Scan] {
                        let got = extend_salcp(&ix, &tup, c, strategy, &mut work);
                        let mut p = vec![c];
                        p.extend(t.encode_pattern(raw));
                        match naive_sa_interval(&p, t.symbols()) {
                            None => assert!(got.is_none()),
                            Some((b, e)) => {
                                let got = got.unwrap();
                                assert_eq!((got.b, got.e), (b, e));
                                assert!(got.b <= got.d && got.d <= got.e);
                                assert_eq!(s.sa[got.d], got.sa_d);
                                assert_eq!(s.sa[got.b], got.sa_b);
                                assert_eq!(s.sa[got.e], got.sa_e);
                                assert!(got.is_consistent(&ix));
                            }
                        }
                    }
                }
            }
        }
    }
}
