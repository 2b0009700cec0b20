//! Brute-force reference implementations of every query.
//!
//! Nothing here touches the index, the move structures or the suffix array
//! construction in [`crate::text`]: everything is recomputed from the dense
//! symbols by direct comparison, so agreement with the fast paths means
//! something. All functions are quadratic or worse.
//!
//! Texts and patterns are dense-encoded symbol slices (0-based); every
//! returned position is 1-based.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::matching::Lem;

/// Length of the longest common prefix of two slices.
fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Suffix array by sorting suffixes directly. Padded: slot 0 is unused.
pub fn naive_suffix_array(text: &[u8]) -> Vec<usize> {
    let mut sa: Vec<usize> = (1..=text.len()).collect();
    sa.sort_by(|&a, &b| text[a - 1..].cmp(&text[b - 1..]));
    sa.insert(0, 0);
    sa
}

/// LCP array (LCP[1] = 0) by comparing adjacent sorted suffixes. Padded.
pub fn naive_lcp_array(text: &[u8]) -> Vec<usize> {
    let sa = naive_suffix_array(text);
    let mut lcp = vec![0; sa.len()];
    for row in 2..sa.len() {
        lcp[row] = common_prefix(&text[sa[row - 1] - 1..], &text[sa[row] - 1..]);
    }
    lcp
}

/// BWT as dense symbols, 0-based.
pub fn naive_bwt(text: &[u8]) -> Vec<u8> {
    let n = text.len();
    naive_suffix_array(text)[1..]
        .iter()
        .map(|&s| if s == 1 { text[n - 1] } else { text[s - 2] })
        .collect()
}

/// Number of maximal equal-symbol runs in the BWT.
pub fn naive_runs(text: &[u8]) -> usize {
    let bwt = naive_bwt(text);
    bwt.iter().enumerate().filter(|&(i, &c)| i == 0 || bwt[i - 1] != c).count()
}

/// Start positions of every occurrence of `pattern`, ascending.
pub fn naive_occurrences(pattern: &[u8], text: &[u8]) -> Vec<usize> {
    if pattern.is_empty() || pattern.len() > text.len() {
        return Vec::new();
    }
    (0..=text.len() - pattern.len())
        .filter(|&t| &text[t..t + pattern.len()] == pattern)
        .map(|t| t + 1)
        .collect()
}

/// One matching-statistics entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NaiveMs {
    /// Longest prefix of the pattern suffix that occurs in the text.
    pub len: usize,
    /// Text position of the chosen occurrence; 0 when `len` is 0.
    pub suff: usize,
    /// SA row of `suff`; 0 when `len` is 0.
    pub row: usize,
}

/// Matching statistics for every pattern position. Among occurrences of
/// the longest match, the one in the smallest SA row is chosen.
pub fn naive_matching_statistics(pattern: &[u8], text: &[u8]) -> Vec<NaiveMs> {
    let sa = naive_suffix_array(text);
    (0..pattern.len())
        .map(|f| {
            let mut best = NaiveMs { len: 0, suff: 0, row: 0 };
            for (row, &s) in sa.iter().enumerate().skip(1) {
                let len = common_prefix(&pattern[f..], &text[s - 1..]);
                if len > best.len {
                    best = NaiveMs { len, suff: s, row };
                }
            }
            best
        })
        .collect()
}

/// Every LEM of length at least `min_len`: a common substring that cannot
/// be extended by one symbol on the left in both strings at once, nor on
/// the right.
pub fn naive_lems(pattern: &[u8], text: &[u8], min_len: usize) -> BTreeSet<Lem> {
    let mut out = BTreeSet::new();
    for i in 0..pattern.len() {
        for t in 0..text.len() {
            if i > 0 && t > 0 && pattern[i - 1] == text[t - 1] {
                continue;
            }
            let len = common_prefix(&pattern[i..], &text[t..]);
            if len > 0 && len >= min_len {
                out.insert(Lem { p_start: i + 1, t_start: t + 1, len });
            }
        }
    }
    out
}

/// Every MEM occurrence: a pattern substring that occurs in the text but
/// whose one-symbol extensions within the pattern, left or right, do not.
/// One triple per text occurrence.
pub fn naive_mems(pattern: &[u8], text: &[u8]) -> BTreeSet<Lem> {
    let longest: Vec<usize> = (0..pattern.len())
        .map(|f| (0..text.len()).map(|t| common_prefix(&pattern[f..], &text[t..])).max().unwrap_or(0))
        .collect();
    let mut out = BTreeSet::new();
    for f in 0..pattern.len() {
        let len = longest[f];
        // P[f-1..f+len) occurs iff the previous position matches past len.
        if len == 0 || (f > 0 && longest[f - 1] > len) {
            continue;
        }
        for t in naive_occurrences(&pattern[f..f + len], text) {
            out.insert(Lem { p_start: f + 1, t_start: t, len });
        }
    }
    out
}

/// Checks both LEM maximality conditions for one triple.
pub fn is_lem(pattern: &[u8], text: &[u8], lem: &Lem) -> bool {
    let (i, t, len) = (lem.p_start, lem.t_start, lem.len);
    if len == 0 || i == 0 || t == 0 || i + len - 1 > pattern.len() || t + len - 1 > text.len() {
        return false;
    }
    if pattern[i - 1..i - 1 + len] != text[t - 1..t - 1 + len] {
        return false;
    }
    let left_fails = i == 1 || t == 1 || pattern[i - 2] != text[t - 2];
    let (pe, te) = (i - 1 + len, t - 1 + len);
    let right_fails = pe == pattern.len() || te == text.len() || pattern[pe] != text[te];
    left_fails && right_fails
}

/// Lexicographic comparison of a text suffix with a pattern, truncated to
/// the pattern length. Exposed for tests that probe sa-intervals.
pub fn compare_prefix(text: &[u8], suffix: usize, pattern: &[u8]) -> Ordering {
    let s = &text[suffix - 1..];
    s[..s.len().min(pattern.len())].cmp(pattern)
}

/// Rows `[b, e]` whose suffixes start with `pattern`, if any.
pub fn naive_sa_interval(pattern: &[u8], text: &[u8]) -> Option<(usize, usize)> {
    let sa = naive_suffix_array(text);
    let rows: Vec<usize> = (1..sa.len())
        .filter(|&row| compare_prefix(text, sa[row], pattern) == Ordering::Equal)
        .collect();
    Some((*rows.first()?, *rows.last()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::validate_text;

    fn example() -> crate::text::Text {
        validate_text(b"missisismississippi$").unwrap()
    }

    fn lem(p_start: usize, t_start: usize, len: usize) -> Lem {
        Lem { p_start, t_start, len }
    }

    #[test]
    fn example_arrays() {
        let t = example();
        let sa = naive_suffix_array(t.symbols());
        assert_eq!(sa[10], 9);
        assert_eq!(naive_lcp_array(t.symbols())[10], 6);
        assert_eq!(t.alphabet().decode(&naive_bwt(t.symbols())), b"ipssssmm$spissisiiii");
        assert_eq!(naive_runs(t.symbols()), 12);
    }

    #[test]
    fn occurrences() {
        let t = example();
        assert_eq!(naive_occurrences(&t.encode_pattern(b"iss"), t.symbols()), vec![2, 10, 13]);
        assert_eq!(naive_occurrences(&t.encode_pattern(b"$"), t.symbols()), vec![20]);
        assert!(naive_occurrences(&t.encode_pattern(b"x"), t.symbols()).is_empty());
    }

    #[test]
    fn matching_statistics() {
        let t = example();
        let ms = naive_matching_statistics(&t.encode_pattern(b"sippis"), t.symbols());
        assert_eq!(ms[0], NaiveMs { len: 5, suff: 15, row: 13 });
        let ms = naive_matching_statistics(&t.encode_pattern(b"$"), t.symbols());
        assert_eq!(ms[0], NaiveMs { len: 1, suff: 20, row: 1 });
        let ms = naive_matching_statistics(&t.encode_pattern(b"zzz"), t.symbols());
        assert!(ms.iter().all(|e| e.len == 0));
        let ms = naive_matching_statistics(&t.encode_pattern(b"ippi"), t.symbols());
        assert_eq!(ms[0].len, 4);
    }

    #[test]
    fn example_lems_and_mems() {
        let t = example();
        let p = t.encode_pattern(b"ssis");
        let expected: BTreeSet<_> = [lem(1, 3, 4), lem(1, 11, 4), lem(1, 14, 3), lem(2, 6, 3)].into();
        assert_eq!(naive_lems(&p, t.symbols(), 3), expected);
        assert!(naive_lems(&p, t.symbols(), 5).is_empty());
        assert_eq!(naive_mems(&p, t.symbols()), [lem(1, 3, 4), lem(1, 11, 4)].into());
        assert!(naive_mems(&t.encode_pattern(b"zz"), t.symbols()).is_empty());
        assert_eq!(naive_mems(&t.encode_pattern(b"p"), &t.encode_pattern(b"ipi$")), [lem(1, 2, 1)].into());
    }

    #[test]
    fn self_match() {
        let t = example();
        let p = &t.symbols()[..t.len() - 1];
        assert!(naive_lems(p, t.symbols(), 1).contains(&lem(1, 1, 19)));
        assert!(naive_lems(p, t.symbols(), 20).is_empty());
    }

    #[test]
    fn lems_are_closed_under_the_definition() {
        let t = example();
        let p = t.encode_pattern(b"sisippimis");
        let all = naive_lems(&p, t.symbols(), 1);
        assert!(!all.is_empty());
        assert!(all.iter().all(|l| is_lem(&p, t.symbols(), l)));
        let mems = naive_mems(&p, t.symbols());
        assert!(mems.is_subset(&all));
    }

    #[test]
    fn sa_intervals() {
        let t = example();
        assert_eq!(naive_sa_interval(&t.encode_pattern(b"is"), t.symbols()), Some((4, 8)));
        assert_eq!(naive_sa_interval(&t.encode_pattern(b"s"), t.symbols()), Some((13, 20)));
        assert_eq!(naive_sa_interval(&t.encode_pattern(b"sis"), t.symbols()), Some((14, 16)));
        assert_eq!(naive_sa_interval(&t.encode_pattern(b"pm"), t.symbols()), None);
    }
}
