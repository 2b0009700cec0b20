//! The 20-symbol example text `missisismississippi$`: every value is checked
//! against the brute-force oracle first, then against the index.

use std::collections::BTreeSet;

use optbwtrl::matching::{compute_matching_statistics, long_lem_query, long_lem_query_direct, Lem};
use optbwtrl::oracle::{naive_bwt, naive_lcp_array, naive_lems, naive_matching_statistics, naive_mems, naive_occurrences, naive_suffix_array};
use optbwtrl::text::{build_rlbwt, build_suffix_structures, SuffixStructures};
use optbwtrl::{Optbwtrl, Text};

fn setup() -> (Text, SuffixStructures, Optbwtrl) {
    let t = Text::new(b"missisismississippi$").unwrap();
    let s = build_suffix_structures(&t);
    let ix = Optbwtrl::from_text(&t, 2).unwrap();
    (t, s, ix)
}

/// φ and φ⁻¹ recomputed from the oracle suffix array.
fn oracle_phi(sa: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = sa.len() - 1;
    let (mut phi, mut phi_inv) = (vec![0; n + 1], vec![0; n + 1]);
    for row in 1..=n {
        let above = if row == 1 { sa[n] } else { sa[row - 1] };
        phi[sa[row]] = above;
        phi_inv[above] = sa[row];
    }
    (phi, phi_inv)
}

#[test]
fn suffix_structures() {
    let (t, s, _) = setup();
    let sa = naive_suffix_array(t.symbols());
    let lcp = naive_lcp_array(t.symbols());
    assert_eq!((sa[10], lcp[10]), (9, 6));
    assert_eq!(s.sa, sa);
    assert_eq!(s.lcp, lcp);
    assert_eq!(s.plcp[9], 6);
    let (phi, phi_inv) = oracle_phi(&sa);
    assert_eq!((phi[9], phi_inv[1]), (1, 9));
    assert_eq!(s.phi, phi);
    assert_eq!(s.phi_inv, phi_inv);
    assert_eq!(s.lf[9], 1);
    assert_eq!(t.alphabet().decode(&naive_bwt(t.symbols())), b"ipssssmm$spissisiiii");
}

#[test]
fn runs_and_lf_intervals() {
    let (t, s, ix) = setup();
    let bwt = naive_bwt(t.symbols());
    let starts: Vec<usize> = (1..=bwt.len()).filter(|&i| i == 1 || bwt[i - 1] != bwt[i - 2]).collect();
    assert_eq!(starts, [1, 2, 3, 7, 9, 10, 11, 12, 13, 15, 16, 17]);
    let rl = build_rlbwt(&s);
    assert_eq!(rl.r(), 12);
    assert_eq!(ix.r(), 12);
    let sa = naive_suffix_array(t.symbols());
    let isa = |pos: usize| sa.iter().position(|&v| v == pos).unwrap();
    // LF[i] = ISA[SA[i] - 1], wrapping to row of n.
    let lf = |row: usize| isa(if sa[row] == 1 { sa.len() - 1 } else { sa[row] - 1 });
    let q: Vec<usize> = starts.iter().map(|&l| lf(l)).collect();
    assert_eq!(q, [2, 11, 13, 9, 1, 17, 12, 3, 18, 4, 20, 5]);
    for row in 1..=20 {
        let x = ix.f_lf().interval_of(row).unwrap();
        assert_eq!(ix.lf_step(row, x).pos, lf(row));
    }
}

#[test]
fn phi_intervals_and_plcp_payloads() {
    let (t, _, ix) = setup();
    let sa = naive_suffix_array(t.symbols());
    let bwt = naive_bwt(t.symbols());
    let (phi, phi_inv) = oracle_phi(&sa);
    let mut tops: Vec<usize> = (1..=20).filter(|&i| i == 1 || bwt[i - 1] != bwt[i - 2]).map(|i| sa[i]).collect();
    tops.sort();
    assert_eq!(tops, [1, 2, 6, 8, 9, 12, 15, 16, 17, 18, 19, 20]);
    let pairs: Vec<(usize, usize)> = tops.iter().map(|&p| (p, phi[p])).collect();
    assert_eq!(
        pairs,
        [(1, 10), (2, 13), (6, 4), (8, 12), (9, 1), (12, 6), (15, 17), (16, 19), (17, 18), (18, 9), (19, 20), (20, 11)]
    );
    // Balancing only adds interval starts.
    let balanced: BTreeSet<_> = ix.f_phi().sequence().pairs().iter().copied().collect();
    assert!(pairs.iter().all(|p| balanced.contains(p)));

    let lcp = naive_lcp_array(t.symbols());
    let plcp = |pos: usize| lcp[sa.iter().position(|&v| v == pos).unwrap()];
    for pos in 1..=20 {
        let v = ix.f_phi().interval_of(pos).unwrap();
        assert_eq!(ix.phi_step(pos, v).pos, phi[pos]);
        assert_eq!(ix.plcp_at(pos, v), plcp(pos));
        let y = ix.f_phi_inv().interval_of(pos).unwrap();
        assert_eq!(ix.phi_inv_step(pos, y).pos, phi_inv[pos]);
        assert_eq!(ix.plcp_below(pos, y), plcp(phi_inv[pos]));
    }
}

#[test]
fn count_and_locate() {
    let (t, _, ix) = setup();
    let cases: [(&[u8], usize); 4] = [(b"iss", 3), (b"i", 7), (b"$", 1), (b"missis", 2)];
    for (raw, count) in cases {
        let p = t.encode_pattern(raw);
        let naive = naive_occurrences(&p, t.symbols());
        assert_eq!(naive.len(), count);
        assert_eq!(ix.count(&p).unwrap(), count);
        let mut got = ix.locate(&p).unwrap();
        got.sort();
        assert_eq!(got, naive);
    }
    // SA order for "iss".
    assert_eq!(ix.locate(&t.encode_pattern(b"iss")).unwrap(), [13, 2, 10]);
    assert_eq!(ix.locate(&t.encode_pattern(b"$")).unwrap(), [20]);
    let mut m = ix.locate(&t.encode_pattern(b"missis")).unwrap();
    m.sort();
    assert_eq!(m, [1, 9]);
    assert_eq!(ix.count(&t.encode_pattern(b"pp$")).unwrap(), 0);
}

#[test]
fn matching_statistics_entry() {
    let (t, s, ix) = setup();
    let p = t.encode_pattern(b"sippis");
    let naive = naive_matching_statistics(&p, t.symbols());
    assert_eq!((naive[0].len, naive[0].suff, naive[0].row), (5, 15, 13));
    let ms = compute_matching_statistics(&s, &ix, &p).unwrap();
    assert_eq!((ms.get(1).len, ms.get(1).suff, ms.get(1).row), (5, 15, 13));
}

#[test]
fn lems_and_mems() {
    let (t, s, ix) = setup();
    let p = t.encode_pattern(b"ssis");
    let lem = |p_start, t_start, len| Lem { p_start, t_start, len };
    let expected: BTreeSet<Lem> = [lem(1, 3, 4), lem(1, 11, 4), lem(1, 14, 3), lem(2, 6, 3)].into();
    assert_eq!(naive_lems(&p, t.symbols(), 3), expected);
    let ms = compute_matching_statistics(&s, &ix, &p).unwrap();
    let got: BTreeSet<Lem> = long_lem_query(&ix, &ms, 3).unwrap().into_iter().collect();
    assert_eq!(got, expected);
    let direct: BTreeSet<Lem> = long_lem_query_direct(&ix, &p, 3).unwrap().into_iter().collect();
    assert_eq!(direct, expected);
    assert!(long_lem_query(&ix, &ms, 5).unwrap().is_empty());
    assert_eq!(naive_mems(&p, t.symbols()), [lem(1, 3, 4), lem(1, 11, 4)].into());
}
