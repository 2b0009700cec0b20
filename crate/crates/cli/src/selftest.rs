//! Generated-instance comparison of every query against brute force.

use std::collections::BTreeSet;

use optbwtrl::matching::{compute_matching_statistics, long_lem_query, long_lem_query_direct, Lem};
use optbwtrl::oracle::{naive_lems, naive_matching_statistics, naive_occurrences};
use optbwtrl::text::build_suffix_structures;
use optbwtrl::{Optbwtrl, Text};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{CliResult, Failure};

fn random_string(rng: &mut StdRng, alpha: &[u8], len: usize) -> Vec<u8> {
    (0..len).map(|_| alpha[rng.gen_range(0..alpha.len())]).collect()
}

/// Runs one instance; returns a description of the first disagreement.
fn check(rng: &mut StdRng) -> Result<(), String> {
    let alpha: &[u8] = if rng.gen_bool(0.5) { b"ab" } else { b"acgt" };
    let n = rng.gen_range(1..400);
    let raw = if rng.gen_bool(0.5) {
        random_string(rng, alpha, n)
    } else {
        let block_len = rng.gen_range(2..40);
        let block = random_string(rng, alpha, block_len);
        block.iter().cycle().take(n).map(|&c| if rng.gen_bool(0.02) { alpha[0] } else { c }).collect()
    };
    let d = rng.gen_range(2..5);
    let text = Text::new(&raw).map_err(|e| e.to_string())?;
    let s = build_suffix_structures(&text);
    let ix = Optbwtrl::from_text(&text, d).map_err(|e| e.to_string())?;
    ix.verify_against(&s).map_err(|e| e.to_string())?;
    let back = Optbwtrl::from_bytes(&ix.to_bytes()).map_err(|e| e.to_string())?;
    if back != ix {
        return Err("index changed after a serialization round trip".into());
    }

    let m = rng.gen_range(1..60);
    let pattern = text.encode_pattern(&random_string(rng, alpha, m));
    let occ = naive_occurrences(&pattern[..pattern.len().min(4)], text.symbols());
    let mut located = ix.locate(&pattern[..pattern.len().min(4)]).map_err(|e| e.to_string())?;
    located.sort_unstable();
    if located != occ {
        return Err("locate disagrees with a scan".into());
    }

    let ms = compute_matching_statistics(&s, &ix, &pattern).map_err(|e| e.to_string())?;
    let naive_ms = naive_matching_statistics(&pattern, text.symbols());
    if ms.entries().iter().zip(&naive_ms).any(|(a, b)| (a.len, a.suff, a.row) != (b.len, b.suff, b.row)) {
        return Err("matching statistics disagree with brute force".into());
    }
    let min_len = rng.gen_range(1..10);
    let expected = naive_lems(&pattern, text.symbols(), min_len);
    let with_ms: BTreeSet<Lem> = long_lem_query(&ix, &ms, min_len).map_err(|e| e.to_string())?.into_iter().collect();
    let direct: BTreeSet<Lem> =
        long_lem_query_direct(&ix, &pattern, min_len).map_err(|e| e.to_string())?.into_iter().collect();
    if with_ms != expected {
        return Err(format!("long LEMs (L={min_len}) disagree with brute force"));
    }
    if direct != expected {
        return Err(format!("direct long LEMs (L={min_len}) disagree with brute force"));
    }
    Ok(())
}

pub fn run(cases: usize, seed: u64) -> CliResult {
    let mut rng = StdRng::seed_from_u64(seed);
    for case in 1..=cases {
        if let Err(msg) = check(&mut rng) {
            return Err(Failure::new(5, format!("selftest case {case} (seed {seed}): {msg}")));
        }
    }
    println!("selftest: {cases} cases passed");
    Ok(())
}
