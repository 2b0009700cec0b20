//! A run-length compressed string index that answers count and locate
//! queries and enumerates long locally maximal exact matches (LEMs).
//!
//! The index stores O(r) integers, where r is the number of runs in the
//! Burrows-Wheeler transform of the text. LF, φ and φ⁻¹ are evaluated in
//! constant time with move structures, and PLCP values ride along on the φ
//! and φ⁻¹ structures as per-interval linear payloads.
//!
//! ```
//! use optbwtrl::{Optbwtrl, Text};
//! use optbwtrl::matching::{compute_matching_statistics, long_lem_query};
//! use optbwtrl::text::build_suffix_structures;
//!
//! let text = Text::new(b"missisismississippi")?;
//! let index = Optbwtrl::from_text(&text, 2)?;
//! assert_eq!(index.r(), 12);
//!
//! let iss = text.encode_pattern(b"iss");
//! assert_eq!(index.count(&iss)?, 3);
//!
//! let pattern = text.encode_pattern(b"ssis");
//! let ms = compute_matching_statistics(&build_suffix_structures(&text), &index, &pattern)?;
//! let mut lems = long_lem_query(&index, &ms, 3)?;
//! lems.sort();
//! let triples: Vec<_> = lems.iter().map(|l| (l.p_start, l.t_start, l.len)).collect();
//! assert_eq!(triples, [(1, 3, 4), (1, 11, 4), (1, 14, 3), (2, 6, 3)]);
//! # Ok::<(), optbwtrl::Error>(())
//! ```
//!
//! All positions, in both the API and the output, are 1-based.

pub mod error;
pub mod format;
pub mod index;
pub mod matching;
pub mod moves;
pub mod oracle;
pub mod text;

pub use error::{Error, FormatError, Result};
pub use index::{Optbwtrl, Strategy, WorkCounter, DEFAULT_BALANCE};
pub use matching::Lem;
pub use moves::{IntervalSequence, MoveStructure};
pub use text::{Alphabet, Text};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/text.md")]
    mod text {}
    #[doc = include_str!("../../../book/src/moves.md")]
    mod moves {}
    #[doc = include_str!("../../../book/src/index.md")]
    mod index {}
    #[doc = include_str!("../../../book/src/lems.md")]
    mod lems {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
