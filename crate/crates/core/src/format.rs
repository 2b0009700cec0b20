//! Binary index format.
//!
//! Little-endian throughout:
//!
//! ```text
//! "OBRL" | version: u32 | n, r, d: u64
//! | alphabet: has_separator u8, len u64, bytes
//! | 3 × move structure (LF, φ, φ⁻¹):
//! |     original_len u64, k u64, p[k], q[k], dest[k] (u64 each),
//! |     payload flag u8, payload[k] if flagged
//! | k′: u64, l_first[k′] (u8), then sa_top, sa_bot, sa_top_phi, sa_top_idx,
//! |     sa_bot_idx, sa_bot_phi, nd, pd (k′ × u64 each)
//! | crc32 of everything before: u32
//! ```
//!
//! Arrays are stored without their padding slot. The per-symbol interval
//! lists are rebuilt on load. Loading checks magic, then version, then the
//! checksum, then every range and ordering constraint that queries rely on,
//! so a loaded index never indexes out of bounds.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use crate::error::{FormatError, Result};
use crate::index::{char_positions, Optbwtrl};
use crate::moves::MoveStructure;
use crate::text::Alphabet;

pub const MAGIC: &[u8; 4] = b"OBRL";
pub const VERSION: u32 = 1;

/// Whether `bytes` starts like a serialized index.
pub fn has_magic(bytes: &[u8]) -> bool {
    bytes.starts_with(MAGIC)
}

struct Writer(Vec<u8>);

impl Writer {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }

    fn u64(&mut self, v: usize) {
        self.0.extend_from_slice(&(v as u64).to_le_bytes());
    }

    fn array(&mut self, values: &[usize]) {
        for &v in &values[1..] {
            self.u64(v);
        }
    }

    fn move_structure(&mut self, ms: &MoveStructure) {
        let k = ms.len();
        self.u64(ms.original_len);
        self.u64(k);
        self.array(&ms.p[..=k]);
        self.array(&ms.q);
        self.array(&ms.dest);
        match &ms.payload {
            Some(values) => {
                self.u8(1);
                self.array(values);
            }
            None => self.u8(0),
        }
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    at: usize,
}

fn malformed(msg: impl Into<String>) -> FormatError {
    FormatError::Malformed(msg.into())
}

impl Reader<'_> {
    fn take(&mut self, len: usize) -> Result<&[u8], FormatError> {
        let end = self.at.checked_add(len).filter(|&e| e <= self.bytes.len()).ok_or(FormatError::Truncated)?;
        let out = &self.bytes[self.at..end];
        self.at = end;
        Ok(out)
    }

    fn u8(&mut self) -> Result<u8, FormatError> {
        Ok(self.take(1)?[0])
    }

    fn u64(&mut self) -> Result<usize, FormatError> {
        let v = u64::from_le_bytes(self.take(8)?.try_into().unwrap());
        usize::try_from(v).map_err(|_| malformed(format!("value {v} does not fit in memory")))
    }

    /// Reads `len` values into a padded array.
    fn array(&mut self, len: usize) -> Result<Vec<usize>, FormatError> {
        if len > (self.bytes.len() - self.at) / 8 {
            return Err(FormatError::Truncated);
        }
        let mut out = Vec::with_capacity(len + 1);
        out.push(0);
        for _ in 0..len {
            out.push(self.u64()?);
        }
        Ok(out)
    }

    fn move_structure(&mut self, n: usize, d: usize, what: &str) -> Result<MoveStructure, FormatError> {
        let original_len = self.u64()?;
        let k = self.u64()?;
        if k == 0 || k > n || original_len == 0 || original_len > k {
            return Err(malformed(format!("{what}: bad interval counts")));
        }
        let mut p = self.array(k)?;
        p.push(n + 1);
        let q = self.array(k)?;
        let dest = self.array(k)?;
        let payload = match self.u8()? {
            0 => None,
            1 => Some(self.array(k)?),
            flag => return Err(malformed(format!("{what}: bad payload flag {flag}"))),
        };
        let ms = MoveStructure { n, d, original_len, p, q, dest, payload };
        ms.sequence().validate().map_err(|v| malformed(format!("{what}: {v}")))?;
        for x in 1..=k {
            let y = ms.dest[x];
            if y == 0 || y > k || ms.q[x] < ms.p[y] || ms.q[x] >= ms.p[y + 1] {
                return Err(malformed(format!("{what}: bad destination pointer at {x}")));
            }
            if let Some(values) = &ms.payload {
                if values[x] + 1 < ms.p[x + 1] - ms.p[x] {
                    return Err(malformed(format!("{what}: payload too small at {x}")));
                }
            }
        }
        Ok(ms)
    }
}

impl Optbwtrl {
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut w = Writer(Vec::new());
        w.0.extend_from_slice(MAGIC);
        w.0.extend_from_slice(&VERSION.to_le_bytes());
        w.u64(self.n);
        w.u64(self.r);
        w.u64(self.d);
        w.u8(self.alphabet.has_separator() as u8);
        w.u64(self.alphabet.table().len());
        w.0.extend_from_slice(self.alphabet.table());
        w.move_structure(&self.f_lf);
        w.move_structure(&self.f_phi);
        w.move_structure(&self.f_phi_inv);
        w.u64(self.intervals());
        w.0.extend_from_slice(&self.l_first[1..]);
        for array in [
            &self.sa_top,
            &self.sa_bot,
            &self.sa_top_phi,
            &self.sa_top_idx,
            &self.sa_bot_idx,
            &self.sa_bot_phi,
            &self.nd,
            &self.pd,
        ] {
            w.array(array);
        }
        let crc = crc32fast::hash(&w.0);
        w.0.extend_from_slice(&crc.to_le_bytes());
        w.0
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Ok(decode(bytes)?)
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> Result<()> {
        out.write_all(&self.to_bytes()).map_err(FormatError::Io)?;
        Ok(())
    }

    pub fn read_from<R: Read>(mut input: R) -> Result<Self> {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes).map_err(FormatError::Io)?;
        Self::from_bytes(&bytes)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes()).map_err(FormatError::Io)?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = fs::read(path).map_err(FormatError::Io)?;
        Self::from_bytes(&bytes)
    }
}

fn decode(bytes: &[u8]) -> Result<Optbwtrl, FormatError> {
    let prefix = &bytes[..bytes.len().min(4)];
    if prefix != &MAGIC[..prefix.len()] {
        return Err(FormatError::BadMagic);
    }
    if bytes.len() < 12 {
        return Err(FormatError::Truncated);
    }
    let version = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
    if version != VERSION {
        return Err(FormatError::Version { found: version, expected: VERSION });
    }
    let (body, tail) = bytes.split_at(bytes.len() - 4);
    let stored = u32::from_le_bytes(tail.try_into().unwrap());
    let computed = crc32fast::hash(body);
    if stored != computed {
        return Err(FormatError::Checksum { stored, computed });
    }

    let mut rd = Reader { bytes: body, at: 8 };
    let n = rd.u64()?;
    let r = rd.u64()?;
    let d = rd.u64()?;
    if n == 0 || n >= usize::MAX / 2 || r == 0 || r > n || d < 2 {
        return Err(malformed("bad header values"));
    }
    let has_separator = match rd.u8()? {
        0 => false,
        1 => true,
        flag => return Err(malformed(format!("bad separator flag {flag}"))),
    };
    let sigma = rd.u64()?;
    if sigma == 0 || sigma > 256 {
        return Err(malformed(format!("bad alphabet size {sigma}")));
    }
    let table = rd.take(sigma)?.to_vec();
    let alphabet = Alphabet::from_table(table, has_separator).map_err(|e| malformed(e.to_string()))?;

    let f_lf = rd.move_structure(n, d, "LF structure")?;
    let f_phi = rd.move_structure(n, d, "phi structure")?;
    let f_phi_inv = rd.move_structure(n, d, "phi inverse structure")?;
    if f_phi.payload.is_none() || f_phi_inv.payload.is_none() || f_lf.payload.is_some() {
        return Err(malformed("payload flags do not match the structure roles"));
    }

    let k = rd.u64()?;
    if k != f_lf.len() {
        return Err(malformed("run-head count differs from the LF structure"));
    }
    let mut l_first = vec![0u8];
    l_first.extend_from_slice(rd.take(k)?);
    if l_first[1..].iter().any(|&c| c as usize >= sigma) {
        return Err(malformed("run-head symbol outside the alphabet"));
    }
    let mut arrays = Vec::with_capacity(8);
    for _ in 0..8 {
        arrays.push(rd.array(k)?);
    }
    if rd.at != body.len() {
        return Err(malformed("trailing bytes after the last array"));
    }
    let mut arrays = arrays.into_iter();
    let mut next = || arrays.next().unwrap();
    let (sa_top, sa_bot, sa_top_phi, sa_top_idx) = (next(), next(), next(), next());
    let (sa_bot_idx, sa_bot_phi, nd, pd) = (next(), next(), next(), next());

    let in_range = |values: &[usize], lo: usize, hi: usize| values[1..].iter().all(|&v| lo <= v && v <= hi);
    let checks = [
        (in_range(&sa_top, 1, n) && in_range(&sa_bot, 1, n), "SA samples"),
        (in_range(&sa_top_phi, 1, f_phi.len()) && in_range(&sa_bot_phi, 1, f_phi.len()), "phi pointers"),
        (in_range(&sa_top_idx, 1, f_phi_inv.len()) && in_range(&sa_bot_idx, 1, f_phi_inv.len()), "phi inverse pointers"),
        ((1..=k).all(|x| nd[x] > x && nd[x] <= k + 1 && pd[x] < x), "jump arrays"),
    ];
    if let Some((_, what)) = checks.iter().find(|(ok, _)| !ok) {
        return Err(malformed(format!("{what} out of range")));
    }
    let sample_in = |ms: &MoveStructure, pos: usize, x: usize| ms.start(x) <= pos && pos <= ms.end(x);
    for x in 1..=k {
        if !sample_in(&f_phi, sa_top[x], sa_top_phi[x])
            || !sample_in(&f_phi, sa_bot[x], sa_bot_phi[x])
            || !sample_in(&f_phi_inv, sa_top[x], sa_top_idx[x])
            || !sample_in(&f_phi_inv, sa_bot[x], sa_bot_idx[x])
        {
            return Err(malformed(format!("sample pointers of interval {x} do not contain their values")));
        }
    }

    let char_positions = char_positions(&l_first, sigma);
    Ok(Optbwtrl {
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
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::text::{validate_text, Text};

    fn sample() -> Optbwtrl {
        let t = validate_text(b"missisismississippi$").unwrap();
        Optbwtrl::from_text(&t, 2).unwrap()
    }

    #[test]
    fn round_trip() {
        let ix = sample();
        let bytes = ix.to_bytes();
        assert!(has_magic(&bytes));
        assert_eq!(Optbwtrl::from_bytes(&bytes).unwrap(), ix);
        let t = Text::from_records(&[&b"acgt"[..], b"ggta"]).unwrap();
        let ix = Optbwtrl::from_text(&t, 3).unwrap();
        assert_eq!(Optbwtrl::from_bytes(&ix.to_bytes()).unwrap(), ix);
    }

    #[test]
    fn rejections_in_order() {
        let bytes = sample().to_bytes();
        let fmt = |b: &[u8]| match Optbwtrl::from_bytes(b) {
            Err(Error::Format(e)) => e,
            other => panic!("expected a format error, got {other:?}"),
        };

        let mut bad = bytes.clone();
        bad[0] = b'X';
        bad[5] = 9;
        assert!(matches!(fmt(&bad), FormatError::BadMagic));

        let mut bad = bytes.clone();
        bad[4] = 2;
        *bad.last_mut().unwrap() ^= 1;
        assert!(matches!(fmt(&bad), FormatError::Version { found: 2, expected: 1 }));

        let mut bad = bytes.clone();
        bad[20] ^= 0x40;
        assert!(matches!(fmt(&bad), FormatError::Checksum { .. }));

        assert!(matches!(fmt(&bytes[..6]), FormatError::Truncated));
        assert!(matches!(fmt(&bytes[..bytes.len() - 1]), FormatError::Checksum { .. }));
        assert!(matches!(fmt(b""), FormatError::Truncated));
        assert!(matches!(fmt(b"\x7fELF"), FormatError::BadMagic));
    }

    #[test]
    fn corrupt_body_with_valid_checksum_is_malformed() {
        let bytes = sample().to_bytes();
        let mut body = bytes[..bytes.len() - 4].to_vec();
        // n lives right after magic and version.
        body[8..16].copy_from_slice(&0u64.to_le_bytes());
        let crc = crc32fast::hash(&body);
        body.extend_from_slice(&crc.to_le_bytes());
        assert!(matches!(Optbwtrl::from_bytes(&body), Err(Error::Format(FormatError::Malformed(_)))));
    }

    #[test]
    fn every_truncation_fails_cleanly() {
        let bytes = sample().to_bytes();
        for len in 0..bytes.len() {
            assert!(Optbwtrl::from_bytes(&bytes[..len]).is_err());
        }
    }
}
