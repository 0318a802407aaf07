//! Two-string structure code.
//!
//! An ordered graph with maximal cliques `[a_1:b_1], ..., [a_k:b_k]` is
//! written as two `n`-bit strings: `a` has ones at the left endpoints and
//! `b` at the right endpoints. Because both endpoint sequences are strictly
//! increasing, pairing the ones index-wise recovers the intervals.
//!
//! The binary form (`.rgs`) is the magic `RG1S`, a version byte, `n` as a
//! little-endian `u32`, then `ceil(n/8)` bytes for `a` followed by the same
//! for `b`. String position `j` (1-based) lives in byte `(j-1)/8`, bit
//! `(j-1)%8`, least significant first; unused trailing bits are zero.

use std::fmt;

use crate::error::CodeError;
use crate::graph::OrderedGraph;
use crate::structure::{maximal_cliques, og_from_cliques, CliqueCover};

pub const MAGIC: &[u8; 4] = b"RG1S";
pub const VERSION: u8 = 1;
const HEADER_LEN: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StructureCode {
    a: Vec<bool>,
    b: Vec<bool>,
}

impl StructureCode {
    /// Wraps two bit strings; only their lengths are checked here, the
    /// interval conditions are checked by [`StructureCode::validate`].
    pub fn from_bits(a: Vec<bool>, b: Vec<bool>) -> Result<Self, CodeError> {
        if a.len() != b.len() {
            return Err(CodeError::LengthMismatch {
                a: a.len(),
                b: b.len(),
            });
        }
        if a.is_empty() {
            return Err(CodeError::Empty);
        }
        Ok(StructureCode { a, b })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[bool] {
        &self.a
    }

    pub fn b(&self) -> &[bool] {
        &self.b
    }

    /// Number of maximal cliques (ones in `a`).
    pub fn clique_count(&self) -> usize {
        self.a.iter().filter(|&&x| x).count()
    }

    /// Total length in bits, always `2n`.
    pub fn bit_len(&self) -> usize {
        2 * self.n()
    }

    /// Recovers the interval list, reporting the first violated condition.
    pub fn intervals(&self) -> Result<CliqueCover, CodeError> {
        let starts = ones(&self.a);
        let ends = ones(&self.b);
        if starts.len() != ends.len() {
            return Err(CodeError::PopcountMismatch {
                a: starts.len(),
                b: ends.len(),
            });
        }
        if !self.a[0] {
            return Err(CodeError::FirstLeftUnset);
        }
        if !self.b[self.n() - 1] {
            return Err(CodeError::LastRightUnset);
        }
        let intervals = starts.into_iter().zip(ends).collect();
        CliqueCover::new(self.n(), intervals).map_err(CodeError::Cover)
    }

    pub fn validate(&self) -> Result<(), CodeError> {
        self.intervals().map(|_| ())
    }

    /// `a` and `b` as `'0'/'1'` lines.
    pub fn to_text(&self) -> String {
        format!("{}\n{}\n", bit_string(&self.a), bit_string(&self.b))
    }

    /// Parses the two-line text form and validates it.
    pub fn parse_text(text: &str) -> Result<Self, CodeError> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let a = parse_bits(lines.next().unwrap_or(""))?;
        let b = parse_bits(lines.next().unwrap_or(""))?;
        if let Some(extra) = lines.next() {
            return Err(CodeError::BadChar(extra.chars().next().unwrap_or('\n')));
        }
        let code = StructureCode::from_bits(a, b)?;
        code.validate()?;
        Ok(code)
    }

    /// Serializes to the `.rgs` byte layout.
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.n();
        let mut out = Vec::with_capacity(HEADER_LEN + 2 * n.div_ceil(8));
        out.extend_from_slice(MAGIC);
        out.push(VERSION);
        out.extend_from_slice(&(n as u32).to_le_bytes());
        pack(&self.a, &mut out);
        pack(&self.b, &mut out);
        out
    }

    /// Parses the `.rgs` byte layout and validates the result.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodeError> {
        if bytes.len() < HEADER_LEN {
            if !MAGIC.starts_with(&bytes[..bytes.len().min(4)]) {
                return Err(CodeError::BadMagic);
            }
            return Err(CodeError::Truncated {
                expected: HEADER_LEN,
                found: bytes.len(),
            });
        }
        if &bytes[..4] != MAGIC {
            return Err(CodeError::BadMagic);
        }
        if bytes[4] != VERSION {
            return Err(CodeError::BadVersion(bytes[4]));
        }
        let n = u32::from_le_bytes(bytes[5..9].try_into().expect("four header bytes")) as usize;
        if n == 0 {
            return Err(CodeError::Empty);
        }
        let width = n.div_ceil(8);
        let expected = HEADER_LEN + 2 * width;
        if bytes.len() < expected {
            return Err(CodeError::Truncated {
                expected,
                found: bytes.len(),
            });
        }
        if bytes.len() > expected {
            return Err(CodeError::TrailingBytes(bytes.len() - expected));
        }
        let payload = &bytes[HEADER_LEN..];
        let a = unpack(&payload[..width], n)?;
        let b = unpack(&payload[width..], n)?;
        let code = StructureCode { a, b };
        code.validate()?;
        Ok(code)
    }
}

impl fmt::Display for StructureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={} b={}", bit_string(&self.a), bit_string(&self.b))
    }
}

/// Marks the endpoints of every maximal clique.
pub fn encode(og: &OrderedGraph) -> StructureCode {
    let n = og.n();
    let mut a = vec![false; n];
    let mut b = vec![false; n];
    for &(s, e) in maximal_cliques(og).intervals() {
        a[s - 1] = true;
        b[e - 1] = true;
    }
    StructureCode { a, b }
}

/// Inverse of [`encode`]; rejects codes whose endpoints do not form a
/// valid maximal-clique cover.
pub fn decode(code: &StructureCode) -> Result<OrderedGraph, CodeError> {
    Ok(og_from_cliques(&code.intervals()?))
}

fn ones(bits: &[bool]) -> Vec<usize> {
    bits.iter()
        .enumerate()
        .filter(|(_, &x)| x)
        .map(|(j, _)| j + 1)
        .collect()
}

fn bit_string(bits: &[bool]) -> String {
    bits.iter().map(|&x| if x { '1' } else { '0' }).collect()
}

fn parse_bits(line: &str) -> Result<Vec<bool>, CodeError> {
    line.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(CodeError::BadChar(other)),
        })
        .collect()
}

fn pack(bits: &[bool], out: &mut Vec<u8>) {
    for chunk in bits.chunks(8) {
        let byte = chunk
            .iter()
            .enumerate()
            .fold(0u8, |acc, (k, &x)| acc | (u8::from(x) << k));
        out.push(byte);
    }
}

fn unpack(bytes: &[u8], n: usize) -> Result<Vec<bool>, CodeError> {
    let bits: Vec<bool> = (0..8 * bytes.len())
        .map(|j| bytes[j / 8] >> (j % 8) & 1 == 1)
        .collect();
    if bits[n..].iter().any(|&x| x) {
        return Err(CodeError::NonzeroPadding);
    }
    Ok(bits[..n].to_vec())
}
