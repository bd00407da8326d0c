//! Binary words of length at most 24, stored as a single `u32` bitmask.
//!
//! Coordinates are 1-based at every API boundary: bit `i` of the mask holds
//! coordinate `i + 1`. The canonical text form is the sorted support set,
//! e.g. `{1,8,9,12,16,17,18,19}`; a plain bitstring with coordinate 1 on the
//! left is accepted on input as well.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Longest word this crate handles.
pub const MAX_LEN: usize = 24;

/// A binary word with a fixed length.
///
/// Ordering is `(length, weight, bitmask)`, which is the canonical order used
/// for every sorted word list this crate emits.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    bits: u32,
    len: u8,
}

impl Word {
    pub fn zero(len: usize) -> Result<Self> {
        Self::from_bits(len, 0)
    }

    pub fn from_bits(len: usize, bits: u32) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        if bits & !mask(len) != 0 {
            let coordinate = (32 - bits.leading_zeros()) as usize;
            return Err(Error::CoordinateOutOfRange {
                coordinate,
                length: len,
            });
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    /// Build a word from 1-based coordinates. Repeated coordinates cancel.
    pub fn from_support(len: usize, support: &[usize]) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        let mut bits = 0u32;
        for &c in support {
            if c == 0 || c > len {
                return Err(Error::CoordinateOutOfRange {
                    coordinate: c,
                    length: len,
                });
            }
            bits ^= 1 << (c - 1);
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    /// Hamming weight.
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Sorted 1-based support.
    pub fn support(self) -> Vec<usize> {
        (0..self.len())
            .filter(|i| self.bits >> i & 1 == 1)
            .map(|i| i + 1)
            .collect()
    }

    /// Whether 1-based `coordinate` is in the support.
    pub fn contains(self, coordinate: usize) -> bool {
        coordinate >= 1 && coordinate <= self.len() && self.bits >> (coordinate - 1) & 1 == 1
    }

    /// Sum over GF(2): the symmetric difference of supports.
    pub fn checked_add(self, other: Word) -> Result<Word> {
        self.same_len(other)?;
        Ok(Word {
            bits: self.bits ^ other.bits,
            len: self.len,
        })
    }

    /// Standard bilinear form: parity of the common support.
    pub fn dot(self, other: Word) -> Result<bool> {
        self.same_len(other)?;
        Ok((self.bits & other.bits).count_ones() & 1 == 1)
    }

    pub fn distance(self, other: Word) -> Result<u32> {
        self.same_len(other)?;
        Ok((self.bits ^ other.bits).count_ones())
    }

    pub fn intersection_size(self, other: Word) -> Result<u32> {
        self.same_len(other)?;
        Ok((self.bits & other.bits).count_ones())
    }

    /// `self` followed by `tail`; the tail's coordinates are shifted by `self.len()`.
    pub fn concat(self, tail: Word) -> Result<Word> {
        let len = self.len() + tail.len();
        Word::from_bits(len, self.bits | tail.bits << self.len)
    }

    /// Delete the listed 1-based coordinates, closing up the gaps.
    pub fn delete_coordinates(self, coordinates: &[usize]) -> Result<Word> {
        let mut drop = 0u32;
        for &c in coordinates {
            if c == 0 || c > self.len() {
                return Err(Error::CoordinateOutOfRange {
                    coordinate: c,
                    length: self.len(),
                });
            }
            drop |= 1 << (c - 1);
        }
        let mut bits = 0u32;
        let mut out = 0;
        for i in 0..self.len() {
            if drop >> i & 1 == 1 {
                continue;
            }
            bits |= (self.bits >> i & 1) << out;
            out += 1;
        }
        Word::from_bits(out, bits)
    }

    /// Flip one 1-based coordinate.
    pub fn flip(self, coordinate: usize) -> Result<Word> {
        if coordinate == 0 || coordinate > self.len() {
            return Err(Error::CoordinateOutOfRange {
                coordinate,
                length: self.len(),
            });
        }
        Ok(Word {
            bits: self.bits ^ 1 << (coordinate - 1),
            len: self.len,
        })
    }

    /// Parse either `{i,j,...}` (1-based, strictly increasing) or a bitstring
    /// of exactly `len` characters.
    pub fn parse(text: &str, len: usize) -> Result<Word> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('{') {
            let inner = inner
                .strip_suffix('}')
                .ok_or_else(|| Error::Parse(format!("unterminated support set `{text}`")))?;
            let mut support = Vec::new();
            for token in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let c: usize = token
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate `{token}`")))?;
                if let Some(&prev) = support.last() {
                    if c <= prev {
                        return Err(Error::Parse(format!(
                            "coordinates not strictly increasing at `{token}`"
                        )));
                    }
                }
                support.push(c);
            }
            Word::from_support(len, &support)
        } else {
            if text.chars().count() != len {
                return Err(Error::Parse(format!(
                    "bitstring `{text}` has {} characters, expected {len}",
                    text.chars().count()
                )));
            }
            let mut bits = 0u32;
            for (i, ch) in text.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => bits |= 1 << i,
                    _ => return Err(Error::Parse(format!("bad bit `{ch}` in `{text}`"))),
                }
            }
            Word::from_bits(len, bits)
        }
    }

    /// Bitstring with coordinate 1 leftmost.
    pub fn to_bitstring(self) -> String {
        (0..self.len())
            .map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    /// Compare by weight, then lexicographically by sorted support. This is
    /// the row order of printed low-weight tables.
    pub fn support_cmp(self, other: Word) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.support().cmp(&other.support()))
    }

    fn same_len(self, other: Word) -> Result<()> {
        if self.len != other.len {
            Err(Error::LengthMismatch(self.len(), other.len()))
        } else {
            Ok(())
        }
    }
}

pub(crate) fn mask(len: usize) -> u32 {
    if len >= 32 {
        u32::MAX
    } else {
        (1u32 << len) - 1
    }
}

impl std::ops::Add for Word {
    type Output = Word;

    /// Panics on a length mismatch; use [`Word::add`] for the checked form.
    fn add(self, rhs: Word) -> Word {
        self.checked_add(rhs).expect("word lengths differ")
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len, self.weight(), self.bits).cmp(&(other.len, other.weight(), other.bits))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.support().into_iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word{}/{}", self, self.len)
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
