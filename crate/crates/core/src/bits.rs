//! Fixed-length 0/1 vectors.
//!
//! A [`BitVector`] is used as a point of the `n`-cube, as a column of a zero
//! matrix (one bit per zero row), and as the row-incidence vector associated
//! with a literal. Coordinate `i` is stored in bit `i % 64` of word `i / 64`;
//! the textual form lists coordinate 0 first.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl BitVector {
    /// All-zero vector of the given length.
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; word_count(len)],
        }
    }

    /// All-ones vector (the vector written 𝕀 in the literature).
    pub fn ones(len: usize) -> Self {
        let mut v = BitVector {
            len,
            words: vec![u64::MAX; word_count(len)],
        };
        v.clear_tail();
        v
    }

    /// Builds a vector of length `len <= 64` from the low bits of `bits`.
    pub fn from_u64(bits: u64, len: usize) -> Self {
        assert!(len <= 64, "from_u64 supports at most 64 coordinates");
        let mut v = BitVector {
            len,
            words: vec![bits; word_count(len)],
        };
        v.clear_tail();
        v
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        BitVector { len, words }
    }

    /// The low 64 coordinates as an integer, if the vector fits in one word.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        let v = self.get(i);
        self.set(i, !v);
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count_zeros(&self) -> usize {
        self.len - self.count_ones()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// `min(#ones, #zeros)`.
    pub fn weight(&self) -> usize {
        self.count_ones().min(self.count_zeros())
    }

    pub fn complement(&self) -> Self {
        let mut v = BitVector {
            len: self.len,
            words: self.words.iter().map(|w| !w).collect(),
        };
        v.clear_tail();
        v
    }

    pub fn and(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a & b)
    }

    pub fn or(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a | b)
    }

    pub fn xor(&self, other: &Self) -> Result<Self> {
        self.zip(other, |a, b| a ^ b)
    }

    /// Integer inner product: the number of coordinates where both are 1.
    pub fn inner(&self, other: &Self) -> Result<usize> {
        Ok(self.and(other)?.count_ones())
    }

    pub fn hamming_distance(&self, other: &Self) -> Result<usize> {
        Ok(self.xor(other)?.count_ones())
    }

    /// Support of `self` is contained in the support of `other`.
    pub fn is_subset_of(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0))
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Indices of the coordinates equal to 1, ascending.
    pub fn ones_indices(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    fn zip(&self, other: &Self, op: impl Fn(u64, u64) -> u64) -> Result<Self> {
        self.check_len(other)?;
        Ok(BitVector {
            len: self.len,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        })
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Hamming distance exactly 1.
pub fn hamming_adjacent(p: &BitVector, q: &BitVector) -> Result<bool> {
    Ok(p.hamming_distance(q)? == 1)
}

/// `min(#ones(v), #zeros(v))`.
pub fn weight(v: &BitVector) -> usize {
    v.weight()
}

/// Lexicographic order of the textual form (coordinate 0 most significant);
/// shorter vectors sort first.
impl Ord for BitVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            for (a, b) in self.words.iter().zip(&other.words) {
                match a.reverse_bits().cmp(&b.reverse_bits()) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for BitVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.iter() {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut bits = Vec::with_capacity(s.len());
        for (pos, c) in s.chars().enumerate() {
            match c {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(Error::MalformedRow {
                        line: 0,
                        reason: format!("character {other:?} at position {}", pos + 1),
                    })
                }
            }
        }
        Ok(BitVector::from_bools(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(s: &str) -> BitVector {
        s.parse().unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&bv("0011")), 2);
        assert_eq!(weight(&bv("1111")), 0);
        assert_eq!(weight(&bv("0001")), 1);
    }

    #[test]
    fn adjacency_examples() {
        assert!(hamming_adjacent(&bv("001"), &bv("011")).unwrap());
        assert!(!hamming_adjacent(&bv("001"), &bv("010")).unwrap());
        assert!(!hamming_adjacent(&bv("001"), &bv("001")).unwrap());
        assert_eq!(
            hamming_adjacent(&bv("001"), &bv("01")),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn complement_is_involution_across_word_boundary() {
        let mut v = BitVector::zeros(130);
        v.set(0, true);
        v.set(64, true);
        v.set(129, true);
        assert_eq!(v.complement().count_ones(), 127);
        assert_eq!(v.complement().complement(), v);
        assert_eq!(BitVector::ones(130).count_ones(), 130);
    }

    #[test]
    fn order_is_textual() {
        let mut vs = [bv("100"), bv("001"), bv("011"), bv("010")];
        vs.sort();
        let s: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
        assert_eq!(s, ["001", "010", "011", "100"]);
    }

    #[test]
    fn malformed_character() {
        assert!(matches!(
            "012".parse::<BitVector>(),
            Err(Error::MalformedRow { .. })
        ));
    }
}
