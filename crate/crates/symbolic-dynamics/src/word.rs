//! Finite windows of bi-infinite words over `{0, ..., d-1}`.

use serde::{Serialize, Serializer};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// `symbols[offset]` is the symbol at position 0. A cyclic word stands for
/// the bi-infinite repetition of `symbols`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolWord {
    pub symbols: Vec<u8>,
    pub offset: usize,
    pub cyclic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    Empty,
    #[error("position 0 (offset {offset}) outside a word of length {len}")]
    Offset { offset: usize, len: usize },
    #[error("invalid symbol {0:?}")]
    Symbol(char),
    #[error("more than one caret")]
    Caret,
}

impl SymbolWord {
    pub fn new(symbols: Vec<u8>, offset: usize) -> Result<Self, WordError> {
        if symbols.is_empty() {
            return Err(WordError::Empty);
        }
        if offset >= symbols.len() {
            return Err(WordError::Offset { offset, len: symbols.len() });
        }
        Ok(SymbolWord { symbols, offset, cyclic: false })
    }

    /// The periodic word `... pattern pattern ...` with `pattern[0]` at 0.
    pub fn periodic(pattern: Vec<u8>) -> Result<Self, WordError> {
        let mut w = SymbolWord::new(pattern, 0)?;
        w.cyclic = true;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Smallest and largest defined positions (for cyclic words: one period).
    pub fn first(&self) -> i64 {
        -(self.offset as i64)
    }

    pub fn last(&self) -> i64 {
        self.symbols.len() as i64 - 1 - self.offset as i64
    }

    pub fn get(&self, k: i64) -> Option<u8> {
        let i = self.offset as i64 + k;
        if self.cyclic {
            Some(self.symbols[i.rem_euclid(self.symbols.len() as i64) as usize])
        } else {
            (0..self.symbols.len() as i64).contains(&i).then(|| self.symbols[i as usize])
        }
    }

    /// Left shift `(tau s)_k = s_{k+1}`. `None` if position 1 is undefined.
    pub fn shift(&self) -> Option<SymbolWord> {
        if self.cyclic {
            let mut s = self.symbols.clone();
            s.rotate_left(1);
            return Some(SymbolWord { symbols: s, offset: 0, cyclic: true });
        }
        (self.offset + 1 < self.symbols.len())
            .then(|| SymbolWord { symbols: self.symbols.clone(), offset: self.offset + 1, cyclic: false })
    }

    /// Positions `lo..=hi`, which must all be defined.
    pub fn window(&self, lo: i64, hi: i64) -> Option<SymbolWord> {
        if lo > 0 || hi < 0 {
            return None;
        }
        let symbols: Option<Vec<u8>> = (lo..=hi).map(|k| self.get(k)).collect();
        Some(SymbolWord { symbols: symbols?, offset: (-lo) as usize, cyclic: false })
    }

    /// Applies a permutation of the alphabet.
    pub fn relabel(&self, perm: &[u8]) -> SymbolWord {
        SymbolWord {
            symbols: self.symbols.iter().map(|&s| perm[s as usize]).collect(),
            offset: self.offset,
            cyclic: self.cyclic,
        }
    }

    /// Exchanges 0 and 1.
    pub fn swap01(&self) -> SymbolWord {
        self.relabel(&[1, 0])
    }

    /// Forward part `s_0 ... s_{n-1}`.
    pub fn forward(&self, n: usize) -> Option<Vec<u8>> {
        (0..n as i64).map(|k| self.get(k)).collect()
    }

    /// Primitive period of a cyclic word.
    pub fn period(&self) -> Option<usize> {
        if !self.cyclic {
            return None;
        }
        let n = self.symbols.len();
        (1..=n).find(|&p| n % p == 0 && (0..n).all(|i| self.symbols[i] == self.symbols[(i + p) % n]))
    }
}

fn digit(s: u8) -> char {
    char::from_digit(s as u32, 36).unwrap_or('?')
}

impl fmt::Display for SymbolWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cyclic {
            f.write_str("(")?;
        }
        for (i, &s) in self.symbols.iter().enumerate() {
            if i == self.offset {
                f.write_str("^")?;
            }
            write!(f, "{}", digit(s))?;
        }
        if self.cyclic {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Serialize for SymbolWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `1011^0110`; without a caret position 0 is the first symbol.
/// Parentheses around the whole word mark it cyclic.
impl FromStr for SymbolWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, WordError> {
        let t = s.trim();
        let (t, cyclic) = match t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            Some(inner) => (inner, true),
            None => (t, false),
        };
        let mut symbols = Vec::new();
        let mut offset = None;
        for ch in t.chars() {
            if ch == '^' {
                if offset.is_some() {
                    return Err(WordError::Caret);
                }
                offset = Some(symbols.len());
                continue;
            }
            let v = ch.to_digit(36).ok_or(WordError::Symbol(ch))?;
            symbols.push(v as u8);
        }
        let mut w = SymbolWord::new(symbols, offset.unwrap_or(0))?;
        w.cyclic = cyclic;
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caret_round_trip() {
        let w: SymbolWord = "1011^0110".parse().unwrap();
        assert_eq!(w.offset, 4);
        assert_eq!(w.get(0), Some(0));
        assert_eq!(w.get(-1), Some(1));
        assert_eq!(w.get(4), None);
        assert_eq!(w.to_string(), "1011^0110");
    }

    #[test]
    fn shift_moves_the_caret() {
        let w: SymbolWord = "10^110".parse().unwrap();
        assert_eq!(w.shift().unwrap().to_string(), "101^10");
        let c = SymbolWord::periodic(vec![0, 1, 1]).unwrap();
        assert_eq!(c.shift().unwrap().get(0), Some(1));
        assert_eq!(c.get(-1), Some(1));
        assert_eq!(c.to_string(), "(^011)");
    }

    #[test]
    fn periods() {
        assert_eq!(SymbolWord::periodic(vec![1, 0, 1, 0]).unwrap().period(), Some(2));
        assert_eq!(SymbolWord::periodic(vec![1]).unwrap().period(), Some(1));
    }
}
