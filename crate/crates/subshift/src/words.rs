//! Alphabets and finite words.
//!
//! Symbols are named by strings and addressed internally by their index in
//! the alphabet's fixed ordering.  That ordering is total and is used for
//! every canonicalization downstream (class representatives, vertex orders,
//! matrix row/column orders), so it must never change once an alphabet is
//! built.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An ordered finite set of distinct symbol names.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Result<Self> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn binary() -> Self {
        Alphabet::new(["0", "1"]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_name(&self, id: u16) -> &str {
        &self.symbols[id as usize]
    }

    pub fn index_of(&self, name: &str) -> Result<u16> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .map(|i| i as u16)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    /// All symbol ids in alphabet order.
    pub fn ids(&self) -> impl Iterator<Item = u16> + '_ {
        (0..self.symbols.len() as u16).into_iter()
    }

    /// Parse a word in display form.  When every symbol name is a single
    /// character the text is read character by character; otherwise symbols
    /// must be separated by whitespace (the form `display` emits).
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        if text.trim().is_empty() {
            return Ok(Word::empty());
        }
        let single_char = self.symbols.iter().all(|s| s.chars().count() == 1);
        let parts: Vec<String> = if text.contains(char::is_whitespace) || !single_char {
            text.split_whitespace().map(str::to_string).collect()
        } else {
            text.chars().map(|c| c.to_string()).collect()
        };
        let mut ids = Vec::with_capacity(parts.len());
        for p in &parts {
            ids.push(self.index_of(p)?);
        }
        Ok(Word::from_ids(ids))
    }

    pub fn display_word(&self, w: &Word) -> String {
        let single_char = self.symbols.iter().all(|s| s.chars().count() == 1);
        let names: Vec<&str> = w.ids().iter().map(|&i| self.symbol_name(i)).collect();
        if single_char {
            names.concat()
        } else {
            names.join(" ")
        }
    }
}

/// A finite sequence of symbol ids over some alphabet (empty allowed).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct Word(Vec<u16>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_ids(ids: Vec<u16>) -> Self {
        Word(ids)
    }

    pub fn single(id: u16) -> Self {
        Word(vec![id])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self) -> &[u16] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        Word(ids)
    }

    pub fn push(&self, id: u16) -> Word {
        let mut ids = self.0.clone();
        ids.push(id);
        Word(ids)
    }

    pub fn prepend(&self, id: u16) -> Word {
        let mut ids = Vec::with_capacity(self.0.len() + 1);
        ids.push(id);
        ids.extend_from_slice(&self.0);
        Word(ids)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.0.len())].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        let start = self.0.len().saturating_sub(n);
        Word(self.0[start..].to_vec())
    }

    pub fn repeated(&self, times: usize) -> Word {
        let mut ids = Vec::with_capacity(self.0.len() * times);
        for _ in 0..times {
            ids.extend_from_slice(&self.0);
        }
        Word(ids)
    }

    /// Subword relation: does `self` occur as a factor of `other`?
    pub fn is_subword_of(&self, other: &Word) -> bool {
        if self.0.is_empty() {
            return true;
        }
        if self.0.len() > other.0.len() {
            return false;
        }
        other.0.windows(self.0.len()).any(|w| w == self.0.as_slice())
    }

    /// Validate that every symbol id is in range for `alphabet`.
    pub fn check_alphabet(&self, alphabet: &Alphabet) -> Result<()> {
        for &id in &self.0 {
            if id as usize >= alphabet.len() {
                return Err(Error::UnknownSymbol(format!("#{id}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    /// Raw id form; prefer [`Alphabet::display_word`] for named output.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, id) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{id}")?;
        }
        Ok(())
    }
}
