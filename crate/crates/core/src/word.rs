//! Words over the vertical alphabet.

use crate::symbol::ColorId;
use std::fmt;

/// A finite sequence of vertical colours.
///
/// Edge labels are normally non-empty. The empty word is tolerated because
/// the Jeandel-Rao family member of index 0 degenerates to width-0 labels;
/// the path machinery treats such edges as connectors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<ColorId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(c: ColorId) -> Self {
        Word(vec![c])
    }

    pub fn from_names(names: &[&str]) -> Self {
        Word(names.iter().map(|n| ColorId::new(n)).collect())
    }

    /// Word made of `count` copies of `c`.
    pub fn repeat(c: ColorId, count: usize) -> Self {
        Word(vec![c; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Left rotation by `d`: `uv -> vu` with `|u| = d`.
    pub fn rotate_left(&self, d: usize) -> Word {
        if self.is_empty() {
            return self.clone();
        }
        let d = d % self.len();
        let mut v = self.0[d..].to_vec();
        v.extend_from_slice(&self.0[..d]);
        Word(v)
    }

    pub fn letters(&self) -> &[ColorId] {
        &self.0
    }
}

impl fmt::Display for Word {
    /// Dot-joined letters; `-` stands for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<&str> = self.0.iter().map(|c| c.as_str()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
