//! Interned color symbols.
//!
//! A [`ColorId`] is an opaque token for a horizontal or vertical colour.
//! Two ids are equal iff their source strings are equal, and the order is
//! the lexicographic order of the source strings, so canonical forms do not
//! depend on interning order.

use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

struct Interner {
    map: HashMap<&'static str, u32>,
    strings: Vec<&'static str>,
}

static INTERNER: Lazy<RwLock<Interner>> = Lazy::new(|| {
    RwLock::new(Interner {
        map: HashMap::new(),
        strings: Vec::new(),
    })
});

/// An interned colour symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColorId(u32);

impl ColorId {
    pub fn new(name: &str) -> Self {
        {
            let int = INTERNER.read().unwrap();
            if let Some(&id) = int.map.get(name) {
                return ColorId(id);
            }
        }
        let mut int = INTERNER.write().unwrap();
        if let Some(&id) = int.map.get(name) {
            return ColorId(id);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        let id = int.strings.len() as u32;
        int.strings.push(leaked);
        int.map.insert(leaked, id);
        ColorId(id)
    }

    pub fn as_str(self) -> &'static str {
        INTERNER.read().unwrap().strings[self.0 as usize]
    }
}

impl PartialOrd for ColorId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ColorId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        if self.0 == other.0 {
            std::cmp::Ordering::Equal
        } else {
            self.as_str().cmp(other.as_str())
        }
    }
}

impl fmt::Debug for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_str())
    }
}

impl From<&str> for ColorId {
    fn from(s: &str) -> Self {
        ColorId::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_follows_source_string() {
        assert_eq!(ColorId::new("r"), ColorId::new("r"));
        assert_ne!(ColorId::new("r"), ColorId::new("v"));
    }

    #[test]
    fn order_is_lexicographic_not_interning_order() {
        let z = ColorId::new("zz-first-interned");
        let a = ColorId::new("aa-second-interned");
        assert!(a < z);
    }
}
