//! Wang tiles and tilesets.

use crate::error::TilingError;
use crate::symbol::ColorId;
use std::collections::BTreeSet;
use std::fmt;

/// A Wang tile `(w, e, s, n)`: left, right, bottom, top colour.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub w: ColorId,
    pub e: ColorId,
    pub s: ColorId,
    pub n: ColorId,
}

impl Tile {
    pub fn new(w: ColorId, e: ColorId, s: ColorId, n: ColorId) -> Self {
        Tile { w, e, s, n }
    }

    pub fn from_names(w: &str, e: &str, s: &str, n: &str) -> Self {
        Tile::new(w.into(), e.into(), s.into(), n.into())
    }
}

impl fmt::Debug for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {} {} {})", self.w, self.e, self.s, self.n)
    }
}

/// A Wang tileset `(H, V, tiles)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WangTileset {
    pub name: String,
    pub hcolors: BTreeSet<ColorId>,
    pub vcolors: BTreeSet<ColorId>,
    pub tiles: BTreeSet<Tile>,
}

impl WangTileset {
    pub fn new(name: &str) -> Self {
        WangTileset {
            name: name.to_owned(),
            hcolors: BTreeSet::new(),
            vcolors: BTreeSet::new(),
            tiles: BTreeSet::new(),
        }
    }

    /// Builds a tileset from tiles, inferring the two alphabets.
    pub fn from_tiles(name: &str, tiles: impl IntoIterator<Item = Tile>) -> Self {
        let mut ts = WangTileset::new(name);
        for t in tiles {
            ts.push(t);
        }
        ts
    }

    /// Adds a tile, extending the alphabets as needed.
    pub fn push(&mut self, t: Tile) {
        self.hcolors.insert(t.w);
        self.hcolors.insert(t.e);
        self.vcolors.insert(t.s);
        self.vcolors.insert(t.n);
        self.tiles.insert(t);
    }

    /// Checks the tileset invariants: tiles draw only declared colours.
    pub fn validate(&self) -> Result<(), TilingError> {
        for t in &self.tiles {
            if !self.hcolors.contains(&t.w) || !self.hcolors.contains(&t.e) {
                return Err(TilingError::Malformed(format!(
                    "tile {:?} uses an undeclared horizontal colour",
                    t
                )));
            }
            if !self.vcolors.contains(&t.s) || !self.vcolors.contains(&t.n) {
                return Err(TilingError::Malformed(format!(
                    "tile {:?} uses an undeclared vertical colour",
                    t
                )));
            }
        }
        if !self.tiles.is_empty() && (self.hcolors.is_empty() || self.vcolors.is_empty()) {
            return Err(TilingError::Malformed(
                "non-empty tileset with an empty alphabet".into(),
            ));
        }
        Ok(())
    }
}
