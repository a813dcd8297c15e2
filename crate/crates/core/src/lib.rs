//! An exact engine for Wang tilesets seen as transducers.
//!
//! The crate represents tilesets and meta-transducers, composes and trims
//! them, detects plain/cyclic/periodic loops, generates the classic tileset
//! families (the four-tile periodic example, Robinson, Jeandel-Rao, Kari
//! tilesets from rational piecewise affine maps, Turing-machine encodings),
//! mechanically verifies robustness certificates, and runs the interleaved
//! semi-decision driver for the domino problem.

pub mod cache;
pub mod catalog;
pub mod certify;
pub mod error;
pub mod formats;
pub mod harness;
pub mod kari;
pub mod loops;
pub mod render;
pub mod symbol;
pub mod tileset;
pub mod transducer;
pub mod turing;
pub mod word;

pub use error::{Result, TilingError};
pub use symbol::ColorId;
pub use tileset::{Tile, WangTileset};
pub use transducer::{
    compose, from_tileset, path_accepts, power, submodels, to_tileset, trim, union, Edge,
    MetaTransducer, StateId, Verdict,
};
pub use word::Word;
