//! The Kari compiler: balanced representations of rationals, rational
//! piecewise affine maps, the tileset `τ_f` whose rows compute one map
//! application, rational orbit points, and the periodic loops they induce.
//!
//! All arithmetic is exact. Every generated tile satisfies the local carry
//! relation `f_i(B_k(x)) + C_{k-1}(x) = B_k(f_i(x)) + C_k(x)` with no
//! tolerance; the carry closed form `C_k = M⌊kx⌋ + k·b − ⌊k·f(x)⌋` is
//! defined by that relation and asserted at every construction site.

use crate::error::{Result, TilingError};
use crate::loops::Loop;
use crate::symbol::ColorId;
use crate::tileset::{Tile, WangTileset};
use crate::transducer::{Edge, StateId};
use crate::word::Word;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> Rational {
    BigRational::from(BigInt::from(v))
}

/// Floor toward minus infinity, exact on rationals.
pub fn floor(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// A vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<Rational>);

impl RationalVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn scalar(x: Rational) -> Self {
        RationalVector(vec![x])
    }

    pub fn add(&self, other: &RationalVector) -> RationalVector {
        RationalVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn floor_vec(&self) -> Vec<BigInt> {
        self.0.iter().map(floor).collect()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// An affine map `x -> M x + b` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalAffine {
    /// Row-major `d x d` matrix.
    pub matrix: Vec<Vec<Rational>>,
    pub offset: Vec<Rational>,
}

impl RationalAffine {
    pub fn scaling(factor: Rational) -> Self {
        RationalAffine {
            matrix: vec![vec![factor]],
            offset: vec![Rational::zero()],
        }
    }

    pub fn dim(&self) -> usize {
        self.offset.len()
    }

    pub fn apply(&self, x: &RationalVector) -> RationalVector {
        RationalVector(
            self.matrix
                .iter()
                .zip(&self.offset)
                .map(|(row, b)| {
                    row.iter()
                        .zip(&x.0)
                        .map(|(m, xi)| m * xi)
                        .fold(b.clone(), |acc, v| acc + v)
                })
                .collect(),
        )
    }

    fn apply_int(&self, x: &[BigInt]) -> Vec<Rational> {
        self.matrix
            .iter()
            .zip(&self.offset)
            .map(|(row, b)| {
                row.iter()
                    .zip(x)
                    .map(|(m, xi)| m * BigRational::from(xi.clone()))
                    .fold(b.clone(), |acc, v| acc + v)
            })
            .collect()
    }
}

/// The unit cube `[corner, corner + 1]^d`. Cubes of one map are pairwise
/// distinct; points on shared faces fall into the lexicographically
/// smallest matching corner.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnitCube {
    pub corner: Vec<BigInt>,
}

impl UnitCube {
    pub fn new(corner: Vec<i64>) -> Self {
        UnitCube {
            corner: corner.into_iter().map(BigInt::from).collect(),
        }
    }

    pub fn contains(&self, x: &RationalVector) -> bool {
        self.corner.iter().zip(&x.0).all(|(c, xi)| {
            let lo = BigRational::from(c.clone());
            let hi = BigRational::from(c + BigInt::one());
            *xi >= lo && *xi <= hi
        })
    }
}

/// Finitely many disjoint unit cubes with an affine piece on each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseAffineMap {
    pub pieces: Vec<(UnitCube, RationalAffine)>,
}

impl PiecewiseAffineMap {
    pub fn dim(&self) -> usize {
        self.pieces
            .first()
            .map(|(c, _)| c.corner.len())
            .unwrap_or(0)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for (cube, f) in &self.pieces {
            if cube.corner.len() != f.dim() || f.matrix.len() != f.dim() {
                return Err(TilingError::Malformed(
                    "piece dimensions are inconsistent".into(),
                ));
            }
            if !seen.insert(cube.corner.clone()) {
                return Err(TilingError::Malformed(
                    "two pieces share a unit cube".into(),
                ));
            }
        }
        Ok(())
    }

    /// Index of the piece whose cube contains `x`, ties to the smallest
    /// corner so the map is a function on cube faces.
    pub fn piece_of(&self, x: &RationalVector) -> Option<usize> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, (cube, _))| cube.contains(x))
            .map(|(i, _)| i)
            .next()
    }

    pub fn apply(&self, x: &RationalVector) -> Option<(usize, RationalVector)> {
        let i = self.piece_of(x)?;
        Some((i, self.pieces[i].1.apply(x)))
    }

    /// Kari's example: doubling on `[0,1]`, times two thirds on `[1,2]`.
    pub fn kari_example() -> Self {
        PiecewiseAffineMap {
            pieces: vec![
                (UnitCube::new(vec![0]), RationalAffine::scaling(rat(2, 1))),
                (UnitCube::new(vec![1]), RationalAffine::scaling(rat(2, 3))),
            ],
        }
    }
}

/// `B_k(x) = ⌊kx⌋ − ⌊(k−1)x⌋`, coordinate by coordinate.
pub fn balanced_digit(x: &RationalVector, k: i64) -> Vec<BigInt> {
    let k = BigInt::from(k);
    x.0.iter()
        .map(|xi| {
            let a = floor(&(BigRational::from(k.clone()) * xi));
            let b = floor(&(BigRational::from(&k - BigInt::one()) * xi));
            a - b
        })
        .collect()
}

/// Period of the balanced representation: the lcm of the reduced
/// denominators over the coordinates.
pub fn balanced_period(x: &RationalVector) -> usize {
    let mut p = BigInt::one();
    for xi in &x.0 {
        p = p.lcm(xi.denom());
    }
    // Digits repeat with this period by construction; the round trip is
    // cheap to confirm for the small values used in tests.
    p.try_into().unwrap_or(usize::MAX)
}

/// The carry `C_{f,k}(x) = M⌊kx⌋ + k·b − ⌊k f(x)⌋`.
///
/// This closed form is defined by the requirement that every tile satisfy
/// the local relation; `carry_relation_holds` checks it.
pub fn carry(f: &RationalAffine, x: &RationalVector, k: i64) -> RationalVector {
    let kk = BigInt::from(k);
    let kx: Vec<BigInt> = x
        .0
        .iter()
        .map(|xi| floor(&(BigRational::from(kk.clone()) * xi)))
        .collect();
    let fx = f.apply(x);
    let kfx: Vec<BigInt> = fx
        .0
        .iter()
        .map(|v| floor(&(BigRational::from(kk.clone()) * v)))
        .collect();
    let m_kx = f.apply_int(&kx);
    RationalVector(
        m_kx.iter()
            .zip(&f.offset)
            .zip(&kfx)
            .map(|((mk, b), kf)| {
                // apply_int already added b once; add the remaining (k-1)·b.
                mk + (BigRational::from(kk.clone()) - BigRational::one()) * b
                    - BigRational::from(kf.clone())
            })
            .collect(),
    )
}

/// The local relation `f(B_k(x)) + C_{k−1}(x) = B_k(f(x)) + C_k(x)`.
pub fn carry_relation_holds(f: &RationalAffine, x: &RationalVector, k: i64) -> bool {
    let bk = balanced_digit(x, k);
    let fx = f.apply(x);
    let bk_fx = balanced_digit(&fx, k);
    let c_prev = carry(f, x, k - 1);
    let c_here = carry(f, x, k);
    let lhs: Vec<Rational> = f
        .apply_int(&bk)
        .iter()
        .zip(&c_prev.0)
        .map(|(a, c)| a + c)
        .collect();
    let rhs: Vec<Rational> = bk_fx
        .iter()
        .zip(&c_here.0)
        .map(|(d, c)| BigRational::from(d.clone()) + c)
        .collect();
    lhs == rhs
}

/// A tile of `τ_{f_i}`: digit vectors below and above, carries left and
/// right, tagged with its piece index so rows cannot mix pieces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct KariTile {
    pub piece: usize,
    pub left_carry: RationalVector,
    pub right_carry: RationalVector,
    pub bottom: Vec<BigInt>,
    pub top: Vec<BigInt>,
}

fn digits_symbol(d: &[BigInt]) -> ColorId {
    let parts: Vec<String> = d.iter().map(|v| v.to_string()).collect();
    ColorId::new(&parts.join(","))
}

fn carry_symbol(piece: usize, c: &RationalVector) -> ColorId {
    ColorId::new(&format!("p{}|{}", piece, c))
}

impl KariTile {
    pub fn to_tile(&self) -> Tile {
        Tile::new(
            carry_symbol(self.piece, &self.left_carry),
            carry_symbol(self.piece, &self.right_carry),
            digits_symbol(&self.bottom),
            digits_symbol(&self.top),
        )
    }
}

/// All rationals in `[lo, hi]` with reduced denominator at most `bound`.
fn rationals_in(lo: &BigInt, hi: &BigInt, bound: u32) -> Vec<Rational> {
    let mut out = Vec::new();
    for q in 1..=bound as i64 {
        let qq = BigInt::from(q);
        let mut p = lo * &qq;
        let top = hi * &qq;
        while p <= top {
            let r = BigRational::new(p.clone(), qq.clone());
            if r.denom() == &qq {
                out.push(r);
            }
            p += 1;
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Grid of rational vectors in the cube with per-coordinate denominator
/// at most `bound`.
fn rationals_in_cube(cube: &UnitCube, bound: u32) -> Vec<RationalVector> {
    let mut acc: Vec<Vec<Rational>> = vec![Vec::new()];
    for c in &cube.corner {
        let coords = rationals_in(c, &(c + BigInt::one()), bound);
        let mut next = Vec::new();
        for prefix in &acc {
            for v in &coords {
                let mut p = prefix.clone();
                p.push(v.clone());
                next.push(p);
            }
        }
        acc = next;
    }
    acc.into_iter().map(RationalVector).collect()
}

/// Tiles of one piece generated by sweeping `x` over the bounded-denominator
/// rationals of the cube and `k` over one full joint period of `x` and
/// `f(x)`. Monotone in the bound by construction; every tile is checked
/// against the carry relation.
pub fn tiles_for_piece(
    piece_index: usize,
    cube: &UnitCube,
    f: &RationalAffine,
    denominator_bound: u32,
) -> Result<BTreeSet<KariTile>> {
    assert!(denominator_bound >= 1);
    let mut out = BTreeSet::new();
    for x in rationals_in_cube(cube, denominator_bound) {
        let fx = f.apply(&x);
        let period = balanced_period(&x)
            .lcm(&balanced_period(&fx))
            .max(1);
        for k in 1..=(period as i64) {
            if !carry_relation_holds(f, &x, k) {
                return Err(TilingError::Malformed(format!(
                    "carry relation fails for x = {:?} at k = {}",
                    x, k
                )));
            }
            out.insert(KariTile {
                piece: piece_index,
                left_carry: carry(f, &x, k - 1),
                right_carry: carry(f, &x, k),
                bottom: balanced_digit(&x, k),
                top: balanced_digit(&fx, k),
            });
        }
    }
    Ok(out)
}

/// The tileset `τ_f`: the union over pieces, with the piece index baked
/// into the horizontal colours so a row stays within one piece.
pub fn tau_f(map: &PiecewiseAffineMap, denominator_bound: u32) -> Result<WangTileset> {
    if map.pieces.is_empty() {
        return Err(TilingError::Malformed("empty piecewise map".into()));
    }
    map.validate()?;
    let mut ts = WangTileset::new("tau_f");
    for (i, (cube, f)) in map.pieces.iter().enumerate() {
        for tile in tiles_for_piece(i, cube, f, denominator_bound)? {
            ts.push(tile.to_tile());
        }
    }
    Ok(ts)
}

/// A rational `x` whose first `k` iterates stay in the domain, found by a
/// bounded-denominator sweep. Sound but incomplete: `None` only means no
/// witness below the bound.
pub fn rational_orbit_point(
    map: &PiecewiseAffineMap,
    k: usize,
    denominator_bound: u32,
) -> Option<RationalVector> {
    assert!(k >= 1);
    for (cube, _) in &map.pieces {
        for x in rationals_in_cube(cube, denominator_bound) {
            let mut cur = x.clone();
            let mut ok = true;
            for _ in 0..k {
                match map.apply(&cur) {
                    Some((_, next)) => cur = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(x);
            }
        }
    }
    None
}

/// The explicit periodic loop of `power(τ_f, k)` built from the orbit of a
/// rational point: column `j` stacks the tiles `t(f_i, j, f^l(x))`, and the
/// loop length is the lcm of the carry and digit periods along the orbit.
///
/// The loop length equals `lcm(p_k, p'_k)` of the endpoint balanced periods
/// whenever the intermediate denominators divide it, which holds for the
/// worked examples; the lcm over the whole orbit is used so the wrap is
/// exact in every row.
pub fn immortal_loop(map: &PiecewiseAffineMap, k: usize) -> Result<(RationalVector, Loop)> {
    let bound = 12;
    let x = rational_orbit_point(map, k, bound).ok_or(TilingError::NoOrbitPoint)?;
    let l = immortal_loop_from(map, &x, k)?;
    Ok((x, l))
}

/// The `k x m` tile grid under the loop of [`immortal_loop_from`]: row `l`
/// holds the tiles `t(f_{i_l}, j, f^l(x))`. Valid with horizontal wrap by
/// the row property: consecutive carries chain and the digits read the
/// balanced representations level to level.
pub fn immortal_strip(
    map: &PiecewiseAffineMap,
    x: &RationalVector,
    k: usize,
) -> Result<crate::loops::RectangularPattern> {
    let mut orbit = vec![x.clone()];
    let mut piece_ids = Vec::new();
    for _ in 0..k {
        let (i, next) = map
            .apply(orbit.last().unwrap())
            .ok_or(TilingError::NoOrbitPoint)?;
        piece_ids.push(i);
        orbit.push(next);
    }
    let mut m = BigInt::one();
    for level in &orbit {
        m = m.lcm(&BigInt::from(balanced_period(level)));
    }
    let m: usize = m
        .try_into()
        .map_err(|_| TilingError::Malformed("loop length overflows".into()))?;
    let mut rows = Vec::with_capacity(k);
    for (level, &piece) in piece_ids.iter().enumerate() {
        let xl = &orbit[level];
        let f = &map.pieces[piece].1;
        let mut row = Vec::with_capacity(m);
        for j in 0..m {
            let kpos = j as i64 + 1;
            if !carry_relation_holds(f, xl, kpos) {
                return Err(TilingError::Malformed("carry relation broken".into()));
            }
            row.push(
                KariTile {
                    piece,
                    left_carry: carry(f, xl, kpos - 1),
                    right_carry: carry(f, xl, kpos),
                    bottom: balanced_digit(xl, kpos),
                    top: balanced_digit(&orbit[level + 1], kpos),
                }
                .to_tile(),
            );
        }
        rows.push(row);
    }
    let pat = crate::loops::RectangularPattern {
        width: m,
        height: k,
        rows,
    };
    pat.validate(true, false)?;
    Ok(pat)
}

/// Same construction from a caller-chosen orbit point.
pub fn immortal_loop_from(
    map: &PiecewiseAffineMap,
    x: &RationalVector,
    k: usize,
) -> Result<Loop> {
    let x = x.clone();
    // Orbit x, f(x), ..., f^k(x) with the piece applied at each level.
    let mut orbit = vec![x.clone()];
    let mut pieces = Vec::new();
    for _ in 0..k {
        let (i, next) = map
            .apply(orbit.last().unwrap())
            .ok_or(TilingError::NoOrbitPoint)?;
        pieces.push(i);
        orbit.push(next);
    }
    let mut m = BigInt::one();
    for level in &orbit {
        m = m.lcm(&BigInt::from(balanced_period(level)));
    }
    let m: usize = m.try_into().map_err(|_| {
        TilingError::Malformed("loop length overflows".into())
    })?;
    // Column j (1-based positions j, wrapping with period m).
    let mut edges = Vec::new();
    for j in 0..m {
        let kpos = j as i64 + 1;
        let mut from = Vec::new();
        let mut to = Vec::new();
        let mut bottom = None;
        let mut top = None;
        for (level, &piece) in pieces.iter().enumerate() {
            let xl = &orbit[level];
            let f = &map.pieces[piece].1;
            let lc = carry(f, xl, kpos - 1);
            let rc = carry(f, xl, kpos);
            from.push(carry_symbol(piece, &lc));
            to.push(carry_symbol(piece, &rc));
            if level == 0 {
                bottom = Some(digits_symbol(&balanced_digit(xl, kpos)));
            }
            if level + 1 == pieces.len() {
                top = Some(digits_symbol(&balanced_digit(&orbit[level + 1], kpos)));
            }
        }
        edges.push(Edge::new(
            StateId(from),
            StateId(to),
            Word::letter(bottom.expect("k >= 1")),
            Word::letter(top.expect("k >= 1")),
        ));
    }
    // Wrap: the carries at position m must close back to position 0, and
    // the columns must really assemble into a valid strip.
    let first = edges.first().expect("m >= 1").clone();
    let last = edges.last().expect("m >= 1");
    if last.to != first.from {
        return Err(TilingError::Malformed(
            "carry period does not close the loop".into(),
        ));
    }
    immortal_strip(map, &x, k)?;
    Loop::from_edges(edges)
}

/// Signed-rational parser helper shared by the map format.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |m: &str| TilingError::Malformed(format!("bad rational '{}': {}", s, m));
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.parse().map_err(|_| err("numerator"))?;
        let den: BigInt = q.parse().map_err(|_| err("denominator"))?;
        if den.is_zero() {
            return Err(err("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    } else {
        let num: BigInt = s.parse().map_err(|_| err("integer"))?;
        Ok(BigRational::from(num))
    }
}

/// True when every entry is an integer (used by encode checks in tests).
pub fn is_integral(v: &RationalVector) -> bool {
    v.0.iter().all(|r| r.denom().is_one() || r.numer().is_zero() && r.denom().is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar(n: i64, d: i64) -> RationalVector {
        RationalVector::scalar(rat(n, d))
    }

    #[test]
    fn balanced_digits_of_one_half() {
        let x = scalar(1, 2);
        let ds: Vec<BigInt> = (0..4).map(|k| balanced_digit(&x, k)[0].clone()).collect();
        assert_eq!(ds, vec![1.into(), 0.into(), 1.into(), 0.into()]);
    }

    #[test]
    fn balanced_digits_of_integers_are_constant() {
        let x = scalar(7, 1);
        for k in -3..4 {
            assert_eq!(balanced_digit(&x, k), vec![BigInt::from(7)]);
        }
    }

    #[test]
    fn balanced_digits_of_two_thirds() {
        let x = scalar(2, 3);
        let ds: Vec<BigInt> = (1..=3).map(|k| balanced_digit(&x, k)[0].clone()).collect();
        assert_eq!(ds, vec![0.into(), 1.into(), 1.into()]);
        assert_eq!(balanced_period(&x), 3);
        // One full period later the digits repeat.
        for k in 1..=3 {
            assert_eq!(balanced_digit(&x, k), balanced_digit(&x, k + 3));
        }
    }

    #[test]
    fn balanced_periods() {
        assert_eq!(balanced_period(&scalar(1, 2)), 2);
        assert_eq!(balanced_period(&scalar(7, 1)), 1);
        let v = RationalVector(vec![rat(1, 2), rat(2, 3)]);
        assert_eq!(balanced_period(&v), 6);
        for k in 1..=6 {
            assert_eq!(balanced_digit(&v, k), balanced_digit(&v, k + 6));
        }
    }

    #[test]
    fn carry_of_doubling_at_two_thirds() {
        let f = RationalAffine::scaling(rat(2, 1));
        let x = scalar(2, 3);
        assert_eq!(carry(&f, &x, 0).0[0], rat_int(0));
        assert_eq!(carry(&f, &x, 1).0[0], rat_int(-1));
        for k in -4..5 {
            assert!(carry_relation_holds(&f, &x, k));
        }
    }

    #[test]
    fn carry_zero_on_integers_without_offset() {
        let f = RationalAffine::scaling(rat(3, 1));
        let x = scalar(5, 1);
        for k in -3..4 {
            assert!(carry(&f, &x, k).0[0].is_zero());
            assert!(carry_relation_holds(&f, &x, k));
        }
    }

    #[test]
    fn carry_relation_for_two_thirds_map() {
        let f = RationalAffine::scaling(rat(2, 3));
        let x = scalar(3, 2);
        for k in -6..7 {
            assert!(carry_relation_holds(&f, &x, k));
        }
    }

    #[test]
    fn tiles_for_piece_monotone_in_bound() {
        let map = PiecewiseAffineMap::kari_example();
        let (cube, f) = &map.pieces[1];
        let small = tiles_for_piece(1, cube, f, 3).unwrap();
        let large = tiles_for_piece(1, cube, f, 6).unwrap();
        assert!(small.is_subset(&large));
        assert!(!large.is_empty());
    }

    #[test]
    fn identity_piece_on_integer_point_gives_zero_carry_tile() {
        let f = RationalAffine::scaling(rat(1, 1));
        let cube = UnitCube::new(vec![0]);
        let tiles = tiles_for_piece(0, &cube, &f, 1).unwrap();
        // x = 0 and x = 1 both have period 1.
        assert!(tiles.iter().all(|t| t.left_carry.0[0].is_zero()
            && t.right_carry.0[0].is_zero()));
    }

    #[test]
    fn kari_example_tileset_is_compatible() {
        let ts = tau_f(&PiecewiseAffineMap::kari_example(), 6).unwrap();
        assert!(!ts.tiles.is_empty());
        let t = crate::transducer::from_tileset(&ts);
        assert!(crate::loops::compatible(&t));
    }

    #[test]
    fn single_piece_map_has_no_cross_piece_edges() {
        let map = PiecewiseAffineMap {
            pieces: vec![(UnitCube::new(vec![0]), RationalAffine::scaling(rat(1, 1)))],
        };
        let ts = tau_f(&map, 4).unwrap();
        for tile in &ts.tiles {
            assert!(tile.w.as_str().starts_with("p0|"));
            assert!(tile.e.as_str().starts_with("p0|"));
        }
    }

    #[test]
    fn orbit_point_of_kari_example() {
        let map = PiecewiseAffineMap::kari_example();
        for k in 1..=5 {
            let x = rational_orbit_point(&map, k, 4).expect("orbit point exists");
            // x = 1 works for every k; the sweep may find a smaller one,
            // but whatever it finds must really have k iterates in D.
            let mut cur = x;
            for _ in 0..k {
                let (_, next) = map.apply(&cur).expect("stays in domain");
                cur = next;
            }
        }
        let empty = PiecewiseAffineMap { pieces: vec![] };
        assert!(rational_orbit_point(&empty, 1, 4).is_none());
    }

    #[test]
    fn immortal_loop_lengths_match_periods() {
        let map = PiecewiseAffineMap::kari_example();
        // The worked orbit point x = 1: 1 -> 2 -> 4/3 -> 8/9 -> ...
        let one = scalar(1, 1);
        let l1 = immortal_loop_from(&map, &one, 1).unwrap();
        // Digits 1 below, 2 above, loop of length one.
        assert_eq!(l1.order(), 1);
        assert_eq!(l1.bottom, Word::from_names(&["1"]));
        assert_eq!(l1.edges[0].top, Word::from_names(&["2"]));

        // lcm(1, period(8/9)) = 9.
        let l3 = immortal_loop_from(&map, &one, 3).unwrap();
        assert_eq!(l3.order(), 9);

        // Discovery also succeeds and closes the carry cycle.
        let (x, l) = immortal_loop(&map, 1).unwrap();
        assert!(map.piece_of(&x).is_some());
        assert_eq!(l.edges.last().unwrap().to, *l.base_state());
    }

    #[test]
    fn degenerate_identity_on_origin() {
        let map = PiecewiseAffineMap {
            pieces: vec![(UnitCube::new(vec![0]), RationalAffine::scaling(rat(1, 1)))],
        };
        let (_, l) = immortal_loop(&map, 1).unwrap();
        assert_eq!(l.order(), 1);
        for e in &l.edges {
            assert_eq!(e.from, e.to);
        }
    }
}
