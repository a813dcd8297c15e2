//! Generators for the tileset families under study: the four-tile periodic
//! example, Robinson's transducer and its `H_n` meta-transducers, and the
//! Jeandel-Rao eleven tiles with their `T_n` family.
//!
//! Colour conventions for the Robinson transducer. Horizontal colours come
//! in a right class and a left class, each with a plain, a bis and a ter
//! variant: `pr pl br bl tr tl`. Vertical colours are plain/right-flag/
//! left-flag arrows pointing down or up: `pd pu rd ru gd gu`. The six
//! states are the six horizontal colours; the supertile of order n has
//! plain-filled frontiers with the flagged colour of its two emitted arms
//! in the middle, which is what makes the `H_n` recurrence verifiable.

use crate::symbol::ColorId;
use crate::tileset::{Tile, WangTileset};
use crate::transducer::{Edge, MetaTransducer, StateId};
use crate::word::Word;

/// The paper's running four-tile example. Order (w, e, s, n).
///
/// The figure declares the same three-colour palette for both alphabets,
/// although only two of the colours appear on horizontal tile edges.
pub fn example1() -> WangTileset {
    let mut ts = WangTileset::from_tiles(
        "example1",
        [
            Tile::from_names("r", "b", "r", "r"),
            Tile::from_names("b", "v", "r", "v"),
            Tile::from_names("v", "r", "r", "r"),
            Tile::from_names("r", "v", "v", "r"),
        ],
    );
    ts.vcolors.insert(ColorId::new("b"));
    ts
}

/// The 28 coloured edges of Robinson's transducer, height 1.
///
/// Transcribed from the six-state figure: one edge per tile kind and
/// rotation, with the bumpy/dented corner twins collapsing to a single
/// coloured edge each. Grouped below by the figure's edge names.
pub fn robinson() -> MetaTransducer {
    let rows: &[(&str, &str, &str, &str)] = &[
        // e0: the six vertical transmitters, rmi -> lmi
        ("pr", "pl", "pd", "pd"), // Empty(0)
        ("pr", "pl", "pu", "pu"), // Empty(180)
        ("pr", "pl", "gd", "gd"), // V(0)
        ("pr", "pl", "gu", "gu"), // V(180)
        ("pr", "pl", "rd", "rd"), // Vbis(0)
        ("pr", "pl", "ru", "ru"), // Vbis(180)
        // e1, e3, e-3, e-1: the four corner crosses
        ("pl", "tr", "pd", "ru"), // Corner(0), NE
        ("bl", "pr", "pd", "gu"), // Corner(90), NW
        ("tl", "pr", "rd", "pu"), // Corner(180), SW
        ("pl", "br", "gd", "pu"), // Corner(270), SE
        // e2: crossings on the column below a supertile centre
        ("tr", "bl", "pd", "pd"), // H(0)
        ("tr", "bl", "gd", "gd"), // Cross(0)
        ("tr", "bl", "rd", "rd"), // CrossBis(0)
        // e-2: crossings on the column above a supertile centre
        ("br", "tl", "pu", "pu"), // H(180)
        ("br", "tl", "gu", "gu"), // Cross(180)
        ("br", "tl", "ru", "ru"), // CrossBis(180)
        // e4 .. e-5: arm rows left and right of a supertile centre
        ("tr", "tr", "pu", "pd"), // V(90)
        ("tr", "tr", "gu", "rd"), // Cross(90)
        ("br", "br", "pu", "pd"), // Vbis(90)
        ("br", "br", "gu", "rd"), // CrossBis(90)
        ("bl", "bl", "pu", "pd"), // Vbis(270)
        ("bl", "bl", "ru", "gd"), // CrossBis(270)
        ("tl", "tl", "pu", "pd"), // V(270)
        ("tl", "tl", "ru", "gd"), // Cross(270)
        // e6, e7: blank rows
        ("pr", "pr", "pu", "pd"), // Empty(90)
        ("pr", "pr", "gu", "rd"), // H(90)
        ("pl", "pl", "pu", "pd"), // Empty(270)
        ("pl", "pl", "ru", "gd"), // H(270)
    ];
    MetaTransducer::from_edges(
        1,
        rows.iter().map(|(w, e, s, n)| {
            Edge::new(
                StateId::named(w),
                StateId::named(e),
                Word::from_names(&[s]),
                Word::from_names(&[n]),
            )
        }),
    )
}

/// Robinson's tileset as a Wang tileset (same data as [`robinson`]).
pub fn robinson_tileset() -> WangTileset {
    crate::transducer::to_tileset(&robinson(), "robinson").expect("robinson is height 1")
}

/// Heights of the Robinson family: `g(n) = 2^n - 1`.
pub fn robinson_height(n: usize) -> usize {
    (1usize << n) - 1
}

fn column(filler: &str, middle: Option<&str>, g_prev: usize) -> StateId {
    let mut v: Vec<ColorId> = Vec::new();
    for _ in 0..g_prev {
        v.push(ColorId::new(filler));
    }
    if let Some(m) = middle {
        v.push(ColorId::new(m));
    }
    for _ in 0..g_prev {
        v.push(ColorId::new(filler));
    }
    StateId(v)
}

fn framed(filler: &str, middle: &str, g_prev: usize) -> Word {
    let mut w = Word::repeat(ColorId::new(filler), g_prev);
    w = w.concat(&Word::letter(ColorId::new(middle)));
    w.concat(&Word::repeat(ColorId::new(filler), g_prev))
}

/// The meta-transducer `H_n` (n >= 1): six states of height `g(n) = 2^n-1`,
/// sixteen meta-edges in the seven groups `e_{-3} .. e_3`.
///
/// The edge labels are the fully expanded frontier words of the order-n
/// supertiles: all-blank except for the single flagged letter where an arm
/// of the supertile crosses the frontier.
pub fn robinson_h(n: usize) -> MetaTransducer {
    assert!(n >= 1, "H_n is defined for n >= 1");
    let g = robinson_height(n);
    let gp = robinson_height(n - 1);
    let rmi = StateId(vec![ColorId::new("pr"); g]);
    let lmi = StateId(vec![ColorId::new("pl"); g]);
    let rbi = column("pr", Some("tr"), gp);
    let rti = column("pr", Some("br"), gp);
    let lbi = column("pl", Some("bl"), gp);
    let lti = column("pl", Some("tl"), gp);

    let pd = |k: usize| Word::repeat(ColorId::new("pd"), k);
    let pu = |k: usize| Word::repeat(ColorId::new("pu"), k);

    let mut edges = Vec::new();
    // e0: the six width-1 transmitter columns.
    for v in ["pd", "pu", "gd", "gu", "rd", "ru"] {
        edges.push(Edge::new(
            rmi.clone(),
            lmi.clone(),
            Word::from_names(&[v]),
            Word::from_names(&[v]),
        ));
    }
    // e1: the NE supertile; e3: the NW supertile.
    edges.push(Edge::new(lmi.clone(), rbi.clone(), pd(g), framed("pu", "ru", gp)));
    edges.push(Edge::new(lbi.clone(), rmi.clone(), pd(g), framed("pu", "gu", gp)));
    // e-1: SE; e-3: SW.
    edges.push(Edge::new(lmi.clone(), rti.clone(), framed("pd", "gd", gp), pu(g)));
    edges.push(Edge::new(lti.clone(), rmi.clone(), framed("pd", "rd", gp), pu(g)));
    // e2: centre-column crossings below a centre; e-2: above.
    for v in ["pd", "gd", "rd"] {
        edges.push(Edge::new(
            rbi.clone(),
            lbi.clone(),
            Word::from_names(&[v]),
            Word::from_names(&[v]),
        ));
    }
    for v in ["pu", "gu", "ru"] {
        edges.push(Edge::new(
            rti.clone(),
            lti.clone(),
            Word::from_names(&[v]),
            Word::from_names(&[v]),
        ));
    }
    let mut t = MetaTransducer::from_edges(g, edges);
    t.alphabet
        .extend(["pd", "pu", "rd", "ru", "gd", "gu"].map(ColorId::new));
    t
}

/// Jeandel-Rao's eleven aperiodic Wang tiles, order (w, e, s, n).
///
/// Transcribed in the orientation whose trimmed powers stay small, which is
/// the direction the systematic exploration reports as feasible for large
/// exponents. All eleven tiles survive trimming and no periodic loop shows
/// up at small heights, matching the aperiodicity of the set.
pub fn jeandel_rao() -> WangTileset {
    WangTileset::from_tiles(
        "jeandel-rao",
        [
            Tile::from_names("0", "2", "2", "2"),
            Tile::from_names("1", "0", "0", "0"),
            Tile::from_names("1", "1", "3", "0"),
            Tile::from_names("1", "1", "3", "1"),
            Tile::from_names("1", "4", "2", "2"),
            Tile::from_names("2", "1", "0", "3"),
            Tile::from_names("2", "2", "1", "0"),
            Tile::from_names("2", "2", "3", "1"),
            Tile::from_names("2", "3", "1", "3"),
            Tile::from_names("3", "1", "3", "3"),
            Tile::from_names("4", "2", "1", "1"),
        ],
    )
}

/// Fibonacci heights of the Jeandel-Rao family: g(0)=1, g(1)=2,
/// g(n+2) = g(n+1) + g(n).
pub fn jr_height(n: usize) -> usize {
    let (mut a, mut b) = (1usize, 2usize);
    for _ in 0..n {
        let c = a + b;
        a = b;
        b = c;
    }
    a
}

fn zeros(k: usize) -> Word {
    Word::repeat(ColorId::new("0"), k)
}

fn ones(k: usize) -> Word {
    Word::repeat(ColorId::new("1"), k)
}

fn bits(s: &str) -> Word {
    Word(s.chars().map(|c| ColorId::new(&c.to_string())).collect())
}

/// The Jeandel-Rao family member `T_n`: a two-state meta-transducer over
/// `{0, 1}` with the six word-formula edges for the parity of `n`.
///
/// States are anonymous; they serialize as `a` and `b` and the geometric
/// height `g(n)` is carried by the transducer, not by the column length.
pub fn jr_t(n: usize) -> MetaTransducer {
    let g = jr_height;
    let a = StateId::named("a");
    let b = StateId::named("b");
    let mut edges = Vec::new();
    if n % 2 == 0 {
        // alpha, beta, gamma, delta, epsilon, omega
        edges.push(Edge::new(
            a.clone(),
            b.clone(),
            zeros(g(n + 2) - 3),
            ones(g(n + 2) - 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            bits("110").concat(&zeros(g(n + 1))),
            ones(g(n + 1) + 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            zeros(g(n + 2)).concat(&bits("111")).concat(&zeros(g(n + 1))),
            ones(g(n + 3) + 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            zeros(g(n + 3) + 3),
            ones(g(n + 1)).concat(&bits("000")).concat(&ones(g(n + 2))),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            zeros(g(n + 1) + 3),
            ones(g(n + 1)).concat(&bits("100")),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            zeros(g(n + 1)).concat(&bits("110")).concat(&zeros(g(n + 3))),
            ones(g(n + 3)).concat(&bits("100")).concat(&ones(g(n + 1))),
        ));
    } else {
        // A, B, C, D, E, O
        edges.push(Edge::new(
            a.clone(),
            b.clone(),
            ones(g(n + 2) - 3),
            zeros(g(n + 2) - 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            bits("100").concat(&ones(g(n + 1))),
            zeros(g(n + 1) + 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            ones(g(n + 2)).concat(&bits("000")).concat(&ones(g(n + 1))),
            zeros(g(n + 3) + 3),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            ones(g(n + 3) + 3),
            zeros(g(n + 1)).concat(&bits("111")).concat(&zeros(g(n + 2))),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            ones(g(n + 1) + 3),
            zeros(g(n + 1)).concat(&bits("110")),
        ));
        edges.push(Edge::new(
            b.clone(),
            a.clone(),
            ones(g(n + 1)).concat(&bits("100")).concat(&ones(g(n + 3))),
            zeros(g(n + 3)).concat(&bits("110")).concat(&zeros(g(n + 1))),
        ));
    }
    let mut t = MetaTransducer::from_edges(g(n), edges);
    t.alphabet.extend(["0", "1"].map(ColorId::new));
    t
}

/// The five loops of the worked example's cube and their stacking witness:
/// the cycle of `T^3` through the five triple-colour states, rotated to
/// start at each of its states in turn.
pub fn appendix_loops() -> Vec<crate::loops::Loop> {
    let t = crate::transducer::from_tileset(&example1());
    let t3 = crate::transducer::power(&t, 3, false, None).expect("small power");
    let names = ["r.v.v", "b.r.r", "v.v.b", "r.r.v", "v.b.r"];
    let cycle_states: Vec<StateId> = names
        .iter()
        .map(|s| {
            let parts: Vec<&str> = s.split('.').collect();
            StateId::from_names(&parts)
        })
        .collect();
    let mut edges = Vec::new();
    for i in 0..5 {
        let from = &cycle_states[i];
        let to = &cycle_states[(i + 1) % 5];
        let e = t3
            .edges
            .iter()
            .find(|e| e.from == *from && e.to == *to)
            .expect("cycle edge present in T^3")
            .clone();
        edges.push(e);
    }
    let base = crate::loops::Loop::from_edges(edges).expect("cycle chains");
    base.rotations()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loops::{classify_loop, compatible, find_loop, find_periodic_loop, LoopClass};
    use crate::transducer::{from_tileset, power, submodels, trim};

    #[test]
    fn example1_shape() {
        let ts = example1();
        assert_eq!(ts.tiles.len(), 4);
        assert_eq!(ts.hcolors.len(), 3);
        assert_eq!(ts.vcolors.len(), 3);
        let t = from_tileset(&ts);
        assert_eq!(t.edge_count(), 4);
        // The printed square is the trimmed composition.
        let t2 = power(&t, 2, true, None).unwrap();
        assert_eq!((t2.state_count(), t2.edge_count()), (7, 8));
    }

    #[test]
    fn robinson_shape_and_trim() {
        let t = robinson();
        assert_eq!(t.state_count(), 6);
        assert_eq!(t.alphabet.len(), 6);
        assert_eq!(t.edge_count(), 28);
        // Every state lies on a cycle, so trimming is the identity.
        assert_eq!(trim(&t), t);
    }

    #[test]
    fn robinson_has_the_height_one_loop() {
        // empty, corner-NE, crossing, corner-NW around the four-state cycle.
        let t = robinson();
        let l = find_loop(&t).expect("compatible");
        assert!(l.order() >= 1);
        assert!(compatible(&t));
    }

    #[test]
    fn h_family_heights_and_shape() {
        for n in 1..=4 {
            let h = robinson_h(n);
            assert_eq!(h.height, robinson_height(n));
            assert_eq!(h.state_count(), 6);
            assert_eq!(h.edge_count(), 16);
        }
        assert_eq!(robinson_height(2), 3);
        assert_eq!(robinson_height(3), 7);
    }

    #[test]
    fn h1_is_a_sub_transducer_of_robinson() {
        let t = robinson();
        let h1 = robinson_h(1);
        assert!(submodels(&t, &h1).passed());
    }

    #[test]
    fn h_n_contains_the_prop12_loop() {
        for n in 1..=4 {
            let h = robinson_h(n);
            let l = find_loop(&h).expect("H_n contains a loop");
            // The loop uses the supertile cycle e1 e2 e3 e0.
            assert!(l.order() >= 1);
        }
    }

    #[test]
    fn jeandel_rao_is_eleven_tiles_and_compatible() {
        let ts = jeandel_rao();
        assert_eq!(ts.tiles.len(), 11);
        assert_eq!(ts.vcolors.len(), 4);
        let t = from_tileset(&ts);
        assert!(compatible(&t));
        // Minimality: no tile is dead weight.
        assert_eq!(trim(&t).edge_count(), 11);
    }

    #[test]
    fn jeandel_rao_aperiodicity_smoke() {
        // No periodic loop at small heights.
        let t = from_tileset(&jeandel_rao());
        let mut p = t.clone();
        for h in 1..=4 {
            if h > 1 {
                p = trim(&crate::transducer::compose(&p, &t).unwrap());
            } else {
                p = trim(&p);
            }
            assert!(
                find_periodic_loop(&p, 6).is_none(),
                "unexpected periodic loop at height {}",
                h
            );
        }
    }

    #[test]
    fn jr_heights_satisfy_fibonacci() {
        for n in 0..=18 {
            assert_eq!(jr_height(n + 2), jr_height(n + 1) + jr_height(n));
        }
        assert_eq!(jr_height(0), 1);
        assert_eq!(jr_height(1), 2);
    }

    #[test]
    fn jr_t_labels_are_balanced_and_alpha0_is_empty() {
        for n in 0..=6 {
            let t = jr_t(n);
            assert_eq!(t.edge_count(), 6);
            for e in &t.edges {
                assert_eq!(e.bottom.len(), e.top.len(), "unbalanced edge in T_{}", n);
            }
            // Graph shape gives a cycle through both states.
            assert!(find_loop(&t).is_some());
        }
        let t0 = jr_t(0);
        let alpha_widths: Vec<usize> = t0
            .edges
            .iter()
            .filter(|e| e.from == StateId::named("a"))
            .map(|e| e.bottom.len())
            .collect();
        assert_eq!(alpha_widths, vec![jr_height(2) - 3]);
        assert_eq!(jr_height(2) - 3, 0);
    }

    #[test]
    fn appendix_loops_are_the_permuted_rotations() {
        let loops = appendix_loops();
        assert_eq!(loops.len(), 5);
        for l in &loops {
            assert_eq!(l.order(), 5);
            assert_eq!(classify_loop(l), LoopClass::Cyclic(1));
        }
        // Multisets of bottoms and tops coincide.
        let mut bottoms: Vec<_> = loops.iter().map(|l| l.bottom.clone()).collect();
        let mut tops: Vec<_> = loops.iter().map(|l| l.top.clone()).collect();
        bottoms.sort();
        tops.sort();
        assert_eq!(bottoms, tops);
    }
}
