//! Meta-transducers and the algebra on them.
//!
//! A Wang tileset and its transducer are the same data: horizontal colours
//! are states, vertical colours are letters, tiles are edges. Meta-transducers
//! generalize edge labels from letters to words, which is what the hand-built
//! families (the Robinson `H_n`, the Jeandel-Rao `T_n`) need.
//!
//! Everything here is immutable after construction and all operations are
//! pure. Canonical form is maintained by keeping states and edges in ordered
//! sets keyed by the lexicographic order of the underlying colour strings, so
//! equal values serialize identically regardless of construction order.

use crate::error::{Result, TilingError};
use crate::symbol::ColorId;
use crate::tileset::WangTileset;
use crate::word::Word;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

/// A state: a column of horizontal colours, bottom-first.
///
/// States of `T^n` are columns of height `n`. Abstract states (the anonymous
/// Jeandel-Rao states) are single-symbol columns; the owning transducer's
/// `height` field carries their geometric height.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateId(pub Vec<ColorId>);

impl StateId {
    pub fn single(c: ColorId) -> Self {
        StateId(vec![c])
    }

    pub fn named(name: &str) -> Self {
        StateId(vec![ColorId::new(name)])
    }

    pub fn from_names(names: &[&str]) -> Self {
        StateId(names.iter().map(|n| ColorId::new(n)).collect())
    }

    /// Column concatenation, bottom-first.
    pub fn stack(&self, upper: &StateId) -> StateId {
        let mut v = self.0.clone();
        v.extend_from_slice(&upper.0);
        StateId(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<&str> = self.0.iter().map(|c| c.as_str()).collect();
        write!(f, "{}", parts.join("."))
    }
}

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A transition `from -> to` labelled `bottom | top`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub from: StateId,
    pub to: StateId,
    pub bottom: Word,
    pub top: Word,
}

impl Edge {
    pub fn new(from: StateId, to: StateId, bottom: Word, top: Word) -> Self {
        Edge {
            from,
            to,
            bottom,
            top,
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} ({}|{})", self.from, self.to, self.bottom, self.top)
    }
}

/// A meta-transducer in canonical form.
///
/// Duplicate edges collapse: multiplicity carries no tiling semantics.
#[derive(Clone, PartialEq, Eq)]
pub struct MetaTransducer {
    pub states: BTreeSet<StateId>,
    pub alphabet: BTreeSet<ColorId>,
    pub edges: BTreeSet<Edge>,
    pub height: usize,
}

impl fmt::Debug for MetaTransducer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MetaTransducer(h={}, {} states, {} edges)",
            self.height,
            self.states.len(),
            self.edges.len()
        )
    }
}

impl MetaTransducer {
    pub fn empty(height: usize) -> Self {
        MetaTransducer {
            states: BTreeSet::new(),
            alphabet: BTreeSet::new(),
            edges: BTreeSet::new(),
            height,
        }
    }

    /// Builds a transducer from edges; states and alphabet are inferred,
    /// which keeps edge-less states out of the canonical form.
    pub fn from_edges(height: usize, edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut t = MetaTransducer::empty(height);
        for e in edges {
            t.insert_edge(e);
        }
        t
    }

    fn insert_edge(&mut self, e: Edge) {
        self.states.insert(e.from.clone());
        self.states.insert(e.to.clone());
        for c in e.bottom.letters() {
            self.alphabet.insert(*c);
        }
        for c in e.top.letters() {
            self.alphabet.insert(*c);
        }
        self.edges.insert(e);
    }

    /// Extends the alphabet with letters that carry no edge yet.
    pub fn with_alphabet(mut self, extra: impl IntoIterator<Item = ColorId>) -> Self {
        self.alphabet.extend(extra);
        self
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        for e in &self.edges {
            if !self.states.contains(&e.from) || !self.states.contains(&e.to) {
                return Err(TilingError::Malformed(format!(
                    "edge {:?} has an endpoint outside the state set",
                    e
                )));
            }
            for c in e.bottom.letters().iter().chain(e.top.letters()) {
                if !self.alphabet.contains(c) {
                    return Err(TilingError::Malformed(format!(
                        "edge {:?} uses letter {} outside the alphabet",
                        e, c
                    )));
                }
            }
        }
        Ok(())
    }
}

/// One edge per tile: `t_w -> t_e` labelled `t_s | t_n`. Height 1.
pub fn from_tileset(ts: &WangTileset) -> MetaTransducer {
    let mut t = MetaTransducer::empty(1);
    for tile in &ts.tiles {
        t.insert_edge(Edge::new(
            StateId::single(tile.w),
            StateId::single(tile.e),
            Word::letter(tile.s),
            Word::letter(tile.n),
        ));
    }
    t.alphabet.extend(ts.vcolors.iter().copied());
    t
}

/// Inverse of [`from_tileset`] for height-1 single-letter transducers.
pub fn to_tileset(t: &MetaTransducer, name: &str) -> Result<WangTileset> {
    let mut ts = WangTileset::new(name);
    for e in &t.edges {
        if e.from.len() != 1 || e.to.len() != 1 || e.bottom.len() != 1 || e.top.len() != 1 {
            return Err(TilingError::Malformed(
                "transducer is not a plain height-1 Wang transducer".into(),
            ));
        }
        ts.push(crate::tileset::Tile::new(
            e.from.0[0],
            e.to.0[0],
            e.bottom.letters()[0],
            e.top.letters()[0],
        ));
    }
    ts.vcolors.extend(t.alphabet.iter().copied());
    Ok(ts)
}

/// Union of states, alphabets and edge sets. Duplicate edges collapse.
pub fn union(a: &MetaTransducer, b: &MetaTransducer) -> MetaTransducer {
    let mut t = a.clone();
    t.states.extend(b.states.iter().cloned());
    t.alphabet.extend(b.alphabet.iter().copied());
    t.edges.extend(b.edges.iter().cloned());
    t
}

/// Composition `lower ∘ upper`: vertical stacking, lower row first.
///
/// An edge exists for every pair of edges whose words match exactly
/// (`top(lower) = bottom(upper)`); its state pair is flattened to a
/// concatenated column, bottom-first, so powers of a Wang tileset have
/// columns over `H` as states. Pair states with no edge are omitted.
pub fn compose(lower: &MetaTransducer, upper: &MetaTransducer) -> Result<MetaTransducer> {
    if !lower.is_empty() && !upper.is_empty() && lower.alphabet != upper.alphabet {
        return Err(TilingError::AlphabetMismatch);
    }
    // Join on the shared word: index the upper edges by bottom word.
    let mut by_bottom: BTreeMap<&Word, Vec<&Edge>> = BTreeMap::new();
    for f in &upper.edges {
        by_bottom.entry(&f.bottom).or_default().push(f);
    }
    let mut t = MetaTransducer::empty(lower.height + upper.height);
    for e in &lower.edges {
        if let Some(matches) = by_bottom.get(&e.top) {
            for f in matches {
                t.insert_edge(Edge::new(
                    e.from.stack(&f.from),
                    e.to.stack(&f.to),
                    e.bottom.clone(),
                    f.top.clone(),
                ));
            }
        }
    }
    t.alphabet.extend(lower.alphabet.iter().copied());
    t.alphabet.extend(upper.alphabet.iter().copied());
    Ok(t)
}

/// Iterated composition `t^k` with `t^{n+1} = t^n ∘ t`.
///
/// With `trim` set the intermediate powers are trimmed, which keeps only
/// edges on bi-infinite paths and is the difference between feasible and
/// infeasible for most tilesets. `max_edges`, when given, aborts with the
/// last completed power.
pub fn power(
    t: &MetaTransducer,
    k: usize,
    trim_each: bool,
    max_edges: Option<usize>,
) -> Result<MetaTransducer> {
    assert!(k >= 1, "power requires k >= 1");
    let base = t.clone();
    let mut acc = if trim_each { trim(&base) } else { base.clone() };
    for step in 2..=k {
        let next = compose(&acc, &base)?;
        let next = if trim_each { trim(&next) } else { next };
        if let Some(limit) = max_edges {
            if next.edge_count() > limit {
                return Err(TilingError::BudgetExceeded {
                    completed: step - 1,
                    last: Box::new(acc),
                });
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Deletes states with no incoming or no outgoing edge until fixpoint.
///
/// The surviving edges are exactly those lying on some bi-infinite path, so
/// trimming preserves loops and the labels of loops.
pub fn trim(t: &MetaTransducer) -> MetaTransducer {
    let mut edges: BTreeSet<Edge> = t.edges.clone();
    loop {
        let mut has_out: HashSet<&StateId> = HashSet::new();
        let mut has_in: HashSet<&StateId> = HashSet::new();
        for e in &edges {
            has_out.insert(&e.from);
            has_in.insert(&e.to);
        }
        let keep: Vec<Edge> = edges
            .iter()
            .filter(|e| {
                has_in.contains(&e.from)
                    && has_out.contains(&e.from)
                    && has_in.contains(&e.to)
                    && has_out.contains(&e.to)
            })
            .cloned()
            .collect();
        if keep.len() == edges.len() {
            break;
        }
        edges = keep.into_iter().collect();
    }
    let mut out = MetaTransducer::from_edges(t.height, edges);
    out.alphabet.extend(t.alphabet.iter().copied());
    out
}

/// Extended transition relation: is there a finite edge path `from -> to`
/// whose concatenated bottom labels equal `bottom` and concatenated top
/// labels equal `top`? Paths have at least one edge.
///
/// Implemented as a product search over `(state, bottom offset, top offset)`
/// triples. Edges with empty labels act as connectors; a visited set keeps
/// the search finite.
pub fn path_accepts(
    t: &MetaTransducer,
    from: &StateId,
    to: &StateId,
    bottom: &Word,
    top: &Word,
) -> bool {
    let bletters = bottom.letters();
    let tletters = top.letters();
    let mut outgoing: BTreeMap<&StateId, Vec<&Edge>> = BTreeMap::new();
    for e in &t.edges {
        outgoing.entry(&e.from).or_default().push(e);
    }
    // (state, consumed bottom, consumed top, at least one edge taken)
    let mut seen: HashSet<(&StateId, usize, usize, bool)> = HashSet::new();
    let mut stack: Vec<(&StateId, usize, usize, bool)> = vec![(from, 0, 0, false)];
    while let Some((q, bo, to_off, moved)) = stack.pop() {
        if !seen.insert((q, bo, to_off, moved)) {
            continue;
        }
        if moved && q == to && bo == bletters.len() && to_off == tletters.len() {
            return true;
        }
        let Some(outs) = outgoing.get(q) else {
            continue;
        };
        for e in outs {
            let eb = e.bottom.letters();
            let et = e.top.letters();
            if bo + eb.len() <= bletters.len()
                && to_off + et.len() <= tletters.len()
                && bletters[bo..bo + eb.len()] == *eb
                && tletters[to_off..to_off + et.len()] == *et
            {
                stack.push((&e.to, bo + eb.len(), to_off + et.len(), true));
            }
        }
    }
    false
}

/// Outcome of a sub-multigraph check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// First offending edge of `small` in canonical order.
    Fail(Edge),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// `big ⊨ small`: every edge of `small` is realized by a path of `big`.
///
/// Plain edge membership would be too weak for the invariant proofs, which
/// cut meta-edges whose labels are concatenations, so realization goes
/// through the extended relation.
pub fn submodels(big: &MetaTransducer, small: &MetaTransducer) -> Verdict {
    for e in &small.edges {
        if !path_accepts(big, &e.from, &e.to, &e.bottom, &e.top) {
            return Verdict::Fail(e.clone());
        }
    }
    Verdict::Pass
}

/// All top words of `δ*` paths `from -> to` over the fixed `bottom` word,
/// with top length capped at `top_cap`. Used by the layered invariant
/// checker where the intermediate words are unknown.
pub fn tops_for_bottom(
    t: &MetaTransducer,
    from: &StateId,
    to: &StateId,
    bottom: &Word,
    top_cap: usize,
) -> BTreeSet<Word> {
    let bletters = bottom.letters();
    let mut outgoing: BTreeMap<&StateId, Vec<&Edge>> = BTreeMap::new();
    for e in &t.edges {
        outgoing.entry(&e.from).or_default().push(e);
    }
    let mut results: BTreeSet<Word> = BTreeSet::new();
    let mut seen: HashSet<(usize, usize, Vec<ColorId>)> = HashSet::new();
    // State indices keep the visited set compact.
    let index: BTreeMap<&StateId, usize> =
        t.states.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let Some(&start) = index.get(from) else {
        return results;
    };
    let Some(&goal) = index.get(to) else {
        return results;
    };
    let states: Vec<&StateId> = t.states.iter().collect();
    let mut stack: Vec<(usize, usize, Vec<ColorId>, bool)> = vec![(start, 0, Vec::new(), false)];
    while let Some((q, bo, top_acc, moved)) = stack.pop() {
        if !seen.insert((q, bo, top_acc.clone())) {
            continue;
        }
        if moved && q == goal && bo == bletters.len() {
            results.insert(Word(top_acc.clone()));
        }
        for e in outgoing.get(states[q]).into_iter().flatten() {
            let eb = e.bottom.letters();
            let et = e.top.letters();
            if bo + eb.len() <= bletters.len()
                && bletters[bo..bo + eb.len()] == *eb
                && top_acc.len() + et.len() <= top_cap
            {
                let mut next_top = top_acc.clone();
                next_top.extend_from_slice(et);
                stack.push((index[&e.to], bo + eb.len(), next_top, true));
            }
        }
    }
    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tileset::Tile;

    fn example1() -> WangTileset {
        WangTileset::from_tiles(
            "example1",
            [
                Tile::from_names("r", "b", "r", "r"),
                Tile::from_names("b", "v", "r", "v"),
                Tile::from_names("v", "r", "r", "r"),
                Tile::from_names("r", "v", "v", "r"),
            ],
        )
    }

    #[test]
    fn from_tileset_is_a_bijection_on_example1() {
        let t = from_tileset(&example1());
        assert_eq!(t.edge_count(), 4);
        assert_eq!(t.state_count(), 3);
        assert_eq!(t.height, 1);
        let e = Edge::new(
            StateId::named("r"),
            StateId::named("b"),
            Word::from_names(&["r"]),
            Word::from_names(&["r"]),
        );
        assert!(t.edges.contains(&e));
    }

    #[test]
    fn from_tileset_empty_and_single() {
        let t = from_tileset(&WangTileset::new("empty"));
        assert!(t.is_empty());
        let s = from_tileset(&WangTileset::from_tiles(
            "one",
            [Tile::from_names("a", "a", "b", "b")],
        ));
        assert_eq!(s.edge_count(), 1);
        let e = s.edges.iter().next().unwrap();
        assert_eq!(e.from, e.to);
    }

    #[test]
    fn union_is_idempotent() {
        let t = from_tileset(&example1());
        assert_eq!(union(&t, &t), t);
    }

    #[test]
    fn union_of_disjoint_singletons() {
        let a = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("p"),
                StateId::named("q"),
                Word::from_names(&["x"]),
                Word::from_names(&["x"]),
            )],
        );
        let b = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("s"),
                StateId::named("t"),
                Word::from_names(&["x"]),
                Word::from_names(&["x"]),
            )],
        );
        assert_eq!(union(&a, &b).edge_count(), 2);
    }

    #[test]
    fn compose_example1_matches_printed_square() {
        // The printed square is the trimmed composition: 7 states, 8 edges,
        // bottom colour first. Untrimmed, two dead-end pair states remain.
        let t = from_tileset(&example1());
        let t2 = compose(&t, &t).unwrap();
        assert_eq!(t2.height, 2);
        assert_eq!((t2.state_count(), t2.edge_count()), (9, 10));
        let trimmed = trim(&t2);
        assert_eq!((trimmed.state_count(), trimmed.edge_count()), (7, 8));
        let expect: BTreeSet<StateId> = ["r.v", "b.r", "v.v", "v.r", "r.b", "v.b", "r.r"]
            .iter()
            .map(|s| {
                let parts: Vec<&str> = s.split('.').collect();
                StateId::from_names(&parts)
            })
            .collect();
        assert_eq!(trimmed.states, expect);
    }

    #[test]
    fn compose_mismatching_tile_gives_empty() {
        let s = from_tileset(&WangTileset::from_tiles(
            "one",
            [Tile::from_names("a", "a", "b", "c")],
        ));
        let s2 = compose(&s, &s).unwrap();
        assert!(s2.is_empty());
    }

    #[test]
    fn compose_alphabet_mismatch_is_an_error() {
        let a = from_tileset(&WangTileset::from_tiles(
            "a",
            [Tile::from_names("q", "q", "x", "x")],
        ));
        let b = from_tileset(&WangTileset::from_tiles(
            "b",
            [Tile::from_names("q", "q", "y", "y")],
        ));
        assert!(matches!(
            compose(&a, &b),
            Err(TilingError::AlphabetMismatch)
        ));
    }

    #[test]
    fn power_one_is_identity_and_two_is_compose() {
        let t = from_tileset(&example1());
        assert_eq!(power(&t, 1, false, None).unwrap(), t);
        assert_eq!(
            power(&t, 2, false, None).unwrap(),
            compose(&t, &t).unwrap()
        );
    }

    #[test]
    fn example1_cube_contains_the_five_state_cycle() {
        let t = from_tileset(&example1());
        let t3 = power(&t, 3, false, None).unwrap();
        let cycle = [
            ("r.v.v", "b.r.r"),
            ("b.r.r", "v.v.b"),
            ("v.v.b", "r.r.v"),
            ("r.r.v", "v.b.r"),
            ("v.b.r", "r.v.v"),
        ];
        for (from, to) in cycle {
            let f: Vec<&str> = from.split('.').collect();
            let g: Vec<&str> = to.split('.').collect();
            let from = StateId::from_names(&f);
            let to = StateId::from_names(&g);
            assert!(
                t3.edges.iter().any(|e| e.from == from && e.to == to),
                "missing cycle edge {} -> {}",
                StateId::from_names(&f),
                StateId::from_names(&g)
            );
        }
    }

    #[test]
    fn trim_keeps_self_loop_drops_dangling() {
        let keep = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("a"),
                StateId::named("a"),
                Word::from_names(&["x"]),
                Word::from_names(&["x"]),
            )],
        );
        assert_eq!(trim(&keep), keep);
        let gone = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("a"),
                StateId::named("b"),
                Word::from_names(&["x"]),
                Word::from_names(&["x"]),
            )],
        );
        assert!(trim(&gone).is_empty());
    }

    #[test]
    fn path_accepts_single_edge_and_two_step() {
        let t = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("q"),
                StateId::named("r"),
                Word::from_names(&["a", "b"]),
                Word::from_names(&["c", "d"]),
            )],
        );
        let q = StateId::named("q");
        let r = StateId::named("r");
        assert!(path_accepts(
            &t,
            &q,
            &r,
            &Word::from_names(&["a", "b"]),
            &Word::from_names(&["c", "d"])
        ));
        // Mismatched lengths with no consistent path.
        assert!(!path_accepts(
            &t,
            &q,
            &r,
            &Word::from_names(&["a"]),
            &Word::from_names(&["c", "d"])
        ));

        // The worked example: v ->r->v reading rv below and rr above.
        let e1 = from_tileset(&crate::transducer::tests::example1());
        let v = StateId::named("v");
        assert!(path_accepts(
            &e1,
            &v,
            &v,
            &Word::from_names(&["r", "v"]),
            &Word::from_names(&["r", "r"])
        ));
    }

    #[test]
    fn submodels_is_reflexive_and_detects_subgraphs() {
        let t = from_tileset(&example1());
        assert!(submodels(&t, &t).passed());
        // The printed two-state sub-transducer of the inclusion example.
        let sub = MetaTransducer::from_edges(
            1,
            [
                Edge::new(
                    StateId::named("v"),
                    StateId::named("r"),
                    Word::from_names(&["r"]),
                    Word::from_names(&["r"]),
                ),
                Edge::new(
                    StateId::named("r"),
                    StateId::named("v"),
                    Word::from_names(&["v"]),
                    Word::from_names(&["r"]),
                ),
            ],
        );
        assert!(submodels(&t, &sub).passed());
        let bad = MetaTransducer::from_edges(
            1,
            [Edge::new(
                StateId::named("v"),
                StateId::named("v"),
                Word::from_names(&["v"]),
                Word::from_names(&["v"]),
            )],
        );
        assert!(!submodels(&t, &bad).passed());
    }
}
