//! Snake graphs `G(w)` in `ℤ²`, their perfect matchings, the basic matching
//! `𝔟`, the area statistic, and the bijection `Φ` onto fence ideals.
//!
//! There is one unit cell per prefix `p` of `w`, anchored at
//! `(|p|₀, |p|₁)`: a `0` steps right, a `1` steps up.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cf::{cf_even, word_of, Rational};
use crate::error::Error;
use crate::fence::{OrderIdeal, MAX_ELEMENTS};
use crate::qpoly::LaurentPoly;
use crate::words::BinaryWord;

pub type Point = (i64, i64);

/// Unit lattice edge with endpoints in lexicographic order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(pub Point, pub Point);

impl Edge {
    pub fn new(a: Point, b: Point) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn is_vertical(&self) -> bool {
        self.0 .0 == self.1 .0
    }

    pub fn touches(&self, v: Point) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: Point) -> Point {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }

    pub fn translate(&self, d: Point) -> Edge {
        Edge((self.0 .0 + d.0, self.0 .1 + d.1), (self.1 .0 + d.0, self.1 .1 + d.1))
    }
}

/// The four edges of the unit square with lower-left corner `g`.
pub fn square(g: Point) -> [Edge; 4] {
    let (x, y) = g;
    [
        Edge((x, y), (x + 1, y)),
        Edge((x, y + 1), (x + 1, y + 1)),
        Edge((x, y), (x, y + 1)),
        Edge((x + 1, y), (x + 1, y + 1)),
    ]
}

/// A set of edges, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Matching(Vec<Edge>);

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        edges.dedup();
        Matching(edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.0
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.0.binary_search(e).is_ok()
    }

    pub fn edge_at(&self, v: Point) -> Option<Edge> {
        self.0.iter().copied().find(|e| e.touches(v))
    }

    pub fn symmetric_difference(&self, o: &Matching) -> Vec<Edge> {
        let a: BTreeSet<_> = self.0.iter().collect();
        let b: BTreeSet<_> = o.0.iter().collect();
        a.symmetric_difference(&b).map(|&&e| e).collect()
    }

    fn translate(&self, d: Point) -> Matching {
        Matching::new(self.0.iter().map(|e| e.translate(d)).collect())
    }
}

/// `⊥` or `∥`, by the first edge (the one at the origin).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MatchingClass {
    #[serde(rename = "perp")]
    Perp,
    #[serde(rename = "par")]
    Par,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnakeGraph {
    word: BinaryWord,
    cells: Vec<Point>,
    vertices: Vec<Point>,
    edges: Vec<Edge>,
    basic: Matching,
}

impl SnakeGraph {
    pub fn new(w: &BinaryWord) -> Self {
        let mut cells = vec![(0, 0)];
        for &b in w.bits() {
            let (x, y) = *cells.last().unwrap();
            cells.push(if b { (x, y + 1) } else { (x + 1, y) });
        }
        let mut multiplicity: BTreeMap<Edge, usize> = BTreeMap::new();
        for &g in &cells {
            for e in square(g) {
                *multiplicity.entry(e).or_default() += 1;
            }
        }
        let edges: Vec<Edge> = multiplicity.keys().copied().collect();
        let vertices: BTreeSet<Point> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
        let boundary: Vec<Edge> = multiplicity.iter().filter(|(_, &m)| m == 1).map(|(&e, _)| e).collect();
        let basic = basic_from_boundary(&boundary, *cells.last().unwrap());
        SnakeGraph { word: w.clone(), cells, vertices: vertices.into_iter().collect(), edges, basic }
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    /// Lower-left corners, in prefix order.
    pub fn cells(&self) -> &[Point] {
        &self.cells
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn basic_matching(&self) -> &Matching {
        &self.basic
    }

    pub fn is_perfect_matching(&self, m: &Matching) -> bool {
        let mut seen = BTreeSet::new();
        m.0.iter().all(|e| self.edges.binary_search(e).is_ok() && seen.insert(e.0) && seen.insert(e.1))
            && seen.len() == self.vertices.len()
    }

    pub fn classify(&self, m: &Matching) -> MatchingClass {
        let first = m.edge_at((0, 0)).expect("the origin is covered");
        if self.basic.contains(&first) {
            MatchingClass::Par
        } else {
            MatchingClass::Perp
        }
    }

    /// Cells enclosed by the cycles of `m Δ 𝔟`.
    ///
    /// A horizontal ray from each cell centre crosses the vertical edges of
    /// the symmetric difference; an odd count means the cell is inside.
    pub fn enclosed_cells(&self, m: &Matching) -> Vec<usize> {
        let diff = m.symmetric_difference(&self.basic);
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &(cx, cy))| {
                diff.iter().filter(|e| e.is_vertical() && e.0 .0 > cx && e.0 .1 == cy).count() % 2 == 1
            })
            .map(|(i, _)| i)
            .collect()
    }

    /// `area(m Δ 𝔟)`.
    pub fn area(&self, m: &Matching) -> usize {
        self.enclosed_cells(m).len()
    }

    /// `Φ(m)`: prefix lengths of enclosed cells, an ideal of `F(θ(w))`.
    pub fn phi(&self, m: &Matching) -> OrderIdeal {
        OrderIdeal::from_indices(self.enclosed_cells(m))
    }

    /// Drops the first cell: the matching of `G(w')` for `w = αw'`, moved
    /// back to the origin. `None` for the one-cell graph.
    pub fn pop(&self, m: &Matching) -> Option<(SnakeGraph, Matching)> {
        let (&alpha, _) = self.word.bits().split_first()?;
        let vert = Edge((0, 0), (0, 1));
        let horiz = Edge((0, 0), (1, 0));
        let has_vert = m.contains(&vert);
        let flip = |m: &Matching| {
            let s: BTreeSet<Edge> = square((0, 0)).into_iter().collect();
            let cur: BTreeSet<Edge> = m.0.iter().copied().collect();
            Matching::new(cur.symmetric_difference(&s).copied().collect())
        };
        let drop = |m: Matching, e: Edge| Matching::new(m.0.into_iter().filter(|&f| f != e).collect());
        let (popped, shift) = match (alpha, has_vert) {
            (false, true) => (drop(m.clone(), vert), (-1, 0)),
            (false, false) => (drop(flip(m), vert), (-1, 0)),
            (true, false) => (drop(m.clone(), horiz), (0, -1)),
            (true, true) => (drop(flip(m), horiz), (0, -1)),
        };
        let rest = SnakeGraph::new(&BinaryWord::from_bits(self.word.bits()[1..].to_vec()));
        Some((rest, popped.translate(shift)))
    }

    /// `Φ(m)` by peeling off one cell at a time.
    pub fn phi_recursive(&self, m: &Matching) -> OrderIdeal {
        let here = self.classify(m) == MatchingClass::Perp;
        let head = if here { 1 } else { 0 };
        match self.pop(m) {
            None => OrderIdeal(head),
            Some((g, m2)) => OrderIdeal(g.phi_recursive(&m2).0 << 1 | head),
        }
    }

    fn check_size(&self) -> Result<(), Error> {
        if self.cells.len() > MAX_ELEMENTS {
            Err(Error::TooLarge)
        } else {
            Ok(())
        }
    }

    /// All perfect matchings, cell by cell.
    ///
    /// At cell `j` the only live state is which endpoints of the edge shared
    /// with cell `j+1` are already matched; every other vertex of cell `j`
    /// must be matched before moving on.
    pub fn enumerate_matchings(&self) -> Result<Vec<Matching>, Error> {
        let mut out = Vec::new();
        self.for_each_matching(|m| out.push(m))?;
        out.sort();
        Ok(out)
    }

    /// Streams every perfect matching to `visit`, without collecting them.
    pub fn for_each_matching(&self, mut visit: impl FnMut(Matching)) -> Result<(), Error> {
        self.check_size()?;
        let plan = self.cell_plan();
        self.frontier_dfs(&plan, 0, &BTreeSet::new(), &mut Vec::new(), &mut visit);
        Ok(())
    }

    fn frontier_dfs(
        &self,
        plan: &[CellPlan],
        j: usize,
        matched: &BTreeSet<Point>,
        chosen: &mut Vec<Edge>,
        out: &mut dyn FnMut(Matching),
    ) {
        if j == plan.len() {
            out(Matching::new(chosen.clone()));
            return;
        }
        let cell = &plan[j];
        for subset in 0u32..1 << cell.own.len() {
            let picked: Vec<Edge> =
                (0..cell.own.len()).filter(|&b| subset >> b & 1 == 1).map(|b| cell.own[b]).collect();
            let mut now = matched.clone();
            if !picked.iter().all(|e| now.insert(e.0) && now.insert(e.1)) {
                continue;
            }
            if !cell.must_cover.iter().all(|v| now.contains(v)) {
                continue;
            }
            let carry: BTreeSet<Point> = cell.carried.iter().copied().filter(|v| now.contains(v)).collect();
            let n = chosen.len();
            chosen.extend(picked);
            self.frontier_dfs(plan, j + 1, &carry, chosen, out);
            chosen.truncate(n);
        }
    }

    fn cell_plan(&self) -> Vec<CellPlan> {
        let n = self.cells.len();
        (0..n)
            .map(|j| {
                let sq = square(self.cells[j]);
                let shared_prev = (j > 0).then(|| shared_edge(self.cells[j - 1], self.cells[j]));
                let shared_next = (j + 1 < n).then(|| shared_edge(self.cells[j], self.cells[j + 1]));
                let own: Vec<Edge> = sq.iter().copied().filter(|e| Some(*e) != shared_prev).collect();
                let carried: Vec<Point> = shared_next.map(|e| vec![e.0, e.1]).unwrap_or_default();
                let mut corners: Vec<Point> = sq.iter().flat_map(|e| [e.0, e.1]).collect();
                corners.sort();
                corners.dedup();
                let must_cover = corners.into_iter().filter(|v| !carried.contains(v)).collect();
                CellPlan { own, carried, must_cover }
            })
            .collect()
    }

    /// Matching count by the same cell scan, tracking only frontier states.
    pub fn count_matchings(&self) -> BigInt {
        let plan = self.cell_plan();
        let mut states: BTreeMap<Vec<Point>, BigInt> = BTreeMap::from([(Vec::new(), BigInt::from(1))]);
        for cell in &plan {
            let mut next: BTreeMap<Vec<Point>, BigInt> = BTreeMap::new();
            for (matched, count) in &states {
                for subset in 0u32..1 << cell.own.len() {
                    let mut now: BTreeSet<Point> = matched.iter().copied().collect();
                    let ok = (0..cell.own.len())
                        .filter(|&b| subset >> b & 1 == 1)
                        .all(|b| now.insert(cell.own[b].0) && now.insert(cell.own[b].1));
                    if !ok || !cell.must_cover.iter().all(|v| now.contains(v)) {
                        continue;
                    }
                    let carry: Vec<Point> = cell.carried.iter().copied().filter(|v| now.contains(v)).collect();
                    *next.entry(carry).or_default() += count;
                }
            }
            states = next;
        }
        states.into_values().sum()
    }

    /// `(Σ_{M⊥} q^{area}, Σ_{M∥} q^{area})`.
    pub fn area_statistics(&self) -> Result<(LaurentPoly, LaurentPoly), Error> {
        // histograms by area
        let mut counts = [vec![0u64; self.cells.len() + 1], vec![0u64; self.cells.len() + 1]];
        self.for_each_matching(|m| {
            let side = (self.classify(&m) == MatchingClass::Par) as usize;
            counts[side][self.area(&m)] += 1;
        })?;
        let [perp, par] = counts.map(|h| {
            let mut p = LaurentPoly::zero();
            for (e, c) in h.into_iter().enumerate() {
                p.add_term(e as i64, BigInt::from(c));
            }
            p
        });
        Ok((perp, par))
    }

    /// `(#M⊥, #M∥)`.
    pub fn class_counts(&self) -> Result<(usize, usize), Error> {
        let (mut perp, mut par) = (0, 0);
        self.for_each_matching(|m| match self.classify(&m) {
            MatchingClass::Perp => perp += 1,
            MatchingClass::Par => par += 1,
        })?;
        Ok((perp, par))
    }
}

struct CellPlan {
    own: Vec<Edge>,
    carried: Vec<Point>,
    must_cover: Vec<Point>,
}

fn shared_edge(a: Point, b: Point) -> Edge {
    if b.0 > a.0 {
        Edge(b, (b.0, b.1 + 1))
    } else {
        Edge(b, (b.0 + 1, b.1))
    }
}

/// Every other edge of the boundary cycle, starting from the right side of
/// the last cell.
fn basic_from_boundary(boundary: &[Edge], last: Point) -> Matching {
    let start = Edge((last.0 + 1, last.1), (last.0 + 1, last.1 + 1));
    let mut picked = vec![start];
    let mut prev = start;
    let mut at = start.1;
    let mut take = false;
    loop {
        let next = *boundary.iter().find(|e| e.touches(at) && **e != prev).expect("boundary is a cycle");
        if next == start {
            break;
        }
        if take {
            picked.push(next);
        }
        take = !take;
        at = next.other(at);
        prev = next;
    }
    Matching::new(picked)
}

pub fn snake_of_word(w: &BinaryWord) -> SnakeGraph {
    SnakeGraph::new(w)
}

/// `𝓖(x) = G(θ(W(x)))`.
pub fn snake_of_rational(x: &Rational) -> Result<SnakeGraph, Error> {
    Ok(SnakeGraph::new(&word_of(&cf_even(x)?)?.theta()))
}

pub fn area_statistics(x: &Rational) -> Result<(LaurentPoly, LaurentPoly), Error> {
    snake_of_rational(x)?.area_statistics()
}

/// Independent check: plain backtracking over vertices, always matching the
/// smallest uncovered one.
pub fn matchings_by_backtracking(g: &SnakeGraph) -> Vec<Matching> {
    fn go(verts: &[Point], edges: &[Edge], used: &mut BTreeSet<Point>, cur: &mut Vec<Edge>, out: &mut Vec<Matching>) {
        let Some(&v) = verts.iter().find(|v| !used.contains(v)) else {
            out.push(Matching::new(cur.clone()));
            return;
        };
        for e in edges.iter().filter(|e| e.touches(v)) {
            let u = e.other(v);
            if used.contains(&u) {
                continue;
            }
            used.insert(v);
            used.insert(u);
            cur.push(*e);
            go(verts, edges, used, cur, out);
            cur.pop();
            used.remove(&v);
            used.remove(&u);
        }
    }
    let mut out = Vec::new();
    go(g.vertices(), g.edges(), &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrefixSuffixRow {
    pub word: BinaryWord,
    pub perp: usize,
    pub par: usize,
    /// `perp/par`, except `par/perp` for prefixes with `|w| − |v|` odd: a
    /// prefix of `θ(w)` is `θ` of a prefix of `w` only for even length
    /// difference, whereas suffixes always commute with `θ`.
    pub value: Rational,
}

/// `(#M⊥, #M∥)` for every prefix and every suffix of `θ(W(x))`, shortest first.
///
/// The prefix values walk the Stern–Brocot path from 1 to `x`; the suffix
/// values are the steps of the subtractive Euclid algorithm on `(r, s)`.
pub fn prefix_suffix_table(x: &Rational) -> Result<(Vec<PrefixSuffixRow>, Vec<PrefixSuffixRow>), Error> {
    let w = word_of(&cf_even(x)?)?.theta();
    let n = w.len();
    let row = |v: BinaryWord, prefix: bool| -> Result<PrefixSuffixRow, Error> {
        let (perp, par) = SnakeGraph::new(&v).class_counts()?;
        let (a, b) = if prefix && (n - v.len()) % 2 == 1 { (par, perp) } else { (perp, par) };
        let value = Rational::from_u64(a as u64, b as u64);
        Ok(PrefixSuffixRow { word: v, perp, par, value })
    };
    let prefixes = (0..=n).map(|k| row(w.prefix(k), true)).collect::<Result<_, _>>()?;
    let suffixes = (0..=n).map(|k| row(w.suffix(k), false)).collect::<Result<_, _>>()?;
    Ok((prefixes, suffixes))
}
