//! Finite reflexive globular sets, connected components, truncation, reduced
//! words in the free groupoid on a graph, and finite-groupoid equivalence
//! checking.
//!
//! Cells above the declared bound, and all identity cells, are implicit:
//! a degenerate cell is never enumerated, it is recovered as (cell, level).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

pub type CellId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawCell {
    pub name: String,
    pub dim: usize,
    pub src: Option<String>,
    pub tgt: Option<String>,
}

/// Unvalidated graded data.  `idents` optionally declares that a cell is the
/// identity cell of a lower cell, which validation checks and then treats as
/// degenerate.
#[derive(Clone, Debug, Default)]
pub struct RawGset {
    pub name: String,
    pub cells: Vec<RawCell>,
    pub idents: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub dim: usize,
    pub cell: String,
    pub identity: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension {}, cell {}: {} violated ({})",
            self.dim, self.cell, self.identity, self.detail
        )
    }
}

pub const GLOBULAR_IDENTITY: &str = "globular identity (source/target of parallel boundaries)";
pub const REFLEXIVE_IDENTITY: &str = "reflexive identity (source and target of an identity cell)";
pub const SHAPE: &str = "grading shape";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub name: String,
    pub dim: usize,
    pub src: Option<CellId>,
    pub tgt: Option<CellId>,
    /// `Some(c)` when this cell was declared as the identity cell of `c`.
    pub degenerate_of: Option<CellId>,
}

/// A validated finite reflexive globular set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gset {
    pub name: String,
    cells: Vec<Cell>,
    by_name: BTreeMap<String, CellId>,
}

impl Gset {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: CellId) -> &Cell {
        &self.cells[id]
    }

    pub fn lookup(&self, name: &str) -> Option<CellId> {
        self.by_name.get(name).copied()
    }

    pub fn dim_cells(&self, dim: usize) -> Vec<CellId> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].dim == dim && self.cells[i].degenerate_of.is_none())
            .collect()
    }

    pub fn max_dim(&self) -> usize {
        self.cells
            .iter()
            .filter(|c| c.degenerate_of.is_none())
            .map(|c| c.dim)
            .max()
            .unwrap_or(0)
    }

    /// Iterated source (`i = 0`) or target (`i = 1`) down to dimension `j`.
    pub fn boundary(&self, id: CellId, j: usize, i: usize) -> CellId {
        let mut c = id;
        while self.cells[c].dim > j {
            c = if i == 0 {
                self.cells[c].src.expect("positive-dimensional cell")
            } else {
                self.cells[c].tgt.expect("positive-dimensional cell")
            };
        }
        c
    }

    /// Explicit non-degenerate cells only; identity cells and everything
    /// above the bound are implicit.
    pub fn explicit_cells(&self) -> impl Iterator<Item = (CellId, &Cell)> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| c.degenerate_of.is_none())
    }

    /// Builds a gset directly from (name, dim, src, tgt) tuples; panics on
    /// invalid data, so only use for known-good fixtures.
    pub fn fixture(name: &str, cells: &[(&str, usize, Option<&str>, Option<&str>)]) -> Gset {
        let raw = RawGset {
            name: name.to_string(),
            cells: cells
                .iter()
                .map(|(n, d, s, t)| RawCell {
                    name: n.to_string(),
                    dim: *d,
                    src: s.map(|x| x.to_string()),
                    tgt: t.map(|x| x.to_string()),
                })
                .collect(),
            idents: vec![],
        };
        validate_globular(&raw).expect("fixture must be a valid globular set")
    }
}

/// Checks the globular and reflexive identities, returning either the
/// validated value or the full list of violations.
pub fn validate_globular(raw: &RawGset) -> Result<Gset, Vec<Violation>> {
    let mut violations = Vec::new();
    let mut by_name: BTreeMap<String, CellId> = BTreeMap::new();
    for (i, c) in raw.cells.iter().enumerate() {
        if by_name.insert(c.name.clone(), i).is_some() {
            violations.push(Violation {
                dim: c.dim,
                cell: c.name.clone(),
                identity: SHAPE,
                detail: "duplicate cell name".to_string(),
            });
        }
    }

    let mut cells: Vec<Cell> = Vec::with_capacity(raw.cells.len());
    for c in &raw.cells {
        let mut resolve = |name: &Option<String>| -> Option<CellId> {
            match name {
                None => None,
                Some(n) => match by_name.get(n) {
                    Some(&id) => Some(id),
                    None => {
                        violations.push(Violation {
                            dim: c.dim,
                            cell: c.name.clone(),
                            identity: SHAPE,
                            detail: format!("unknown boundary cell {}", n),
                        });
                        None
                    }
                },
            }
        };
        let src = resolve(&c.src);
        let tgt = resolve(&c.tgt);
        if c.dim == 0 && (src.is_some() || tgt.is_some()) {
            violations.push(Violation {
                dim: 0,
                cell: c.name.clone(),
                identity: SHAPE,
                detail: "dimension-0 cells take no endpoints".to_string(),
            });
        }
        if c.dim > 0 && (c.src.is_none() || c.tgt.is_none()) {
            violations.push(Violation {
                dim: c.dim,
                cell: c.name.clone(),
                identity: SHAPE,
                detail: "positive-dimensional cells need a source and a target".to_string(),
            });
        }
        cells.push(Cell {
            name: c.name.clone(),
            dim: c.dim,
            src,
            tgt,
            degenerate_of: None,
        });
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    // Boundary dimensions.
    for c in &cells {
        for b in [c.src, c.tgt].into_iter().flatten() {
            if cells[b].dim + 1 != c.dim {
                violations.push(Violation {
                    dim: c.dim,
                    cell: c.name.clone(),
                    identity: SHAPE,
                    detail: format!(
                        "boundary {} has dimension {}, expected {}",
                        cells[b].name,
                        cells[b].dim,
                        c.dim - 1
                    ),
                });
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    // Globular identities: the source and target of any cell of dimension
    // at least 2 must be parallel.
    for c in &cells {
        if c.dim >= 2 {
            let s = c.src.unwrap();
            let t = c.tgt.unwrap();
            if cells[s].src != cells[t].src {
                violations.push(Violation {
                    dim: c.dim,
                    cell: c.name.clone(),
                    identity: GLOBULAR_IDENTITY,
                    detail: format!(
                        "s(s({})) = {} but s(t({})) = {}",
                        c.name,
                        cells[cells[s].src.unwrap()].name,
                        c.name,
                        cells[cells[t].src.unwrap()].name
                    ),
                });
            }
            if cells[s].tgt != cells[t].tgt {
                violations.push(Violation {
                    dim: c.dim,
                    cell: c.name.clone(),
                    identity: GLOBULAR_IDENTITY,
                    detail: format!("t(s({0})) differs from t(t({0}))", c.name),
                });
            }
        }
    }

    // Declared identity cells: both endpoints must equal the base cell.
    for (base, ident) in &raw.idents {
        let (Some(&b), Some(&e)) = (by_name.get(base), by_name.get(ident)) else {
            violations.push(Violation {
                dim: 0,
                cell: ident.clone(),
                identity: SHAPE,
                detail: "identity declaration names an unknown cell".to_string(),
            });
            continue;
        };
        if cells[e].dim != cells[b].dim + 1 {
            violations.push(Violation {
                dim: cells[e].dim,
                cell: ident.clone(),
                identity: SHAPE,
                detail: "identity cell must live one dimension up".to_string(),
            });
            continue;
        }
        if cells[e].src != Some(b) || cells[e].tgt != Some(b) {
            violations.push(Violation {
                dim: cells[e].dim,
                cell: ident.clone(),
                identity: REFLEXIVE_IDENTITY,
                detail: format!("i({0}) must have source and target {0}", cells[b].name),
            });
            continue;
        }
        cells[e].degenerate_of = Some(b);
    }

    if violations.is_empty() {
        Ok(Gset {
            name: raw.name.clone(),
            cells,
            by_name,
        })
    } else {
        Err(violations)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, i: usize) -> usize {
        if self.parent[i] != i {
            let root = self.find(self.parent[i]);
            self.parent[i] = root;
        }
        self.parent[i]
    }

    pub(crate) fn union(&mut self, i: usize, j: usize) {
        let (a, b) = (self.find(i), self.find(j));
        if a != b {
            // Deterministic representative: the smaller index wins.
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            self.parent[hi] = lo;
        }
    }
}

/// The coequalizer partition of `s, t : G_1 -> G_0`: vertex classes, each
/// sorted, in deterministic order.
pub fn pi0(g: &Gset) -> Vec<Vec<CellId>> {
    let n = g.cells.len();
    let mut uf = UnionFind::new(n);
    for c in g.cells.iter() {
        if c.dim == 1 {
            uf.union(c.src.unwrap(), c.tgt.unwrap());
        }
    }
    let mut classes: BTreeMap<usize, Vec<CellId>> = BTreeMap::new();
    for v in g.dim_cells(0) {
        classes.entry(uf.find(v)).or_default().push(v);
    }
    classes.into_values().collect()
}

/// Truncation: level 0 collapses to the constant globular set on the
/// connected components; level 1 quotients 1-cells by the relation generated
/// by 2-cells and forgets everything above.
pub fn truncate(g: &Gset, level: usize) -> Gset {
    assert!(level <= 1, "only levels 0 and 1 are defined");
    if level == 0 {
        let classes = pi0(g);
        let cells: Vec<RawCell> = classes
            .iter()
            .map(|class| RawCell {
                // Name the class after its smallest-named member.
                name: class
                    .iter()
                    .map(|&v| g.cells[v].name.clone())
                    .min()
                    .unwrap(),
                dim: 0,
                src: None,
                tgt: None,
            })
            .collect();
        return validate_globular(&RawGset {
            name: g.name.clone(),
            cells,
            idents: vec![],
        })
        .expect("truncation of a valid gset is valid");
    }

    // Level 1: union-find over 1-cells joined by 2-cells.
    let n = g.cells.len();
    let mut uf = UnionFind::new(n);
    for c in &g.cells {
        if c.dim == 2 {
            uf.union(c.src.unwrap(), c.tgt.unwrap());
        }
    }
    let roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    let mut raw = Vec::new();
    for v in g.dim_cells(0) {
        raw.push(RawCell {
            name: g.cells[v].name.clone(),
            dim: 0,
            src: None,
            tgt: None,
        });
    }
    let mut seen_class: BTreeSet<usize> = BTreeSet::new();
    for e in g.dim_cells(1) {
        let root = roots[e];
        if seen_class.insert(root) {
            let class_name = g
                .cells
                .iter()
                .enumerate()
                .filter(|(i, c)| c.dim == 1 && c.degenerate_of.is_none() && roots[*i] == root)
                .map(|(_, c)| c.name.clone())
                .min()
                .unwrap();
            let rep = &g.cells[e];
            raw.push(RawCell {
                name: class_name,
                dim: 1,
                src: Some(g.cells[rep.src.unwrap()].name.clone()),
                tgt: Some(g.cells[rep.tgt.unwrap()].name.clone()),
            });
        }
    }
    validate_globular(&RawGset {
        name: g.name.clone(),
        cells: raw,
        idents: vec![],
    })
    .expect("truncation of a valid gset is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Fwd,
    Inv,
}

impl Dir {
    pub fn flip(self) -> Dir {
        match self {
            Dir::Fwd => Dir::Inv,
            Dir::Inv => Dir::Fwd,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub edge: CellId,
    pub dir: Dir,
}

/// Input letters for word reduction: edges with an orientation, or identity
/// edges which reduction deletes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RawLetter {
    Edge(CellId, Dir),
    Ident(CellId),
}

/// An arrow of the free groupoid: a reduced zigzag word with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub from: CellId,
    pub to: CellId,
    pub letters: Vec<Letter>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainError {
    pub at: usize,
    pub expected: CellId,
    pub found: CellId,
}

impl fmt::Display for ChainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "letter {} starts at cell {} but the word has reached cell {}",
            self.at, self.found, self.expected
        )
    }
}

pub fn letter_endpoints(g: &Gset, l: &Letter) -> (CellId, CellId) {
    let c = g.cell(l.edge);
    let (s, t) = (c.src.unwrap(), c.tgt.unwrap());
    match l.dir {
        Dir::Fwd => (s, t),
        Dir::Inv => (t, s),
    }
}

impl Word {
    pub fn identity(at: CellId) -> Word {
        Word {
            from: at,
            to: at,
            letters: vec![],
        }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word {
            from: self.to,
            to: self.from,
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    edge: l.edge,
                    dir: l.dir.flip(),
                })
                .collect(),
        }
    }

    /// `self` then `next` (diagram order), reduced.
    pub fn then(&self, g: &Gset, next: &Word) -> Word {
        assert_eq!(self.to, next.from, "words must chain");
        let letters: Vec<RawLetter> = self
            .letters
            .iter()
            .chain(next.letters.iter())
            .map(|l| RawLetter::Edge(l.edge, l.dir))
            .collect();
        reduce_word(g, self.from, &letters).expect("concatenation of chained words chains")
    }

    pub fn display(&self, g: &Gset) -> String {
        if self.letters.is_empty() {
            return format!("1_{}", g.cell(self.from).name);
        }
        self.letters
            .iter()
            .map(|l| match l.dir {
                Dir::Fwd => g.cell(l.edge).name.clone(),
                Dir::Inv => format!("{}~", g.cell(l.edge).name),
            })
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// Deletes identity letters and cancelling adjacent pairs until no rule
/// applies.  The result is the unique reduced word of the input's class.
pub fn reduce_word(g: &Gset, start: CellId, letters: &[RawLetter]) -> Result<Word, ChainError> {
    let mut at = start;
    let mut stack: Vec<Letter> = Vec::new();
    for (i, raw) in letters.iter().enumerate() {
        match raw {
            RawLetter::Ident(v) => {
                if *v != at {
                    return Err(ChainError {
                        at: i,
                        expected: at,
                        found: *v,
                    });
                }
            }
            RawLetter::Edge(e, d) => {
                let l = Letter { edge: *e, dir: *d };
                let (s, t) = letter_endpoints(g, &l);
                if s != at {
                    return Err(ChainError {
                        at: i,
                        expected: at,
                        found: s,
                    });
                }
                at = t;
                // Degenerate edges are identity letters.
                if g.cell(*e).degenerate_of.is_some() {
                    continue;
                }
                match stack.last() {
                    Some(top) if top.edge == l.edge && top.dir == l.dir.flip() => {
                        stack.pop();
                    }
                    _ => stack.push(l),
                }
            }
        }
    }
    Ok(Word {
        from: start,
        to: at,
        letters: stack,
    })
}

/// All reduced words `a -> b` of length at most `max_len`, in deterministic
/// (length, then lexicographic) order.  On a forest this is the complete
/// hom-set for any bound that admits the unique path.
pub fn free_groupoid_hom(g: &Gset, a: CellId, b: CellId, max_len: usize) -> Vec<Word> {
    let edges = g.dim_cells(1);
    let mut out = Vec::new();
    let mut current = Word::identity(a);
    fn extend(
        g: &Gset,
        edges: &[CellId],
        b: CellId,
        max_len: usize,
        current: &mut Word,
        out: &mut Vec<Word>,
    ) {
        if current.to == b {
            out.push(current.clone());
        }
        if current.len() == max_len {
            return;
        }
        let mut options: Vec<Letter> = Vec::new();
        for &e in edges {
            for dir in [Dir::Fwd, Dir::Inv] {
                let l = Letter { edge: e, dir };
                let (s, _) = letter_endpoints(g, &l);
                if s != current.to {
                    continue;
                }
                if let Some(top) = current.letters.last() {
                    if top.edge == l.edge && top.dir == l.dir.flip() {
                        continue; // would cancel; not reduced
                    }
                }
                options.push(l);
            }
        }
        for l in options {
            let (_, t) = letter_endpoints(g, &l);
            let prev_to = current.to;
            current.letters.push(l);
            current.to = t;
            extend(g, edges, b, max_len, current, out);
            current.letters.pop();
            current.to = prev_to;
        }
    }
    extend(g, &edges, b, max_len, &mut current, &mut out);
    out.sort_by(|w1, w2| (w1.len(), &w1.letters).cmp(&(w2.len(), &w2.letters)));
    out
}

/// Whether the 1-skeleton has no undirected cycle (so the free groupoid has
/// at most one arrow between any two vertices).
pub fn is_forest(g: &Gset) -> bool {
    let n = g.cells.len();
    let mut uf = UnionFind::new(n);
    for e in g.dim_cells(1) {
        let c = g.cell(e);
        let (s, t) = (c.src.unwrap(), c.tgt.unwrap());
        if uf.find(s) == uf.find(t) {
            return false;
        }
        uf.union(s, t);
    }
    true
}

#[derive(Clone, Debug)]
pub struct GArrow {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite groupoid given by tables.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    pub objects: Vec<String>,
    pub arrows: Vec<GArrow>,
    /// `compose[g][f] = Some(g . f)` when `cod f = dom g`.
    pub compose: Vec<Vec<Option<usize>>>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawViolation(pub String);

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FiniteGroupoid {
    pub fn comp(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&i| self.arrows[i].dom == a && self.arrows[i].cod == b)
            .collect()
    }

    /// Checks the category laws, totality of composable composition and
    /// two-sided inverses.
    pub fn validate(&self) -> Result<(), LawViolation> {
        let n = self.arrows.len();
        if self.objects.len() > 64 || n > 4096 {
            return Err(LawViolation(
                "input exceeds the 64 object / 4096 arrow cap".to_string(),
            ));
        }
        for (o, &i) in self.identity.iter().enumerate() {
            if self.arrows[i].dom != o || self.arrows[i].cod != o {
                return Err(LawViolation(format!(
                    "identity of object {} has wrong endpoints",
                    self.objects[o]
                )));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].cod == self.arrows[g].dom;
                match self.compose[g][f] {
                    Some(h) => {
                        if !composable {
                            return Err(LawViolation(format!(
                                "composition defined on a non-composable pair ({}, {})",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                        if self.arrows[h].dom != self.arrows[f].dom
                            || self.arrows[h].cod != self.arrows[g].cod
                        {
                            return Err(LawViolation(format!(
                                "composite of ({}, {}) has wrong endpoints",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    None => {
                        if composable {
                            return Err(LawViolation(format!(
                                "composition table not total on ({}, {})",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                }
            }
        }
        for f in 0..n {
            let idd = self.identity[self.arrows[f].dom];
            let idc = self.identity[self.arrows[f].cod];
            if self.comp(f, idd) != Some(f) || self.comp(idc, f) != Some(f) {
                return Err(LawViolation(format!(
                    "unit law fails at {}",
                    self.arrows[f].name
                )));
            }
            let inv = self.inverse[f];
            if self.comp(inv, f) != Some(idd) || self.comp(f, inv) != Some(idc) {
                return Err(LawViolation(format!(
                    "inverse law fails at {}",
                    self.arrows[f].name
                )));
            }
        }
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    if let (Some(gf), Some(hg)) = (self.comp(g, f), self.comp(h, g)) {
                        if self.comp(h, gf) != self.comp(hg, f) {
                            return Err(LawViolation(format!(
                                "associativity fails on ({}, {}, {})",
                                self.arrows[h].name, self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Object and arrow assignments of a functor between finite groupoids.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub object_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
}

/// Validates functoriality, then decides the three equivalence properties by
/// exhaustive search.
pub fn check_equivalence(
    src: &FiniteGroupoid,
    tgt: &FiniteGroupoid,
    f: &FunctorData,
) -> Result<EquivalenceReport, LawViolation> {
    src.validate()?;
    tgt.validate()?;
    if f.object_map.len() != src.objects.len()
        || f.arrow_map.len() != src.arrows.len()
        || f.object_map.iter().any(|&o| o >= tgt.objects.len())
        || f.arrow_map.iter().any(|&a| a >= tgt.arrows.len())
    {
        return Err(LawViolation(
            "functor data does not cover the source or lands outside the target".to_string(),
        ));
    }
    for (a, arr) in src.arrows.iter().enumerate() {
        let fa = f.arrow_map[a];
        if tgt.arrows[fa].dom != f.object_map[arr.dom]
            || tgt.arrows[fa].cod != f.object_map[arr.cod]
        {
            return Err(LawViolation(format!(
                "functor does not preserve the endpoints of {}",
                arr.name
            )));
        }
    }
    for (o, &i) in src.identity.iter().enumerate() {
        if f.arrow_map[i] != tgt.identity[f.object_map[o]] {
            return Err(LawViolation(format!(
                "functor does not preserve the identity of {}",
                src.objects[o]
            )));
        }
    }
    for g in 0..src.arrows.len() {
        for h in 0..src.arrows.len() {
            if let Some(gh) = src.comp(g, h) {
                let expected = tgt.comp(f.arrow_map[g], f.arrow_map[h]);
                if expected != Some(f.arrow_map[gh]) {
                    return Err(LawViolation(format!(
                        "functor does not preserve the composite of ({}, {})",
                        src.arrows[g].name, src.arrows[h].name
                    )));
                }
            }
        }
    }

    let mut faithful = true;
    let mut full = true;
    for a in 0..src.objects.len() {
        for b in 0..src.objects.len() {
            let hom_src = src.hom(a, b);
            let hom_tgt = tgt.hom(f.object_map[a], f.object_map[b]);
            let images: Vec<usize> = hom_src.iter().map(|&h| f.arrow_map[h]).collect();
            let distinct: BTreeSet<usize> = images.iter().copied().collect();
            if distinct.len() != hom_src.len() {
                faithful = false;
            }
            if hom_tgt.iter().any(|h| !distinct.contains(h)) {
                full = false;
            }
        }
    }
    let mut essentially_surjective = true;
    for b in 0..tgt.objects.len() {
        let hit = (0..src.objects.len()).any(|a| {
            let fa = f.object_map[a];
            !tgt.hom(fa, b).is_empty()
        });
        if !hit {
            essentially_surjective = false;
        }
    }
    Ok(EquivalenceReport {
        faithful,
        full,
        essentially_surjective,
    })
}

/// Parses the line-oriented globular-set file format:
///
/// ```text
/// gset v1
/// cell a : 0
/// cell f : 1 a b
/// ```
pub fn parse_gset_file(text: &str) -> Result<RawGset, String> {
    let mut lines = text
        .lines()
        .map(|raw| match raw.find('#') {
            Some(i) => raw[..i].trim(),
            None => raw.trim(),
        })
        .filter(|l| !l.is_empty());
    match lines.next() {
        Some("gset v1") => {}
        other => return Err(format!("expected 'gset v1' header, found {:?}", other)),
    }
    let mut raw = RawGset {
        name: "G".to_string(),
        cells: vec![],
        idents: vec![],
    };
    for line in lines {
        let Some(rest) = line.strip_prefix("cell ") else {
            return Err(format!("unrecognized line: {:?}", line));
        };
        let Some((name, after)) = rest.split_once(':') else {
            return Err(format!("missing ':' in cell line: {:?}", line));
        };
        let name = name.trim().to_string();
        let fields: Vec<&str> = after.split_whitespace().collect();
        match fields.as_slice() {
            [dim] => {
                let d: usize = dim
                    .parse()
                    .map_err(|_| format!("bad dimension in {:?}", line))?;
                if d != 0 {
                    return Err(format!("cell {} of dimension {} needs endpoints", name, d));
                }
                raw.cells.push(RawCell {
                    name,
                    dim: 0,
                    src: None,
                    tgt: None,
                });
            }
            [dim, src, tgt] => {
                let d: usize = dim
                    .parse()
                    .map_err(|_| format!("bad dimension in {:?}", line))?;
                if d == 0 {
                    return Err(format!("dimension-0 cell {} takes no endpoints", name));
                }
                raw.cells.push(RawCell {
                    name,
                    dim: d,
                    src: Some(src.to_string()),
                    tgt: Some(tgt.to_string()),
                });
            }
            _ => return Err(format!("malformed cell line: {:?}", line)),
        }
    }
    Ok(raw)
}

pub fn write_gset_file(g: &Gset) -> String {
    let mut out = String::from("gset v1\n");
    for (_, c) in g.explicit_cells() {
        match (c.src, c.tgt) {
            (Some(s), Some(t)) => out.push_str(&format!(
                "cell {} : {} {} {}\n",
                c.name,
                c.dim,
                g.cell(s).name,
                g.cell(t).name
            )),
            _ => out.push_str(&format!("cell {} : {}\n", c.name, c.dim)),
        }
    }
    out
}

#[cfg(test)]
mod tests;
