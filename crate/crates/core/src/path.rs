//! Paths in color-block normal form, composition and factorization.
//!
//! A path is stored as its edge word with all color-1 edges first (nearest
//! the range), then color 2, and so on. Unique factorization makes this word
//! canonical, so structural equality of [`Path`] values is equality of
//! morphisms.

use std::fmt;

use serde::Serialize;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::skeleton::{EdgeId, VertexId};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    range: VertexId,
    source: VertexId,
    degree: Degree,
    word: Vec<EdgeId>,
}

impl Path {
    pub fn range(&self) -> VertexId {
        self.range
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn degree(&self) -> &Degree {
        &self.degree
    }

    pub fn word(&self) -> &[EdgeId] {
        &self.word
    }

    pub fn is_vertex(&self) -> bool {
        self.word.is_empty()
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }
}

impl fmt::Debug for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "v{}", self.range.0)
        } else {
            let ids: Vec<String> = self.word.iter().map(|e| format!("e{}", e.0)).collect();
            write!(f, "[{}]", ids.join(","))
        }
    }
}

/// JSON form of a path: `{"range", "degree", "edges"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathDoc {
    pub range: String,
    pub degree: Degree,
    pub edges: Vec<String>,
}

/// The graph morphism `Ω_{k,d(λ)} → Λ` of a path: every unit edge `(p, p+e_i)`
/// of the degree box labelled by an edge of the graph.
#[derive(Debug, Clone)]
pub struct Grid {
    degree: Degree,
    strides: Vec<usize>,
    cells: Vec<Option<EdgeId>>,
    range: VertexId,
}

impl Grid {
    fn index(&self, p: &[u32], color: usize) -> usize {
        let k = self.degree.rank();
        let lin: usize = p.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum();
        lin * k + (color - 1)
    }

    /// Edge from point `p` to `p + e_color`.
    pub fn edge(&self, p: &[u32], color: usize) -> Option<EdgeId> {
        if p[color - 1] >= self.degree.get(color) {
            return None;
        }
        self.cells[self.index(p, color)]
    }

    /// Vertex at point `p`.
    pub fn vertex(&self, g: &KGraph, p: &[u32]) -> VertexId {
        for c in 1..=self.degree.rank() {
            if let Some(e) = self.edge(p, c) {
                return g.edge(e).range;
            }
            if p[c - 1] > 0 {
                let mut q = p.to_vec();
                q[c - 1] -= 1;
                if let Some(e) = self.edge(&q, c) {
                    return g.edge(e).source;
                }
            }
        }
        self.range
    }
}

impl KGraph {
    pub fn vertex_path(&self, v: VertexId) -> Path {
        Path { range: v, source: v, degree: Degree::zero(self.k()), word: Vec::new() }
    }

    pub fn edge_path(&self, e: EdgeId) -> Path {
        let edge = self.edge(e);
        Path { range: edge.range, source: edge.source, degree: Degree::unit(self.k(), edge.color), word: vec![e] }
    }

    /// Builds the path of an arbitrary composable edge word. An empty word
    /// needs `range`.
    pub fn path_from_word(&self, range: VertexId, word: &[EdgeId]) -> Result<Path> {
        let mut cur = range;
        let mut degree = Degree::zero(self.k());
        for (i, &e) in word.iter().enumerate() {
            let edge = self.edge(e);
            if edge.range != cur {
                return Err(Error::BrokenWord(i));
            }
            cur = edge.source;
            degree = degree.add(&Degree::unit(self.k(), edge.color));
        }
        let mut word = word.to_vec();
        self.normalize(&mut word);
        Ok(Path { range, source: cur, degree, word })
    }

    /// Path from edge names, or a vertex path when `names` holds one vertex id.
    pub fn path_from_names(&self, names: &[&str]) -> Result<Path> {
        if let [single] = names {
            if let Ok(v) = self.vertex_id(single) {
                return Ok(self.vertex_path(v));
            }
        }
        let word = names.iter().map(|n| self.edge_id(n)).collect::<Result<Vec<_>>>()?;
        let Some(&first) = word.first() else {
            return Err(Error::Schema("a path needs at least one edge or a vertex".into()));
        };
        self.path_from_word(self.edge(first).range, &word)
    }

    /// Sorts a composable word into color blocks by applying squares to
    /// adjacent out-of-order pairs.
    fn normalize(&self, word: &mut [EdgeId]) {
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..word.len().saturating_sub(1) {
                if self.color(word[i]) > self.color(word[i + 1]) {
                    let (x, y) = self.swap(word[i], word[i + 1]);
                    word[i] = x;
                    word[i + 1] = y;
                    changed = true;
                }
            }
        }
    }

    pub fn compose(&self, p: &Path, q: &Path) -> Result<Path> {
        if p.source != q.range {
            return Err(Error::NotComposable {
                source_vertex: self.vertex_name(p.source).to_string(),
                range_vertex: self.vertex_name(q.range).to_string(),
            });
        }
        let mut word = Vec::with_capacity(p.len() + q.len());
        word.extend_from_slice(&p.word);
        word.extend_from_slice(&q.word);
        self.normalize(&mut word);
        Ok(Path { range: p.range, source: q.source, degree: p.degree.add(&q.degree), word })
    }

    /// Composes a nonempty chain of paths left to right.
    pub fn compose_all<'a>(&self, parts: impl IntoIterator<Item = &'a Path>) -> Result<Path> {
        let mut iter = parts.into_iter();
        let first = iter.next().expect("compose_all needs at least one path").clone();
        iter.try_fold(first, |acc, p| self.compose(&acc, p))
    }

    /// `p^n`; `p` must be a cycle (`r(p) = s(p)`).
    pub fn power(&self, p: &Path, n: u32) -> Result<Path> {
        let mut out = self.vertex_path(p.range);
        for _ in 0..n {
            out = self.compose(&out, p)?;
        }
        Ok(out)
    }

    pub fn grid(&self, p: &Path) -> Grid {
        let k = self.k();
        let d = p.degree.clone();
        let mut strides = vec![0; k];
        let mut total = 1usize;
        for i in (0..k).rev() {
            strides[i] = total;
            total *= d.coords()[i] as usize + 1;
        }
        let mut grid = Grid { degree: d.clone(), strides, cells: vec![None; total * k], range: p.range };
        // Seed with the normal-form staircase.
        let mut point = vec![0u32; k];
        for &e in &p.word {
            let c = self.color(e);
            let idx = grid.index(&point, c);
            grid.cells[idx] = Some(e);
            point[c - 1] += 1;
        }
        if k == 1 {
            return grid;
        }
        let points = d.below();
        let mut changed = true;
        while changed {
            changed = false;
            for pt in &points {
                let p = pt.coords();
                for i in 1..=k {
                    if p[i - 1] >= d.get(i) {
                        continue;
                    }
                    for j in (i + 1)..=k {
                        if p[j - 1] >= d.get(j) {
                            continue;
                        }
                        let mut pi = p.to_vec();
                        pi[i - 1] += 1;
                        let mut pj = p.to_vec();
                        pj[j - 1] += 1;
                        let (a, b) = (grid.index(p, i), grid.index(&pi, j));
                        let (c, dd) = (grid.index(p, j), grid.index(&pj, i));
                        match (grid.cells[a], grid.cells[b], grid.cells[c], grid.cells[dd]) {
                            (Some(x), Some(y), None, _) | (Some(x), Some(y), _, None) => {
                                let (f2, f1) = self.swap(x, y);
                                grid.cells[c] = Some(f2);
                                grid.cells[dd] = Some(f1);
                                changed = true;
                            }
                            (None, _, Some(x), Some(y)) | (_, None, Some(x), Some(y)) => {
                                let (e1, e2) = self.swap(x, y);
                                grid.cells[a] = Some(e1);
                                grid.cells[b] = Some(e2);
                                changed = true;
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        grid
    }

    /// The unique factor `λ(a, b)`.
    pub fn segment(&self, p: &Path, a: &Degree, b: &Degree) -> Result<Path> {
        self.check_rank(a)?;
        self.check_rank(b)?;
        if !a.is_finite() || !b.is_finite() || !a.le(b) || !b.le(&p.degree) {
            let requested = if a.le(b) { b.clone() } else { a.clone() };
            return Err(Error::OutOfRange { requested, available: p.degree.clone() });
        }
        if a.is_zero() && *b == p.degree {
            return Ok(p.clone());
        }
        if self.k() == 1 {
            let (s, t) = (a.get(1) as usize, b.get(1) as usize);
            let word = p.word[s..t].to_vec();
            let range = if s < p.len() { self.edge(p.word[s]).range } else { p.source };
            let source = if t > 0 { self.edge(p.word[t - 1]).source } else { p.range };
            return Ok(Path { range, source, degree: b.checked_sub(a).expect("a ≤ b"), word });
        }
        let grid = self.grid(p);
        let mut point = a.coords().to_vec();
        let range = grid.vertex(self, &point);
        let mut word = Vec::with_capacity(b.total() - a.total());
        for c in 1..=self.k() {
            while point[c - 1] < b.get(c) {
                word.push(grid.edge(&point, c).expect("grids of validated paths are complete"));
                point[c - 1] += 1;
            }
        }
        let source = grid.vertex(self, &point);
        Ok(Path { range, source, degree: b.checked_sub(a).expect("a ≤ b"), word })
    }

    /// `λ(0, n)`.
    pub fn initial(&self, p: &Path, n: &Degree) -> Result<Path> {
        self.segment(p, &Degree::zero(self.k()), n)
    }

    pub(crate) fn check_rank(&self, d: &Degree) -> Result<()> {
        if d.rank() != self.k() {
            Err(Error::RankMismatch { expected: self.k(), found: d.rank() })
        } else {
            Ok(())
        }
    }

    /// `vΛ^m` in normal form, enumerated color block by color block.
    pub fn paths_of_degree(&self, v: VertexId, m: &Degree) -> Vec<Path> {
        self.paths_of_degree_budgeted(v, m, usize::MAX).paths
    }

    /// Budgeted enumeration; the result is flagged incomplete when the budget
    /// runs out or the enumeration touched a truncated edge list of a lazy graph.
    pub fn paths_of_degree_budgeted(&self, v: VertexId, m: &Degree, budget: usize) -> Enumeration {
        assert!(m.is_finite(), "paths_of_degree needs a finite degree");
        let mut out = Enumeration { paths: Vec::new(), complete: true };
        let mut word = Vec::with_capacity(m.total());
        self.enumerate_blocks(v, m, 1, m.get(1), &mut word, v, budget, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate_blocks(
        &self,
        range: VertexId,
        m: &Degree,
        color: usize,
        left: u32,
        word: &mut Vec<EdgeId>,
        cur: VertexId,
        budget: usize,
        out: &mut Enumeration,
    ) {
        if left == 0 {
            if color == self.k() {
                if out.paths.len() >= budget {
                    out.complete = false;
                    return;
                }
                out.paths.push(Path { range, source: cur, degree: m.clone(), word: word.clone() });
            } else {
                self.enumerate_blocks(range, m, color + 1, m.get(color + 1), word, cur, budget, out);
            }
            return;
        }
        if self.is_open(cur, color) {
            out.complete = false;
        }
        for &e in self.range_edges(cur, color) {
            word.push(e);
            self.enumerate_blocks(range, m, color, left - 1, word, self.edge(e).source, budget, out);
            word.pop();
            if out.paths.len() >= budget && !out.complete {
                return;
            }
        }
    }

    /// All paths in `vΛ` with degree `≤ cap`.
    pub fn paths_up_to(&self, v: VertexId, cap: &Degree) -> Vec<Path> {
        cap.below().iter().flat_map(|m| self.paths_of_degree(v, m)).collect()
    }

    /// Every path in the graph with degree `≤ cap`.
    pub fn all_paths_up_to(&self, cap: &Degree) -> Vec<Path> {
        self.vertices().flat_map(|v| self.paths_up_to(v, cap)).collect()
    }

    pub fn path_doc(&self, p: &Path) -> PathDoc {
        PathDoc {
            range: self.vertex_name(p.range).to_string(),
            degree: p.degree.clone(),
            edges: p.word.iter().map(|&e| self.edge(e).name.clone()).collect(),
        }
    }

    /// `[e1,e2,…]`, or the vertex name for a degree-zero path.
    pub fn show(&self, p: &Path) -> String {
        if p.word.is_empty() {
            self.vertex_name(p.range).to_string()
        } else {
            let names: Vec<&str> = p.word.iter().map(|&e| self.edge(e).name.as_str()).collect();
            format!("[{}]", names.join(","))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub paths: Vec<Path>,
    pub complete: bool,
}
