//! Finite and eventually periodic infinite paths, shifts, and boundary paths.

use std::collections::HashMap;

use serde::Serialize;

use crate::alignment::exhaustiveness;
use crate::degree::{Degree, INF};
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::path::{Path, PathDoc};
use crate::skeleton::{EdgeId, VertexId};

/// `prefix · block · block · …`, or just `prefix` when there is no block.
///
/// Values built through [`KGraph::periodic`], [`KGraph::shift`] and
/// [`KGraph::concat`] are kept in canonical form: the block is primitive and
/// no trailing edge of the prefix can be absorbed into the block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockPeriodicPath {
    prefix: Path,
    block: Option<Path>,
}

impl BlockPeriodicPath {
    pub fn finite(path: Path) -> Self {
        BlockPeriodicPath { prefix: path, block: None }
    }

    pub fn prefix(&self) -> &Path {
        &self.prefix
    }

    pub fn block(&self) -> Option<&Path> {
        self.block.as_ref()
    }

    pub fn range(&self) -> VertexId {
        self.prefix.range()
    }

    pub fn is_finite(&self) -> bool {
        self.block.is_none()
    }

    /// `d(prefix)` with every color used by the block set to infinity.
    pub fn degree(&self) -> Degree {
        let mut coords = self.prefix.degree().coords().to_vec();
        if let Some(b) = &self.block {
            for c in b.degree().support() {
                coords[c - 1] = INF;
            }
        }
        Degree::new(coords)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockPeriodicDoc {
    pub prefix: PathDoc,
    pub block: Option<PathDoc>,
    pub degree: Degree,
}

/// Order used by the builder to pick among candidate edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Least edge name.
    #[default]
    Lex,
    /// First edge in input order.
    InputOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundaryVerdict {
    Boundary,
    /// `witness` is exhaustive at `x(at)` and misses `σ^at x`.
    NotBoundary { witness: Vec<Path>, at: Degree },
    InconclusiveUpTo(Degree),
}

fn ceil_div(a: u32, b: u32) -> u32 {
    a.div_ceil(b)
}

impl KGraph {
    /// `prefix · block^∞` in canonical form.
    pub fn periodic(&self, prefix: Path, block: Path) -> Result<BlockPeriodicPath> {
        if block.degree().is_zero() {
            return Err(Error::InvalidBlock("block has degree zero".into()));
        }
        if block.range() != block.source() {
            return Err(Error::InvalidBlock(format!("block {} is not a cycle", self.show(&block))));
        }
        if prefix.source() != block.range() {
            return Err(Error::NotComposable {
                source_vertex: self.vertex_name(prefix.source()).into(),
                range_vertex: self.vertex_name(block.range()).into(),
            });
        }
        Ok(self.canonical(BlockPeriodicPath { prefix, block: Some(block) }))
    }

    /// Primitive block, then greedy absorption of the prefix into the block.
    pub fn canonical(&self, x: BlockPeriodicPath) -> BlockPeriodicPath {
        let Some(block) = x.block else { return x };
        let mut prefix = x.prefix;
        let mut block = self.primitive_root(block);
        'absorb: loop {
            for c in 1..=self.k() {
                if prefix.degree().get(c) == 0 || block.degree().get(c) == 0 {
                    continue;
                }
                let unit = Degree::unit(self.k(), c);
                let dp = prefix.degree().clone();
                let db = block.degree().clone();
                let p_cut = dp.checked_sub(&unit).expect("coordinate is positive");
                let b_cut = db.checked_sub(&unit).expect("coordinate is positive");
                let tail = self.segment(&prefix, &p_cut, &dp).expect("in range");
                if self.segment(&block, &b_cut, &db).expect("in range") == tail {
                    let head = self.initial(&block, &b_cut).expect("in range");
                    block = self.compose(&tail, &head).expect("rotation is composable");
                    prefix = self.initial(&prefix, &p_cut).expect("in range");
                    continue 'absorb;
                }
            }
            break;
        }
        BlockPeriodicPath { prefix, block: Some(self.primitive_root(block)) }
    }

    fn primitive_root(&self, mut block: Path) -> Path {
        'outer: loop {
            let support = block.degree().support();
            let g = support.iter().fold(0u32, |acc, &c| gcd(acc, block.degree().get(c)));
            for j in (2..=g).rev() {
                if g % j != 0 {
                    continue;
                }
                let root_deg = Degree::new(block.degree().coords().iter().map(|c| c / j).collect());
                let root = self.initial(&block, &root_deg).expect("in range");
                if root.range() == root.source() && self.power(&root, j).is_ok_and(|p| p == block) {
                    block = root;
                    continue 'outer;
                }
            }
            return block;
        }
    }

    /// `x(0, n)` for finite `n ≤ d(x)`.
    pub fn truncate(&self, x: &BlockPeriodicPath, n: &Degree) -> Result<Path> {
        self.check_rank(n)?;
        let d = x.degree();
        if !n.is_finite() || !n.le(&d) {
            return Err(Error::OutOfRange { requested: n.clone(), available: d });
        }
        let Some(block) = &x.block else { return self.initial(&x.prefix, n) };
        let t = self.repetitions(x, block, n);
        let long = self.compose(&x.prefix, &self.power(block, t)?)?;
        self.initial(&long, n)
    }

    /// Least `t` with `d(prefix) + t·d(block) ≥ n` on the block's colors.
    fn repetitions(&self, x: &BlockPeriodicPath, block: &Path, n: &Degree) -> u32 {
        block
            .degree()
            .support()
            .into_iter()
            .map(|c| ceil_div(n.get(c).saturating_sub(x.prefix.degree().get(c)), block.degree().get(c)))
            .max()
            .unwrap_or(0)
    }

    /// `x(m)`.
    pub fn vertex_at(&self, x: &BlockPeriodicPath, m: &Degree) -> Result<VertexId> {
        Ok(self.truncate(x, m)?.source())
    }

    /// `σ^m x`.
    pub fn shift(&self, x: &BlockPeriodicPath, m: &Degree) -> Result<BlockPeriodicPath> {
        self.check_rank(m)?;
        let d = x.degree();
        if !m.is_finite() || !m.le(&d) {
            return Err(Error::OutOfRange { requested: m.clone(), available: d });
        }
        match &x.block {
            None => Ok(BlockPeriodicPath::finite(self.segment(&x.prefix, m, x.prefix.degree())?)),
            Some(block) => {
                let t = self.repetitions(x, block, m);
                let long = self.compose(&x.prefix, &self.power(block, t)?)?;
                let rest = self.segment(&long, m, long.degree())?;
                Ok(self.canonical(BlockPeriodicPath { prefix: rest, block: Some(block.clone()) }))
            }
        }
    }

    /// `λx`.
    pub fn concat(&self, lambda: &Path, x: &BlockPeriodicPath) -> Result<BlockPeriodicPath> {
        let prefix = self.compose(lambda, &x.prefix)?;
        Ok(self.canonical(BlockPeriodicPath { prefix, block: x.block.clone() }))
    }

    /// Equality as graph morphisms. Beyond the longer prefix both paths are
    /// periodic in every infinite color, so agreement over one extra period of
    /// each block forces agreement everywhere.
    pub fn path_equals(&self, x: &BlockPeriodicPath, y: &BlockPeriodicPath) -> bool {
        if x == y {
            return true;
        }
        let d = x.degree();
        if d != y.degree() || x.range() != y.range() {
            return false;
        }
        let block_deg = |z: &BlockPeriodicPath, c: usize| z.block.as_ref().map_or(0, |b| b.degree().get(c));
        let bound = Degree::new(
            (1..=self.k())
                .map(|c| {
                    if d.get(c) == INF {
                        x.prefix.degree().get(c).max(y.prefix.degree().get(c)) + block_deg(x, c) + block_deg(y, c)
                    } else {
                        d.get(c)
                    }
                })
                .collect(),
        );
        match (self.truncate(x, &bound), self.truncate(y, &bound)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Whether `μ` is an initial segment of `x`.
    pub fn is_initial_segment(&self, mu: &Path, x: &BlockPeriodicPath) -> bool {
        mu.range() == x.range() && mu.degree().le(&x.degree()) && self.truncate(x, mu.degree()).is_ok_and(|p| p == *mu)
    }

    pub fn periodic_doc(&self, x: &BlockPeriodicPath) -> BlockPeriodicDoc {
        BlockPeriodicDoc {
            prefix: self.path_doc(&x.prefix),
            block: x.block.as_ref().map(|b| self.path_doc(b)),
            degree: x.degree(),
        }
    }

    fn least_edge(&self, edges: &[EdgeId], tie: TieBreak) -> Option<EdgeId> {
        match tie {
            TieBreak::InputOrder => edges.iter().copied().min(),
            TieBreak::Lex => edges.iter().copied().min_by(|a, b| self.edge(*a).name.cmp(&self.edge(*b).name)),
        }
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Walks from `v` cycling through the colors `2, 3, …, k, 1, 2, …`, taking the
/// least available edge of the current color and skipping colors with none.
/// The walk is determined by `(vertex, phase)`, so it closes into a block as
/// soon as a state repeats.
pub fn build_boundary_path(g: &KGraph, v: VertexId, tie: TieBreak) -> Result<BlockPeriodicPath> {
    g.require_finite()?;
    let k = g.k();
    let mut seen: HashMap<(VertexId, usize), usize> = HashMap::new();
    let mut word: Vec<EdgeId> = Vec::new();
    let mut cur = v;
    let mut l = 1usize;
    loop {
        let phase = l % k;
        if let Some(&start) = seen.get(&(cur, phase)) {
            let prefix = g.path_from_word(v, &word[..start])?;
            if start == word.len() {
                return Ok(BlockPeriodicPath::finite(prefix));
            }
            let block = g.path_from_word(prefix.source(), &word[start..])?;
            return g.periodic(prefix, block);
        }
        seen.insert((cur, phase), word.len());
        let color = phase + 1;
        if let Some(e) = g.least_edge(g.range_edges(cur, color), tie) {
            word.push(e);
            cur = g.edge(e).source;
        }
        l += 1;
    }
}

/// Decides whether `x` is a boundary path.
///
/// Paths of infinite degree in every color are boundary paths. When some
/// coordinate is finite the verdict comes from one of two certificates: a
/// vertex in the tail of `x` that receives no edge of any finite color
/// (boundary), or an exhaustive set of paths of degree `≤ bound` at some
/// `x(m)` avoiding `σ^m x` (not boundary). Failing both, the answer is
/// inconclusive at that bound.
pub fn is_boundary(g: &KGraph, x: &BlockPeriodicPath, bound: &Degree) -> Result<BoundaryVerdict> {
    g.check_rank(bound)?;
    let d = x.degree();
    if d.is_infinite_everywhere() {
        return Ok(BoundaryVerdict::Boundary);
    }
    if g.is_lazy() {
        return Ok(BoundaryVerdict::InconclusiveUpTo(bound.clone()));
    }
    let k = g.k();
    let finite_colors: Vec<usize> = (1..=k).filter(|&c| d.get(c) != INF).collect();
    let p = x.prefix().degree().clone();
    let block_deg = x.block().map_or(Degree::zero(k), |b| b.degree().clone());

    let has_sources = g.vertices().any(|v| (1..=k).any(|c| g.range_edges(v, c).is_empty()));
    if !has_sources {
        let color = finite_colors[0];
        let w = g.vertex_at(x, &p)?;
        let witness: Vec<Path> = g.range_edges(w, color).iter().map(|&e| g.edge_path(e)).collect();
        return Ok(BoundaryVerdict::NotBoundary { witness, at: p });
    }

    // Tail vertices x(n) with d(prefix) ≤ n ≤ d(prefix) + d(block).
    let tail_box = p.add(&block_deg);
    for off in block_deg.below() {
        let w = g.vertex_at(x, &p.add(&off))?;
        if finite_colors.iter().all(|&c| g.range_edges(w, c).is_empty()) {
            return Ok(BoundaryVerdict::Boundary);
        }
    }

    let mut bases = tail_box.below();
    bases.sort_by_key(|m| (*m != p, std::cmp::Reverse(m.total())));
    for m in bases {
        if let Some(witness) = avoiding_exhaustive_set(g, x, &m, bound)? {
            return Ok(BoundaryVerdict::NotBoundary { witness, at: m });
        }
    }
    Ok(BoundaryVerdict::InconclusiveUpTo(bound.clone()))
}

/// The set of all `μ ∈ x(m)Λ` with `d(μ) ≤ bound` that are not initial
/// segments of `σ^m x` contains every bounded candidate witness, so it is
/// exhaustive exactly when some bounded witness exists. A minimal exhaustive
/// subset is returned.
fn avoiding_exhaustive_set(g: &KGraph, x: &BlockPeriodicPath, m: &Degree, bound: &Degree) -> Result<Option<Vec<Path>>> {
    let y = g.shift(x, m)?;
    let v = y.range();
    let mut set: Vec<Path> = g.paths_up_to(v, bound).into_iter().filter(|mu| !g.is_initial_segment(mu, &y)).collect();
    if set.is_empty() || !exhaustiveness(g, &set, v).exhaustive {
        return Ok(None);
    }
    set.sort_by_key(|mu| std::cmp::Reverse(mu.degree().total()));
    let mut i = 0;
    while i < set.len() {
        let mut trial = set.clone();
        trial.remove(i);
        if !trial.is_empty() && exhaustiveness(g, &trial, v).exhaustive {
            set = trial;
        } else {
            i += 1;
        }
    }
    set.sort();
    Ok(Some(set))
}

/// Per-color sources (`vΛ^{e_i} = ∅`) and sinks (`Λ^{e_i}v = ∅`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphProperties {
    pub sources: Vec<(String, usize)>,
    pub sinks: Vec<(String, usize)>,
    pub proper: Properness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Properness {
    Proper,
    /// Positions still producing edges after `budget` were generated.
    BudgetExceeded { budget: usize, positions: Vec<(String, usize)> },
}

impl GraphProperties {
    pub fn is_source(&self, v: &str) -> bool {
        self.sources.iter().any(|(w, _)| w == v)
    }
}

pub fn graph_properties(g: &KGraph, budget: usize) -> GraphProperties {
    let scan = |g: &KGraph| {
        let mut sources = Vec::new();
        let mut sinks = Vec::new();
        for v in g.vertices() {
            for c in 1..=g.k() {
                if g.range_edges(v, c).is_empty() {
                    sources.push((g.vertex_name(v).to_string(), c));
                }
                if g.source_edges(v, c).is_empty() {
                    sinks.push((g.vertex_name(v).to_string(), c));
                }
            }
        }
        (sources, sinks)
    };
    if !g.is_lazy() {
        let (sources, sinks) = scan(g);
        return GraphProperties { sources, sinks, proper: Properness::Proper };
    }
    let wide = g.widen(budget.saturating_add(1).min(1 << 16));
    let positions: Vec<(String, usize)> = wide
        .open_positions()
        .into_iter()
        .filter(|&(v, c)| wide.range_edges(v, c).len() > budget)
        .map(|(v, c)| (wide.vertex_name(v).to_string(), c))
        .collect();
    let (sources, sinks) = scan(g);
    let proper = if positions.is_empty() { Properness::Proper } else { Properness::BudgetExceeded { budget, positions } };
    GraphProperties { sources, sinks, proper }
}
