//! Validated k-graphs.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::skeleton::{Edge, EdgeId, Skeleton, VertexId};

/// An infinitely presented k-graph given by a growing family of finite
/// windows. Window `n` contains the first `n` members of the family.
pub trait LazyFamily: Send + Sync + fmt::Debug {
    fn name(&self) -> &str;

    /// The finite sub-presentation with the first `members` family members.
    fn materialize(&self, members: usize) -> Skeleton;

    /// `(vertex, color)` pairs receiving infinitely many edges in the full graph.
    fn open_positions(&self) -> Vec<(String, usize)>;
}

#[derive(Debug, Clone)]
pub(crate) struct LazyState {
    family: Arc<dyn LazyFamily>,
    window: usize,
    open: HashSet<(VertexId, usize)>,
}

/// A skeleton whose square system passed the factorization checks.
///
/// Values are immutable once built. Lazy graphs carry a finite window of an
/// infinite presentation; budgeted operations widen the window as needed.
#[derive(Debug, Clone)]
pub struct KGraph {
    skel: Arc<Skeleton>,
    swap: Arc<HashMap<(EdgeId, EdgeId), (EdgeId, EdgeId)>>,
    /// `range_edges[v][c-1]`: edges of color `c` with range `v`, input order.
    range_edges: Arc<Vec<Vec<Vec<EdgeId>>>>,
    /// `source_edges[v][c-1]`: edges of color `c` with source `v`.
    source_edges: Arc<Vec<Vec<Vec<EdgeId>>>>,
    lazy: Option<LazyState>,
}

/// Checks that `sk` presents a k-graph: squares pair bi-colored composable
/// pairs bijectively and, for `k ≥ 3`, every tri-colored composable triple
/// reorders consistently.
pub fn validate_kgraph(sk: Skeleton) -> Result<KGraph> {
    sk.check_square_bijection()?;
    let mut swap = HashMap::with_capacity(sk.squares().len() * 2);
    for sq in sk.squares() {
        swap.insert((sq.left[0], sq.left[1]), (sq.right[0], sq.right[1]));
        swap.insert((sq.right[0], sq.right[1]), (sq.left[0], sq.left[1]));
    }
    let k = sk.k();
    let mut range_edges = vec![vec![Vec::new(); k]; sk.vertex_count()];
    let mut source_edges = vec![vec![Vec::new(); k]; sk.vertex_count()];
    for e in sk.edge_ids() {
        let Edge { color, range, source, .. } = *sk.edge(e);
        range_edges[range.index()][color - 1].push(e);
        source_edges[source.index()][color - 1].push(e);
    }
    let g = KGraph {
        skel: Arc::new(sk),
        swap: Arc::new(swap),
        range_edges: Arc::new(range_edges),
        source_edges: Arc::new(source_edges),
        lazy: None,
    };
    if k >= 3 {
        g.check_cubes()?;
    }
    Ok(g)
}

impl KGraph {
    /// Builds a lazy graph materialized with `window` family members.
    pub fn lazy(family: Arc<dyn LazyFamily>, window: usize) -> Result<KGraph> {
        let mut g = validate_kgraph(family.materialize(window))?;
        let open = family
            .open_positions()
            .into_iter()
            .filter_map(|(v, c)| g.skel.vertex_id(&v).map(|id| (id, c)))
            .collect();
        g.lazy = Some(LazyState { family, window, open });
        Ok(g)
    }

    pub fn is_lazy(&self) -> bool {
        self.lazy.is_some()
    }

    /// Number of family members in the current window (lazy graphs only).
    pub fn window(&self) -> Option<usize> {
        self.lazy.as_ref().map(|l| l.window)
    }

    /// Re-materializes a lazy graph with at least `members` family members.
    /// Vertex and edge ids of the smaller window stay valid.
    pub fn widen(&self, members: usize) -> KGraph {
        match &self.lazy {
            Some(l) if l.window < members => {
                KGraph::lazy(l.family.clone(), members).expect("lazy family windows are valid k-graphs")
            }
            _ => self.clone(),
        }
    }

    /// `(v, color)` positions where the window truncates an infinite edge list.
    pub fn is_open(&self, v: VertexId, color: usize) -> bool {
        self.lazy.as_ref().is_some_and(|l| l.open.contains(&(v, color)))
    }

    /// Truncated `(vertex, color)` positions, sorted.
    pub fn open_positions(&self) -> Vec<(VertexId, usize)> {
        let mut out: Vec<_> = self.lazy.iter().flat_map(|l| l.open.iter().copied()).collect();
        out.sort();
        out
    }

    pub fn require_finite(&self) -> Result<()> {
        if self.is_lazy() {
            Err(Error::LazyGraph)
        } else {
            Ok(())
        }
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn k(&self) -> usize {
        self.skel.k()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        self.skel.vertex_ids()
    }

    pub fn vertex_id(&self, name: &str) -> Result<VertexId> {
        self.skel.vertex_id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge_id(&self, name: &str) -> Result<EdgeId> {
        self.skel.edge_id(name).ok_or_else(|| Error::UnknownEdge(name.to_string()))
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        self.skel.vertex_name(v)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        self.skel.edge(e)
    }

    pub fn color(&self, e: EdgeId) -> usize {
        self.skel.edge(e).color
    }

    /// `vΛ^{e_c}`: edges of color `c` whose range is `v`.
    pub fn range_edges(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.range_edges[v.index()][color - 1]
    }

    /// `Λ^{e_c}v`: edges of color `c` whose source is `v`.
    pub fn source_edges(&self, v: VertexId, color: usize) -> &[EdgeId] {
        &self.source_edges[v.index()][color - 1]
    }

    /// The partner of a bi-colored composable pair under the square relation.
    pub fn swap(&self, a: EdgeId, b: EdgeId) -> (EdgeId, EdgeId) {
        *self.swap.get(&(a, b)).expect("validated graphs have a square for every bi-colored pair")
    }

    /// `v` receives no edge of color `c`.
    pub fn blocked(&self, v: VertexId, color: usize) -> bool {
        self.range_edges(v, color).is_empty() && !self.is_open(v, color)
    }

    /// Whenever `v` receives edges of colors `i` and `j`, the sources of the
    /// color-`i` edges receive color `j` as well.
    pub fn is_locally_convex(&self) -> bool {
        let k = self.k();
        self.vertices().all(|v| {
            (1..=k).all(|i| {
                (1..=k).filter(|&j| j != i).all(|j| {
                    self.range_edges(v, j).is_empty()
                        || self.range_edges(v, i).iter().all(|&e| !self.range_edges(self.edge(e).source, j).is_empty())
                })
            })
        })
    }

    fn check_cubes(&self) -> Result<()> {
        let sk = &self.skel;
        for a in sk.edge_ids() {
            let ea = sk.edge(a);
            for &b in self.range_edges[ea.source.index()].iter().flatten() {
                let eb = sk.edge(b);
                if eb.color == ea.color {
                    continue;
                }
                for &c in self.range_edges[eb.source.index()].iter().flatten() {
                    let cc = sk.edge(c).color;
                    if cc == ea.color || cc == eb.color {
                        continue;
                    }
                    let mut w1 = [a, b, c];
                    self.swap_at(&mut w1, 0);
                    self.swap_at(&mut w1, 1);
                    self.swap_at(&mut w1, 0);
                    let mut w2 = [a, b, c];
                    self.swap_at(&mut w2, 1);
                    self.swap_at(&mut w2, 0);
                    self.swap_at(&mut w2, 1);
                    if w1 != w2 {
                        return Err(Error::CubeFailure(ea.name.clone(), eb.name.clone(), sk.edge(c).name.clone()));
                    }
                }
            }
        }
        Ok(())
    }

    fn swap_at(&self, word: &mut [EdgeId], i: usize) {
        let (x, y) = self.swap(word[i], word[i + 1]);
        word[i] = x;
        word[i + 1] = y;
    }
}
