//! Isomorphism search between finite presentations.

use std::collections::{HashMap, HashSet};

use crate::graph::KGraph;
use crate::skeleton::{EdgeId, VertexId};

/// Vertex and edge bijections preserving colors, ranges, sources and squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

fn signature(g: &KGraph, v: VertexId) -> Vec<(usize, usize)> {
    (1..=g.k()).map(|c| (g.range_edges(v, c).len(), g.source_edges(v, c).len())).collect()
}

/// Backtracking search; fine for graphs with a few dozen vertices.
pub fn find_isomorphism(g: &KGraph, h: &KGraph) -> Option<Isomorphism> {
    if g.k() != h.k()
        || g.skeleton().vertex_count() != h.skeleton().vertex_count()
        || g.skeleton().edge_count() != h.skeleton().edge_count()
        || g.skeleton().squares().len() != h.skeleton().squares().len()
    {
        return None;
    }
    let n = g.skeleton().vertex_count();
    let gs: Vec<_> = g.vertices().map(|v| signature(g, v)).collect();
    let hs: Vec<_> = h.vertices().map(|v| signature(h, v)).collect();
    let mut map = vec![None; n];
    let mut used = vec![false; n];
    search_vertices(g, h, &gs, &hs, 0, &mut map, &mut used)
}

fn search_vertices(
    g: &KGraph,
    h: &KGraph,
    gs: &[Vec<(usize, usize)>],
    hs: &[Vec<(usize, usize)>],
    i: usize,
    map: &mut Vec<Option<VertexId>>,
    used: &mut Vec<bool>,
) -> Option<Isomorphism> {
    if i == map.len() {
        let vertices: Vec<VertexId> = map.iter().map(|v| v.expect("all mapped")).collect();
        return search_edges(g, h, &vertices);
    }
    for j in 0..map.len() {
        if used[j] || gs[i] != hs[j] {
            continue;
        }
        map[i] = Some(VertexId(j as u32));
        if consistent_so_far(g, h, map, i) {
            used[j] = true;
            if let Some(iso) = search_vertices(g, h, gs, hs, i + 1, map, used) {
                return Some(iso);
            }
            used[j] = false;
        }
        map[i] = None;
    }
    None
}

/// Edge multiplicities between already-mapped vertices must agree.
fn consistent_so_far(g: &KGraph, h: &KGraph, map: &[Option<VertexId>], i: usize) -> bool {
    let count = |gr: &KGraph, r: VertexId, s: VertexId, c: usize| {
        gr.range_edges(r, c).iter().filter(|&&e| gr.edge(e).source == s).count()
    };
    let vi = VertexId(i as u32);
    let Some(wi) = map[i] else { return true };
    (0..=i).all(|j| {
        let vj = VertexId(j as u32);
        let Some(wj) = map[j] else { return true };
        (1..=g.k()).all(|c| count(g, vi, vj, c) == count(h, wi, wj, c) && count(g, vj, vi, c) == count(h, wj, wi, c))
    })
}

fn search_edges(g: &KGraph, h: &KGraph, vertices: &[VertexId]) -> Option<Isomorphism> {
    let g_edges: Vec<EdgeId> = g.skeleton().edge_ids().collect();
    let mut assigned: Vec<Option<EdgeId>> = vec![None; g_edges.len()];
    let mut taken = HashSet::new();
    let h_squares: HashSet<([EdgeId; 2], [EdgeId; 2])> = h.skeleton().squares().iter().map(|s| (s.left, s.right)).collect();
    let mut candidates: HashMap<EdgeId, Vec<EdgeId>> = HashMap::new();
    for &e in &g_edges {
        let ed = g.edge(e);
        let r = vertices[ed.range.index()];
        let s = vertices[ed.source.index()];
        candidates.insert(e, h.range_edges(r, ed.color).iter().copied().filter(|&f| h.edge(f).source == s).collect());
    }
    fn go(
        g: &KGraph,
        idx: usize,
        g_edges: &[EdgeId],
        candidates: &HashMap<EdgeId, Vec<EdgeId>>,
        assigned: &mut Vec<Option<EdgeId>>,
        taken: &mut HashSet<EdgeId>,
        h_squares: &HashSet<([EdgeId; 2], [EdgeId; 2])>,
    ) -> bool {
        if idx == g_edges.len() {
            let m = |e: EdgeId| assigned[e.index()].expect("assigned");
            return g
                .skeleton()
                .squares()
                .iter()
                .all(|s| h_squares.contains(&([m(s.left[0]), m(s.left[1])], [m(s.right[0]), m(s.right[1])])));
        }
        let e = g_edges[idx];
        for &f in &candidates[&e] {
            if taken.insert(f) {
                assigned[e.index()] = Some(f);
                if go(g, idx + 1, g_edges, candidates, assigned, taken, h_squares) {
                    return true;
                }
                taken.remove(&f);
                assigned[e.index()] = None;
            }
        }
        false
    }
    if go(g, 0, &g_edges, &candidates, &mut assigned, &mut taken, &h_squares) {
        Some(Isomorphism { vertices: vertices.to_vec(), edges: assigned.into_iter().map(|e| e.expect("assigned")).collect() })
    } else {
        None
    }
}
