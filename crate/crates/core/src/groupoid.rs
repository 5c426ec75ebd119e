//! Elements and cylinder sets of the path groupoid, isotropy, and
//! aperiodicity certificates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::alignment::{common_extensions, is_exhaustive};
use crate::boundary::{build_boundary_path, BlockPeriodicPath, TieBreak};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::lattice;
use crate::path::Path;
use crate::skeleton::{EdgeId, VertexId};

/// `(x, m, y)` together with `(p, q)` such that `p − q = m` and `σ^p x = σ^q y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupoidElement {
    pub x: BlockPeriodicPath,
    pub m: Vec<i64>,
    pub y: BlockPeriodicPath,
    pub witness: (Degree, Degree),
}

impl KGraph {
    /// Re-checks the element invariant.
    pub fn is_valid_element(&self, g: &GroupoidElement) -> bool {
        let (p, q) = &g.witness;
        p.diff(q) == g.m
            && p.le(&g.x.degree())
            && q.le(&g.y.degree())
            && match (self.shift(&g.x, p), self.shift(&g.y, q)) {
                (Ok(a), Ok(b)) => self.path_equals(&a, &b),
                _ => false,
            }
    }

    /// Equality of groupoid elements; witnesses are not part of the element.
    pub fn elements_equal(&self, a: &GroupoidElement, b: &GroupoidElement) -> bool {
        a.m == b.m && self.path_equals(&a.x, &b.x) && self.path_equals(&a.y, &b.y)
    }
}

/// `(λz, d(λ) − d(μ), μz)`.
pub fn make_element(g: &KGraph, lambda: &Path, mu: &Path, z: &BlockPeriodicPath) -> Result<GroupoidElement> {
    if lambda.source() != mu.source() {
        return Err(Error::RangeMismatch(g.vertex_name(lambda.source()).into(), g.vertex_name(mu.source()).into()));
    }
    Ok(GroupoidElement {
        x: g.concat(lambda, z)?,
        m: lambda.degree().diff(mu.degree()),
        y: g.concat(mu, z)?,
        witness: (lambda.degree().clone(), mu.degree().clone()),
    })
}

pub fn unit(g: &KGraph, x: &BlockPeriodicPath) -> GroupoidElement {
    let zero = Degree::zero(g.k());
    GroupoidElement { x: x.clone(), m: vec![0; g.k()], y: x.clone(), witness: (zero.clone(), zero) }
}

/// `(x, m, y)(y, n, z) = (x, m + n, z)`. With witnesses `(p, q)` and `(p', q')`,
/// raising both to `t = q ∨ p'` gives `σ^{p+t−q} x = σ^t y = σ^{q'+t−p'} z`.
pub fn compose_elements(g: &KGraph, a: &GroupoidElement, b: &GroupoidElement) -> Result<GroupoidElement> {
    if !g.path_equals(&a.y, &b.x) {
        return Err(Error::NotComposableElements);
    }
    let (p1, q1) = &a.witness;
    let (p2, q2) = &b.witness;
    let t = q1.join(p2);
    let p = p1.add(&t.checked_sub(q1).expect("t ≥ q"));
    let q = q2.add(&t.checked_sub(p2).expect("t ≥ p'"));
    let m = a.m.iter().zip(&b.m).map(|(x, y)| x + y).collect();
    let out = GroupoidElement { x: a.x.clone(), m, y: b.y.clone(), witness: (p, q) };
    debug_assert!(g.is_valid_element(&out));
    Ok(out)
}

/// `(x, m, y)⁻¹ = (y, −m, x)`.
pub fn invert(g: &GroupoidElement) -> GroupoidElement {
    GroupoidElement {
        x: g.y.clone(),
        m: g.m.iter().map(|v| -v).collect(),
        y: g.x.clone(),
        witness: (g.witness.1.clone(), g.witness.0.clone()),
    }
}

/// `Z(pairs, m) ∩ Z(excluded, m)^c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cylinder {
    pub pairs: Vec<(Path, Path)>,
    pub m: Vec<i64>,
    pub excluded: Vec<(Path, Path)>,
}

impl Cylinder {
    /// `U *_s V` for single-degree sets `U` and `V`.
    pub fn new(g: &KGraph, u: &[Path], v: &[Path], excluded: Vec<(Path, Path)>) -> Result<Cylinder> {
        let du = single_degree(g, u)?;
        let dv = single_degree(g, v)?;
        let pairs = u
            .iter()
            .flat_map(|l| v.iter().filter(|mu| mu.source() == l.source()).map(move |mu| (l.clone(), mu.clone())))
            .collect();
        Ok(Cylinder { pairs, m: du.diff(&dv), excluded })
    }

    /// `Z(U) ∩ Z(F)^c` inside the unit space.
    pub fn units(g: &KGraph, u: &[Path], f: &[Path]) -> Result<Cylinder> {
        let excluded = f.iter().map(|p| (p.clone(), p.clone())).collect();
        Cylinder::new(g, u, u, excluded)
    }
}

fn single_degree(g: &KGraph, set: &[Path]) -> Result<Degree> {
    let d = set.first().map_or(Degree::zero(g.k()), |p| p.degree().clone());
    for p in set {
        if *p.degree() != d {
            return Err(Error::MixedDegrees(d, p.degree().clone()));
        }
    }
    Ok(d)
}

/// Whether `g = (λz, d(λ) − d(μ), μz)` for the pair `(λ, μ)`.
fn factors_through(gr: &KGraph, g: &GroupoidElement, lambda: &Path, mu: &Path) -> bool {
    g.m == lambda.degree().diff(mu.degree())
        && gr.is_initial_segment(lambda, &g.x)
        && gr.is_initial_segment(mu, &g.y)
        && match (gr.shift(&g.x, lambda.degree()), gr.shift(&g.y, mu.degree())) {
            (Ok(a), Ok(b)) => gr.path_equals(&a, &b),
            _ => false,
        }
}

pub fn cylinder_membership(gr: &KGraph, c: &Cylinder, g: &GroupoidElement) -> bool {
    g.m == c.m
        && c.pairs.iter().any(|(l, mu)| factors_through(gr, g, l, mu))
        && !c.excluded.iter().any(|(l, mu)| factors_through(gr, g, l, mu))
}

/// Replaces `F` by `U ∨ F` (taken degree by degree), so that every excluded
/// path extends a path of `U`. Membership is unchanged.
pub fn refine_cylinder(g: &KGraph, u: &[Path], f: &[Path]) -> Result<Cylinder> {
    let mut by_degree: BTreeMap<Degree, Vec<Path>> = BTreeMap::new();
    for p in f {
        by_degree.entry(p.degree().clone()).or_default().push(p.clone());
    }
    let mut excluded = BTreeSet::new();
    for group in by_degree.values() {
        excluded.extend(common_extensions(g, u, group)?);
    }
    Cylinder::units(g, u, &excluded.into_iter().collect::<Vec<_>>())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    /// Shift differences generating the isotropy group found.
    pub generators: Vec<Vec<i64>>,
    /// `(p, q)` with `p − q` the matching generator.
    pub witnesses: Vec<(Degree, Degree)>,
    /// Hermite normal form of the group.
    pub basis: Vec<Vec<i64>>,
    pub search_bound: Degree,
}

/// Bound at which the isotropy search of a block-periodic path is complete:
/// `d(prefix) + 2·d(block)`, finite coordinates left at `d(x)`.
pub fn complete_isotropy_bound(x: &BlockPeriodicPath) -> Degree {
    match x.block() {
        None => x.degree(),
        Some(b) => x.prefix().degree().add(&b.degree().scale(2)),
    }
}

/// Searches `p, q ≤ min(search_bound, d(x))` with `σ^p x = σ^q x` and keeps a
/// difference `p − q` whenever it is not already generated by earlier ones.
pub fn isotropy(g: &KGraph, x: &BlockPeriodicPath, search_bound: &Degree) -> Result<IsotropyReport> {
    g.check_rank(search_bound)?;
    let cap = x.degree().meet(search_bound);
    let cap = cap.clamp_infinite(search_bound);
    let points = cap.below();
    let shifts: Vec<BlockPeriodicPath> = points.iter().map(|p| g.shift(x, p)).collect::<Result<_>>()?;
    let mut found: Vec<(Vec<i64>, Degree, Degree)> = Vec::new();
    for i in 0..points.len() {
        for j in 0..points.len() {
            if i != j && g.path_equals(&shifts[i], &shifts[j]) {
                found.push((points[i].diff(&points[j]), points[i].clone(), points[j].clone()));
            }
        }
    }
    found.sort_by_key(|(h, p, _)| (h.iter().map(|v| v.abs()).sum::<i64>(), std::cmp::Reverse(h.clone()), p.total()));
    let mut generators = Vec::new();
    let mut witnesses = Vec::new();
    let mut basis: Vec<Vec<i64>> = Vec::new();
    for (h, p, q) in found {
        if !lattice::contains(&basis, &h) {
            generators.push(h);
            witnesses.push((p, q));
            basis = lattice::hermite_normal_form(&generators);
        }
    }
    Ok(IsotropyReport { generators, witnesses, basis, search_bound: search_bound.clone() })
}

/// Finite paths have trivial isotropy; an infinite block-periodic path
/// satisfies `σ^{d(prefix)} x = σ^{d(prefix)+d(block)} x`.
pub fn is_aperiodic(x: &BlockPeriodicPath) -> bool {
    x.is_finite()
}

/// A verified aperiodic boundary path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AperiodicWitness {
    /// A boundary path ending at a vertex that receives no edges.
    Finite(BlockPeriodicPath),
    /// `lead · c1 c2 c1 c1 c2 c1 c1 c1 c2 ⋯` for two distinct first-return
    /// cycles at `s(lead)`.
    TwoCycles { lead: Path, c1: Path, c2: Path },
}

impl AperiodicWitness {
    pub fn range(&self) -> VertexId {
        match self {
            AperiodicWitness::Finite(x) => x.range(),
            AperiodicWitness::TwoCycles { lead, .. } => lead.range(),
        }
    }

    /// An initial segment covering at least `blocks` groups of the cycle pattern;
    /// the whole path for finite witnesses.
    pub fn prefix(&self, g: &KGraph, blocks: usize) -> Path {
        match self {
            AperiodicWitness::Finite(x) => x.prefix().clone(),
            AperiodicWitness::TwoCycles { lead, c1, c2 } => {
                let mut out = lead.clone();
                for n in 1..=blocks {
                    for _ in 0..n {
                        out = g.compose(&out, c1).expect("cycles close");
                    }
                    out = g.compose(&out, c2).expect("cycles close");
                }
                out
            }
        }
    }

    /// Pairwise distinctness of the first `horizon` shifts, compared on a
    /// window long enough that every pair differs inside it. The cycles form a
    /// prefix code at their base vertex, so the counted pattern `c1^n c2` never
    /// becomes periodic; this check confirms it numerically.
    pub fn check_shifts(&self, g: &KGraph, horizon: usize) -> bool {
        match self {
            AperiodicWitness::Finite(_) => true,
            AperiodicWitness::TwoCycles { .. } => {
                let word = self.prefix(g, horizon + 4);
                let w = word.word();
                let span = w.len().saturating_sub(horizon);
                (0..horizon).all(|i| (i + 1..horizon).all(|j| w[i..i + span] != w[j..j + span]))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConditionA {
    Holds(AperiodicWitness),
    /// Every boundary path at the vertex is eventually periodic; the string
    /// describes the cycle structure that forces it.
    Fails(String),
    Inconclusive(String),
}

impl ConditionA {
    pub fn label(&self) -> &'static str {
        match self {
            ConditionA::Holds(_) => "holds",
            ConditionA::Fails(_) => "fails",
            ConditionA::Inconclusive(_) => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexVerdict {
    pub vertex: VertexId,
    pub verdict: ConditionA,
}

/// Shortest paths from `v` to every vertex it reaches (`vΛw ≠ ∅`), one edge
/// at a time in input order.
fn reach(g: &KGraph, v: VertexId) -> BTreeMap<VertexId, Vec<EdgeId>> {
    let mut out = BTreeMap::new();
    out.insert(v, Vec::new());
    let mut queue = VecDeque::from([v]);
    while let Some(w) = queue.pop_front() {
        let route = out[&w].clone();
        for c in 1..=g.k() {
            for &e in g.range_edges(w, c) {
                let s = g.edge(e).source;
                if !out.contains_key(&s) {
                    let mut r = route.clone();
                    r.push(e);
                    out.insert(s, r);
                    queue.push_back(s);
                }
            }
        }
    }
    out
}

fn receives_nothing(g: &KGraph, w: VertexId) -> bool {
    (1..=g.k()).all(|c| g.range_edges(w, c).is_empty())
}

/// Per-vertex Condition (A): is there an aperiodic boundary path at `v`?
///
/// Holds is certified by a finite boundary path, or for 1-graphs by two
/// distinct first-return cycles at a reachable vertex. For 1-graphs the
/// answer is complete: otherwise every reachable strongly connected component
/// is a single cycle, so every infinite path is eventually periodic. For
/// `k ≥ 2`, Fails is reported only when every reachable vertex receives
/// exactly one edge of each color, which leaves a single boundary path at `v`
/// and it is block-periodic.
pub fn check_condition_a(g: &KGraph, budget: usize) -> Result<Vec<VertexVerdict>> {
    g.require_finite()?;
    let sccs = components(g);
    g.vertices()
        .map(|v| Ok(VertexVerdict { vertex: v, verdict: condition_a_at(g, v, &sccs, budget)? }))
        .collect()
}

/// Condition (A) at a single vertex.
pub fn check_condition_a_at(g: &KGraph, v: VertexId, budget: usize) -> Result<ConditionA> {
    g.require_finite()?;
    condition_a_at(g, v, &components(g), budget)
}

fn condition_a_at(g: &KGraph, v: VertexId, sccs: &[usize], budget: usize) -> Result<ConditionA> {
    let reached = reach(g, v);
    for (&w, route) in &reached {
        if receives_nothing(g, w) {
            let x = BlockPeriodicPath::finite(g.path_from_word(v, route)?);
            return Ok(ConditionA::Holds(AperiodicWitness::Finite(x)));
        }
    }
    if g.k() == 1 {
        for (&w, route) in &reached {
            let inner: Vec<EdgeId> =
                g.range_edges(w, 1).iter().copied().filter(|&e| sccs[g.edge(e).source.index()] == sccs[w.index()]).collect();
            if inner.len() >= 2 {
                let c1 = first_return(g, w, inner[0], sccs)?;
                let c2 = first_return(g, w, inner[1], sccs)?;
                let lead = g.path_from_word(v, route)?;
                let witness = AperiodicWitness::TwoCycles { lead, c1, c2 };
                debug_assert!(witness.check_shifts(g, 8));
                return Ok(ConditionA::Holds(witness));
            }
        }
        return Ok(ConditionA::Fails(
            "every reachable cycle is the unique first-return cycle at its vertices and no reachable vertex is a source"
                .into(),
        ));
    }
    if reached.len() <= budget
        && reached.keys().all(|&w| (1..=g.k()).all(|c| g.range_edges(w, c).len() == 1))
    {
        let x = build_boundary_path(g, v, TieBreak::InputOrder)?;
        return Ok(ConditionA::Fails(format!(
            "unique boundary path {} · ({})^∞",
            g.show(x.prefix()),
            x.block().map(|b| g.show(b)).unwrap_or_default()
        )));
    }
    Ok(ConditionA::Inconclusive("no finite boundary path and no periodicity certificate".into()))
}

/// `e` followed by a shortest path from `s(e)` back to `w` inside the component.
fn first_return(g: &KGraph, w: VertexId, e: EdgeId, sccs: &[usize]) -> Result<Path> {
    let start = g.edge(e).source;
    let mut prev: BTreeMap<VertexId, EdgeId> = BTreeMap::new();
    let mut queue = VecDeque::from([start]);
    let mut seen = BTreeSet::from([start]);
    while let Some(u) = queue.pop_front() {
        if u == w {
            break;
        }
        for &f in g.range_edges(u, 1) {
            let s = g.edge(f).source;
            if sccs[s.index()] == sccs[w.index()] && seen.insert(s) {
                prev.insert(s, f);
                queue.push_back(s);
            }
        }
    }
    let mut back = Vec::new();
    let mut cur = w;
    while cur != start {
        let f = prev[&cur];
        back.push(f);
        cur = g.edge(f).range;
    }
    back.reverse();
    let mut word = vec![e];
    word.extend(back);
    g.path_from_word(w, &word)
}

/// Strongly connected component index of every vertex.
fn components(g: &KGraph) -> Vec<usize> {
    let n = g.vertices().count();
    let succ: Vec<Vec<usize>> = g
        .vertices()
        .map(|v| (1..=g.k()).flat_map(|c| g.range_edges(v, c).iter().map(|&e| g.edge(e).source.index())).collect())
        .collect();
    let reach: Vec<BTreeSet<usize>> = (0..n)
        .map(|s| {
            let mut seen = BTreeSet::from([s]);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &t in &succ[u] {
                    if seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
            seen
        })
        .collect();
    (0..n).map(|v| (0..n).find(|&u| reach[v].contains(&u) && reach[u].contains(&v)).unwrap_or(v)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexProbe {
    pub vertex: String,
    /// Every probed cylinder rooted at the vertex contains an aperiodic
    /// boundary path.
    pub dense: bool,
    pub condition_a: &'static str,
    /// Condition (A) at every vertex reached by paths of the window degree;
    /// `None` when some verdict there is inconclusive.
    pub expected: Option<bool>,
    pub agrees: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub window: Degree,
    pub cylinders: usize,
    pub empty_cylinders: usize,
    pub witnessed: usize,
    pub complete: bool,
    pub vertices: Vec<VertexProbe>,
    /// Condition (A) holds everywhere, fails somewhere, or neither is known.
    pub condition_a_everywhere: Option<bool>,
    pub dense_everywhere: bool,
    pub consistent: Option<bool>,
}

/// Density probe for aperiodic boundary paths.
///
/// For each `λ` of degree `≤ window` and each `F` among `∅`, the singletons
/// `{λe}` and the sets of all but one one-edge extension `λe`, the set
/// `Z(λ) ∖ Z(F)` meets the boundary unless the excluded edges are exhaustive
/// at `s(λ)`. In the nonempty case the probe looks for `λ''` of degree
/// `≤ window` and a certified aperiodic path `y` at `s(λ'')` with `λλ''y`
/// avoiding `F`.
pub fn essential_freeness_probe(g: &KGraph, window: &Degree, budget: usize) -> Result<FreenessReport> {
    g.require_finite()?;
    g.check_rank(window)?;
    let verdicts = check_condition_a(g, budget)?;
    let certs: BTreeMap<VertexId, &ConditionA> = verdicts.iter().map(|v| (v.vertex, &v.verdict)).collect();
    let mut report = FreenessReport {
        window: window.clone(),
        cylinders: 0,
        empty_cylinders: 0,
        witnessed: 0,
        complete: true,
        vertices: Vec::new(),
        condition_a_everywhere: None,
        dense_everywhere: true,
        consistent: None,
    };
    for v in g.vertices() {
        let mut dense = true;
        let mut reached = BTreeSet::new();
        for lambda in g.paths_up_to(v, window) {
            reached.insert(lambda.source());
            let s = lambda.source();
            let steps: Vec<EdgeId> = (1..=g.k()).flat_map(|c| g.range_edges(s, c).iter().copied()).collect();
            let mut fsets: Vec<Vec<EdgeId>> = vec![Vec::new()];
            fsets.extend(steps.iter().map(|&e| vec![e]));
            if steps.len() > 2 {
                fsets.extend((0..steps.len()).map(|i| [&steps[..i], &steps[i + 1..]].concat()));
            }
            for f in fsets {
                if report.cylinders >= budget {
                    report.complete = false;
                    break;
                }
                report.cylinders += 1;
                let excluded: Vec<Path> = f.iter().map(|&e| g.edge_path(e)).collect();
                if !excluded.is_empty() && is_exhaustive(g, &excluded, s) {
                    report.empty_cylinders += 1;
                    continue;
                }
                if find_aperiodic(g, s, &excluded, window, &certs) {
                    report.witnessed += 1;
                } else {
                    dense = false;
                }
            }
        }
        let expected = reached.iter().try_fold(true, |acc, w| match certs[w] {
            ConditionA::Holds(_) => Some(acc),
            ConditionA::Fails(_) => Some(false),
            ConditionA::Inconclusive(_) => None,
        });
        report.dense_everywhere &= dense;
        report.vertices.push(VertexProbe {
            vertex: g.vertex_name(v).to_string(),
            dense,
            condition_a: certs[&v].label(),
            expected,
            agrees: expected.map(|e| e == dense),
        });
    }
    report.condition_a_everywhere = certs.values().try_fold(true, |acc, c| match c {
        ConditionA::Holds(_) => Some(acc),
        ConditionA::Fails(_) => Some(false),
        ConditionA::Inconclusive(_) => None,
    });
    report.consistent = report.condition_a_everywhere.map(|a| a == report.dense_everywhere);
    Ok(report)
}

fn find_aperiodic(
    g: &KGraph,
    s: VertexId,
    excluded: &[Path],
    window: &Degree,
    certs: &BTreeMap<VertexId, &ConditionA>,
) -> bool {
    g.paths_up_to(s, window).iter().any(|lead| {
        let ConditionA::Holds(y) = certs[&lead.source()] else { return false };
        // Excluded paths are single edges, so a short prefix of an infinite
        // witness decides them.
        let candidate = BlockPeriodicPath::finite(g.compose(lead, &y.prefix(g, 2)).expect("certificate starts at s(λ'')"));
        !excluded.iter().any(|e| g.is_initial_segment(e, &candidate))
    })
}

/// Elements `(λz, d(λ) − d(μ), μz)` for `λ, μ` of degree `≤ window` ending at
/// `r(z)`, for each boundary path `z` produced by the builder.
pub fn window_elements(g: &KGraph, window: &Degree) -> Result<Vec<GroupoidElement>> {
    g.require_finite()?;
    let mut out = Vec::new();
    for v in g.vertices() {
        let z = build_boundary_path(g, v, TieBreak::Lex)?;
        let into: Vec<Path> =
            g.vertices().flat_map(|w| g.paths_up_to(w, window)).filter(|p| p.source() == v).collect();
        for lambda in &into {
            for mu in &into {
                out.push(make_element(g, lambda, mu, &z)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{is_boundary, BoundaryVerdict};
    use crate::fixtures;

    fn deg(v: &[u32]) -> Degree {
        Degree::new(v.to_vec())
    }

    fn rose_setup() -> (KGraph, Path, Path, Path, BlockPeriodicPath) {
        let g = fixtures::rose(2);
        let a = g.path_from_names(&["a"]).unwrap();
        let b = g.path_from_names(&["b"]).unwrap();
        let v = g.vertex_path(a.range());
        let binf = g.periodic(v.clone(), b.clone()).unwrap();
        (g, a, b, v, binf)
    }

    #[test]
    fn element_construction() {
        let (g, a, b, v, binf) = rose_setup();
        let u = make_element(&g, &v, &v, &binf).unwrap();
        assert!(g.elements_equal(&u, &unit(&g, &binf)));
        let e = make_element(&g, &a, &b, &binf).unwrap();
        assert_eq!(e.m, vec![0]);
        assert!(g.path_equals(&e.y, &binf));
        assert!(g.is_valid_element(&e));
        assert!(matches!(
            make_element(&fixtures::edge(), &fixtures::edge().path_from_names(&["e"]).unwrap(), &v, &binf),
            Err(_)
        ));
    }

    #[test]
    fn composition_and_inverse() {
        let (g, a, _, v, binf) = rose_setup();
        let e = make_element(&g, &a, &v, &binf).unwrap();
        assert_eq!(e.m, vec![1]);
        let inv = invert(&e);
        assert_eq!(inv.m, vec![-1]);
        let c = compose_elements(&g, &e, &inv).unwrap();
        assert!(g.is_valid_element(&c));
        assert!(g.elements_equal(&c, &unit(&g, &e.x)));
        let c = compose_elements(&g, &e, &unit(&g, &e.y)).unwrap();
        assert!(g.elements_equal(&c, &e));
        assert_eq!(invert(&invert(&e)), e);
        assert!(matches!(compose_elements(&g, &e, &e), Err(Error::NotComposableElements)));
    }

    #[test]
    fn cylinders() {
        let (g, a, b, v, binf) = rose_setup();
        let e = make_element(&g, &a, &v, &binf).unwrap();
        let za = Cylinder::new(&g, &[a.clone()], &[v.clone()], vec![]).unwrap();
        let zb = Cylinder::new(&g, &[b.clone()], &[v.clone()], vec![]).unwrap();
        assert!(cylinder_membership(&g, &za, &e));
        assert!(!cylinder_membership(&g, &zb, &e));
        let u = unit(&g, &binf);
        assert!(cylinder_membership(&g, &Cylinder::units(&g, &[v.clone()], &[]).unwrap(), &u));
        assert!(!cylinder_membership(&g, &Cylinder::units(&g, &[v], &[b]).unwrap(), &u));
    }

    #[test]
    fn refinement_examples() {
        let g = fixtures::n2();
        let f = g.path_from_names(&["f"]).unwrap();
        let gg = g.path_from_names(&["g"]).unwrap();
        let c = refine_cylinder(&g, &[f.clone()], &[gg]).unwrap();
        let fg = g.path_from_names(&["f", "g"]).unwrap();
        assert_eq!(c.excluded, vec![(fg.clone(), fg)]);
        let c = refine_cylinder(&g, &[f.clone()], &[f.clone()]).unwrap();
        assert_eq!(c.excluded, vec![(f.clone(), f)]);
        let r = fixtures::rose(2);
        let a = r.path_from_names(&["a"]).unwrap();
        let b = r.path_from_names(&["b"]).unwrap();
        assert!(refine_cylinder(&r, &[a], &[b]).unwrap().excluded.is_empty());
    }

    #[test]
    fn isotropy_examples() {
        let (g, a, _, _, binf) = rose_setup();
        let x = g.concat(&a, &binf).unwrap();
        let rep = isotropy(&g, &x, &complete_isotropy_bound(&x)).unwrap();
        assert_eq!(rep.generators, vec![vec![1]]);
        assert!(!is_aperiodic(&x));

        let n = fixtures::n2();
        let x = build_boundary_path(&n, n.vertex_id("v").unwrap(), TieBreak::Lex).unwrap();
        let rep = isotropy(&n, &x, &complete_isotropy_bound(&x)).unwrap();
        assert_eq!(rep.basis, vec![vec![1, 0], vec![0, 1]]);

        let c = fixtures::cycle(3);
        let x = BlockPeriodicPath::finite(c.path_from_names(&["e0", "e1"]).unwrap());
        assert!(isotropy(&c, &x, &deg(&[5])).unwrap().generators.is_empty());
        assert!(is_aperiodic(&x));
        let y = build_boundary_path(&c, c.vertex_id("v0").unwrap(), TieBreak::Lex).unwrap();
        assert_eq!(isotropy(&c, &y, &complete_isotropy_bound(&y)).unwrap().generators, vec![vec![3]]);
    }

    #[test]
    fn condition_a_examples() {
        let c = fixtures::cycle(3);
        assert!(check_condition_a(&c, 100).unwrap().iter().all(|v| matches!(v.verdict, ConditionA::Fails(_))));
        let r = fixtures::rose(2);
        let verdicts = check_condition_a(&r, 100).unwrap();
        match &verdicts[0].verdict {
            ConditionA::Holds(w @ AperiodicWitness::TwoCycles { .. }) => assert!(w.check_shifts(&r, 12)),
            other => panic!("{other:?}"),
        }
        let e = fixtures::edge();
        for v in check_condition_a(&e, 100).unwrap() {
            match v.verdict {
                ConditionA::Holds(AperiodicWitness::Finite(x)) => {
                    assert_eq!(is_boundary(&e, &x, &deg(&[2])).unwrap(), BoundaryVerdict::Boundary)
                }
                other => panic!("{other:?}"),
            }
        }
        let n = fixtures::n2();
        assert!(matches!(check_condition_a(&n, 100).unwrap()[0].verdict, ConditionA::Fails(_)));
    }

    #[test]
    fn freeness_probe_examples() {
        let r = essential_freeness_probe(&fixtures::rose(2), &deg(&[3]), 10_000).unwrap();
        assert!(r.dense_everywhere && r.complete);
        assert_eq!(r.consistent, Some(true));
        let r = essential_freeness_probe(&fixtures::cycle(3), &deg(&[2]), 10_000).unwrap();
        assert!(!r.dense_everywhere);
        assert_eq!(r.consistent, Some(true));
        let r = essential_freeness_probe(&fixtures::edge(), &deg(&[2]), 10_000).unwrap();
        assert!(r.dense_everywhere);
        assert_eq!(r.consistent, Some(true));
        assert!(r.vertices.iter().all(|v| v.agrees == Some(true)));
    }
}
