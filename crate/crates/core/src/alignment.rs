//! Minimal common extensions, minimal extenders and exhaustive sets.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::KGraph;
use crate::path::Path;
use crate::skeleton::VertexId;

/// `(α, β)` with `λα = μβ` of degree `d(λ) ∨ d(μ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MinPair {
    pub alpha: Path,
    pub beta: Path,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlignmentStatus<T> {
    /// The witness set is complete.
    Finite(Vec<T>),
    /// The search stopped early; the witnesses found so far.
    BudgetExceeded(Vec<T>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentVerdict<T> {
    pub status: AlignmentStatus<T>,
    pub budget_used: usize,
    /// For lazy graphs, the window the witnesses live in.
    pub window: Option<usize>,
}

impl<T> AlignmentVerdict<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self.status, AlignmentStatus::Finite(_))
    }

    pub fn witnesses(&self) -> &[T] {
        match &self.status {
            AlignmentStatus::Finite(w) | AlignmentStatus::BudgetExceeded(w) => w,
        }
    }
}

/// Lazy graphs are widened so that a budget of `budget` candidates can be
/// exhausted inside the window.
fn working_graph(g: &KGraph, budget: usize) -> KGraph {
    if g.is_lazy() {
        g.widen(budget.saturating_add(1).min(1 << 16))
    } else {
        g.clone()
    }
}

/// `Λ^min(λ, μ)`. Budgets count the candidate extensions `α` examined.
pub fn min_common_extensions(g: &KGraph, lambda: &Path, mu: &Path, budget: usize) -> Result<AlignmentVerdict<MinPair>> {
    if lambda.range() != mu.range() {
        return Err(Error::RangeMismatch(g.vertex_name(lambda.range()).into(), g.vertex_name(mu.range()).into()));
    }
    let g = working_graph(g, budget);
    let target = lambda.degree().join(mu.degree());
    let step = target.checked_sub(lambda.degree()).expect("join dominates");
    let candidates = g.paths_of_degree_budgeted(lambda.source(), &step, budget);
    let mut found = Vec::new();
    for alpha in &candidates.paths {
        let whole = g.compose(lambda, alpha)?;
        if g.initial(&whole, mu.degree())? == *mu {
            let beta = g.segment(&whole, mu.degree(), &target)?;
            found.push(MinPair { alpha: alpha.clone(), beta });
        }
    }
    let status = if candidates.complete { AlignmentStatus::Finite(found) } else { AlignmentStatus::BudgetExceeded(found) };
    Ok(AlignmentVerdict { status, budget_used: candidates.paths.len(), window: g.window() })
}

/// Unbounded `Λ^min(λ, μ)` on a finite presentation.
pub fn min_pairs(g: &KGraph, lambda: &Path, mu: &Path) -> Vec<MinPair> {
    if lambda.range() != mu.range() {
        return Vec::new();
    }
    min_common_extensions(g, lambda, mu, usize::MAX).map(|v| v.witnesses().to_vec()).unwrap_or_default()
}

/// `Λ^min(λ, μ) ≠ ∅`.
pub fn has_common_extension(g: &KGraph, lambda: &Path, mu: &Path) -> bool {
    if lambda.range() != mu.range() {
        return false;
    }
    let target = lambda.degree().join(mu.degree());
    let step = target.checked_sub(lambda.degree()).expect("join dominates");
    g.paths_of_degree(lambda.source(), &step).iter().any(|alpha| {
        let whole = g.compose(lambda, alpha).expect("α starts at s(λ)");
        g.initial(&whole, mu.degree()).is_ok_and(|p| p == *mu)
    })
}

fn single_degree(g: &KGraph, set: &[Path]) -> Result<Option<Degree>> {
    let mut it = set.iter();
    let Some(first) = it.next() else { return Ok(None) };
    g.check_rank(first.degree())?;
    for p in it {
        if p.degree() != first.degree() {
            return Err(Error::MixedDegrees(first.degree().clone(), p.degree().clone()));
        }
    }
    Ok(Some(first.degree().clone()))
}

/// `U ∨ V`: the minimal common extensions of paths in `U ⊆ Λ^p` and `V ⊆ Λ^q`.
pub fn common_extensions(g: &KGraph, u: &[Path], v: &[Path]) -> Result<Vec<Path>> {
    g.require_finite()?;
    single_degree(g, u)?;
    single_degree(g, v)?;
    let mut out = BTreeSet::new();
    for lambda in u {
        for mu in v {
            for pair in min_pairs(g, lambda, mu) {
                out.insert(g.compose(lambda, &pair.alpha)?);
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// `Ext(E; F)`: the `α` of every `(α, β) ∈ Λ^min(λ, μ)`, `λ ∈ E`, `μ ∈ F`.
pub fn ext(g: &KGraph, e: &[Path], f: &[Path], budget: usize) -> Result<AlignmentVerdict<Path>> {
    let mut out = BTreeSet::new();
    let mut used = 0usize;
    let mut complete = true;
    let mut window = None;
    for lambda in e {
        for mu in f {
            if lambda.range() != mu.range() {
                continue;
            }
            let verdict = min_common_extensions(g, lambda, mu, budget.saturating_sub(used).max(1))?;
            used += verdict.budget_used;
            window = window.max(verdict.window);
            complete &= verdict.is_finite();
            out.extend(verdict.witnesses().iter().map(|p| p.alpha.clone()));
            if used >= budget && !complete {
                break;
            }
        }
    }
    let found = out.into_iter().collect();
    let status = if complete { AlignmentStatus::Finite(found) } else { AlignmentStatus::BudgetExceeded(found) };
    Ok(AlignmentVerdict { status, budget_used: used, window })
}

/// Outcome of an exhaustivity test; `witness` is a path at the vertex with no
/// common extension with any member of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exhaustiveness {
    pub exhaustive: bool,
    pub witness: Option<Path>,
}

/// Whether `E ∩ vΛ` is exhaustive at `v`. The empty set never is.
pub fn is_exhaustive(g: &KGraph, e: &[Path], v: VertexId) -> bool {
    exhaustiveness(g, e, v).exhaustive
}

/// Decides exhaustivity. Locally convex graphs use the degree-bound
/// reduction; otherwise a search over path tails decides it exactly.
pub fn exhaustiveness(g: &KGraph, e: &[Path], v: VertexId) -> Exhaustiveness {
    if g.is_locally_convex() {
        exhaustive_by_reduction(g, e, v)
    } else {
        exhaustive_general(g, e, v)
    }
}

fn at_vertex(e: &[Path], v: VertexId) -> Vec<&Path> {
    e.iter().filter(|p| p.range() == v).collect()
}

fn join_of(g: &KGraph, e: &[&Path]) -> Degree {
    e.iter().fold(Degree::zero(g.k()), |acc, p| acc.join(p.degree()))
}

/// With `M = ⋁ d(μ)`, tests only the paths `λ ∈ vΛ` with `d(λ) ≤ M` that
/// cannot be extended in any color `i` with `d(λ)_i < M_i`. Sound and complete
/// for locally convex graphs.
pub fn exhaustive_by_reduction(g: &KGraph, e: &[Path], v: VertexId) -> Exhaustiveness {
    let e = at_vertex(e, v);
    if e.is_empty() {
        return Exhaustiveness { exhaustive: false, witness: Some(g.vertex_path(v)) };
    }
    let m = join_of(g, &e);
    for lambda in g.paths_up_to(v, &m) {
        let d = lambda.degree();
        let maximal = (1..=g.k()).all(|i| d.get(i) == m.get(i) || g.range_edges(lambda.source(), i).is_empty());
        if maximal && !e.iter().any(|mu| has_common_extension(g, &lambda, mu)) {
            return Exhaustiveness { exhaustive: false, witness: Some(lambda) };
        }
    }
    Exhaustiveness { exhaustive: true, witness: None }
}

/// Exact test for arbitrary finite presentations.
///
/// Every `λ ∈ vΛ` splits as `λ = ρτ` with `ρ = λ(0, d(λ) ∧ M)` and `τ` of degree
/// supported on the colors `J` where `d(ρ)` reaches `M`. Whether `λ` meets some
/// `μ ∈ E` depends on `ρ` and on which extensions `α` of `ρ` (in the other
/// colors, of degree `≤ M − d(ρ)`) can be commuted past `τ`. That relation
/// evolves through a finite state space as `τ` grows edge by edge, so a
/// breadth-first search over `(s(τ), relation)` visits every case.
pub fn exhaustive_general(g: &KGraph, e: &[Path], v: VertexId) -> Exhaustiveness {
    let e = at_vertex(e, v);
    if e.is_empty() {
        return Exhaustiveness { exhaustive: false, witness: Some(g.vertex_path(v)) };
    }
    let m = join_of(g, &e);
    for rho in g.paths_up_to(v, &m) {
        if let Some(lambda) = failing_tail(g, &e, &rho, &m) {
            return Exhaustiveness { exhaustive: false, witness: Some(lambda) };
        }
    }
    Exhaustiveness { exhaustive: true, witness: None }
}

fn failing_tail(g: &KGraph, e: &[&Path], rho: &Path, m: &Degree) -> Option<Path> {
    let p = rho.degree();
    let cap = m.saturating_sub(p);
    let tail_colors: Vec<usize> = (1..=g.k()).filter(|&i| p.get(i) == m.get(i)).collect();
    let start = g.paths_up_to(rho.source(), &cap);
    let hits: Vec<bool> = start
        .iter()
        .map(|alpha| {
            let whole = g.compose(rho, alpha).expect("α starts at s(ρ)");
            e.iter().any(|mu| {
                mu.degree().saturating_sub(p) == *alpha.degree() && g.initial(&whole, mu.degree()).is_ok_and(|x| x == **mu)
            })
        })
        .collect();

    type Relation = BTreeSet<(usize, Path)>;
    let initial: Relation = start.iter().cloned().enumerate().collect();
    let mut seen: HashSet<(VertexId, Relation)> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert((rho.source(), initial.clone()));
    queue.push_back((rho.source(), initial, rho.clone()));
    let mut extenders: BTreeMap<(crate::skeleton::EdgeId, Path), Vec<Path>> = BTreeMap::new();

    while let Some((w, rel, lambda)) = queue.pop_front() {
        if !rel.iter().any(|(a, _)| hits[*a]) {
            return Some(lambda);
        }
        for &c in &tail_colors {
            for &edge in g.range_edges(w, c) {
                let edge_path = g.edge_path(edge);
                let mut next: Relation = BTreeSet::new();
                for (a, b) in &rel {
                    let gammas = extenders.entry((edge, b.clone())).or_insert_with(|| {
                        min_pairs(g, &edge_path, b).into_iter().map(|pair| pair.alpha).collect()
                    });
                    next.extend(gammas.iter().map(|gamma| (*a, gamma.clone())));
                }
                let target = g.edge(edge).source;
                if seen.insert((target, next.clone())) {
                    let longer = g.compose(&lambda, &edge_path).expect("edge starts at s(λ)");
                    queue.push_back((target, next, longer));
                }
            }
        }
    }
    None
}

/// `E ∈ v𝒞ℰ(Λ)` for a discrete graph: `v ∈ r(E)` and `E` is exhaustive at
/// every vertex of `r(E)`.
pub fn in_ce(g: &KGraph, e: &[Path], v: VertexId) -> bool {
    let ranges: BTreeSet<VertexId> = e.iter().map(Path::range).collect();
    ranges.contains(&v) && ranges.iter().all(|&w| is_exhaustive(g, e, w))
}

/// A probed pair and its number of minimal common extensions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlignedPair {
    pub lambda: String,
    pub mu: String,
    pub count: usize,
}

/// Probes `Λ^min(λ, μ)` for every pair with a common range and degrees
/// `≤ degree_cap`. On success the witnesses are the pairs reaching the
/// largest count; on exhaustion, the offending pair.
pub fn is_finitely_aligned(g: &KGraph, degree_cap: &Degree, budget: usize) -> Result<AlignmentVerdict<AlignedPair>> {
    g.check_rank(degree_cap)?;
    let work = working_graph(g, budget);
    let mut used = 0usize;
    let mut best: Vec<AlignedPair> = Vec::new();
    let mut max = 0usize;
    for v in work.vertices() {
        let paths = if work.is_lazy() {
            degree_cap
                .below()
                .iter()
                .flat_map(|m| work.paths_of_degree_budgeted(v, m, budget).paths)
                .collect::<Vec<_>>()
        } else {
            work.paths_up_to(v, degree_cap)
        };
        for (i, lambda) in paths.iter().enumerate() {
            for mu in &paths[i..] {
                let verdict = min_common_extensions(&work, lambda, mu, budget)?;
                used += verdict.budget_used;
                let pair = AlignedPair { lambda: work.show(lambda), mu: work.show(mu), count: verdict.witnesses().len() };
                if !verdict.is_finite() {
                    return Ok(AlignmentVerdict {
                        status: AlignmentStatus::BudgetExceeded(vec![pair]),
                        budget_used: used,
                        window: work.window(),
                    });
                }
                if pair.count > max {
                    max = pair.count;
                    best.clear();
                }
                if pair.count == max && max > 0 {
                    best.push(pair);
                }
            }
        }
    }
    Ok(AlignmentVerdict { status: AlignmentStatus::Finite(best), budget_used: used, window: work.window() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::skeleton::{EdgeDoc, Skeleton, SkeletonDoc, SquareDoc};

    fn deg(v: &[u32]) -> Degree {
        Degree::new(v.to_vec())
    }

    #[test]
    fn self_alignment_is_identity_pair() {
        let g = fixtures::sq2();
        let p = g.path_from_names(&["a1", "b2"]).unwrap();
        let pairs = min_pairs(&g, &p, &p);
        let s = g.vertex_path(p.source());
        assert_eq!(pairs, vec![MinPair { alpha: s.clone(), beta: s }]);
    }

    #[test]
    fn distinct_loops_do_not_align() {
        let g = fixtures::rose(2);
        let a = g.path_from_names(&["a"]).unwrap();
        let b = g.path_from_names(&["b"]).unwrap();
        assert!(min_pairs(&g, &a, &b).is_empty());
        assert!(common_extensions(&g, &[a.clone()], &[b.clone()]).unwrap().is_empty());
        assert!(ext(&g, &[a], &[b], 100).unwrap().witnesses().is_empty());
    }

    #[test]
    fn omega_square_alignment() {
        let g = fixtures::omega_graph(2, &deg(&[2, 2]));
        let o = |p: &[u32], q: &[u32]| fixtures::omega_morphism(&g, &deg(p), &deg(q)).unwrap();
        let pairs = min_pairs(&g, &o(&[0, 0], &[1, 0]), &o(&[0, 0], &[0, 1]));
        assert_eq!(pairs, vec![MinPair { alpha: o(&[1, 0], &[1, 1]), beta: o(&[0, 1], &[1, 1]) }]);

        let small = fixtures::omega_graph(2, &deg(&[1, 1]));
        let o = |p: &[u32], q: &[u32]| fixtures::omega_morphism(&small, &deg(p), &deg(q)).unwrap();
        let ex = ext(&small, &[o(&[0, 0], &[1, 0])], &[o(&[0, 0], &[0, 1])], 100).unwrap();
        assert_eq!(ex.witnesses(), &[o(&[1, 0], &[1, 1])]);
    }

    #[test]
    fn vee_examples() {
        let g = fixtures::n2();
        let f = g.path_from_names(&["f"]).unwrap();
        let gg = g.path_from_names(&["g"]).unwrap();
        let vee = common_extensions(&g, &[f.clone()], &[gg.clone()]).unwrap();
        assert_eq!(vee, vec![g.path_from_names(&["f", "g"]).unwrap()]);
        assert_eq!(common_extensions(&g, &[f.clone()], &[f.clone()]).unwrap(), vec![f.clone()]);
        let fg = g.path_from_names(&["f", "g"]).unwrap();
        assert!(matches!(common_extensions(&g, &[f, fg], &[gg]), Err(Error::MixedDegrees(..))));
    }

    #[test]
    fn ext_from_vertex_returns_targets() {
        let g = fixtures::sq2();
        let v = g.vertex_path(g.vertex_id("v").unwrap());
        let f: Vec<Path> = ["a1", "b2"].iter().map(|n| g.path_from_names(&[n]).unwrap()).collect();
        let out = ext(&g, &[v], &f, 100).unwrap();
        let mut expected = f.clone();
        expected.sort();
        assert_eq!(out.witnesses(), expected.as_slice());
    }

    #[test]
    fn exhaustive_examples() {
        let g = fixtures::rose(2);
        let v = g.vertex_id("v").unwrap();
        let a = g.path_from_names(&["a"]).unwrap();
        let b = g.path_from_names(&["b"]).unwrap();
        assert!(is_exhaustive(&g, &[a.clone(), b.clone()], v));
        let ex = exhaustiveness(&g, &[a.clone()], v);
        assert!(!ex.exhaustive);
        assert_eq!(ex.witness, Some(b.clone()));
        assert!(in_ce(&g, &[a.clone(), b], v));
        assert!(!in_ce(&g, &[a], v));
        assert!(!in_ce(&g, &[], v));
        assert!(!is_exhaustive(&g, &[], v));

        let c = fixtures::cycle(3);
        let v0 = c.vertex_id("v0").unwrap();
        assert!(is_exhaustive(&c, &[c.path_from_names(&["e0"]).unwrap()], v0));
    }

    /// A 2-graph that is not locally convex: at `x`, the color-1 edge `a`
    /// leads to `y`, which receives no color-2 edge, while `x` receives the
    /// color-2 edge `e`.
    fn non_convex() -> KGraph {
        let doc = SkeletonDoc {
            k: 2,
            vertices: ["v", "x", "y", "z", "w"].iter().map(|s| s.to_string()).collect(),
            edges: vec![
                EdgeDoc::new("t", 1, "v", "x"),
                EdgeDoc::new("a", 1, "x", "y"),
                EdgeDoc::new("e", 2, "x", "z"),
                EdgeDoc::new("g", 2, "v", "w"),
                EdgeDoc::new("h", 1, "w", "z"),
            ],
            squares: vec![SquareDoc::new(["t", "e"], ["g", "h"])],
        };
        crate::validate_kgraph(Skeleton::from_doc(&doc).unwrap()).unwrap()
    }

    #[test]
    fn reduction_is_unsound_without_local_convexity() {
        let g = non_convex();
        assert!(!g.is_locally_convex());
        let v = g.vertex_id("v").unwrap();
        let te = g.path_from_names(&["t", "e"]).unwrap();
        assert!(exhaustive_by_reduction(&g, &[te.clone()], v).exhaustive);
        let exact = exhaustiveness(&g, &[te], v);
        assert!(!exact.exhaustive);
        assert_eq!(g.show(&exact.witness.unwrap()), "[t,a]");
    }

    #[test]
    fn general_procedure_agrees_on_convex_fixtures() {
        for g in [fixtures::sq2(), fixtures::omega_graph(2, &deg(&[2, 2])), fixtures::kgds_partial(), fixtures::rose(2)] {
            assert!(g.is_locally_convex());
            for v in g.vertices() {
                let paths = g.paths_up_to(v, &Degree::splat(g.k(), 1));
                for mask in 0u32..(1 << paths.len().min(8)) {
                    let e: Vec<Path> =
                        paths.iter().take(8).enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| p.clone()).collect();
                    assert_eq!(
                        exhaustive_by_reduction(&g, &e, v).exhaustive,
                        exhaustive_general(&g, &e, v).exhaustive,
                        "{:?}",
                        e.iter().map(|p| g.show(p)).collect::<Vec<_>>()
                    );
                }
            }
        }
    }

    #[test]
    fn finite_alignment_probe() {
        let g = fixtures::omega_graph(2, &deg(&[2, 2]));
        let verdict = is_finitely_aligned(&g, &deg(&[2, 2]), 1000).unwrap();
        assert!(verdict.is_finite());
        assert_eq!(verdict.witnesses()[0].count, 1);
    }

    #[test]
    fn lambda_one_exceeds_any_budget() {
        let g = fixtures::lambda1(2);
        let lambda = g.path_from_names(&["lambda"]).unwrap();
        let mu = g.path_from_names(&["mu"]).unwrap();
        let verdict = min_common_extensions(&g, &lambda, &mu, 25).unwrap();
        assert!(!verdict.is_finite());
        assert_eq!(verdict.witnesses().len(), 25);
        let probe = is_finitely_aligned(&g, &deg(&[1, 1]), 25).unwrap();
        assert!(!probe.is_finite());
    }

    #[test]
    fn range_mismatch_is_an_error() {
        let g = fixtures::edge();
        let u = g.vertex_path(g.vertex_id("u").unwrap());
        let w = g.vertex_path(g.vertex_id("w").unwrap());
        assert!(matches!(min_common_extensions(&g, &u, &w, 10), Err(Error::RangeMismatch(..))));
    }
}
