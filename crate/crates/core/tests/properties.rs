//! Property and oracle checks across the finite fixtures.

use std::collections::{BTreeSet, HashSet, VecDeque};

use kgraph::alignment::{
    common_extensions, exhaustive_by_reduction, exhaustive_general, ext, has_common_extension, in_ce, is_exhaustive,
    min_pairs, MinPair,
};
use kgraph::boundary::{build_boundary_path, is_boundary, BlockPeriodicPath, BoundaryVerdict, TieBreak};
use kgraph::fixtures;
use kgraph::groupoid::{
    check_condition_a, complete_isotropy_bound, compose_elements, invert, is_aperiodic, isotropy, unit, window_elements,
    AperiodicWitness, ConditionA, GroupoidElement,
};
use kgraph::skew::{label_path, skew_product, GroupSpec, Labeling, SkewProduct};
use kgraph::{Degree, EdgeId, KGraph, Path};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn deg(v: &[u32]) -> Degree {
    Degree::new(v.to_vec())
}

fn fixture(i: usize) -> KGraph {
    match i % 10 {
        0 => fixtures::n2(),
        1 => fixtures::sq2(),
        2 => fixtures::cycle(3),
        3 => fixtures::rose(2),
        4 => fixtures::edge(),
        5 => fixtures::single_loops(3),
        6 => fixtures::omega_graph(2, &deg(&[2, 2])),
        7 => fixtures::omega_graph(3, &deg(&[1, 1, 1])),
        8 => fixtures::kgds_swap(),
        _ => fixtures::kgds_partial(),
    }
}

const FIXTURES: usize = 10;

fn all_fixtures() -> Vec<KGraph> {
    (0..FIXTURES).map(fixture).collect()
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> Option<&'a T> {
    items.choose(rng)
}

fn ones(g: &KGraph) -> Degree {
    Degree::splat(g.k(), 1)
}

fn twos(g: &KGraph) -> Degree {
    Degree::splat(g.k(), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn composition_is_associative_and_additive(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let small = g.all_paths_up_to(&ones(&g));
        let a = pick(&mut rng, &small).unwrap().clone();
        let after = |p: &Path| small.iter().filter(|q| q.range() == p.source()).cloned().collect::<Vec<_>>();
        let Some(b) = pick(&mut rng, &after(&a)).cloned() else { return Ok(()) };
        let Some(c) = pick(&mut rng, &after(&b)).cloned() else { return Ok(()) };
        let left = g.compose(&g.compose(&a, &b).unwrap(), &c).unwrap();
        let right = g.compose(&a, &g.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.degree(), &a.degree().add(b.degree()).add(c.degree()));
    }

    #[test]
    fn segments_recompose(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let paths = g.all_paths_up_to(&twos(&g));
        let p = pick(&mut rng, &paths).unwrap();
        let points = p.degree().below();
        let a = pick(&mut rng, &points).unwrap().clone();
        let above: Vec<Degree> = points.iter().filter(|b| a.le(b)).cloned().collect();
        let b = pick(&mut rng, &above).unwrap().clone();
        let zero = Degree::zero(g.k());
        let parts = [
            g.segment(p, &zero, &a).unwrap(),
            g.segment(p, &a, &b).unwrap(),
            g.segment(p, &b, p.degree()).unwrap(),
        ];
        prop_assert_eq!(&g.compose_all(parts.iter()).unwrap(), p);
    }

    /// Every word reachable by square rewrites normalizes to the same path,
    /// and exactly one of them is color-sorted.
    #[test]
    fn normal_form_is_canonical(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = *pick(&mut rng, &g.vertices().collect::<Vec<_>>()).unwrap();
        let mut word = Vec::new();
        let mut cur = v;
        for _ in 0..rng.gen_range(0..=4) {
            let options: Vec<EdgeId> = (1..=g.k()).flat_map(|c| g.range_edges(cur, c).to_vec()).collect();
            let Some(&e) = pick(&mut rng, &options) else { break };
            word.push(e);
            cur = g.edge(e).source;
        }
        let target = g.path_from_word(v, &word).unwrap();
        let mut seen: HashSet<Vec<EdgeId>> = HashSet::from([word.clone()]);
        let mut queue = VecDeque::from([word]);
        while let Some(w) = queue.pop_front() {
            prop_assert_eq!(&g.path_from_word(v, &w).unwrap(), &target);
            for i in 0..w.len().saturating_sub(1) {
                if g.color(w[i]) != g.color(w[i + 1]) {
                    let (x, y) = g.swap(w[i], w[i + 1]);
                    let mut next = w.clone();
                    next[i] = x;
                    next[i + 1] = y;
                    if seen.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        let sorted: Vec<&Vec<EdgeId>> =
            seen.iter().filter(|w| w.windows(2).all(|p| g.color(p[0]) <= g.color(p[1]))).collect();
        prop_assert_eq!(sorted.len(), 1);
        prop_assert_eq!(sorted[0].as_slice(), target.word());
    }

    #[test]
    fn alignment_is_symmetric(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = *pick(&mut rng, &g.vertices().collect::<Vec<_>>()).unwrap();
        let paths = g.paths_up_to(v, &twos(&g));
        let l = pick(&mut rng, &paths).unwrap();
        let m = pick(&mut rng, &paths).unwrap();
        let forward: BTreeSet<MinPair> = min_pairs(&g, l, m).into_iter().collect();
        let backward: BTreeSet<MinPair> =
            min_pairs(&g, m, l).into_iter().map(|p| MinPair { alpha: p.beta, beta: p.alpha }).collect();
        prop_assert_eq!(&forward, &backward);
        let vee: BTreeSet<Path> = common_extensions(&g, std::slice::from_ref(l), std::slice::from_ref(m)).unwrap().into_iter().collect();
        let via: BTreeSet<Path> = forward.iter().map(|p| g.compose(l, &p.alpha).unwrap()).collect();
        prop_assert_eq!(vee, via);
    }

    #[test]
    fn shifts_compose(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_path(&g, &mut rng);
        let d = x.degree().clamp_infinite(&twos(&g));
        let points = d.below();
        let m = pick(&mut rng, &points).unwrap().clone();
        let rest: Vec<Degree> = points.iter().filter_map(|p| p.checked_sub(&m)).collect();
        let n = pick(&mut rng, &rest).unwrap().clone();
        let twice = g.shift(&g.shift(&x, &m).unwrap(), &n).unwrap();
        prop_assert!(g.path_equals(&twice, &g.shift(&x, &m.add(&n)).unwrap()));
        let head = g.truncate(&x, &m).unwrap();
        prop_assert!(g.path_equals(&g.concat(&head, &g.shift(&x, &m).unwrap()).unwrap(), &x));
    }

    /// `path_equals` against a direct comparison of initial segments up to
    /// degree `(6, …, 6)`.
    #[test]
    fn path_equality_matches_segments(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_path(&g, &mut rng);
        let y = if rng.gen_bool(0.5) {
            let m = pick(&mut rng, &x.degree().clamp_infinite(&twos(&g)).below()).unwrap().clone();
            g.concat(&g.truncate(&x, &m).unwrap(), &g.shift(&x, &m).unwrap()).unwrap()
        } else {
            sample_path(&g, &mut rng)
        };
        let six = Degree::splat(g.k(), 6);
        let segments_agree = x.degree() == y.degree()
            && x.range() == y.range()
            && g.truncate(&x, &x.degree().meet(&six)).unwrap() == g.truncate(&y, &y.degree().meet(&six)).unwrap();
        prop_assert_eq!(g.path_equals(&x, &y), segments_agree);
        prop_assert!(g.path_equals(&x, &x));
        prop_assert_eq!(g.path_equals(&x, &y), g.path_equals(&y, &x));
    }

    #[test]
    fn isotropy_search_is_saturated(fx in 0..FIXTURES, seed in any::<u64>()) {
        let g = fixture(fx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = sample_path(&g, &mut rng);
        let bound = complete_isotropy_bound(&x);
        let report = isotropy(&g, &x, &bound).unwrap();
        prop_assert_eq!(is_aperiodic(&x), report.generators.is_empty());
        for ((p, q), h) in report.witnesses.iter().zip(&report.generators) {
            prop_assert_eq!(&p.diff(q), h);
            prop_assert!(g.path_equals(&g.shift(&x, p).unwrap(), &g.shift(&x, q).unwrap()));
        }
        if let Some(b) = x.block() {
            let wider = isotropy(&g, &x, &bound.add(b.degree())).unwrap();
            prop_assert_eq!(wider.basis, report.basis);
        }
    }
}

fn sample_path(g: &KGraph, rng: &mut ChaCha8Rng) -> BlockPeriodicPath {
    let small = g.all_paths_up_to(&twos(g));
    let cycles: Vec<&Path> = small.iter().filter(|p| !p.degree().is_zero() && p.range() == p.source()).collect();
    if !cycles.is_empty() && rng.gen_bool(0.6) {
        let block = *pick(rng, &cycles).unwrap();
        let leads: Vec<&Path> = small.iter().filter(|p| p.source() == block.range()).collect();
        g.periodic((*pick(rng, &leads).unwrap()).clone(), block.clone()).unwrap()
    } else {
        BlockPeriodicPath::finite(pick(rng, &small).unwrap().clone())
    }
}

/// Subsets of `paths` with at most `max` members.
fn subsets(paths: &[Path], max: usize) -> Vec<Vec<Path>> {
    let mut out = vec![Vec::new()];
    for p in paths {
        let grown: Vec<Vec<Path>> =
            out.iter().filter(|s| s.len() < max).map(|s| s.iter().cloned().chain([p.clone()]).collect()).collect();
        out.extend(grown);
    }
    out
}

/// Exhaustivity tested directly on every `λ` with `d(λ) ≤ M + (1, …, 1)`.
fn exhaustive_one_level_beyond(g: &KGraph, e: &[Path], v: kgraph::VertexId) -> bool {
    let at: Vec<&Path> = e.iter().filter(|p| p.range() == v).collect();
    if at.is_empty() {
        return false;
    }
    let m = at.iter().fold(Degree::zero(g.k()), |acc, p| acc.join(p.degree())).add(&ones(g));
    g.paths_up_to(v, &m).iter().all(|l| at.iter().any(|mu| has_common_extension(g, l, mu)))
}

#[test]
fn exhaustivity_agrees_with_direct_testing() {
    for g in all_fixtures() {
        for v in g.vertices() {
            let candidates: Vec<Path> = g.paths_up_to(v, &ones(&g)).into_iter().filter(|p| !p.is_vertex()).collect();
            for e in subsets(&candidates, 3) {
                let direct = exhaustive_one_level_beyond(&g, &e, v);
                assert_eq!(exhaustive_by_reduction(&g, &e, v).exhaustive, direct);
                assert_eq!(exhaustive_general(&g, &e, v).exhaustive, direct);
            }
        }
    }
}

/// A minimal exhaustive set stops being exhaustive when any member is dropped.
fn is_minimal_exhaustive(g: &KGraph, e: &[Path], v: kgraph::VertexId) -> bool {
    is_exhaustive(g, e, v)
        && (0..e.len()).all(|i| {
            let mut less = e.to_vec();
            less.remove(i);
            !is_exhaustive(g, &less, v)
        })
}

#[test]
fn extenders_of_exhaustive_sets_are_exhaustive() {
    let mut checked = 0;
    for g in all_fixtures() {
        for v in g.vertices() {
            let small = g.paths_up_to(v, &ones(&g));
            for e in subsets(&small, 3) {
                if e.is_empty() || !is_minimal_exhaustive(&g, &e, v) {
                    continue;
                }
                for lambda in &small {
                    let out = ext(&g, std::slice::from_ref(lambda), &e, usize::MAX).unwrap();
                    checked += 1;
                    assert!(in_ce(&g, out.witnesses(), lambda.source()), "{} over {:?}", g.show(lambda), e);
                }
            }
        }
    }
    assert!(checked > 50);
}

#[test]
fn boundary_verdicts_are_monotone_in_the_bound() {
    for g in all_fixtures() {
        for p in g.all_paths_up_to(&ones(&g)) {
            let x = BlockPeriodicPath::finite(p);
            if let BoundaryVerdict::NotBoundary { witness, at } = is_boundary(&g, &x, &ones(&g)).unwrap() {
                assert!(in_ce(&g, &witness, g.vertex_at(&x, &at).unwrap()));
                let y = g.shift(&x, &at).unwrap();
                assert!(witness.iter().all(|mu| !g.is_initial_segment(mu, &y)));
                assert!(matches!(is_boundary(&g, &x, &twos(&g)).unwrap(), BoundaryVerdict::NotBoundary { .. }));
            }
        }
    }
}

fn check_element(g: &KGraph, e: &GroupoidElement) {
    assert!(g.is_valid_element(e), "{e:?}");
}

#[test]
fn groupoid_axioms_on_windows() {
    for g in [fixtures::n2(), fixtures::rose(2), fixtures::cycle(2), fixtures::edge(), fixtures::kgds_partial()] {
        let elements = window_elements(&g, &ones(&g)).unwrap();
        for a in &elements {
            check_element(&g, a);
            let inv = invert(a);
            check_element(&g, &inv);
            assert_eq!(&invert(&inv), a);
            assert_eq!(inv.m, a.m.iter().map(|x| -x).collect::<Vec<_>>());
            let left = compose_elements(&g, &unit(&g, &a.x), a).unwrap();
            let right = compose_elements(&g, a, &unit(&g, &a.y)).unwrap();
            assert!(g.elements_equal(&left, a) && g.elements_equal(&right, a));
            let loop_back = compose_elements(&g, a, &inv).unwrap();
            assert!(g.elements_equal(&loop_back, &unit(&g, &a.x)));
            for b in elements.iter().filter(|b| g.path_equals(&a.y, &b.x)) {
                let ab = compose_elements(&g, a, b).unwrap();
                check_element(&g, &ab);
                for c in elements.iter().filter(|c| g.path_equals(&b.y, &c.x)).take(4) {
                    let l = compose_elements(&g, &ab, c).unwrap();
                    let r = compose_elements(&g, a, &compose_elements(&g, b, c).unwrap()).unwrap();
                    check_element(&g, &l);
                    assert!(g.elements_equal(&l, &r));
                }
            }
        }
    }
}

#[test]
fn aperiodicity_transports_along_paths() {
    for g in all_fixtures() {
        for v in check_condition_a(&g, 10_000).unwrap() {
            let ConditionA::Holds(AperiodicWitness::Finite(x)) = v.verdict else { continue };
            for lambda in g.all_paths_up_to(&ones(&g)).iter().filter(|l| l.source() == x.range()) {
                let y = g.concat(lambda, &x).unwrap();
                assert!(is_aperiodic(&y));
                assert!(isotropy(&g, &y, &complete_isotropy_bound(&y)).unwrap().generators.is_empty());
            }
        }
    }
}

#[test]
fn builder_paths_are_boundary_paths() {
    for g in all_fixtures() {
        for v in g.vertices() {
            for tie in [TieBreak::Lex, TieBreak::InputOrder] {
                let x = build_boundary_path(&g, v, tie).unwrap();
                assert_eq!(x.range(), v);
                assert_eq!(is_boundary(&g, &x, &twos(&g)).unwrap(), BoundaryVerdict::Boundary);
            }
        }
    }
}

fn skew_cases() -> Vec<SkewProduct> {
    let mut out = Vec::new();
    let named = |g: &KGraph, group: &GroupSpec, pairs: &[(&str, usize)]| {
        let labels = pairs.iter().map(|(e, a)| (e.to_string(), *a)).collect();
        skew_product(g, group, &Labeling::new(g, group, &labels).unwrap()).unwrap()
    };
    out.push(named(&fixtures::cycle(1), &GroupSpec::cyclic(3), &[("e0", 1)]));
    out.push(named(&fixtures::rose(2), &GroupSpec::cyclic(2), &[("a", 0), ("b", 1)]));
    out.push(named(&fixtures::n2(), &GroupSpec::cyclic(2), &[("f", 1), ("g", 1)]));
    out.push(named(&fixtures::sq2(), &GroupSpec::cyclic(3), &[("a1", 1), ("a2", 0), ("b1", 2), ("b2", 1)]));
    out.push(named(&fixtures::cycle(3), &GroupSpec::cyclic(2), &[("e0", 1), ("e1", 0), ("e2", 0)]));
    out
}

#[test]
fn skew_products_lift_paths_bijectively() {
    for sp in skew_cases() {
        let (g, h) = (&sp.base, &sp.graph);
        for v in g.vertices() {
            for a in 0..sp.group.order() {
                for m in twos(g).below() {
                    let below = g.paths_of_degree(v, &m);
                    let above = h.paths_of_degree(sp.vertex(v, a), &m);
                    assert_eq!(below.len(), above.len());
                    for p in &below {
                        let lifted = sp.lift_path(p, a);
                        assert_eq!(lifted.degree(), p.degree());
                        assert_eq!(sp.project_path(&lifted), (p.clone(), a));
                        assert_eq!(h.vertex_name(lifted.source()), format!(
                            "{}@{}",
                            g.vertex_name(p.source()),
                            sp.group.name(sp.group.mul(a, label_path(&sp.group, &sp.labels, p)))
                        ));
                    }
                }
            }
        }
    }
}

#[test]
fn skew_products_preserve_alignment_counts() {
    for sp in skew_cases() {
        let (g, h) = (&sp.base, &sp.graph);
        for v in g.vertices() {
            let paths = g.paths_up_to(v, &twos(g));
            for a in 0..sp.group.order() {
                for l in &paths {
                    for m in &paths {
                        let base = min_pairs(g, l, m).len();
                        let up = min_pairs(h, &sp.lift_path(l, a), &sp.lift_path(m, a)).len();
                        assert_eq!(base, up);
                    }
                }
            }
        }
    }
}

#[test]
fn phi_intertwines_shifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for sp in skew_cases() {
        let g = &sp.base;
        for _ in 0..40 {
            let x = sample_path(g, &mut rng);
            let a = rng.gen_range(0..sp.group.order());
            for m in x.degree().clamp_infinite(&twos(g)).below() {
                let lhs = sp.graph.shift(&sp.phi(&x, a), &m).unwrap();
                let b = sp.group.mul(a, sp.label(&g.truncate(&x, &m).unwrap()));
                let rhs = sp.phi(&g.shift(&x, &m).unwrap(), b);
                assert!(sp.graph.path_equals(&lhs, &rhs));
                assert_eq!(sp.phi(&x, a).degree(), x.degree());
            }
        }
    }
}

#[test]
fn cocycle_ignores_the_witness() {
    for sp in skew_cases() {
        let g = &sp.base;
        for e in window_elements(g, &ones(g)).unwrap() {
            let value = sp.induced_cocycle(&e).unwrap();
            let (p, q) = &e.witness;
            for t in twos(g).below() {
                let (p2, q2) = (p.add(&t), q.add(&t));
                if p2.le(&e.x.degree()) && q2.le(&e.y.degree()) {
                    assert_eq!(sp.cocycle_with(&e, &p2, &q2).unwrap(), value);
                }
            }
            assert_eq!(sp.induced_cocycle(&invert(&e)).unwrap(), sp.group.inv(value));
        }
        let any = build_boundary_path(g, g.vertices().next().unwrap(), TieBreak::Lex).unwrap();
        assert_eq!(sp.induced_cocycle(&unit(g, &any)).unwrap(), sp.group.identity());
    }
}
