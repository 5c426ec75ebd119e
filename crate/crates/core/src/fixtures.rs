//! Generators for standard presentations.

use std::sync::Arc;

use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{validate_kgraph, KGraph, LazyFamily};
use crate::path::Path;
use crate::skeleton::{EdgeDoc, Skeleton, SkeletonDoc, SquareDoc};

fn build(doc: SkeletonDoc) -> KGraph {
    validate_kgraph(Skeleton::from_doc(&doc).expect("fixture skeletons are well formed")).expect("fixtures are k-graphs")
}

fn point_name(p: &Degree) -> String {
    let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(","))
}

/// One vertex with one loop per color, all squares commuting.
pub fn single_loops(k: usize) -> KGraph {
    let names: Vec<String> = (1..=k).map(|c| ["f", "g", "h"].get(c - 1).map_or(format!("l{c}"), |s| s.to_string())).collect();
    let edges = names.iter().enumerate().map(|(i, n)| EdgeDoc::new(n, i + 1, "v", "v")).collect();
    let mut squares = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            squares.push(SquareDoc::new([&names[i], &names[j]], [&names[j], &names[i]]));
        }
    }
    build(SkeletonDoc { k, vertices: vec!["v".into()], edges, squares })
}

/// `F_N2`: one vertex, loops `f` (color 1) and `g` (color 2), `fg = gf`.
pub fn n2() -> KGraph {
    single_loops(2)
}

/// `F_SQ2`: one vertex, color-1 loops `a1, a2`, color-2 loops `b1, b2`,
/// squares `a_i b_j = b_j a_i`.
pub fn sq2() -> KGraph {
    let edges = vec![
        EdgeDoc::new("a1", 1, "v", "v"),
        EdgeDoc::new("a2", 1, "v", "v"),
        EdgeDoc::new("b1", 2, "v", "v"),
        EdgeDoc::new("b2", 2, "v", "v"),
    ];
    let mut squares = Vec::new();
    for a in ["a1", "a2"] {
        for b in ["b1", "b2"] {
            squares.push(SquareDoc::new([a, b], [b, a]));
        }
    }
    build(SkeletonDoc { k: 2, vertices: vec!["v".into()], edges, squares })
}

/// `F_CYCLE(n)`: vertices `v0..`, edge `e_i` from `v_{i+1}` to `v_i`.
pub fn cycle(n: usize) -> KGraph {
    assert!(n >= 1);
    let vertices = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n).map(|i| EdgeDoc::new(format!("e{i}"), 1, format!("v{i}"), format!("v{}", (i + 1) % n))).collect();
    build(SkeletonDoc { k: 1, vertices, edges, squares: Vec::new() })
}

/// One vertex with `n` loops of color 1 named `a, b, c, …`.
pub fn rose(n: usize) -> KGraph {
    let edges = (0..n)
        .map(|i| {
            let name = if i < 26 { ((b'a' + i as u8) as char).to_string() } else { format!("x{i}") };
            EdgeDoc::new(name, 1, "v", "v")
        })
        .collect();
    build(SkeletonDoc { k: 1, vertices: vec!["v".into()], edges, squares: Vec::new() })
}

/// `u ← w` along a single edge `e`; `w` receives nothing.
pub fn edge() -> KGraph {
    build(SkeletonDoc {
        k: 1,
        vertices: vec!["u".into(), "w".into()],
        edges: vec![EdgeDoc::new("e", 1, "u", "w")],
        squares: Vec::new(),
    })
}

/// The k-graph `Ω_{k,m}`: objects `p ≤ m`, edges `(p, p+e_i)`.
pub fn omega_graph(k: usize, m: &Degree) -> KGraph {
    assert_eq!(m.rank(), k);
    assert!(m.is_finite(), "omega_graph needs a finite degree");
    let points = m.below();
    let vertices = points.iter().map(point_name).collect();
    let edge_name = |p: &Degree, i: usize| format!("{}+e{i}", point_name(p));
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for p in &points {
        for i in 1..=k {
            let pi = p.add(&Degree::unit(k, i));
            if !pi.le(m) {
                continue;
            }
            edges.push(EdgeDoc::new(edge_name(p, i), i, point_name(p), point_name(&pi)));
            for j in (i + 1)..=k {
                let pj = p.add(&Degree::unit(k, j));
                if !pi.add(&Degree::unit(k, j)).le(m) {
                    continue;
                }
                squares.push(SquareDoc {
                    left: [edge_name(p, i), edge_name(&pi, j)],
                    right: [edge_name(p, j), edge_name(&pj, i)],
                });
            }
        }
    }
    build(SkeletonDoc { k, vertices, edges, squares })
}

/// The morphism `(p, q)` of an `Ω` graph built by [`omega_graph`].
pub fn omega_morphism(g: &KGraph, p: &Degree, q: &Degree) -> Result<Path> {
    let v = g.vertex_id(&point_name(p))?;
    let d = q.checked_sub(p).ok_or(Error::OutOfRange { requested: q.clone(), available: p.clone() })?;
    g.paths_of_degree(v, &d).into_iter().next().ok_or(Error::OutOfRange { requested: q.clone(), available: p.clone() })
}

/// The k-graph of commuting partial maps `θ_1, …, θ_k` on `{0, …, n-1}`:
/// color-`i` edge `t{i}_{x}` from `θ_i(x)` to `x` for `x ∈ dom(θ_i)`.
pub fn kgds_graph(n: usize, thetas: &[Vec<Option<usize>>]) -> Result<KGraph> {
    let k = thetas.len();
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    for t in thetas {
        if t.len() != n || t.iter().flatten().any(|&y| y >= n) {
            return Err(Error::Schema(format!("each map must be a partial map on {n} points")));
        }
    }
    let comp = |i: usize, j: usize, x: usize| thetas[i][x].and_then(|y| thetas[j][y]);
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            for x in 0..n {
                if comp(i, j, x) != comp(j, i, x) {
                    return Err(Error::KgdsDomain { x, i: i + 1, j: j + 1 });
                }
            }
        }
    }
    let name = |i: usize, x: usize| format!("t{}_{x}", i + 1);
    let vertices = (0..n).map(|x| x.to_string()).collect();
    let mut edges = Vec::new();
    let mut squares = Vec::new();
    for (i, t) in thetas.iter().enumerate() {
        for x in 0..n {
            if let Some(y) = t[x] {
                edges.push(EdgeDoc::new(name(i, x), i + 1, x.to_string(), y.to_string()));
            }
        }
    }
    for i in 0..k {
        for j in (i + 1)..k {
            for x in 0..n {
                if let (Some(yi), Some(yj)) = (thetas[i][x], thetas[j][x]) {
                    if comp(i, j, x).is_some() {
                        squares.push(SquareDoc { left: [name(i, x), name(j, yi)], right: [name(j, x), name(i, yj)] });
                    }
                }
            }
        }
    }
    let sk = Skeleton::from_doc(&SkeletonDoc { k, vertices, edges, squares })?;
    validate_kgraph(sk)
}

/// `X = {0, 1}`, `θ_1 = id`, `θ_2 = swap`.
pub fn kgds_swap() -> KGraph {
    kgds_graph(2, &[vec![Some(0), Some(1)], vec![Some(1), Some(0)]]).expect("identity and swap commute")
}

/// `X = {0, 1}`, `θ_1` defined only at `0`, `θ_2 = id`.
pub fn kgds_partial() -> KGraph {
    kgds_graph(2, &[vec![Some(0), None], vec![Some(0), Some(1)]]).expect("domains commute")
}

/// The 2-graph with `λα_j = μβ_j` for every `j`, which is not finitely
/// aligned. Window `n` holds `α_0..α_{n-1}` and `β_0..β_{n-1}`.
#[derive(Debug)]
pub struct LambdaOne;

impl LazyFamily for LambdaOne {
    fn name(&self) -> &str {
        "lambda1"
    }

    fn materialize(&self, members: usize) -> Skeleton {
        let mut vertices: Vec<String> = ["A", "B", "C", "D"].iter().map(|s| s.to_string()).collect();
        let mut edges = vec![
            EdgeDoc::new("lambda", 1, "A", "B"),
            EdgeDoc::new("mu", 2, "A", "C"),
            EdgeDoc::new("nu", 1, "C", "D"),
            EdgeDoc::new("kappa", 2, "B", "D"),
        ];
        let mut squares = vec![SquareDoc::new(["lambda", "kappa"], ["mu", "nu"])];
        for j in 0..members {
            let w = format!("w{j}");
            edges.push(EdgeDoc::new(format!("alpha{j}"), 2, "B", &w));
            edges.push(EdgeDoc::new(format!("beta{j}"), 1, "C", &w));
            squares.push(SquareDoc {
                left: ["lambda".into(), format!("alpha{j}")],
                right: ["mu".into(), format!("beta{j}")],
            });
            vertices.push(w);
        }
        Skeleton::from_doc(&SkeletonDoc { k: 2, vertices, edges, squares }).expect("lambda1 windows are well formed")
    }

    fn open_positions(&self) -> Vec<(String, usize)> {
        vec![("B".into(), 2), ("C".into(), 1)]
    }
}

pub fn lambda1(window: usize) -> KGraph {
    KGraph::lazy(Arc::new(LambdaOne), window).expect("lambda1 windows are k-graphs")
}

/// Named fixtures for the command line: `omega K M`, `n2`, `sq2`, `cycle N`,
/// `rose N`, `edge`, `lambda1 [N]`, `kgds swap|partial`, `loops K`.
pub fn by_name(name: &str, args: &[String]) -> Result<KGraph> {
    let num = |i: usize, default: Option<usize>| -> Result<usize> {
        match args.get(i) {
            Some(a) => a.parse().map_err(|_| Error::Schema(format!("expected a number, got `{a}`"))),
            None => default.ok_or_else(|| Error::Schema(format!("fixture `{name}` needs argument {}", i + 1))),
        }
    };
    match name {
        "n2" => Ok(n2()),
        "sq2" => Ok(sq2()),
        "edge" => Ok(edge()),
        "cycle" => Ok(cycle(num(0, Some(3))?.max(1))),
        "rose" => Ok(rose(num(0, Some(2))?)),
        "loops" => Ok(single_loops(num(0, Some(3))?.max(1))),
        "lambda1" => Ok(lambda1(num(0, Some(3))?)),
        "omega" => {
            let k = num(0, None)?;
            let m = Degree::parse(args.get(1).map(String::as_str).unwrap_or(""))
                .filter(|m| m.rank() == k && m.is_finite())
                .ok_or_else(|| Error::Schema(format!("omega needs a finite degree of rank {k}")))?;
            Ok(omega_graph(k, &m))
        }
        "kgds" => match args.first().map(String::as_str) {
            None | Some("swap") => Ok(kgds_swap()),
            Some("partial") => Ok(kgds_partial()),
            Some(other) => Err(Error::Schema(format!("unknown kgds variant `{other}`"))),
        },
        other => Err(Error::Schema(format!("unknown fixture `{other}`"))),
    }
}

/// Names accepted by [`by_name`] with default arguments, for round-trip tests.
pub fn catalogue() -> Vec<(&'static str, Vec<String>)> {
    let s = |v: &[&str]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    vec![
        ("n2", vec![]),
        ("sq2", vec![]),
        ("edge", vec![]),
        ("cycle", s(&["3"])),
        ("rose", s(&["2"])),
        ("loops", s(&["3"])),
        ("lambda1", s(&["3"])),
        ("omega", s(&["2", "2,3"])),
        ("omega", s(&["3", "1,1,1"])),
        ("kgds", s(&["swap"])),
        ("kgds", s(&["partial"])),
    ]
}
