//! Skew products by finite groups and the lift of paths and groupoid elements.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::boundary::{build_boundary_path, is_boundary, BlockPeriodicPath, BoundaryVerdict, TieBreak};
use crate::degree::Degree;
use crate::error::{Error, Result};
use crate::graph::{validate_kgraph, KGraph};
use crate::groupoid::{compose_elements, window_elements, GroupoidElement};
use crate::path::Path;
use crate::skeleton::{EdgeDoc, EdgeId, Skeleton, SkeletonDoc, SquareDoc, VertexId};

/// A finite group given by its multiplication table. Elements are indices
/// into `names`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

/// `{"elements": [...], "table": [[...]]}`; table entries are element names
/// or indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    pub elements: Vec<Value>,
    pub table: Vec<Vec<Value>>,
}

/// The skew input: a group and an edge labeling.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkewDoc {
    pub group: GroupDoc,
    pub labels: BTreeMap<String, Value>,
}

fn value_name(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl GroupSpec {
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<GroupSpec> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidGroup(m.to_string()));
        if n == 0 {
            return bad("no elements");
        }
        if table.len() != n || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad("table must be square over the element list");
        }
        let mut seen = names.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return bad("duplicate element names");
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a)) else {
            return bad("no identity element");
        };
        let mut inverses = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverses.push(b),
                None => return Err(Error::InvalidGroup(format!("element `{}` has no inverse", names[a]))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupSpec { names, table, identity, inverses })
    }

    pub fn from_doc(doc: &GroupDoc) -> Result<GroupSpec> {
        let names: Vec<String> = doc.elements.iter().map(value_name).collect();
        let lookup = |v: &Value| -> Result<usize> {
            let name = value_name(v);
            if let Some(i) = names.iter().position(|n| *n == name) {
                return Ok(i);
            }
            v.as_u64()
                .map(|i| i as usize)
                .filter(|&i| i < names.len())
                .ok_or_else(|| Error::InvalidGroup(format!("unknown table entry `{name}`")))
        };
        let table = doc.table.iter().map(|row| row.iter().map(lookup).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        GroupSpec::from_table(names, table)
    }

    /// `ℤ/n` with elements `"0", …, "n-1"`.
    pub fn cyclic(n: usize) -> GroupSpec {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupSpec::from_table(names, table).expect("cyclic groups are groups")
    }

    pub fn to_doc(&self) -> GroupDoc {
        GroupDoc {
            elements: self.names.iter().map(|n| Value::String(n.clone())).collect(),
            table: self.table.iter().map(|row| row.iter().map(|&x| Value::String(self.names[x].clone())).collect()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Order of `a` in the group.
    pub fn element_order(&self, a: usize) -> u32 {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }
}

/// A functor `c: Λ → A` given on edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    labels: Vec<usize>,
}

impl Labeling {
    /// Checks that every edge is labeled and that both sides of every square
    /// have the same label.
    pub fn new(g: &KGraph, group: &GroupSpec, labels: &BTreeMap<String, usize>) -> Result<Labeling> {
        let mut out = vec![group.identity(); g.skeleton().edge_count()];
        for (name, &a) in labels {
            let e = g.edge_id(name)?;
            if a >= group.order() {
                return Err(Error::InvalidGroup(format!("label of `{name}` is not an element")));
            }
            out[e.index()] = a;
        }
        for e in g.skeleton().edge_ids() {
            if !labels.contains_key(&g.edge(e).name) {
                return Err(Error::Schema(format!("edge `{}` has no label", g.edge(e).name)));
            }
        }
        let lab = Labeling { labels: out };
        for sq in g.skeleton().squares() {
            let lhs = group.mul(lab.edge(sq.left[0]), lab.edge(sq.left[1]));
            let rhs = group.mul(lab.edge(sq.right[0]), lab.edge(sq.right[1]));
            if lhs != rhs {
                let show = |p: [EdgeId; 2]| format!("{}, {}", g.edge(p[0]).name, g.edge(p[1]).name);
                return Err(Error::InvalidLabeling {
                    left: show(sq.left),
                    right: show(sq.right),
                    lhs: group.name(lhs).into(),
                    rhs: group.name(rhs).into(),
                });
            }
        }
        Ok(lab)
    }

    /// Labels given by element name, or by index for numeric values that are
    /// not element names.
    pub fn from_doc(g: &KGraph, group: &GroupSpec, labels: &BTreeMap<String, Value>) -> Result<Labeling> {
        let mut resolved = BTreeMap::new();
        for (edge, v) in labels {
            let name = value_name(v);
            let a = group
                .element(&name)
                .or_else(|| v.as_u64().map(|i| i as usize).filter(|&i| i < group.order()))
                .ok_or_else(|| Error::InvalidGroup(format!("label `{name}` of `{edge}` is not an element")))?;
            resolved.insert(edge.clone(), a);
        }
        Labeling::new(g, group, &resolved)
    }

    /// Every edge labeled with the identity.
    pub fn trivial(g: &KGraph, group: &GroupSpec) -> Labeling {
        Labeling { labels: vec![group.identity(); g.skeleton().edge_count()] }
    }

    pub fn edge(&self, e: EdgeId) -> usize {
        self.labels[e.index()]
    }
}

/// `c(λ)`: the product of edge labels from range to source.
pub fn label_path(group: &GroupSpec, c: &Labeling, p: &Path) -> usize {
    p.word().iter().fold(group.identity(), |acc, &e| group.mul(acc, c.edge(e)))
}

/// `Λ ×_c A` together with the maps between it and `Λ × A`.
#[derive(Debug, Clone)]
pub struct SkewProduct {
    pub base: KGraph,
    pub graph: KGraph,
    pub group: GroupSpec,
    pub labels: Labeling,
    vertex_lift: Vec<Vec<VertexId>>,
    edge_lift: Vec<Vec<EdgeId>>,
    edge_proj: Vec<(EdgeId, usize)>,
    vertex_proj: Vec<(VertexId, usize)>,
}

/// Vertices `(v, a)` named `v@a`; edges `(e, a)` named `e@a` with
/// `r(e, a) = (r(e), a)` and `s(e, a) = (s(e), a·c(e))`.
pub fn skew_product(g: &KGraph, group: &GroupSpec, c: &Labeling) -> Result<SkewProduct> {
    g.require_finite()?;
    let sk = g.skeleton();
    let n = group.order();
    let vname = |v: VertexId, a: usize| format!("{}@{}", sk.vertex_name(v), group.name(a));
    let ename = |e: EdgeId, a: usize| format!("{}@{}", sk.edge(e).name, group.name(a));
    let mut doc = SkeletonDoc { k: sk.k(), vertices: Vec::new(), edges: Vec::new(), squares: Vec::new() };
    for v in sk.vertex_ids() {
        for a in 0..n {
            doc.vertices.push(vname(v, a));
        }
    }
    for e in sk.edge_ids() {
        let ed = sk.edge(e);
        for a in 0..n {
            doc.edges.push(EdgeDoc::new(ename(e, a), ed.color, vname(ed.range, a), vname(ed.source, group.mul(a, c.edge(e)))));
        }
    }
    for sq in sk.squares() {
        for a in 0..n {
            let side = |p: [EdgeId; 2]| [ename(p[0], a), ename(p[1], group.mul(a, c.edge(p[0])))];
            doc.squares.push(SquareDoc { left: side(sq.left), right: side(sq.right) });
        }
    }
    let graph = validate_kgraph(Skeleton::from_doc(&doc)?)?;
    let gs = graph.skeleton();
    let vertex_lift: Vec<Vec<VertexId>> =
        sk.vertex_ids().map(|v| (0..n).map(|a| gs.vertex_id(&vname(v, a)).expect("vertex exists")).collect()).collect();
    let edge_lift: Vec<Vec<EdgeId>> =
        sk.edge_ids().map(|e| (0..n).map(|a| gs.edge_id(&ename(e, a)).expect("edge exists")).collect()).collect();
    let mut vertex_proj = vec![(VertexId(0), 0); gs.vertex_count()];
    for (v, row) in vertex_lift.iter().enumerate() {
        for (a, w) in row.iter().enumerate() {
            vertex_proj[w.index()] = (VertexId(v as u32), a);
        }
    }
    let mut edge_proj = vec![(EdgeId(0), 0); gs.edge_count()];
    for (e, row) in edge_lift.iter().enumerate() {
        for (a, f) in row.iter().enumerate() {
            edge_proj[f.index()] = (EdgeId(e as u32), a);
        }
    }
    Ok(SkewProduct {
        base: g.clone(),
        graph,
        group: group.clone(),
        labels: c.clone(),
        vertex_lift,
        edge_lift,
        edge_proj,
        vertex_proj,
    })
}

impl SkewProduct {
    pub fn vertex(&self, v: VertexId, a: usize) -> VertexId {
        self.vertex_lift[v.index()][a]
    }

    pub fn label(&self, p: &Path) -> usize {
        label_path(&self.group, &self.labels, p)
    }

    /// `(λ, a)`.
    pub fn lift_path(&self, p: &Path, a: usize) -> Path {
        let mut cur = a;
        let word: Vec<EdgeId> = p
            .word()
            .iter()
            .map(|&e| {
                let f = self.edge_lift[e.index()][cur];
                cur = self.group.mul(cur, self.labels.edge(e));
                f
            })
            .collect();
        self.graph.path_from_word(self.vertex(p.range(), a), &word).expect("lifts of paths are paths")
    }

    /// Inverse of [`SkewProduct::lift_path`].
    pub fn project_path(&self, p: &Path) -> (Path, usize) {
        let (v, a) = self.vertex_proj[p.range().index()];
        let word: Vec<EdgeId> = p.word().iter().map(|f| self.edge_proj[f.index()].0).collect();
        (self.base.path_from_word(v, &word).expect("projections of paths are paths"), a)
    }

    /// `φ(x, a)`. The block is repeated `ord(c(block))` times so that the lift
    /// closes up.
    pub fn phi(&self, x: &BlockPeriodicPath, a: usize) -> BlockPeriodicPath {
        let prefix = self.lift_path(x.prefix(), a);
        let Some(block) = x.block() else { return BlockPeriodicPath::finite(prefix) };
        let start = self.group.mul(a, self.label(x.prefix()));
        let reps = self.group.element_order(self.label(block));
        let long = self.base.power(block, reps).expect("blocks are cycles");
        let lifted = self.lift_path(&long, start);
        self.graph.periodic(prefix, lifted).expect("lifted block closes")
    }

    /// Inverse of [`SkewProduct::phi`].
    pub fn unphi(&self, x: &BlockPeriodicPath) -> (BlockPeriodicPath, usize) {
        let (prefix, a) = self.project_path(x.prefix());
        match x.block() {
            None => (BlockPeriodicPath::finite(prefix), a),
            Some(b) => {
                let (block, _) = self.project_path(b);
                (self.base.periodic(prefix, block).expect("projected block closes"), a)
            }
        }
    }

    /// `c̃(x, m, y) = c(x(0, p)) c(y(0, q))^{-1}` for the element's witness.
    pub fn induced_cocycle(&self, g: &GroupoidElement) -> Result<usize> {
        self.cocycle_with(g, &g.witness.0, &g.witness.1)
    }

    pub fn cocycle_with(&self, g: &GroupoidElement, p: &Degree, q: &Degree) -> Result<usize> {
        let lambda = self.base.truncate(&g.x, p)?;
        let mu = self.base.truncate(&g.y, q)?;
        Ok(self.group.mul(self.label(&lambda), self.group.inv(self.label(&mu))))
    }

    /// `((x, m, y), a) ↦ (φ(x, a), m, φ(y, a·c̃(g)))`.
    pub fn lift_element(&self, g: &GroupoidElement, a: usize) -> Result<GroupoidElement> {
        let b = self.group.mul(a, self.induced_cocycle(g)?);
        Ok(GroupoidElement { x: self.phi(&g.x, a), m: g.m.clone(), y: self.phi(&g.y, b), witness: g.witness.clone() })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SkewIsoReport {
    pub elements: usize,
    pub products: usize,
    pub boundary_paths: usize,
    pub injective: bool,
    pub valid_images: bool,
    pub multiplicative: bool,
    pub degree_preserving: bool,
    pub boundary_preserved: bool,
    pub boundary_reflected: bool,
    pub counterexamples: Vec<String>,
    pub passed: bool,
}

fn fail(rep: &mut SkewIsoReport, msg: String) {
    if rep.counterexamples.len() < 20 {
        rep.counterexamples.push(msg);
    }
}

fn verdict_kind(v: &Result<BoundaryVerdict>) -> &'static str {
    match v {
        Ok(BoundaryVerdict::Boundary) => "boundary",
        Ok(BoundaryVerdict::NotBoundary { .. }) => "not-boundary",
        Ok(BoundaryVerdict::InconclusiveUpTo(_)) => "inconclusive",
        Err(_) => "error",
    }
}

/// Checks the lift `((x, m, y), a) ↦ (φ(x, a), m, φ(y, a·c̃))` over the
/// elements `(λz, d(λ) − d(μ), μz)` with `d(λ), d(μ) ≤ window` and every `a`:
/// validity, injectivity, multiplicativity and degrees; then boundary
/// verdicts of `φ(x, a)` against `x` for window paths and builder paths of
/// both graphs.
pub fn verify_skew_iso(sp: &SkewProduct, window: &Degree) -> Result<SkewIsoReport> {
    let g = &sp.base;
    let h = &sp.graph;
    let mut rep = SkewIsoReport {
        injective: true,
        valid_images: true,
        multiplicative: true,
        degree_preserving: true,
        boundary_preserved: true,
        boundary_reflected: true,
        ..Default::default()
    };
    let elements = window_elements(g, window)?;
    let mut lifted = Vec::new();
    for (i, e) in elements.iter().enumerate() {
        for a in 0..sp.group.order() {
            let l = sp.lift_element(e, a)?;
            if !h.is_valid_element(&l) {
                rep.valid_images = false;
                fail(&mut rep, format!("image of element {i} at {} is not a groupoid element", sp.group.name(a)));
            }
            if l.x.degree() != e.x.degree() || l.y.degree() != e.y.degree() {
                rep.degree_preserving = false;
                fail(&mut rep, format!("image of element {i} at {} changes degree", sp.group.name(a)));
            }
            lifted.push((i, a, l));
        }
    }
    rep.elements = lifted.len();

    for (x, (i, a, l)) in lifted.iter().enumerate() {
        for (j, b, l2) in &lifted[x + 1..] {
            let same_source = a == b && g.elements_equal(&elements[*i], &elements[*j]);
            if !same_source && h.elements_equal(l, l2) {
                rep.injective = false;
                fail(&mut rep, format!("elements {i}@{} and {j}@{} have the same image", sp.group.name(*a), sp.group.name(*b)));
            }
        }
    }

    for (i, e1) in elements.iter().enumerate() {
        for (j, e2) in elements.iter().enumerate() {
            if !g.path_equals(&e1.y, &e2.x) {
                continue;
            }
            let prod = compose_elements(g, e1, e2)?;
            for a in 0..sp.group.order() {
                rep.products += 1;
                let b = sp.group.mul(a, sp.induced_cocycle(e1)?);
                let (l1, l2) = (sp.lift_element(e1, a)?, sp.lift_element(e2, b)?);
                let ok = compose_elements(h, &l1, &l2).is_ok_and(|p| h.elements_equal(&p, &sp.lift_element(&prod, a).unwrap()));
                if !ok {
                    rep.multiplicative = false;
                    fail(&mut rep, format!("product of elements {i} and {j} at {} is not preserved", sp.group.name(a)));
                }
            }
        }
    }

    let mut base_paths: Vec<BlockPeriodicPath> = g.all_paths_up_to(window).into_iter().map(BlockPeriodicPath::finite).collect();
    base_paths.extend(g.vertices().map(|v| build_boundary_path(g, v, TieBreak::Lex)).collect::<Result<Vec<_>>>()?);
    for x in &base_paths {
        let before = verdict_kind(&is_boundary(g, x, window));
        for a in 0..sp.group.order() {
            rep.boundary_paths += 1;
            let after = verdict_kind(&is_boundary(h, &sp.phi(x, a), window));
            if before != after {
                rep.boundary_preserved = false;
                fail(&mut rep, format!("{} is {before} but its lift at {} is {after}", g.show(x.prefix()), sp.group.name(a)));
            }
        }
    }
    for v in h.vertices() {
        let y = build_boundary_path(h, v, TieBreak::Lex)?;
        rep.boundary_paths += 1;
        let (x, a) = sp.unphi(&y);
        let back = sp.phi(&x, a);
        let agree = verdict_kind(&is_boundary(h, &y, window)) == verdict_kind(&is_boundary(g, &x, window));
        if !h.path_equals(&back, &y) || !agree {
            rep.boundary_reflected = false;
            fail(&mut rep, format!("builder path at {} does not come back through the projection", h.vertex_name(v)));
        }
    }
    rep.passed = rep.injective
        && rep.valid_images
        && rep.multiplicative
        && rep.degree_preserving
        && rep.boundary_preserved
        && rep.boundary_reflected;
    Ok(rep)
}
