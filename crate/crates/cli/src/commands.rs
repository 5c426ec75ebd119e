//! One function per subcommand. Each returns an [`Outcome`] whose results are
//! plain JSON built in a fixed order.

use kgraph::alignment::{self, AlignmentStatus, AlignmentVerdict};
use kgraph::boundary::{build_boundary_path, graph_properties, is_boundary, BlockPeriodicPath, BoundaryVerdict, TieBreak};
use kgraph::groupoid::{
    check_condition_a_at, complete_isotropy_bound, compose_elements, essential_freeness_probe, invert, isotropy, unit,
    window_elements, AperiodicWitness, ConditionA, GroupoidElement,
};
use kgraph::skew::{skew_product, verify_skew_iso, GroupSpec, Labeling, SkewDoc};
use kgraph::{Degree, KGraph, Path, VertexId};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::input::{self, CliError, CliResult};
use crate::report::{Outcome, Verdict};

fn paths_json(g: &KGraph, ps: &[Path]) -> Value {
    json!(ps.iter().map(|p| g.path_doc(p)).collect::<Vec<_>>())
}

fn periodic_json(g: &KGraph, x: &BlockPeriodicPath) -> Value {
    json!(g.periodic_doc(x))
}

fn boundary_verdict_json(g: &KGraph, v: &BoundaryVerdict) -> Value {
    match v {
        BoundaryVerdict::Boundary => json!({"status": "boundary"}),
        BoundaryVerdict::NotBoundary { witness, at } => {
            json!({"status": "not_boundary", "at": at, "witness": paths_json(g, witness)})
        }
        BoundaryVerdict::InconclusiveUpTo(d) => json!({"status": "inconclusive", "up_to": d}),
    }
}

fn boundary_verdict_kind(v: &BoundaryVerdict) -> Verdict {
    match v {
        BoundaryVerdict::Boundary => Verdict::Ok,
        BoundaryVerdict::NotBoundary { .. } => Verdict::Fail,
        BoundaryVerdict::InconclusiveUpTo(_) => Verdict::Inconclusive,
    }
}

/// Widens a lazy graph so witnesses found in a larger window can be named.
fn widened(g: &KGraph, window: Option<usize>) -> KGraph {
    match window {
        Some(w) => g.widen(w),
        None => g.clone(),
    }
}

fn verdict_json<T>(g: &KGraph, v: &AlignmentVerdict<T>, item: impl Fn(&KGraph, &T) -> Value) -> (Value, Verdict) {
    let gw = widened(g, v.window);
    let (status, verdict) = match &v.status {
        AlignmentStatus::Finite(_) => ("finite", Verdict::Ok),
        AlignmentStatus::BudgetExceeded(_) => ("budget_exceeded", Verdict::Inconclusive),
    };
    let items: Vec<Value> = v.witnesses().iter().map(|w| item(&gw, w)).collect();
    (
        json!({"status": status, "count": items.len(), "witnesses": items, "budget_used": v.budget_used, "window": v.window}),
        verdict,
    )
}

pub fn validate(g: &KGraph, budget: usize) -> Outcome {
    let sk = g.skeleton();
    let props = graph_properties(g, budget);
    let results = json!({
        "k": g.k(),
        "vertices": sk.vertex_count(),
        "edges": sk.edge_count(),
        "squares": sk.squares().len(),
        "locally_convex": g.is_locally_convex(),
        "lazy_window": g.window(),
        "properties": props,
    });
    let summary = format!(
        "valid {}-graph: {} vertices, {} edges, {} squares",
        g.k(),
        sk.vertex_count(),
        sk.edge_count(),
        sk.squares().len()
    );
    Outcome::new(results, Verdict::Ok, summary)
}

pub fn enumerate(g: &KGraph, degree: Option<&Degree>, bound: &Degree, vertex: Option<VertexId>, budget: usize) -> Outcome {
    let vertices: Vec<VertexId> = match vertex {
        Some(v) => vec![v],
        None => g.vertices().collect(),
    };
    let degrees = match degree {
        Some(d) => vec![d.clone()],
        None => bound.below(),
    };
    let mut paths = Vec::new();
    let mut complete = true;
    let mut left = budget;
    'outer: for v in vertices {
        for m in &degrees {
            let e = g.paths_of_degree_budgeted(v, m, left);
            complete &= e.complete;
            left = left.saturating_sub(e.paths.len());
            paths.extend(e.paths);
            if left == 0 {
                complete = false;
                break 'outer;
            }
        }
    }
    let verdict = if complete { Verdict::Ok } else { Verdict::Inconclusive };
    let summary = format!("{} paths{}", paths.len(), if complete { "" } else { " (truncated by budget or window)" });
    Outcome::new(json!({"count": paths.len(), "complete": complete, "paths": paths_json(g, &paths)}), verdict, summary)
}

pub fn align(g: &KGraph, query: &Value, budget: usize) -> CliResult<Outcome> {
    let op = query.get("op").and_then(Value::as_str).ok_or_else(|| CliError::Usage("query: missing string field `op`".into()))?;
    let field = |name: &str| query.get(name).ok_or_else(|| CliError::Usage(format!("query: missing field `{name}`")));
    let out = match op {
        "min" => {
            let lambda = input::path_literal(g, field("lambda")?, "lambda")?;
            let mu = input::path_literal(g, field("mu")?, "mu")?;
            let v = alignment::min_common_extensions(g, &lambda, &mu, budget)?;
            let (results, verdict) =
                verdict_json(g, &v, |gw, p| json!({"alpha": gw.path_doc(&p.alpha), "beta": gw.path_doc(&p.beta)}));
            let summary = format!("Λ^min: {} pairs ({})", v.witnesses().len(), results["status"].as_str().unwrap_or(""));
            Outcome::new(results, verdict, summary)
        }
        "vee" => {
            let u = input::path_set(g, query.get("u"), "u")?;
            let v = input::path_set(g, query.get("v"), "v")?;
            let paths = alignment::common_extensions(g, &u, &v)?;
            let summary = format!("U ∨ V: {} paths", paths.len());
            Outcome::new(json!({"count": paths.len(), "paths": paths_json(g, &paths)}), Verdict::Ok, summary)
        }
        "ext" => {
            let e = input::path_set(g, query.get("e"), "e")?;
            let f = input::path_set(g, query.get("f"), "f")?;
            let v = alignment::ext(g, &e, &f, budget)?;
            let (results, verdict) = verdict_json(g, &v, |gw, p| json!(gw.path_doc(p)));
            let summary = format!("Ext: {} paths ({})", v.witnesses().len(), results["status"].as_str().unwrap_or(""));
            Outcome::new(results, verdict, summary)
        }
        "exhaustive" => {
            g.require_finite()?;
            let e = input::path_set(g, query.get("e"), "e")?;
            let name = field("vertex")?.as_str().ok_or_else(|| CliError::Usage("query: `vertex` must be a string".into()))?;
            let v = input::vertex(g, name)?;
            let ex = alignment::exhaustiveness(g, &e, v);
            let results = json!({
                "exhaustive": ex.exhaustive,
                "witness": ex.witness.as_ref().map(|p| g.path_doc(p)),
                "method": if g.is_locally_convex() { "degree-bound reduction" } else { "exact tail search" },
            });
            let summary = format!("exhaustive at {name}: {}", ex.exhaustive);
            Outcome::new(results, Verdict::Ok, summary)
        }
        "aligned" => {
            let cap = match query.get("cap") {
                Some(Value::String(s)) => input::degree(g, s, "cap")?,
                None => Degree::splat(g.k(), 1),
                Some(_) => return Err(CliError::Usage("query: `cap` must be a degree string".into())),
            };
            let v = alignment::is_finitely_aligned(g, &cap, budget)?;
            let (results, verdict) = verdict_json(g, &v, |_, p| json!(p));
            let summary = format!("finite alignment up to {cap}: {}", results["status"].as_str().unwrap_or(""));
            Outcome::new(results, verdict, summary)
        }
        other => return Err(CliError::Usage(format!("query: unknown op `{other}` (min, vee, ext, exhaustive, aligned)"))),
    };
    Ok(out)
}

pub struct BoundaryArgs {
    pub vertex: Option<VertexId>,
    pub tie: TieBreak,
    pub prefix: Option<Path>,
    pub block: Option<Path>,
    pub bound: Degree,
}

fn boundary_entry(g: &KGraph, x: &BlockPeriodicPath, bound: &Degree) -> CliResult<(Value, Verdict)> {
    let verdict = is_boundary(g, x, bound)?;
    let value = json!({
        "vertex": g.vertex_name(x.range()),
        "path": periodic_json(g, x),
        "verdict": boundary_verdict_json(g, &verdict),
    });
    Ok((value, boundary_verdict_kind(&verdict)))
}

pub fn boundary(g: &KGraph, a: &BoundaryArgs) -> CliResult<Outcome> {
    if let Some(prefix) = &a.prefix {
        let x = match &a.block {
            Some(b) => g.periodic(prefix.clone(), b.clone())?,
            None => BlockPeriodicPath::finite(prefix.clone()),
        };
        let (value, verdict) = boundary_entry(g, &x, &a.bound)?;
        let summary = format!("{}: {}", g.show(prefix), value["verdict"]["status"].as_str().unwrap_or(""));
        return Ok(Outcome::new(value, verdict, summary));
    }
    if a.block.is_some() {
        return Err(CliError::Usage("--block needs --prefix".into()));
    }
    let vertices: Vec<VertexId> = match a.vertex {
        Some(v) => vec![v],
        None => g.vertices().collect(),
    };
    let entries: Vec<CliResult<(Value, Verdict)>> = vertices
        .par_iter()
        .map(|&v| {
            let x = build_boundary_path(g, v, a.tie)?;
            boundary_entry(g, &x, &a.bound)
        })
        .collect();
    let entries = entries.into_iter().collect::<CliResult<Vec<_>>>()?;
    let verdict = entries.iter().fold(Verdict::Ok, |acc, (_, v)| acc.and(*v));
    let lines: Vec<String> = entries
        .iter()
        .map(|(e, _)| format!("{}: {}", e["vertex"].as_str().unwrap_or(""), e["verdict"]["status"].as_str().unwrap_or("")))
        .collect();
    let results = if a.vertex.is_some() {
        entries.into_iter().next().map(|(e, _)| e).unwrap_or(Value::Null)
    } else {
        json!(entries.into_iter().map(|(e, _)| e).collect::<Vec<_>>())
    };
    Ok(Outcome::new(results, verdict, lines.join("\n")))
}

fn condition_a_json(g: &KGraph, v: VertexId, c: &ConditionA) -> Value {
    let certificate = match c {
        ConditionA::Holds(AperiodicWitness::Finite(x)) => json!({"kind": "finite_boundary_path", "path": periodic_json(g, x)}),
        ConditionA::Holds(AperiodicWitness::TwoCycles { lead, c1, c2 }) => json!({
            "kind": "two_cycles",
            "lead": g.path_doc(lead),
            "c1": g.path_doc(c1),
            "c2": g.path_doc(c2),
        }),
        ConditionA::Fails(why) | ConditionA::Inconclusive(why) => json!({"kind": "reason", "detail": why}),
    };
    json!({"vertex": g.vertex_name(v), "condition_a": c.label(), "certificate": certificate})
}

pub fn aperiodicity(g: &KGraph, window: &Degree, budget: usize) -> CliResult<Outcome> {
    g.require_finite()?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let verdicts: Vec<kgraph::Result<ConditionA>> = vertices.par_iter().map(|&v| check_condition_a_at(g, v, budget)).collect();
    let verdicts = verdicts.into_iter().collect::<kgraph::Result<Vec<_>>>()?;
    let probe = essential_freeness_probe(g, window, budget)?;
    let mut verdict = Verdict::Ok;
    let mut table = Vec::new();
    let mut lines = Vec::new();
    for (&v, c) in vertices.iter().zip(&verdicts) {
        verdict = verdict.and(match c {
            ConditionA::Holds(_) => Verdict::Ok,
            ConditionA::Fails(_) => Verdict::Fail,
            ConditionA::Inconclusive(_) => Verdict::Inconclusive,
        });
        table.push(condition_a_json(g, v, c));
        lines.push(format!("{:<12} {}", g.vertex_name(v), c.label()));
    }
    let mut out = Outcome::new(json!({"vertices": table, "probe": probe}), verdict, String::new());
    if probe.consistent == Some(false) {
        out.verdict = Verdict::Fail;
        out.diagnostics.push("freeness probe disagrees with the Condition (A) certificates".into());
    }
    lines.push(format!(
        "probe window {}: {} cylinders, {} empty, {} witnessed, consistent {:?}",
        probe.window, probe.cylinders, probe.empty_cylinders, probe.witnessed, probe.consistent
    ));
    out.summary = lines.join("\n");
    Ok(out)
}

fn element_json(g: &KGraph, e: &GroupoidElement) -> Value {
    json!({"x": periodic_json(g, &e.x), "m": e.m, "y": periodic_json(g, &e.y), "witness": [e.witness.0, e.witness.1]})
}

/// Elements over the window, groupoid laws on composable pairs (at most
/// `budget` products) and the isotropy of each builder path.
pub fn groupoid(g: &KGraph, window: &Degree, budget: usize) -> CliResult<Outcome> {
    g.require_finite()?;
    let elements = window_elements(g, window)?;
    let mut diagnostics = Vec::new();
    let invalid = elements.iter().filter(|e| !g.is_valid_element(e)).count();
    let mut inverse_failures = 0;
    for e in &elements {
        let l = compose_elements(g, e, &invert(e))?;
        let r = compose_elements(g, &invert(e), e)?;
        if !g.elements_equal(&l, &unit(g, &e.x)) || !g.elements_equal(&r, &unit(g, &e.y)) {
            inverse_failures += 1;
        }
    }
    let mut products = 0usize;
    let mut product_failures = 0usize;
    'outer: for a in &elements {
        for b in &elements {
            if !g.path_equals(&a.y, &b.x) {
                continue;
            }
            if products >= budget {
                diagnostics.push(format!("product check stopped after {budget} products"));
                break 'outer;
            }
            products += 1;
            match compose_elements(g, a, b) {
                Ok(ab) if g.is_valid_element(&ab) && g.path_equals(&ab.x, &a.x) && g.path_equals(&ab.y, &b.y) => {}
                _ => product_failures += 1,
            }
        }
    }
    let mut iso = Vec::new();
    for v in g.vertices() {
        let x = build_boundary_path(g, v, TieBreak::Lex)?;
        let rep = isotropy(g, &x, &complete_isotropy_bound(&x))?;
        iso.push(json!({"vertex": g.vertex_name(v), "path": periodic_json(g, &x), "aperiodic": x.is_finite(), "isotropy": rep}));
    }
    let ok = invalid == 0 && inverse_failures == 0 && product_failures == 0;
    if !ok {
        diagnostics.push(format!(
            "{invalid} invalid elements, {inverse_failures} inverse failures, {product_failures} product failures"
        ));
    }
    let verdict = if !ok {
        Verdict::Fail
    } else if diagnostics.is_empty() {
        Verdict::Ok
    } else {
        Verdict::Inconclusive
    };
    let summary = format!("{} elements over window {window}, {products} products checked", elements.len());
    let results = json!({
        "window": window,
        "count": elements.len(),
        "elements": elements.iter().map(|e| element_json(g, e)).collect::<Vec<_>>(),
        "checks": {
            "invalid": invalid,
            "inverse_failures": inverse_failures,
            "products": products,
            "product_failures": product_failures,
        },
        "builder_isotropy": iso,
    });
    let mut out = Outcome::new(results, verdict, summary);
    out.diagnostics = diagnostics;
    Ok(out)
}

pub fn skew(g: &KGraph, doc: &SkewDoc, window: &Degree) -> CliResult<Outcome> {
    let group = GroupSpec::from_doc(&doc.group)?;
    let labels = Labeling::from_doc(g, &group, &doc.labels)?;
    let sp = skew_product(g, &group, &labels)?;
    let report = verify_skew_iso(&sp, window)?;
    let verdict = if report.passed { Verdict::Ok } else { Verdict::Fail };
    let summary = format!(
        "skew product by a group of order {}: {} vertices, {} edges; {} elements checked, passed {}",
        group.order(),
        sp.graph.skeleton().vertex_count(),
        sp.graph.skeleton().edge_count(),
        report.elements,
        report.passed
    );
    let mut out = Outcome::new(json!({"graph": sp.graph.skeleton().to_doc(), "report": report}), verdict, summary);
    out.diagnostics = out.results["report"]["counterexamples"]
        .as_array()
        .map(|a| a.iter().filter_map(|s| s.as_str().map(str::to_string)).collect())
        .unwrap_or_default();
    Ok(out)
}
