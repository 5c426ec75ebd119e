//! Browser bindings for the demo page. Every entry point takes and returns JSON
//! strings; failures come back as `{"ok": false, "error": "..."}`.

use kgraph::boundary::{build_boundary_path, is_boundary, BoundaryVerdict, TieBreak};
use kgraph::groupoid::{check_condition_a, AperiodicWitness, ConditionA};
use kgraph::skew::{skew_product, verify_skew_iso, GroupSpec, Labeling, SkewDoc};
use kgraph::{fixtures, parse_skeleton, validate_kgraph, Degree, KGraph};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

type Res = Result<Value, String>;

fn wrap(r: Res) -> String {
    match r {
        Ok(mut v) => {
            v["ok"] = Value::Bool(true);
            v.to_string()
        }
        Err(e) => json!({"ok": false, "error": e}).to_string(),
    }
}

fn graph(text: &str) -> Result<KGraph, String> {
    let sk = parse_skeleton(text).map_err(|e| e.to_string())?;
    validate_kgraph(sk).map_err(|e| e.to_string())
}

fn load_fixture(desc: &str) -> Res {
    let mut words = desc.split_whitespace().map(str::to_string);
    let name = words.next().ok_or("empty fixture name")?;
    let args: Vec<String> = words.collect();
    let g = fixtures::by_name(&name, &args).map_err(|e| e.to_string())?;
    Ok(json!({"graph": g.skeleton().to_doc()}))
}

fn boundary(text: &str, vertex: &str, input_order: bool, bound: u32) -> Res {
    let g = graph(text)?;
    let v = g.vertex_id(vertex).map_err(|e| e.to_string())?;
    let tie = if input_order { TieBreak::InputOrder } else { TieBreak::Lex };
    let x = build_boundary_path(&g, v, tie).map_err(|e| e.to_string())?;
    let verdict = match is_boundary(&g, &x, &Degree::splat(g.k(), bound)).map_err(|e| e.to_string())? {
        BoundaryVerdict::Boundary => json!({"status": "boundary"}),
        BoundaryVerdict::NotBoundary { witness, at } => json!({
            "status": "not_boundary",
            "at": at,
            "witness": witness.iter().map(|p| g.show(p)).collect::<Vec<_>>(),
        }),
        BoundaryVerdict::InconclusiveUpTo(d) => json!({"status": "inconclusive", "up_to": d}),
    };
    Ok(json!({"path": g.periodic_doc(&x), "verdict": verdict}))
}

fn condition_a(text: &str, budget: usize) -> Res {
    let g = graph(text)?;
    let table: Vec<Value> = check_condition_a(&g, budget)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|vv| {
            let detail = match &vv.verdict {
                ConditionA::Holds(AperiodicWitness::Finite(x)) => format!("finite boundary path {}", g.show(x.prefix())),
                ConditionA::Holds(AperiodicWitness::TwoCycles { lead, c1, c2 }) => {
                    format!("lead {} with cycles {} and {}", g.show(lead), g.show(c1), g.show(c2))
                }
                ConditionA::Fails(s) | ConditionA::Inconclusive(s) => s.clone(),
            };
            json!({"vertex": g.vertex_name(vv.vertex), "condition_a": vv.verdict.label(), "detail": detail})
        })
        .collect();
    Ok(json!({"vertices": table}))
}

fn skew(text: &str, labels: &str, window: u32) -> Res {
    let g = graph(text)?;
    let doc: SkewDoc = serde_json::from_str(labels).map_err(|e| e.to_string())?;
    let group = GroupSpec::from_doc(&doc.group).map_err(|e| e.to_string())?;
    let c = Labeling::from_doc(&g, &group, &doc.labels).map_err(|e| e.to_string())?;
    let sp = skew_product(&g, &group, &c).map_err(|e| e.to_string())?;
    let report = verify_skew_iso(&sp, &Degree::splat(g.k(), window)).map_err(|e| e.to_string())?;
    Ok(json!({"graph": sp.graph.skeleton().to_doc(), "report": report}))
}

/// Skeleton JSON of a built-in graph, e.g. `"cycle 3"`.
#[wasm_bindgen]
pub fn fixture(desc: &str) -> String {
    wrap(load_fixture(desc))
}

/// Builder path at `vertex` and its boundary verdict up to `(bound,…,bound)`.
#[wasm_bindgen]
pub fn boundary_path(graph_json: &str, vertex: &str, input_order: bool, bound: u32) -> String {
    wrap(boundary(graph_json, vertex, input_order, bound))
}

/// Condition (A) per vertex.
#[wasm_bindgen]
pub fn aperiodicity(graph_json: &str, budget: usize) -> String {
    wrap(condition_a(graph_json, budget))
}

/// Skew product by `{"group", "labels"}` with its verification report.
#[wasm_bindgen]
pub fn skew_graph(graph_json: &str, labels_json: &str, window: u32) -> String {
    wrap(skew(graph_json, labels_json, window))
}
