//! Loading graphs, degrees, paths and auxiliary documents from the command line.

use std::io::Read;
use std::path::Path as FsPath;

use kgraph::{fixtures, validate_kgraph, Degree, Error, KGraph, Path, Skeleton, SkeletonDoc};
use serde_json::Value;

/// Errors that end a run before any verdict exists.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable files, malformed JSON: exit 2.
    Usage(String),
    /// The input parsed but is not a k-graph: exit 1.
    Invalid(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::LazyGraph | Error::RankMismatch { .. } | Error::UnknownVertex(_) | Error::UnknownEdge(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Invalid(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub struct LoadedGraph {
    pub graph: KGraph,
    /// Bytes fed to the input digest.
    pub source: String,
    pub label: String,
}

pub fn read_text(path: &FsPath) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))
}

/// `--fixture "cycle 3"` takes precedence; otherwise `--graph FILE`, or
/// standard input when neither is given.
pub fn load_graph(graph: Option<&FsPath>, fixture: Option<&str>) -> CliResult<LoadedGraph> {
    if let Some(desc) = fixture {
        let mut words = desc.split_whitespace().map(str::to_string);
        let name = words.next().ok_or_else(|| CliError::Usage("empty --fixture".into()))?;
        let args: Vec<String> = words.collect();
        let g = fixtures::by_name(&name, &args).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(LoadedGraph { graph: g, source: format!("fixture:{desc}"), label: format!("fixture {desc}") });
    }
    let path = graph.unwrap_or(FsPath::new("-"));
    let text = read_text(path)?;
    let label = if path.as_os_str() == "-" { "stdin".to_string() } else { path.display().to_string() };
    let doc: SkeletonDoc =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{label}: malformed skeleton document: {e}")))?;
    let sk = Skeleton::from_doc(&doc).map_err(|e| CliError::Invalid(e.to_string()))?;
    let g = validate_kgraph(sk).map_err(|e| CliError::Invalid(e.to_string()))?;
    Ok(LoadedGraph { graph: g, source: text, label })
}

pub fn degree(g: &KGraph, text: &str, flag: &str) -> CliResult<Degree> {
    let d = Degree::parse(text).ok_or_else(|| CliError::Usage(format!("{flag}: cannot parse degree `{text}`")))?;
    if d.rank() != g.k() {
        return Err(CliError::Usage(format!("{flag}: degree `{text}` has rank {}, graph has rank {}", d.rank(), g.k())));
    }
    Ok(d)
}

pub fn degree_or(g: &KGraph, text: Option<&str>, flag: &str, fill: u32) -> CliResult<Degree> {
    match text {
        Some(t) => degree(g, t, flag),
        None => Ok(Degree::splat(g.k(), fill)),
    }
}

/// A path literal: a vertex name, or an array of edge names.
pub fn path_literal(g: &KGraph, v: &Value, field: &str) -> CliResult<Path> {
    let names: Vec<&str> = match v {
        Value::String(s) => vec![s.as_str()],
        Value::Array(items) => items
            .iter()
            .map(|x| x.as_str().ok_or_else(|| CliError::Usage(format!("{field}: edge names must be strings"))))
            .collect::<CliResult<_>>()?,
        _ => return Err(CliError::Usage(format!("{field}: expected a vertex name or an array of edge names"))),
    };
    g.path_from_names(&names).map_err(|e| CliError::Usage(format!("{field}: {e}")))
}

pub fn path_set(g: &KGraph, v: Option<&Value>, field: &str) -> CliResult<Vec<Path>> {
    match v {
        Some(Value::Array(items)) => {
            items.iter().enumerate().map(|(i, x)| path_literal(g, x, &format!("{field}[{i}]"))).collect()
        }
        _ => Err(CliError::Usage(format!("{field}: expected an array of path literals"))),
    }
}

/// Comma-separated edge names, or a single vertex name.
pub fn path_list(g: &KGraph, text: &str, flag: &str) -> CliResult<Path> {
    let names: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    g.path_from_names(&names).map_err(|e| CliError::Usage(format!("{flag}: {e}")))
}

pub fn vertex(g: &KGraph, name: &str) -> CliResult<kgraph::VertexId> {
    g.vertex_id(name).map_err(|e| CliError::Usage(format!("--vertex: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn path_literals() {
        let g = fixtures::sq2();
        let p = path_literal(&g, &json!(["b1", "a1"]), "p").unwrap();
        assert_eq!(p.len(), 2);
        assert!(path_literal(&g, &json!("v"), "p").unwrap().is_vertex());
        assert!(matches!(path_literal(&g, &json!(3), "p"), Err(CliError::Usage(_))));
        assert!(matches!(path_literal(&g, &json!(["zz"]), "p"), Err(CliError::Usage(_))));
    }

    #[test]
    fn degree_rank_is_checked() {
        let g = fixtures::sq2();
        assert_eq!(degree(&g, "1,2", "--bound").unwrap(), Degree::new(vec![1, 2]));
        assert!(matches!(degree(&g, "1", "--bound"), Err(CliError::Usage(_))));
        assert_eq!(degree_or(&g, None, "--bound", 3).unwrap(), Degree::splat(2, 3));
    }

    #[test]
    fn fixture_loading() {
        let lg = load_graph(None, Some("cycle 4")).unwrap();
        assert_eq!(lg.graph.skeleton().vertex_count(), 4);
        assert!(matches!(load_graph(None, Some("nothing")), Err(CliError::Usage(_))));
    }
}
