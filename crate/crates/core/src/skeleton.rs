//! Finite 1-skeleton presentations and their JSON form.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// 1-based color.
    pub color: usize,
    pub range: VertexId,
    pub source: VertexId,
}

/// `left[0]·left[1] = right[0]·right[1]`, where `left` has colors `(i, j)`
/// with `i < j` and `right` has colors `(j, i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Square {
    pub left: [EdgeId; 2],
    pub right: [EdgeId; 2],
}

/// A k-colored directed multigraph with factorization squares.
///
/// Construction checks the local invariants only (ids, colors, square
/// endpoints). Totality and bijectivity of the square relation are checked by
/// [`Skeleton::check_square_bijection`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Skeleton {
    k: usize,
    vertices: Vec<String>,
    edges: Vec<Edge>,
    squares: Vec<Square>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
}

/// The interchange format: `{"k", "vertices", "edges", "squares"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SkeletonDoc {
    pub k: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub squares: Vec<SquareDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub id: String,
    pub color: usize,
    pub range: String,
    pub source: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareDoc {
    pub left: [String; 2],
    pub right: [String; 2],
}

impl EdgeDoc {
    pub fn new(id: impl Into<String>, color: usize, range: impl Into<String>, source: impl Into<String>) -> Self {
        EdgeDoc { id: id.into(), color, range: range.into(), source: source.into() }
    }
}

impl SquareDoc {
    pub fn new(left: [&str; 2], right: [&str; 2]) -> Self {
        SquareDoc {
            left: [left[0].to_string(), left[1].to_string()],
            right: [right[0].to_string(), right[1].to_string()],
        }
    }
}

/// Parses a skeleton document and checks every skeleton invariant, including
/// that the squares pair bi-colored composable pairs bijectively.
pub fn parse_skeleton(text: &str) -> Result<Skeleton> {
    let doc: SkeletonDoc = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let sk = Skeleton::from_doc(&doc)?;
    sk.check_square_bijection()?;
    Ok(sk)
}

impl Skeleton {
    pub fn from_doc(doc: &SkeletonDoc) -> Result<Skeleton> {
        if doc.k == 0 {
            return Err(Error::ZeroRank);
        }
        let mut vertex_index = HashMap::new();
        for (i, v) in doc.vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut edge_index = HashMap::new();
        let mut edges = Vec::with_capacity(doc.edges.len());
        for (i, e) in doc.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), EdgeId(i as u32)).is_some() {
                return Err(Error::DuplicateEdge(e.id.clone()));
            }
            if e.color == 0 || e.color > doc.k {
                return Err(Error::BadColor { edge: e.id.clone(), color: e.color, k: doc.k });
            }
            let lookup = |name: &String| {
                vertex_index
                    .get(name)
                    .copied()
                    .ok_or_else(|| Error::DanglingVertex { edge: e.id.clone(), vertex: name.clone() })
            };
            edges.push(Edge { name: e.id.clone(), color: e.color, range: lookup(&e.range)?, source: lookup(&e.source)? });
        }
        let mut sk = Skeleton { k: doc.k, vertices: doc.vertices.clone(), edges, squares: Vec::new(), vertex_index, edge_index };
        for sq in &doc.squares {
            let id = |name: &String| sk.edge_id(name).ok_or_else(|| Error::DanglingEdge(name.clone()));
            let left = [id(&sq.left[0])?, id(&sq.left[1])?];
            let right = [id(&sq.right[0])?, id(&sq.right[1])?];
            let square = sk.orient_square(left, right)?;
            sk.squares.push(square);
        }
        Ok(sk)
    }

    /// Checks colors and endpoints, and flips the square so that the lower
    /// color leads on the left.
    fn orient_square(&self, left: [EdgeId; 2], right: [EdgeId; 2]) -> Result<Square> {
        let malformed = |reason: &str| Error::MalformedSquare {
            left: format!("{}, {}", self.edge(left[0]).name, self.edge(left[1]).name),
            right: format!("{}, {}", self.edge(right[0]).name, self.edge(right[1]).name),
            reason: reason.to_string(),
        };
        let c = |e: EdgeId| self.edge(e).color;
        let (left, right) = if c(left[0]) > c(left[1]) { (right, left) } else { (left, right) };
        let (i, j) = (c(left[0]), c(left[1]));
        if i == j {
            return Err(malformed("square must pair two distinct colors"));
        }
        if c(right[0]) != j || c(right[1]) != i {
            return Err(malformed("right side must have colors (j, i) for left colors (i, j)"));
        }
        let (e1, e2, f2, f1) = (self.edge(left[0]), self.edge(left[1]), self.edge(right[0]), self.edge(right[1]));
        if e1.source != e2.range || f2.source != f1.range {
            return Err(malformed("a side is not composable"));
        }
        if e1.range != f2.range || e2.source != f1.source {
            return Err(malformed("sides have different endpoints"));
        }
        Ok(Square { left, right })
    }

    /// Every bi-colored composable pair occurs in exactly one square.
    pub fn check_square_bijection(&self) -> Result<()> {
        let mut count: HashMap<(EdgeId, EdgeId), usize> = HashMap::new();
        for sq in &self.squares {
            *count.entry((sq.left[0], sq.left[1])).or_default() += 1;
            *count.entry((sq.right[0], sq.right[1])).or_default() += 1;
        }
        let mut bad: Vec<_> = count.iter().filter(|(_, &n)| n > 1).collect();
        bad.sort();
        if let Some((&(a, b), &n)) = bad.first() {
            return Err(Error::NonBijective { first: self.edge(a).name.clone(), second: self.edge(b).name.clone(), count: n });
        }
        for (ia, a) in self.edges.iter().enumerate() {
            for (ib, b) in self.edges.iter().enumerate() {
                if a.color != b.color && a.source == b.range && !count.contains_key(&(EdgeId(ia as u32), EdgeId(ib as u32))) {
                    return Err(Error::IncompleteSquares(a.name.clone(), b.name.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex_id(&self, name: &str) -> Option<VertexId> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edge_id(&self, name: &str) -> Option<EdgeId> {
        self.edge_index.get(name).copied()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn squares(&self) -> &[Square] {
        &self.squares
    }

    pub fn to_doc(&self) -> SkeletonDoc {
        SkeletonDoc {
            k: self.k,
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeDoc::new(&e.name, e.color, self.vertex_name(e.range), self.vertex_name(e.source)))
                .collect(),
            squares: self
                .squares
                .iter()
                .map(|s| SquareDoc {
                    left: [self.edge(s.left[0]).name.clone(), self.edge(s.left[1]).name.clone()],
                    right: [self.edge(s.right[0]).name.clone(), self.edge(s.right[1]).name.clone()],
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_doc()).expect("skeleton documents always serialize")
    }

    /// Order-insensitive summary used to compare documents.
    pub fn fingerprint(&self) -> (usize, Vec<String>, BTreeMap<String, (usize, String, String)>, HashSet<[String; 4]>) {
        let doc = self.to_doc();
        let mut vertices = doc.vertices.clone();
        vertices.sort();
        let edges = doc.edges.iter().map(|e| (e.id.clone(), (e.color, e.range.clone(), e.source.clone()))).collect();
        let squares = doc
            .squares
            .iter()
            .map(|s| [s.left[0].clone(), s.left[1].clone(), s.right[0].clone(), s.right[1].clone()])
            .collect();
        (doc.k, vertices, edges, squares)
    }
}
