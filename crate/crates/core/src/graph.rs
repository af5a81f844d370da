//! Finite directed multigraphs and the graph conditions that make the
//! Leavitt path algebra `L(E)` purely infinite simple.
//!
//! Parallel edges are stored as a multiplicity on a single `(source, target)`
//! record. The order of the vertex list is the basis order of every matrix
//! derived from a graph.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// A finite directed multigraph with named vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    /// `(source, target) -> multiplicity`, each multiplicity at least 1.
    edges: BTreeMap<(usize, usize), u64>,
}

impl DirectedGraph {
    /// Builds a graph, merging repeated `(source, target)` records by summing
    /// their multiplicities.
    pub fn new<S, I>(vertices: Vec<S>, edges: I) -> Result<Self>
    where
        S: Into<String>,
        I: IntoIterator<Item = (String, String, u64)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        if vertices.is_empty() {
            return Err(Error::EmptyVertexList);
        }
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::EmptyVertexName);
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(v.clone()));
            }
        }
        let mut merged = BTreeMap::new();
        for (src, dst, mult) in edges {
            let s = *index
                .get(&src)
                .ok_or_else(|| Error::UnknownVertex(src.clone()))?;
            let t = *index
                .get(&dst)
                .ok_or_else(|| Error::UnknownVertex(dst.clone()))?;
            if mult == 0 {
                return Err(Error::BadMultiplicity {
                    src,
                    dst,
                    multiplicity: "0".into(),
                });
            }
            *merged.entry((s, t)).or_insert(0u64) += mult;
        }
        Ok(Self {
            vertices,
            index,
            edges: merged,
        })
    }

    /// One vertex `v` with `petals` loops. `rose(q)` defines the Leavitt algebra `L_q`.
    pub fn rose(petals: u64) -> Self {
        let edges = (petals > 0).then(|| ("v".to_string(), "v".to_string(), petals));
        Self::new(vec!["v"], edges).expect("rose graph is well-formed")
    }

    /// Rebuilds a graph from a square nonnegative adjacency matrix, naming
    /// vertices `v0, v1, ...`.
    pub fn from_adjacency(a: &IntMatrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        let names: Vec<String> = (0..a.rows()).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let e = &a[(i, j)];
                let mult: u64 = e.try_into().map_err(|_| Error::BadMultiplicity {
                    src: names[i].clone(),
                    dst: names[j].clone(),
                    multiplicity: e.to_string(),
                })?;
                if mult > 0 {
                    edges.push((names[i].clone(), names[j].clone(), mult));
                }
            }
        }
        Self::new(names.clone(), edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Edge records `(source, target, multiplicity)` by vertex index, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.edges.iter().map(|(&(s, t), &m)| (s, t, m))
    }

    pub fn edge_multiplicity(&self, src: usize, dst: usize) -> u64 {
        self.edges.get(&(src, dst)).copied().unwrap_or(0)
    }

    /// Total number of edges leaving `v`, counted with multiplicity.
    pub fn out_degree(&self, v: usize) -> u64 {
        self.edges.range((v, 0)..(v + 1, 0)).map(|(_, &m)| m).sum()
    }

    /// Distinct targets of edges leaving `v`.
    pub fn successors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((v, 0)..(v + 1, 0)).map(|(&(_, t), _)| t)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.successors(v).next().is_none()
    }

    /// Entry `(i, j)` counts edges from vertex `i` to vertex `j`.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let n = self.vertex_count();
        let mut a = IntMatrix::zeros(n, n);
        for (s, t, m) in self.edges() {
            a[(s, t)] = BigInt::from(m);
        }
        a
    }

    /// Strongly connected components, each sorted, in reverse topological order.
    pub fn strongly_connected_components(&self) -> Vec<Vec<usize>> {
        tarjan(self)
    }

    /// Adds `name` as a fresh vertex; used by graph constructions.
    pub(crate) fn push_vertex(&mut self, name: String) -> usize {
        let id = self.vertices.len();
        self.index.insert(name.clone(), id);
        self.vertices.push(name);
        id
    }

    pub(crate) fn add_edges(&mut self, src: usize, dst: usize, mult: u64) {
        *self.edges.entry((src, dst)).or_insert(0) += mult;
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertices.clone(),
            edges: self
                .edges()
                .map(|(s, t, m)| (self.vertices[s].clone(), self.vertices[t].clone(), m))
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph file serializes")
    }
}

/// On-disk graph shape: `{"vertices": [...], "edges": [[src, dst, mult], ...]}`.
#[derive(Clone, Debug, Serialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, u64)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<Vec<Value>>,
}

/// Parses the JSON graph format. Multiplicity defaults to 1 when omitted.
pub fn parse_graph(text: &str) -> Result<DirectedGraph> {
    let raw: RawGraph = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut edges = Vec::with_capacity(raw.edges.len());
    for rec in raw.edges {
        let (src, dst, mult) = match rec.as_slice() {
            [s, t] => (s, t, None),
            [s, t, m] => (s, t, Some(m)),
            _ => {
                return Err(Error::Parse(format!(
                    "edge record must be [src, dst] or [src, dst, multiplicity], got {} items",
                    rec.len()
                )))
            }
        };
        let name = |v: &Value| {
            v.as_str()
                .map(str::to_owned)
                .ok_or_else(|| Error::Parse(format!("vertex name must be a string, got {v}")))
        };
        let (src, dst) = (name(src)?, name(dst)?);
        let mult = match mult {
            None => 1,
            Some(Value::Number(n)) => match n.as_u64() {
                Some(m) if m > 0 => m,
                _ => {
                    return Err(Error::BadMultiplicity {
                        src,
                        dst,
                        multiplicity: n.to_string(),
                    })
                }
            },
            Some(other) => {
                return Err(Error::Parse(format!(
                    "multiplicity must be an integer, got {other}"
                )))
            }
        };
        edges.push((src, dst, mult));
    }
    DirectedGraph::new(raw.vertices, edges)
}

/// Outcome of the three graph conditions for pure infinite simplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PisReport {
    pub every_cycle_has_exit: bool,
    pub trivial_hereditary_saturated: bool,
    pub every_vertex_connects_to_cycle: bool,
    pub purely_infinite_simple: bool,
}

/// Condition (L). A cycle without exit is exactly a nontrivial strongly
/// connected component in which every vertex has total out-degree 1.
pub fn every_cycle_has_exit(g: &DirectedGraph) -> bool {
    g.strongly_connected_components()
        .iter()
        .filter(|scc| is_cyclic_component(g, scc))
        .all(|scc| scc.iter().any(|&v| g.out_degree(v) != 1))
}

/// True iff the only hereditary saturated vertex sets are empty and full.
pub fn trivial_hereditary_saturated(g: &DirectedGraph) -> bool {
    (0..g.vertex_count()).all(|v| {
        hereditary_saturated_closure(g, &[v])
            .iter()
            .all(|&inside| inside)
    })
}

/// Smallest hereditary saturated set containing `seed`, as a membership mask.
pub fn hereditary_saturated_closure(g: &DirectedGraph, seed: &[usize]) -> Vec<bool> {
    let n = g.vertex_count();
    let mut inside = vec![false; n];
    for &v in seed {
        inside[v] = true;
    }
    loop {
        let mut changed = false;
        // hereditary pass
        let mut stack: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
        while let Some(v) = stack.pop() {
            for w in g.successors(v) {
                if !inside[w] {
                    inside[w] = true;
                    changed = true;
                    stack.push(w);
                }
            }
        }
        // saturation pass
        for v in 0..n {
            if !inside[v] && !g.is_sink(v) && g.successors(v).all(|w| inside[w]) {
                inside[v] = true;
                changed = true;
            }
        }
        if !changed {
            return inside;
        }
    }
}

/// True iff every vertex has a (possibly empty) path to a vertex on a cycle.
pub fn every_vertex_connects_to_cycle(g: &DirectedGraph) -> bool {
    let n = g.vertex_count();
    let mut reaches = vec![false; n];
    for scc in g.strongly_connected_components() {
        if is_cyclic_component(g, &scc) {
            for v in scc {
                reaches[v] = true;
            }
        }
    }
    // reverse BFS from cycle vertices
    let mut preds = vec![Vec::new(); n];
    for (s, t, _) in g.edges() {
        preds[t].push(s);
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| reaches[v]).collect();
    while let Some(v) = queue.pop() {
        for &p in &preds[v] {
            if !reaches[p] {
                reaches[p] = true;
                queue.push(p);
            }
        }
    }
    reaches.into_iter().all(|r| r)
}

pub fn purely_infinite_simple(g: &DirectedGraph) -> PisReport {
    let every_cycle_has_exit = every_cycle_has_exit(g);
    let trivial_hereditary_saturated = trivial_hereditary_saturated(g);
    let every_vertex_connects_to_cycle = every_vertex_connects_to_cycle(g);
    PisReport {
        every_cycle_has_exit,
        trivial_hereditary_saturated,
        every_vertex_connects_to_cycle,
        purely_infinite_simple: every_cycle_has_exit
            && trivial_hereditary_saturated
            && every_vertex_connects_to_cycle,
    }
}

fn is_cyclic_component(g: &DirectedGraph, scc: &[usize]) -> bool {
    scc.len() > 1 || g.edge_multiplicity(scc[0], scc[0]) > 0
}

fn tarjan(g: &DirectedGraph) -> Vec<Vec<usize>> {
    const UNSEEN: usize = usize::MAX;
    let n = g.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.successors(v).collect()).collect();
    let mut order = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;

    for root in 0..n {
        if order[root] != UNSEEN {
            continue;
        }
        // (vertex, next successor position)
        let mut call = vec![(root, 0usize)];
        order[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if order[w] == UNSEEN {
                    order[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(order[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == order[v] {
                let mut comp = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                comps.push(comp);
            }
        }
    }
    comps
}
