use std::collections::BTreeMap;

use linalg_kernel::CMatrix;

use crate::error::GraphError;
use crate::unitary::UnitaryBlock;

/// Field over which the signature acts: real blocks are orthogonal matrices,
/// complex blocks unitary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// One undirected edge. The signature block is stored for the canonical
/// orientation, from the lexicographically smaller vertex id to the larger;
/// the reverse direction is derived as the conjugate transpose, so the
/// inverse-consistency of the connection cannot drift.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
    pub sigma: UnitaryBlock,
}

/// Degree data: d_x = sum of incident weights; the non-normalized constant
/// max_x d_x / mu(x); the normalized constant max over edges of mu(x) / w_xy.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeConstants {
    pub d_non: f64,
    pub d_nor: f64,
    pub vertex_degrees: Vec<f64>,
    /// Set when some vertex has no incident edge; d_nor skips such vertices
    /// and is reported as 0 when every vertex is isolated.
    pub has_isolated: bool,
}

/// Weighted undirected simple graph, a positive vertex measure, and a unitary
/// signature on oriented edges. Immutable after validation.
#[derive(Debug, Clone, PartialEq)]
pub struct SignedGraph {
    ids: Vec<String>,
    index: BTreeMap<String, usize>,
    d: usize,
    field: Field,
    measure: Vec<f64>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl SignedGraph {
    pub fn builder(d: usize, field: Field) -> GraphBuilder {
        GraphBuilder {
            d,
            field,
            vertices: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id_of(&self, x: usize) -> &str {
        &self.ids[x]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn measure(&self, x: usize) -> f64 {
        self.measure[x]
    }

    pub fn measures(&self) -> &[f64] {
        &self.measure
    }

    pub fn total_measure(&self) -> f64 {
        self.measure.iter().sum()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Incident edges of x as (neighbor, edge index) pairs.
    pub fn neighbors(&self, x: usize) -> &[(usize, usize)] {
        &self.adjacency[x]
    }

    pub fn are_adjacent(&self, x: usize, y: usize) -> bool {
        self.adjacency[x].iter().any(|&(n, _)| n == y)
    }

    pub fn edge_between(&self, x: usize, y: usize) -> Option<&Edge> {
        self.adjacency[x]
            .iter()
            .find(|&&(n, _)| n == y)
            .map(|&(_, e)| &self.edges[e])
    }

    /// Signature of the oriented edge (x, y); the stored block when x is the
    /// canonical tail, its conjugate transpose otherwise.
    pub fn sigma(&self, x: usize, y: usize) -> Option<CMatrix> {
        let edge = self.edge_between(x, y)?;
        if edge.u == x {
            Some(edge.sigma.entries().clone())
        } else {
            Some(edge.sigma.entries().adjoint())
        }
    }

    /// Weighted degree d_x.
    pub fn degree(&self, x: usize) -> f64 {
        self.adjacency[x]
            .iter()
            .map(|&(_, e)| self.edges[e].weight)
            .sum()
    }

    pub fn degree_constants(&self) -> DegreeConstants {
        let vertex_degrees: Vec<f64> = (0..self.n()).map(|x| self.degree(x)).collect();
        let has_isolated = self.adjacency.iter().any(|a| a.is_empty());
        let d_non = (0..self.n())
            .map(|x| vertex_degrees[x] / self.measure[x])
            .fold(0.0, f64::max);
        let d_nor = (0..self.n())
            .flat_map(|x| {
                self.adjacency[x]
                    .iter()
                    .map(move |&(_, e)| self.measure[x] / self.edges[e].weight)
            })
            .fold(0.0, f64::max);
        DegreeConstants {
            d_non,
            d_nor,
            vertex_degrees,
            has_isolated,
        }
    }

    /// Connected components as sorted vertex index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut stack = vec![start];
            let mut comp = Vec::new();
            seen[start] = true;
            while let Some(x) = stack.pop() {
                comp.push(x);
                for &(y, _) in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Rebuilds with the same combinatorics but a new signature assignment;
    /// the map receives each canonical edge and returns its new block.
    pub(crate) fn with_signature<F>(&self, mut f: F) -> Result<SignedGraph, GraphError>
    where
        F: FnMut(&Edge) -> Result<UnitaryBlock, GraphError>,
    {
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let sigma = f(e)?;
            if sigma.dim() != self.d {
                return Err(GraphError::DimensionMismatch {
                    context: format!("signature on {{{},{}}}", self.ids[e.u], self.ids[e.v]),
                    expected: self.d,
                    found: sigma.dim(),
                });
            }
            edges.push(Edge {
                u: e.u,
                v: e.v,
                weight: e.weight,
                sigma,
            });
        }
        Ok(SignedGraph {
            ids: self.ids.clone(),
            index: self.index.clone(),
            d: self.d,
            field: self.field,
            measure: self.measure.clone(),
            adjacency: self.adjacency.clone(),
            edges,
        })
    }

    /// Same graph with every vertex measure replaced by `f(id, old)`.
    pub fn with_measure<F>(&self, mut f: F) -> Result<SignedGraph, GraphError>
    where
        F: FnMut(&str, f64) -> f64,
    {
        let mut measure = Vec::with_capacity(self.n());
        for (i, id) in self.ids.iter().enumerate() {
            let m = f(id, self.measure[i]);
            if !(m > 0.0) {
                return Err(GraphError::NonPositiveMeasure {
                    id: id.clone(),
                    measure: m,
                });
            }
            measure.push(m);
        }
        let mut g = self.clone();
        g.measure = measure;
        Ok(g)
    }
}

pub struct GraphBuilder {
    d: usize,
    field: Field,
    vertices: Vec<(String, f64)>,
    edges: Vec<(String, String, f64, CMatrix)>,
}

impl GraphBuilder {
    pub fn vertex(mut self, id: &str, measure: f64) -> Self {
        self.vertices.push((id.to_string(), measure));
        self
    }

    /// Adds an edge with the signature block given for the (u, v) orientation
    /// as listed, not necessarily canonical.
    pub fn edge(mut self, u: &str, v: &str, weight: f64, sigma: CMatrix) -> Self {
        self.edges.push((u.to_string(), v.to_string(), weight, sigma));
        self
    }

    pub fn build(self) -> Result<SignedGraph, GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::EmptyGraph);
        }
        let mut ids: Vec<String> = self.vertices.iter().map(|(id, _)| id.clone()).collect();
        ids.sort();
        ids.dedup();
        if ids.len() != self.vertices.len() {
            let mut seen = std::collections::BTreeSet::new();
            for (id, _) in &self.vertices {
                if !seen.insert(id.clone()) {
                    return Err(GraphError::DuplicateVertex { id: id.clone() });
                }
            }
        }
        let index: BTreeMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();

        let mut measure = vec![0.0; ids.len()];
        for (id, m) in &self.vertices {
            if !(*m > 0.0) {
                return Err(GraphError::NonPositiveMeasure {
                    id: id.clone(),
                    measure: *m,
                });
            }
            measure[index[id]] = *m;
        }

        let mut edges: Vec<Edge> = Vec::with_capacity(self.edges.len());
        let mut seen_pairs = std::collections::BTreeSet::new();
        for (uid, vid, weight, sigma_raw) in self.edges {
            let &u = index.get(&uid).ok_or(GraphError::UnknownVertex {
                id: uid.clone(),
            })?;
            let &v = index.get(&vid).ok_or(GraphError::UnknownVertex {
                id: vid.clone(),
            })?;
            if u == v {
                return Err(GraphError::SelfLoop { id: uid });
            }
            if !(weight > 0.0) {
                return Err(GraphError::NonPositiveWeight {
                    u: uid,
                    v: vid,
                    weight,
                });
            }
            if !seen_pairs.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge { u: uid, v: vid });
            }
            if sigma_raw.rows() != self.d || sigma_raw.cols() != self.d {
                return Err(GraphError::DimensionMismatch {
                    context: format!("signature on {{{uid},{vid}}}"),
                    expected: self.d,
                    found: sigma_raw.rows().max(sigma_raw.cols()),
                });
            }
            if self.field == Field::Real && sigma_raw.data().iter().any(|z| z.im != 0.0) {
                return Err(GraphError::RealFieldComplexEntry { u: uid, v: vid });
            }
            // Canonical orientation: smaller id first. Flip by adjoint if the
            // edge came in the other way around.
            let (cu, cv, oriented) = if u < v {
                (u, v, sigma_raw)
            } else {
                (v, u, sigma_raw.adjoint())
            };
            let sigma = UnitaryBlock::new(oriented).map_err(|e| match e {
                GraphError::NonUnitary {
                    defect, tolerance, ..
                } => GraphError::NonUnitary {
                    u: ids[cu].clone(),
                    v: ids[cv].clone(),
                    defect,
                    tolerance,
                },
                other => other,
            })?;
            edges.push(Edge {
                u: cu,
                v: cv,
                weight,
                sigma,
            });
        }
        edges.sort_by(|a, b| (a.u, a.v).cmp(&(b.u, b.v)));

        let mut adjacency = vec![Vec::new(); ids.len()];
        for (e, edge) in edges.iter().enumerate() {
            adjacency[edge.u].push((edge.v, e));
            adjacency[edge.v].push((edge.u, e));
        }
        for a in &mut adjacency {
            a.sort_unstable();
        }

        Ok(SignedGraph {
            ids,
            index,
            d: self.d,
            field: self.field,
            measure,
            edges,
            adjacency,
        })
    }
}
