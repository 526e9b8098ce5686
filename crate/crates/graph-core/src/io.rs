use std::path::Path;

use linalg_kernel::CMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Field, SignedGraph};

/// On-disk description. Signature cells are [re] for real graphs and
/// [re, im] for complex ones; floats round-trip bit-exactly through the
/// shortest-decimal serializer.
#[derive(Debug, Serialize, Deserialize)]
struct GraphFile {
    d: usize,
    field: String,
    vertices: Vec<VertexEntry>,
    edges: Vec<EdgeEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct VertexEntry {
    id: String,
    measure: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct EdgeEntry {
    u: String,
    v: String,
    weight: f64,
    sigma: Vec<Vec<Vec<f64>>>,
}

pub fn parse_graph(json: &str) -> Result<SignedGraph, GraphError> {
    let file: GraphFile = serde_json::from_str(json)?;
    let field = match file.field.as_str() {
        "real" => Field::Real,
        "complex" => Field::Complex,
        other => {
            return Err(GraphError::DimensionMismatch {
                context: format!("field must be \"real\" or \"complex\", found \"{other}\""),
                expected: 0,
                found: 0,
            })
        }
    };
    let mut builder = SignedGraph::builder(file.d, field);
    for v in &file.vertices {
        builder = builder.vertex(&v.id, v.measure);
    }
    for e in &file.edges {
        let sigma = parse_sigma(&e.sigma, file.d, field, &e.u, &e.v)?;
        builder = builder.edge(&e.u, &e.v, e.weight, sigma);
    }
    builder.build()
}

fn parse_sigma(
    cells: &[Vec<Vec<f64>>],
    d: usize,
    field: Field,
    u: &str,
    v: &str,
) -> Result<CMatrix, GraphError> {
    if cells.len() != d || cells.iter().any(|row| row.len() != d) {
        return Err(GraphError::DimensionMismatch {
            context: format!("signature on {{{u},{v}}}"),
            expected: d,
            found: cells.len(),
        });
    }
    let mut m = CMatrix::zeros(d, d);
    for (i, row) in cells.iter().enumerate() {
        for (j, cell) in row.iter().enumerate() {
            let (re, im) = match cell.as_slice() {
                [re] => (*re, 0.0),
                [re, im] => (*re, *im),
                _ => {
                    return Err(GraphError::DimensionMismatch {
                        context: format!("signature cell on {{{u},{v}}}"),
                        expected: 2,
                        found: cell.len(),
                    })
                }
            };
            if field == Field::Real && im != 0.0 {
                return Err(GraphError::RealFieldComplexEntry {
                    u: u.to_string(),
                    v: v.to_string(),
                });
            }
            m[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(m)
}

pub fn serialize_graph(g: &SignedGraph) -> String {
    let file = GraphFile {
        d: g.dim(),
        field: match g.field() {
            Field::Real => "real".into(),
            Field::Complex => "complex".into(),
        },
        vertices: g
            .vertex_ids()
            .iter()
            .enumerate()
            .map(|(i, id)| VertexEntry {
                id: id.clone(),
                measure: g.measure(i),
            })
            .collect(),
        edges: g
            .edges()
            .iter()
            .map(|e| EdgeEntry {
                u: g.id_of(e.u).to_string(),
                v: g.id_of(e.v).to_string(),
                weight: e.weight,
                sigma: sigma_cells(e.sigma.entries(), g.field()),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serialization cannot fail")
}

fn sigma_cells(m: &CMatrix, field: Field) -> Vec<Vec<Vec<f64>>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let z = m[(i, j)];
                    match field {
                        Field::Real => vec![z.re],
                        Field::Complex => vec![z.re, z.im],
                    }
                })
                .collect()
        })
        .collect()
}

pub fn read_graph<P: AsRef<Path>>(path: P) -> Result<SignedGraph, GraphError> {
    let text = std::fs::read_to_string(path)?;
    parse_graph(&text)
}

pub fn write_graph<P: AsRef<Path>>(g: &SignedGraph, path: P) -> Result<(), GraphError> {
    std::fs::write(path, serialize_graph(g))?;
    Ok(())
}
