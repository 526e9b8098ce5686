//! Heat operators e^{t laplacian}, assembled through the eigendecomposition
//! of the measure-symmetrized matrix rather than a series expansion: the
//! symmetrized matrix is Hermitian, so the exponential is exact up to
//! eigensolver precision, and conjugating by D_mu^{1/2} transports it back
//! to the vertex basis.

use graph_core::SignedGraph;
use linalg_kernel::{hermitian_exp, CMatrix, HermitianMatrix};
use num_complex::Complex64;
use operators::{ConnectionLaplacian, VectorField};

use crate::error::SemigroupError;

/// The matrix of e^{t laplacian} in the vertex basis.
///
/// With `signed` true the generator is the connection Laplacian and the
/// operator acts on vector fields; with `signed` false it is the scalar
/// Laplacian of the underlying weighted graph, which acts on functions and
/// has the probability-kernel properties (nonnegative entries, unit row
/// sums) that the signed version lacks.
#[derive(Debug, Clone)]
pub struct HeatOperator {
    t: f64,
    signed: bool,
    matrix: CMatrix,
    measures: Vec<f64>,
    dim: usize,
}

impl HeatOperator {
    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn signed(&self) -> bool {
        self.signed
    }

    /// The operator matrix in the vertex (non-symmetrized) basis: size
    /// (n*d) x (n*d) when signed, n x n otherwise.
    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Applies the signed operator to a vector field.
    pub fn apply_field(&self, f: &VectorField) -> Result<VectorField, SemigroupError> {
        if !self.signed {
            return Err(SemigroupError::KindMismatch {
                expected: "signed",
                actual: "scalar",
            });
        }
        let n = self.measures.len();
        let d = self.dim;
        if f.vertex_count() != n || f.dim() != d {
            return Err(SemigroupError::ShapeMismatch {
                expected: n * d,
                got: f.vertex_count() * f.dim(),
            });
        }
        let out = self.matrix.mul_vec(f.data())?;
        Ok(VectorField::from_fn(n, d, |x, i| out[x * d + i]))
    }

    /// Applies the scalar operator to a function on the vertices.
    pub fn apply_scalar(&self, values: &[Complex64]) -> Result<Vec<Complex64>, SemigroupError> {
        if self.signed {
            return Err(SemigroupError::KindMismatch {
                expected: "scalar",
                actual: "signed",
            });
        }
        if values.len() != self.measures.len() {
            return Err(SemigroupError::ShapeMismatch {
                expected: self.measures.len(),
                got: values.len(),
            });
        }
        Ok(self.matrix.mul_vec(values)?)
    }

    /// Maximum deviation from self-adjointness with respect to the measure
    /// inner product, measured as max |D_mu P - (D_mu P)^H|.
    pub fn self_adjointness_defect(&self) -> f64 {
        let size = self.matrix.rows();
        let weighted = CMatrix::from_fn(size, size, |a, b| {
            self.matrix[(a, b)] * self.measures[a / self.dim]
        });
        weighted.hermitian_deviation()
    }

    /// For the scalar operator: how far the constant function is from being
    /// fixed, max over rows of |row sum - 1|.
    pub fn constant_defect(&self) -> f64 {
        let n = self.matrix.rows();
        (0..n)
            .map(|x| {
                let sum: Complex64 = (0..self.matrix.cols()).map(|y| self.matrix[(x, y)]).sum();
                (sum - Complex64::new(1.0, 0.0)).norm()
            })
            .fold(0.0, f64::max)
    }

    /// Smallest real part over all matrix entries. The scalar operator stays
    /// entrywise nonnegative; the signed one in general does not.
    pub fn min_entry(&self) -> f64 {
        let mut min = f64::INFINITY;
        for a in 0..self.matrix.rows() {
            for b in 0..self.matrix.cols() {
                min = min.min(self.matrix[(a, b)].re);
            }
        }
        min
    }

    /// Largest imaginary part in absolute value over all entries.
    pub fn max_imaginary(&self) -> f64 {
        let mut max: f64 = 0.0;
        for a in 0..self.matrix.rows() {
            for b in 0..self.matrix.cols() {
                max = max.max(self.matrix[(a, b)].im.abs());
            }
        }
        max
    }
}

/// Builds e^{t laplacian} for the graph, signed or scalar.
pub fn heat_operator(
    graph: &SignedGraph,
    t: f64,
    signed: bool,
) -> Result<HeatOperator, SemigroupError> {
    if t < 0.0 {
        return Err(SemigroupError::NegativeTime(t));
    }
    let (sym, dim) = if signed {
        let lap = ConnectionLaplacian::assemble(graph);
        (lap.symmetrized().clone(), graph.dim())
    } else {
        (scalar_symmetrized(graph)?, 1)
    };
    // The symmetrized matrix represents minus the Laplacian, so the heat
    // operator is its exponential at time -t.
    let exp = hermitian_exp(&sym, -t)?;
    let size = exp.rows();
    let measures = graph.measures().to_vec();
    let matrix = CMatrix::from_fn(size, size, |a, b| {
        let scale = (measures[b / dim] / measures[a / dim]).sqrt();
        exp[(a, b)] * scale
    });
    Ok(HeatOperator {
        t,
        signed,
        matrix,
        measures,
        dim,
    })
}

/// The measure-symmetrized matrix of minus the scalar Laplacian of the
/// underlying weighted graph, ignoring the signature.
fn scalar_symmetrized(graph: &SignedGraph) -> Result<HermitianMatrix, SemigroupError> {
    let n = graph.n();
    let mut s = CMatrix::zeros(n, n);
    for x in 0..n {
        s[(x, x)] = Complex64::new(graph.degree(x) / graph.measure(x), 0.0);
    }
    for edge in graph.edges() {
        let geo = (graph.measure(edge.u) * graph.measure(edge.v)).sqrt();
        let off = Complex64::new(-edge.weight / geo, 0.0);
        s[(edge.u, edge.v)] = off;
        s[(edge.v, edge.u)] = off;
    }
    Ok(HermitianMatrix::symmetrize(s)?)
}

/// Maximum entry of |P M - M P| where M is the generator the operator was
/// built from; the heat operator commutes with its own Laplacian.
pub fn commutation_defect(
    graph: &SignedGraph,
    op: &HeatOperator,
) -> Result<f64, SemigroupError> {
    let generator = if op.signed() {
        ConnectionLaplacian::assemble(graph).minus_delta().clone()
    } else {
        let n = graph.n();
        let mut m = CMatrix::zeros(n, n);
        for x in 0..n {
            m[(x, x)] = Complex64::new(graph.degree(x) / graph.measure(x), 0.0);
        }
        for edge in graph.edges() {
            m[(edge.u, edge.v)] = Complex64::new(-edge.weight / graph.measure(edge.u), 0.0);
            m[(edge.v, edge.u)] = Complex64::new(-edge.weight / graph.measure(edge.v), 0.0);
        }
        m
    };
    let pm = op.matrix().mul(&generator)?;
    let mp = generator.mul(op.matrix())?;
    Ok(pm.sub(&mp)?.max_abs())
}

/// Maximum entry of |P_t P_s - P_{t+s}|.
pub fn semigroup_law_defect(
    graph: &SignedGraph,
    t: f64,
    s: f64,
    signed: bool,
) -> Result<f64, SemigroupError> {
    let pt = heat_operator(graph, t, signed)?;
    let ps = heat_operator(graph, s, signed)?;
    let pts = heat_operator(graph, t + s, signed)?;
    let product = pt.matrix().mul(ps.matrix())?;
    Ok(product.sub(pts.matrix())?.max_abs())
}
