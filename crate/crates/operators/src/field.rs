use crate::error::OperatorError;
use graph_core::SignedGraph;
use num_complex::Complex64;

/// A function V -> C^d stored flat in vertex-major order: the value at vertex
/// `x` occupies `data[x*d .. (x+1)*d]`.
///
/// The same stacking is used by the operator matrices, so `matrix * field`
/// compositions line up without any reshuffling.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    n: usize,
    d: usize,
    data: Vec<Complex64>,
}

impl VectorField {
    /// The zero field on `n` vertices with fiber dimension `d`.
    pub fn zeros(n: usize, d: usize) -> Self {
        Self {
            n,
            d,
            data: vec![Complex64::new(0.0, 0.0); n * d],
        }
    }

    /// Builds a field from flat data; the length must be `n * d`.
    pub fn from_data(n: usize, d: usize, data: Vec<Complex64>) -> Result<Self, OperatorError> {
        if data.len() != n * d {
            return Err(OperatorError::FieldShape {
                expected: n * d,
                found: data.len(),
            });
        }
        Ok(Self { n, d, data })
    }

    /// Builds a field by evaluating `f(x, i)` for vertex `x` and component `i`.
    pub fn from_fn(n: usize, d: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * d);
        for x in 0..n {
            for i in 0..d {
                data.push(f(x, i));
            }
        }
        Self { n, d, data }
    }

    /// The canonical basis field delta_x e_i: `e_i` at vertex `x`, zero elsewhere.
    pub fn basis(n: usize, d: usize, x: usize, i: usize) -> Self {
        let mut field = Self::zeros(n, d);
        field.data[x * d + i] = Complex64::new(1.0, 0.0);
        field
    }

    /// The constant field that assigns `value` to every vertex.
    pub fn constant(n: usize, value: &[Complex64]) -> Self {
        let d = value.len();
        let mut data = Vec::with_capacity(n * d);
        for _ in 0..n {
            data.extend_from_slice(value);
        }
        Self { n, d, data }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// The value at vertex `x` as a slice of length `d`.
    pub fn at(&self, x: usize) -> &[Complex64] {
        &self.data[x * self.d..(x + 1) * self.d]
    }

    pub fn at_mut(&mut self, x: usize) -> &mut [Complex64] {
        &mut self.data[x * self.d..(x + 1) * self.d]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex64> {
        self.data
    }

    /// Checks the field fits `graph` (same vertex count and fiber dimension).
    pub fn check_shape(&self, graph: &SignedGraph) -> Result<(), OperatorError> {
        if self.n != graph.n() || self.d != graph.dim() {
            return Err(OperatorError::FieldShape {
                expected: graph.n() * graph.dim(),
                found: self.data.len(),
            });
        }
        Ok(())
    }

    /// Pointwise Euclidean norm |f(x)|.
    pub fn norm_at(&self, x: usize) -> f64 {
        self.at(x).iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// The mu-weighted p-norm (sum_x mu(x) |f(x)|^p)^(1/p).
    pub fn lp_norm(&self, graph: &SignedGraph, p: f64) -> f64 {
        let total: f64 = (0..self.n)
            .map(|x| graph.measure(x) * self.norm_at(x).powf(p))
            .sum();
        total.powf(1.0 / p)
    }

    /// The mu-weighted inner product sum_x mu(x) f(x)^T conj(g(x)).
    pub fn inner_product(&self, other: &Self, graph: &SignedGraph) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in 0..self.n {
            let mu = graph.measure(x);
            for i in 0..self.d {
                acc += mu * self.at(x)[i] * other.at(x)[i].conj();
            }
        }
        acc
    }
}
