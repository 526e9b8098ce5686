//! Cartesian products of signed graphs. The vertex set is the usual product
//! V1 x V2; what varies is how edge weights, signatures, and vertex measures
//! are assigned, and each convention matches a different curvature or
//! expansion theorem downstream, so the choices are spelled out explicitly
//! in a [`ProductSpec`] rather than baked in.

use graph_core::{Field, GraphError, SignedGraph};
use linalg_kernel::CMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Separator used to build product vertex ids; forbidden in factor ids so
/// the pair can be recovered unambiguously.
pub const ID_SEPARATOR: char = '|';

#[derive(Debug, Error)]
pub enum ProductError {
    /// Keeping both signatures in the same group requires equal dimensions.
    #[error("same-group products need matching dimensions, got {d1} and {d2}")]
    DimensionMismatch { d1: usize, d2: usize },
    /// A factor vertex id contains the reserved separator.
    #[error("vertex id {id:?} contains the reserved separator {ID_SEPARATOR:?}")]
    SeparatorInId { id: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How product edge weights are derived from the factor weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightMode {
    /// Copies of the factor weights: an edge in the G1 direction keeps its
    /// G1 weight, independent of the G2 coordinate.
    Plain,
    /// Chung-Tetali random-walk weights: the G1-direction weight is scaled
    /// by the measure of the G2 coordinate and vice versa.
    ChungTetali,
}

/// How the product signature is formed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignatureMode {
    /// Both factors take values in the same group; product edges carry the
    /// signature of whichever factor they move in. The curvature theorems
    /// additionally need the two signature groups to commute, which
    /// [`commuting_check`] tests.
    SameGroup,
    /// Tensor embedding into the product group: G1 edges carry
    /// sigma1 (x) I, G2 edges carry I (x) sigma2. No commutation hypothesis
    /// is needed because the embedded copies commute by construction.
    Tensor,
}

/// Vertex measure of the product.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureMode {
    /// Constant one, the setting of the constant-measure product theorems.
    Unit,
    /// 2 mu1(x) mu2(y), the Chung-Tetali companion measure.
    TwoMuOneMuTwo,
    /// A constant measure chosen by the caller, for the rescaling remark
    /// that trades measure against curvature.
    Explicit(f64),
}

/// Full recipe for one product construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProductSpec {
    pub weight_mode: WeightMode,
    pub signature_mode: SignatureMode,
    pub measure_mode: MeasureMode,
}

impl ProductSpec {
    /// Unit measures, copied weights, shared signature group: the setting
    /// of the basic product curvature theorem.
    pub fn plain_same_group() -> Self {
        ProductSpec {
            weight_mode: WeightMode::Plain,
            signature_mode: SignatureMode::SameGroup,
            measure_mode: MeasureMode::Unit,
        }
    }

    /// Unit measures with the tensor-embedded signature.
    pub fn plain_tensor() -> Self {
        ProductSpec {
            weight_mode: WeightMode::Plain,
            signature_mode: SignatureMode::Tensor,
            measure_mode: MeasureMode::Unit,
        }
    }

    /// Chung-Tetali weights and the 2 mu1 mu2 measure.
    pub fn chung_tetali() -> Self {
        ProductSpec {
            weight_mode: WeightMode::ChungTetali,
            signature_mode: SignatureMode::SameGroup,
            measure_mode: MeasureMode::TwoMuOneMuTwo,
        }
    }
}

/// Builds the Cartesian product graph under the given conventions.
///
/// Vertices are labeled `"x|y"` from factor ids `x` and `y`. Every factor
/// edge appears once per vertex of the other factor, so the product has
/// N1*N2 vertices and N2*|E1| + N1*|E2| edges.
pub fn cartesian_product(
    g1: &SignedGraph,
    g2: &SignedGraph,
    spec: ProductSpec,
) -> Result<SignedGraph, ProductError> {
    let (d1, d2) = (g1.dim(), g2.dim());
    if spec.signature_mode == SignatureMode::SameGroup && d1 != d2 {
        return Err(ProductError::DimensionMismatch { d1, d2 });
    }
    for id in g1.vertex_ids().iter().chain(g2.vertex_ids()) {
        if id.contains(ID_SEPARATOR) {
            return Err(ProductError::SeparatorInId { id: id.clone() });
        }
    }

    let dim = match spec.signature_mode {
        SignatureMode::SameGroup => d1,
        SignatureMode::Tensor => d1 * d2,
    };
    let field = if g1.field() == Field::Complex || g2.field() == Field::Complex {
        Field::Complex
    } else {
        Field::Real
    };

    let mut builder = SignedGraph::builder(dim, field);
    for x in 0..g1.n() {
        for y in 0..g2.n() {
            let measure = match spec.measure_mode {
                MeasureMode::Unit => 1.0,
                MeasureMode::TwoMuOneMuTwo => 2.0 * g1.measure(x) * g2.measure(y),
                MeasureMode::Explicit(nu) => nu,
            };
            builder = builder.vertex(&product_id(g1.id_of(x), g2.id_of(y)), measure);
        }
    }

    let id1 = CMatrix::identity(d1);
    let id2 = CMatrix::identity(d2);
    for edge in g1.edges() {
        let sigma = match spec.signature_mode {
            SignatureMode::SameGroup => edge.sigma.entries().clone(),
            SignatureMode::Tensor => edge.sigma.entries().kron(&id2),
        };
        for y in 0..g2.n() {
            let weight = match spec.weight_mode {
                WeightMode::Plain => edge.weight,
                WeightMode::ChungTetali => edge.weight * g2.measure(y),
            };
            builder = builder.edge(
                &product_id(g1.id_of(edge.u), g2.id_of(y)),
                &product_id(g1.id_of(edge.v), g2.id_of(y)),
                weight,
                sigma.clone(),
            );
        }
    }
    for edge in g2.edges() {
        let sigma = match spec.signature_mode {
            SignatureMode::SameGroup => edge.sigma.entries().clone(),
            SignatureMode::Tensor => id1.kron(edge.sigma.entries()),
        };
        for x in 0..g1.n() {
            let weight = match spec.weight_mode {
                WeightMode::Plain => edge.weight,
                WeightMode::ChungTetali => edge.weight * g1.measure(x),
            };
            builder = builder.edge(
                &product_id(g1.id_of(x), g2.id_of(edge.u)),
                &product_id(g1.id_of(x), g2.id_of(edge.v)),
                weight,
                sigma.clone(),
            );
        }
    }

    Ok(builder.build()?)
}

/// The id of the product vertex built from factor vertices `x` and `y`.
pub fn product_id(x: &str, y: &str) -> String {
    format!("{x}{ID_SEPARATOR}{y}")
}

/// Splits a product id back into its factor ids.
pub fn split_id(id: &str) -> Option<(&str, &str)> {
    id.split_once(ID_SEPARATOR)
}

/// Whether every signature value of `g1` commutes with every signature
/// value of `g2`, within `tol` on the max-norm of the commutator. The
/// stored edge values generate the two signature groups, so pairwise
/// commuting values imply the groups commute.
pub fn commuting_check(g1: &SignedGraph, g2: &SignedGraph, tol: f64) -> bool {
    if g1.dim() != g2.dim() {
        return false;
    }
    for e1 in g1.edges() {
        for e2 in g2.edges() {
            let a = e1.sigma.entries();
            let b = e2.sigma.entries();
            let ab = a.mul(b).expect("dimensions checked");
            let ba = b.mul(a).expect("dimensions checked");
            if ab.sub(&ba).expect("same shape").max_abs() > tol {
                return false;
            }
        }
    }
    true
}
