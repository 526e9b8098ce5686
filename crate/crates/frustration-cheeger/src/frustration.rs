//! Frustration indices: how far a signature is from being trivializable on a
//! vertex subset, measured by the cheapest switching (or unit-vector field)
//! over the induced edges.

use crate::error::FrustrationError;
use crate::norm::MatrixNorm;
use crate::subset::{
    boundary_measure, induced_edge_indices, subset_components, subset_measure, validate_subset,
};
use crate::tree::{spanning_tree_count, tree_gauge_scan, DEFAULT_TREE_CAP};
use graph_core::{Field, SignedGraph};
use linalg_kernel::CMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Which objective the minimization runs over.
///
/// `Switching` optimizes over one unitary (or orthogonal) block per vertex;
/// `UnitVector` relaxes the blocks to unit column vectors. For block
/// dimension one the two coincide, since unit scalars are exactly the group
/// elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrustrationVariant {
    Switching,
    UnitVector,
}

/// Strategy used to attack the minimization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrustrationBackend {
    /// Enumerate spanning trees and take the best tree gauge. Exact for
    /// one-dimensional complex signatures.
    TreeExact,
    /// Brute force over sign assignments. Exact for one-dimensional real
    /// signatures.
    ExhaustiveO1,
    /// Block-coordinate descent over the unitary manifold with random
    /// restarts. An upper bound in any dimension.
    LocalOpt,
}

/// Number of random restarts the local optimizer runs by default.
pub const LOCAL_OPT_RESTARTS: usize = 32;
/// Projected-gradient steps per block update.
pub const LOCAL_OPT_GRAD_STEPS: usize = 10;
/// Step size of the projected gradient.
pub const LOCAL_OPT_STEP: f64 = 0.1;
/// Maximum sweeps over the subset per restart.
pub const LOCAL_OPT_MAX_SWEEPS: usize = 30;
/// Largest subset the sign brute force accepts.
pub const EXHAUSTIVE_CAP: usize = 20;

/// Outcome of a frustration computation.
#[derive(Debug, Clone)]
pub struct FrustrationResult {
    /// The attained objective value.
    pub value: f64,
    /// Whether the backend guarantees this is the true minimum.
    pub exact: bool,
    /// Backend that produced the value.
    pub backend: FrustrationBackend,
    /// Minimizing assignment: one d x d block per vertex for the switching
    /// variant, one d x 1 unit column for the unit-vector variant.
    pub witness: BTreeMap<String, CMatrix>,
}

/// The backend that computes the frustration index exactly whenever one
/// exists for the graph's signature group, and the local optimizer otherwise.
pub fn auto_backend(graph: &SignedGraph) -> FrustrationBackend {
    if graph.dim() == 1 {
        match graph.field() {
            Field::Complex => FrustrationBackend::TreeExact,
            Field::Real => FrustrationBackend::ExhaustiveO1,
        }
    } else {
        FrustrationBackend::LocalOpt
    }
}

/// Computes the frustration of `subset` with the requested backend.
pub fn frustration_index(
    graph: &SignedGraph,
    subset: &[usize],
    norm: MatrixNorm,
    variant: FrustrationVariant,
    backend: FrustrationBackend,
) -> Result<FrustrationResult, FrustrationError> {
    frustration_index_with_starts(graph, subset, norm, variant, backend, &[])
}

/// Like [`frustration_index`], but seeds the local optimizer with extra
/// starting assignments (useful for transporting a witness from a switched
/// copy of the graph, or for warm starts between related subsets). Exact
/// backends ignore the extra starts. For the unit-vector variant, square
/// blocks among the starts are expanded into one start per column.
pub fn frustration_index_with_starts(
    graph: &SignedGraph,
    subset: &[usize],
    norm: MatrixNorm,
    variant: FrustrationVariant,
    backend: FrustrationBackend,
    extra_starts: &[BTreeMap<String, CMatrix>],
) -> Result<FrustrationResult, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    let field_name = match graph.field() {
        Field::Real => "real",
        Field::Complex => "complex",
    };
    match backend {
        FrustrationBackend::TreeExact => {
            if graph.dim() != 1 || graph.field() != Field::Complex {
                return Err(FrustrationError::BackendUnsupported {
                    dim: graph.dim(),
                    field: field_name,
                });
            }
            tree_exact(graph, &sorted, norm)
        }
        FrustrationBackend::ExhaustiveO1 => {
            if graph.dim() != 1 || graph.field() != Field::Real {
                return Err(FrustrationError::BackendUnsupported {
                    dim: graph.dim(),
                    field: field_name,
                });
            }
            exhaustive_signs(graph, &sorted)
        }
        FrustrationBackend::LocalOpt => local_opt(graph, &sorted, norm, variant, extra_starts),
    }
}

/// Evaluates the frustration objective of a fixed assignment. The assignment
/// must carry one block for every subset vertex: d x d for the switching
/// variant, d x 1 for the unit-vector variant.
pub fn assignment_cost(
    graph: &SignedGraph,
    subset: &[usize],
    assignment: &BTreeMap<String, CMatrix>,
    norm: MatrixNorm,
) -> Result<f64, FrustrationError> {
    let sorted = validate_subset(graph, subset)?;
    let mut blocks = Vec::with_capacity(sorted.len());
    for &x in &sorted {
        let id = graph.id_of(x);
        let block = assignment
            .get(id)
            .ok_or_else(|| FrustrationError::MissingAssignment { id: id.to_string() })?;
        blocks.push(block.clone());
    }
    let mut position = vec![usize::MAX; graph.n()];
    for (i, &x) in sorted.iter().enumerate() {
        position[x] = i;
    }
    let mut total = 0.0;
    for idx in induced_edge_indices(graph, &sorted) {
        let edge = &graph.edges()[idx];
        let sigma = graph.sigma(edge.u, edge.v).expect("edge endpoints adjacent");
        let transported = sigma.mul(&blocks[position[edge.v]])?;
        let difference = transported.sub(&blocks[position[edge.u]])?;
        total += edge.weight * norm.evaluate(&difference);
    }
    Ok(total)
}

/// Expansion rate of a subset: frustration plus boundary weight, divided by
/// the subset measure. The frustration term uses the exact backend where one
/// exists and the local optimizer otherwise.
pub fn expansion_phi(graph: &SignedGraph, subset: &[usize]) -> Result<f64, FrustrationError> {
    let result = frustration_index(
        graph,
        subset,
        MatrixNorm::Average21,
        FrustrationVariant::Switching,
        auto_backend(graph),
    )?;
    let boundary = boundary_measure(graph, subset)?;
    let measure = subset_measure(graph, subset)?;
    Ok((result.value + boundary) / measure)
}

/// Best spanning-tree gauge per component. Exact over one-dimensional
/// complex signatures for either variant, since unit scalars are exactly the
/// group elements.
fn tree_exact(
    graph: &SignedGraph,
    sorted: &[usize],
    norm: MatrixNorm,
) -> Result<FrustrationResult, FrustrationError> {
    let mut value = 0.0;
    let mut exact = true;
    let mut witness = BTreeMap::new();
    for component in subset_components(graph, sorted) {
        if component.len() == 1 {
            witness.insert(
                graph.id_of(component[0]).to_string(),
                CMatrix::identity(1),
            );
            continue;
        }
        let count = spanning_tree_count(graph, &component)?;
        if count > DEFAULT_TREE_CAP as f64 {
            // Too many trees to enumerate honestly; fall back to the local
            // optimizer on this component and drop the exactness claim.
            let local = local_opt(
                graph,
                &component,
                norm,
                FrustrationVariant::Switching,
                &[],
            )?;
            value += local.value;
            exact = false;
            witness.extend(local.witness);
            continue;
        }
        let scan = tree_gauge_scan(graph, &component, norm, DEFAULT_TREE_CAP)?;
        value += scan.best_value;
        witness.extend(scan.witness);
    }
    Ok(FrustrationResult {
        value,
        exact,
        backend: FrustrationBackend::TreeExact,
        witness,
    })
}

fn exhaustive_signs(
    graph: &SignedGraph,
    sorted: &[usize],
) -> Result<FrustrationResult, FrustrationError> {
    let mut value = 0.0;
    let mut witness = BTreeMap::new();
    for component in subset_components(graph, sorted) {
        let m = component.len();
        if m > EXHAUSTIVE_CAP {
            return Err(FrustrationError::TooLarge {
                n: m,
                cap: EXHAUSTIVE_CAP,
            });
        }
        let mut position = vec![usize::MAX; graph.n()];
        for (i, &x) in component.iter().enumerate() {
            position[x] = i;
        }
        let edges: Vec<(usize, usize, f64, f64)> = induced_edge_indices(graph, &component)
            .into_iter()
            .map(|idx| {
                let e = &graph.edges()[idx];
                let sign = e.sigma.entries()[(0, 0)].re;
                (position[e.u], position[e.v], e.weight, sign)
            })
            .collect();
        let mut best = f64::INFINITY;
        let mut best_mask = 0u64;
        // The global sign is irrelevant, so the first vertex stays +1.
        for mask in 0..(1u64 << (m - 1)) {
            let sign_of = |i: usize| -> f64 {
                if i == 0 {
                    1.0
                } else if mask & (1 << (i - 1)) != 0 {
                    -1.0
                } else {
                    1.0
                }
            };
            let mut cost = 0.0;
            for &(u, v, w, s) in &edges {
                cost += w * (s * sign_of(v) - sign_of(u)).abs();
                if cost >= best {
                    break;
                }
            }
            if cost < best {
                best = cost;
                best_mask = mask;
            }
        }
        value += best;
        for (i, &x) in component.iter().enumerate() {
            let sign = if i == 0 {
                1.0
            } else if best_mask & (1 << (i - 1)) != 0 {
                -1.0
            } else {
                1.0
            };
            witness.insert(
                graph.id_of(x).to_string(),
                CMatrix::from_real_rows(&[vec![sign]]),
            );
        }
    }
    Ok(FrustrationResult {
        value,
        exact: true,
        backend: FrustrationBackend::ExhaustiveO1,
        witness,
    })
}

struct LocalProblem {
    d: usize,
    variant: FrustrationVariant,
    norm: MatrixNorm,
    real_field: bool,
    /// For each subset position: (other position, weight, sigma oriented from
    /// this vertex towards the other).
    stars: Vec<Vec<(usize, f64, CMatrix)>>,
    /// Induced edges as (position u, position v, weight, sigma u -> v).
    edges: Vec<(usize, usize, f64, CMatrix)>,
}

impl LocalProblem {
    fn block_shape(&self) -> (usize, usize) {
        match self.variant {
            FrustrationVariant::Switching => (self.d, self.d),
            FrustrationVariant::UnitVector => (self.d, 1),
        }
    }

    fn objective(&self, blocks: &[CMatrix]) -> f64 {
        self.edges
            .iter()
            .map(|(u, v, w, sigma)| {
                let transported = sigma.mul(&blocks[*v]).expect("shapes agree");
                let difference = transported.sub(&blocks[*u]).expect("shapes agree");
                w * self.norm.evaluate(&difference)
            })
            .sum()
    }

    fn local_objective(&self, blocks: &[CMatrix], x: usize, candidate: &CMatrix) -> f64 {
        self.stars[x]
            .iter()
            .map(|(y, w, sigma)| {
                let transported = sigma.mul(&blocks[*y]).expect("shapes agree");
                let difference = transported.sub(candidate).expect("shapes agree");
                w * self.norm.evaluate(&difference)
            })
            .sum()
    }

    /// Euclidean gradient of the local objective at `candidate`, treating the
    /// entries as real coordinates. Terms at the kink (zero difference) are
    /// skipped, which is a valid subgradient choice.
    fn local_gradient(&self, blocks: &[CMatrix], x: usize, candidate: &CMatrix) -> CMatrix {
        let (rows, cols) = self.block_shape();
        let mut gradient = CMatrix::zeros(rows, cols);
        for (y, w, sigma) in &self.stars[x] {
            let target = sigma.mul(&blocks[*y]).expect("shapes agree");
            match self.norm {
                MatrixNorm::Average21 => {
                    for j in 0..cols {
                        let mut sq = 0.0;
                        for i in 0..rows {
                            sq += (candidate[(i, j)] - target[(i, j)]).norm_sqr();
                        }
                        let length = sq.sqrt();
                        if length < 1e-14 {
                            continue;
                        }
                        let scale = w / (cols as f64 * length);
                        for i in 0..rows {
                            gradient[(i, j)] += (candidate[(i, j)] - target[(i, j)]) * scale;
                        }
                    }
                }
                MatrixNorm::Frobenius => {
                    let difference = candidate.sub(&target).expect("shapes agree");
                    let length = difference.frobenius_norm();
                    if length < 1e-14 {
                        continue;
                    }
                    let scale = *w / length;
                    for j in 0..cols {
                        for i in 0..rows {
                            gradient[(i, j)] += difference[(i, j)] * scale;
                        }
                    }
                }
            }
        }
        gradient
    }

    fn retract(&self, raw: &CMatrix) -> Option<CMatrix> {
        match self.variant {
            FrustrationVariant::Switching => graph_core::polar_project(raw).ok().map(|mut p| {
                if self.real_field {
                    realify(&mut p);
                }
                p
            }),
            FrustrationVariant::UnitVector => {
                let mut sq = 0.0;
                for i in 0..raw.rows() {
                    sq += raw[(i, 0)].norm_sqr();
                }
                let length = sq.sqrt();
                if length < 1e-14 {
                    return None;
                }
                let mut unit = raw.scale_re(1.0 / length);
                if self.real_field {
                    realify(&mut unit);
                    let mut sq = 0.0;
                    for i in 0..unit.rows() {
                        sq += unit[(i, 0)].norm_sqr();
                    }
                    let length = sq.sqrt();
                    if length < 1e-14 {
                        return None;
                    }
                    unit = unit.scale_re(1.0 / length);
                }
                Some(unit)
            }
        }
    }
}

fn realify(m: &mut CMatrix) {
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let v = m[(i, j)];
            m[(i, j)] = Complex64::new(v.re, 0.0);
        }
    }
}

fn local_opt(
    graph: &SignedGraph,
    sorted: &[usize],
    norm: MatrixNorm,
    variant: FrustrationVariant,
    extra_starts: &[BTreeMap<String, CMatrix>],
) -> Result<FrustrationResult, FrustrationError> {
    let d = graph.dim();
    if variant == FrustrationVariant::UnitVector && d == 1 {
        // Unit scalars coincide with the group, so delegate to the exact
        // backend when one exists.
        match graph.field() {
            Field::Complex => return tree_exact(graph, sorted, norm),
            Field::Real => return exhaustive_signs(graph, sorted),
        }
    }

    let mut position = vec![usize::MAX; graph.n()];
    for (i, &x) in sorted.iter().enumerate() {
        position[x] = i;
    }
    let mut stars: Vec<Vec<(usize, f64, CMatrix)>> = vec![Vec::new(); sorted.len()];
    let mut edges = Vec::new();
    for idx in induced_edge_indices(graph, sorted) {
        let edge = &graph.edges()[idx];
        let (u, v) = (position[edge.u], position[edge.v]);
        let sigma_uv = graph.sigma(edge.u, edge.v).expect("adjacent");
        let sigma_vu = graph.sigma(edge.v, edge.u).expect("adjacent");
        stars[u].push((v, edge.weight, sigma_uv.clone()));
        stars[v].push((u, edge.weight, sigma_vu));
        edges.push((u, v, edge.weight, sigma_uv));
    }
    let problem = LocalProblem {
        d,
        variant,
        norm,
        real_field: graph.field() == Field::Real,
        stars,
        edges,
    };

    let mut starts: Vec<Vec<CMatrix>> = Vec::new();
    starts.push(tree_gauge_start(graph, sorted, &problem));
    starts.push(vec![identity_block(&problem); sorted.len()]);
    let mut seed = 0xF5u64;
    for &x in sorted {
        seed = seed.wrapping_mul(31).wrapping_add(x as u64 + 1);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while starts.len() < LOCAL_OPT_RESTARTS {
        starts.push(random_start(&problem, sorted.len(), &mut rng));
    }
    for start in extra_starts {
        for expanded in expand_extra_start(graph, sorted, &problem, start) {
            starts.push(expanded);
        }
    }

    let mut best_value = f64::INFINITY;
    let mut best_blocks: Option<Vec<CMatrix>> = None;
    for start in starts {
        let (value, blocks) = descend(&problem, start);
        if value < best_value {
            best_value = value;
            best_blocks = Some(blocks);
        }
        if best_value < 1e-13 {
            break;
        }
    }
    let blocks = best_blocks.expect("at least one start");
    let mut witness = BTreeMap::new();
    for (i, &x) in sorted.iter().enumerate() {
        witness.insert(graph.id_of(x).to_string(), blocks[i].clone());
    }
    Ok(FrustrationResult {
        value: best_value,
        exact: false,
        backend: FrustrationBackend::LocalOpt,
        witness,
    })
}

fn identity_block(problem: &LocalProblem) -> CMatrix {
    match problem.variant {
        FrustrationVariant::Switching => CMatrix::identity(problem.d),
        FrustrationVariant::UnitVector => {
            let mut e = CMatrix::zeros(problem.d, 1);
            e[(0, 0)] = Complex64::new(1.0, 0.0);
            e
        }
    }
}

/// Start from the gauge of a breadth-first spanning tree of each component,
/// which is already optimal whenever the subset is balanced.
fn tree_gauge_start(graph: &SignedGraph, sorted: &[usize], problem: &LocalProblem) -> Vec<CMatrix> {
    let mut position = vec![usize::MAX; graph.n()];
    for (i, &x) in sorted.iter().enumerate() {
        position[x] = i;
    }
    let mut blocks = vec![CMatrix::identity(problem.d); sorted.len()];
    for component in subset_components(graph, sorted) {
        let inside = crate::subset::membership(graph.n(), &component);
        let root = component[0];
        let mut seen = vec![false; graph.n()];
        seen[root] = true;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in graph.neighbors(x) {
                if !inside[y] || seen[y] {
                    continue;
                }
                seen[y] = true;
                let sigma_xy = graph.sigma(x, y).expect("adjacent");
                blocks[position[y]] = sigma_xy
                    .adjoint()
                    .mul(&blocks[position[x]])
                    .expect("square blocks");
                queue.push_back(y);
            }
        }
    }
    match problem.variant {
        FrustrationVariant::Switching => blocks,
        FrustrationVariant::UnitVector => blocks
            .into_iter()
            .map(|b| CMatrix::from_fn(problem.d, 1, |i, _| b[(i, 0)]))
            .collect(),
    }
}

fn random_start(problem: &LocalProblem, count: usize, rng: &mut ChaCha8Rng) -> Vec<CMatrix> {
    let (rows, cols) = problem.block_shape();
    (0..count)
        .map(|_| loop {
            let raw = CMatrix::from_fn(rows, cols, |_, _| {
                if problem.real_field {
                    Complex64::new(rng.gen_range(-1.0..1.0), 0.0)
                } else {
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
                }
            });
            if let Some(block) = problem.retract(&raw) {
                return block;
            }
        })
        .collect()
}

fn expand_extra_start(
    graph: &SignedGraph,
    sorted: &[usize],
    problem: &LocalProblem,
    start: &BTreeMap<String, CMatrix>,
) -> Vec<Vec<CMatrix>> {
    let (rows, cols) = problem.block_shape();
    let mut per_vertex: Vec<Vec<CMatrix>> = Vec::with_capacity(sorted.len());
    for &x in sorted {
        let id = graph.id_of(x);
        let block = match start.get(id) {
            Some(b) if b.rows() == rows => b.clone(),
            _ => return Vec::new(),
        };
        if block.cols() == cols {
            per_vertex.push(vec![block]);
        } else if cols == 1 && block.cols() == rows {
            // A square block supplied for the unit-vector variant: offer each
            // column as a candidate unit vector.
            per_vertex.push(
                (0..rows)
                    .map(|j| CMatrix::from_fn(rows, 1, |i, _| block[(i, j)]))
                    .collect(),
            );
        } else {
            return Vec::new();
        }
    }
    let options = per_vertex[0].len();
    if per_vertex.iter().any(|v| v.len() != options) {
        return Vec::new();
    }
    (0..options)
        .map(|j| {
            per_vertex
                .iter()
                .map(|candidates| candidates[j].clone())
                .collect()
        })
        .collect()
}

fn descend(problem: &LocalProblem, start: Vec<CMatrix>) -> (f64, Vec<CMatrix>) {
    let mut blocks: Vec<CMatrix> = start
        .iter()
        .map(|b| problem.retract(b).unwrap_or_else(|| identity_block(problem)))
        .collect();
    let mut value = problem.objective(&blocks);
    for _ in 0..LOCAL_OPT_MAX_SWEEPS {
        let before = value;
        for x in 0..blocks.len() {
            if problem.stars[x].is_empty() {
                continue;
            }
            let current_cost = problem.local_objective(&blocks, x, &blocks[x]);
            let mut candidate = blocks[x].clone();
            for _ in 0..LOCAL_OPT_GRAD_STEPS {
                let gradient = problem.local_gradient(&blocks, x, &candidate);
                let stepped = candidate.sub(&gradient.scale_re(LOCAL_OPT_STEP)).expect("shapes");
                match problem.retract(&stepped) {
                    Some(next) => candidate = next,
                    None => break,
                }
            }
            let new_cost = problem.local_objective(&blocks, x, &candidate);
            if new_cost < current_cost {
                value += new_cost - current_cost;
                blocks[x] = candidate;
            }
        }
        if before - value < 1e-11 {
            break;
        }
    }
    // Recompute from scratch to avoid drift from incremental updates.
    let value = problem.objective(&blocks);
    (value, blocks)
}
