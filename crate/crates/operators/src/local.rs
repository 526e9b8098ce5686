use crate::error::OperatorError;
use graph_core::SignedGraph;
use linalg_kernel::{CMatrix, HermitianMatrix};
use num_complex::Complex64;
use std::collections::BTreeSet;

/// Dimension parameter for curvature-dimension conditions: a positive real or
/// infinity. Infinity removes the Laplacian-square term exactly rather than
/// scaling it by zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DimensionParam {
    Finite(f64),
    Infinite,
}

impl DimensionParam {
    /// 1/n, with 0 for infinity; rejects non-positive finite values.
    pub fn inverse(self) -> Result<f64, OperatorError> {
        match self {
            DimensionParam::Finite(n) if n > 0.0 => Ok(1.0 / n),
            DimensionParam::Finite(n) => Err(OperatorError::NonPositiveDimension(n)),
            DimensionParam::Infinite => Ok(0.0),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, DimensionParam::Finite(_))
    }
}

/// Neighborhood statistics for a vertex y in the sphere S1(x).
#[derive(Debug, Clone)]
pub struct SphereOneStats {
    /// The vertex y itself (graph index).
    pub vertex: usize,
    /// |S1(y) ∩ S2(x)|: neighbors of y that avoid x and its neighborhood.
    pub outer_degree: usize,
    /// Number of common neighbors of x and y (triangles through the edge xy).
    pub triangle_count: usize,
    /// Sum over common neighbors z of (I_d - conj(sigma_xz sigma_zy sigma_yx)),
    /// the signature-weighted triangle count as a d x d matrix.
    pub signed_triangle_defect: CMatrix,
}

/// Neighborhood statistics for a vertex z in the sphere S2(x).
#[derive(Debug, Clone)]
pub struct SphereTwoStats {
    /// The vertex z itself (graph index).
    pub vertex: usize,
    /// |S1(z) ∩ S1(x)|: the number of two-step paths from x to z.
    pub common_neighbors: usize,
}

/// The local matrices of the operators at a center vertex x.
///
/// All matrices are indexed by the vertices of the ball B2(x) in the order
/// `ball_two` = [x, S1(x) ascending, S2(x) ascending], each vertex
/// contributing d consecutive slots. The quadratic-form convention is
/// form(f,g) = f_vec^T * M * conj(g_vec), matching the sesquilinear forms
/// (linear in f, conjugate-linear in g): on that convention a Hermitian M is
/// positive semidefinite exactly when the form is.
#[derive(Debug, Clone)]
pub struct LocalOperatorBlocks {
    center: usize,
    dim: usize,
    ball_one: Vec<usize>,
    ball_two: Vec<usize>,
    delta_row: CMatrix,
    gamma: HermitianMatrix,
    gamma_two: HermitianMatrix,
    gamma_padded: CMatrix,
    dimension_term: Option<CMatrix>,
    gamma_hermitian_defect: f64,
    gamma_two_hermitian_defect: f64,
    sphere_one_stats: Vec<SphereOneStats>,
    sphere_two_stats: Vec<SphereTwoStats>,
}

impl LocalOperatorBlocks {
    pub fn center(&self) -> usize {
        self.center
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// [x, S1(x) ascending].
    pub fn ball_one(&self) -> &[usize] {
        &self.ball_one
    }

    /// [x, S1(x) ascending, S2(x) ascending]; the index set of the matrices.
    pub fn ball_two(&self) -> &[usize] {
        &self.ball_two
    }

    /// The local Laplacian row: a d x (|B1(x)| d) matrix L with
    /// (lap f)(x) = L * f restricted to B1(x).
    pub fn delta_row(&self) -> &CMatrix {
        &self.delta_row
    }

    /// Gamma(x) on B1(x).
    pub fn gamma(&self) -> &HermitianMatrix {
        &self.gamma
    }

    /// Gamma2(x) on B2(x).
    pub fn gamma_two(&self) -> &HermitianMatrix {
        &self.gamma_two
    }

    /// Gamma(x) zero-padded to the B2(x) index set.
    pub fn gamma_padded(&self) -> &CMatrix {
        &self.gamma_padded
    }

    /// (1/n) (local Laplacian)^T conj(local Laplacian) on B2(x), the matrix of
    /// the form (1/n) (lap f)(x)^T conj((lap g)(x)); absent when n is infinite.
    pub fn dimension_term(&self) -> Option<&CMatrix> {
        self.dimension_term.as_ref()
    }

    /// Largest deviation from Hermitian symmetry seen while assembling Gamma(x).
    pub fn gamma_hermitian_defect(&self) -> f64 {
        self.gamma_hermitian_defect
    }

    /// Largest deviation from Hermitian symmetry seen while assembling Gamma2(x).
    pub fn gamma_two_hermitian_defect(&self) -> f64 {
        self.gamma_two_hermitian_defect
    }

    pub fn sphere_one_stats(&self) -> &[SphereOneStats] {
        &self.sphere_one_stats
    }

    pub fn sphere_two_stats(&self) -> &[SphereTwoStats] {
        &self.sphere_two_stats
    }

    /// The curvature-dimension matrix Gamma2(x) - (1/n) dimension term
    /// - kappa * Gamma(x), on B2(x). Positive semidefiniteness of this matrix
    /// is the CD(kappa, n) condition at x.
    pub fn cd_matrix(&self, kappa: f64) -> CMatrix {
        let size = self.ball_two.len() * self.dim;
        let mut out = self.gamma_two.as_matrix().clone();
        if let Some(t) = &self.dimension_term {
            out = out.sub(t).expect("matching sizes");
        }
        for r in 0..size {
            for c in 0..size {
                out[(r, c)] -= kappa * self.gamma_padded[(r, c)];
            }
        }
        out
    }
}

/// Assembles the local operator matrices at `x` by evaluating the forms on the
/// canonical basis fields supported on B2(x). This route is correct for any
/// weights and measures; closed-form expressions for special settings serve as
/// cross-checks in the tests.
pub fn local_blocks(
    graph: &SignedGraph,
    x: usize,
    n: DimensionParam,
) -> Result<LocalOperatorBlocks, OperatorError> {
    if x >= graph.n() {
        return Err(OperatorError::VertexOutOfRange { index: x, n: graph.n() });
    }
    let inv_n = n.inverse()?;
    let d = graph.dim();

    // Ball vertex lists: [x], sorted S1, sorted S2.
    let sphere_one: Vec<usize> = graph.neighbors(x).iter().map(|&(y, _)| y).collect();
    let mut in_ball_one: BTreeSet<usize> = sphere_one.iter().copied().collect();
    in_ball_one.insert(x);
    let mut sphere_two: BTreeSet<usize> = BTreeSet::new();
    for &y in &sphere_one {
        for &(z, _) in graph.neighbors(y) {
            if !in_ball_one.contains(&z) {
                sphere_two.insert(z);
            }
        }
    }
    let mut ball_one = Vec::with_capacity(1 + sphere_one.len());
    ball_one.push(x);
    ball_one.extend(sphere_one.iter().copied());
    let mut ball_two = ball_one.clone();
    ball_two.extend(sphere_two.iter().copied());

    let m1 = ball_one.len();
    let m2 = ball_two.len();
    let size1 = m1 * d;
    let size2 = m2 * d;

    // Star of each ball-one vertex: (global neighbor, weight, signature).
    let stars: Vec<Vec<(usize, f64, CMatrix)>> = ball_one
        .iter()
        .map(|&z| {
            graph
                .neighbors(z)
                .iter()
                .map(|&(v, e)| {
                    let w = graph.edges()[e].weight;
                    let sigma = graph.sigma(z, v).expect("adjacency implies an edge");
                    (v, w, sigma)
                })
                .collect()
        })
        .collect();

    // The local Laplacian row on B1(x).
    let mu_x = graph.measure(x);
    let mut delta_row = CMatrix::zeros(d, size1);
    let degree_x = graph.degree(x);
    for i in 0..d {
        delta_row[(i, i)] = Complex64::new(-degree_x / mu_x, 0.0);
    }
    for (pos, &(_, w, ref sigma)) in (1..).zip(stars[0].iter()) {
        for i in 0..d {
            for j in 0..d {
                delta_row[(i, pos * d + j)] = (w / mu_x) * sigma[(i, j)];
            }
        }
    }

    // Basis-field data. Basis index a = (vertex position in ball_two) * d +
    // component. For each a and each directed star edge (z, v) with z in
    // B1(x): diff[a][z][edge] = sigma_zv e_a(v) - e_a(z), and
    // lap[a][z] = (1/mu(z)) sum_e w_e diff.
    let mut diffs: Vec<Vec<Vec<Vec<Complex64>>>> = Vec::with_capacity(size2);
    let mut laps: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(size2);
    let zero = vec![Complex64::new(0.0, 0.0); d];
    for a in 0..size2 {
        let u_a = ball_two[a / d];
        let c_a = a % d;
        let mut diff_a = Vec::with_capacity(m1);
        let mut lap_a = Vec::with_capacity(m1);
        for (z_idx, &z) in ball_one.iter().enumerate() {
            let star = &stars[z_idx];
            let mut per_edge = Vec::with_capacity(star.len());
            let mut lap_entry = zero.clone();
            for &(v, w, ref sigma) in star {
                let mut entry = zero.clone();
                if v == u_a {
                    for i in 0..d {
                        entry[i] = sigma[(i, c_a)];
                    }
                }
                if z == u_a {
                    entry[c_a] -= 1.0;
                }
                for i in 0..d {
                    lap_entry[i] += w * entry[i];
                }
                per_edge.push(entry);
            }
            let inv_mu = 1.0 / graph.measure(z);
            for item in lap_entry.iter_mut() {
                *item *= inv_mu;
            }
            diff_a.push(per_edge);
            lap_a.push(lap_entry);
        }
        diffs.push(diff_a);
        laps.push(lap_a);
    }

    // sigma_xy lap[a](y) - lap[a](x) along the star of x, for the two mixed
    // Gamma terms of Gamma2.
    let star_x = &stars[0];
    let mut lap_diffs: Vec<Vec<Vec<Complex64>>> = Vec::with_capacity(size2);
    for a in 0..size2 {
        let mut per_edge = Vec::with_capacity(star_x.len());
        for &(v, _, ref sigma) in star_x.iter() {
            let pos_v = ball_one
                .iter()
                .position(|&b| b == v)
                .expect("neighbors of x lie in ball one");
            let mut entry = zero.clone();
            for i in 0..d {
                let mut transported = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    transported += sigma[(i, j)] * laps[a][pos_v][j];
                }
                entry[i] = transported - laps[a][0][i];
            }
            per_edge.push(entry);
        }
        lap_diffs.push(per_edge);
    }

    // Gamma(f,g)(z) on basis pairs: (1/2 mu(z)) sum_e w_e diff_a^T conj(diff_b).
    let gamma_at = |a: usize, b: usize, z_idx: usize| -> Complex64 {
        let star = &stars[z_idx];
        let mut acc = Complex64::new(0.0, 0.0);
        for (e_idx, &(_, w, _)) in star.iter().enumerate() {
            acc += w * dot_conj(&diffs[a][z_idx][e_idx], &diffs[b][z_idx][e_idx]);
        }
        acc / (2.0 * graph.measure(ball_one[z_idx]))
    };

    // Gamma(x) on B1(x).
    let mut gamma_raw = CMatrix::zeros(size1, size1);
    for a in 0..size1 {
        for b in 0..size1 {
            gamma_raw[(a, b)] = gamma_at(a, b, 0);
        }
    }
    let gamma_defect = gamma_raw.hermitian_deviation();
    let gamma = HermitianMatrix::symmetrize(gamma_raw)?;

    // Gamma2(x) on B2(x):
    // (1/mu(x)) sum_y w_xy (Gamma_ab(y) - Gamma_ab(x)) is Delta Gamma at x;
    // subtract the two mixed terms and halve.
    let mut gamma_two_raw = CMatrix::zeros(size2, size2);
    for a in 0..size2 {
        for b in 0..size2 {
            let gamma_ab_x = gamma_at(a, b, 0);
            let mut delta_gamma = Complex64::new(0.0, 0.0);
            for &(v, w, _) in star_x.iter() {
                let pos_v = ball_one.iter().position(|&bb| bb == v).unwrap();
                delta_gamma += w * (gamma_at(a, b, pos_v) - gamma_ab_x);
            }
            delta_gamma /= mu_x;

            let mut mixed_right = Complex64::new(0.0, 0.0);
            let mut mixed_left = Complex64::new(0.0, 0.0);
            for (e_idx, &(_, w, _)) in star_x.iter().enumerate() {
                mixed_right += w * dot_conj(&diffs[a][0][e_idx], &lap_diffs[b][e_idx]);
                mixed_left += w * dot_conj(&lap_diffs[a][e_idx], &diffs[b][0][e_idx]);
            }
            let scale = 1.0 / (2.0 * mu_x);
            gamma_two_raw[(a, b)] =
                0.5 * (delta_gamma - scale * mixed_right - scale * mixed_left);
        }
    }
    let gamma_two_defect = gamma_two_raw.hermitian_deviation();
    let gamma_two = HermitianMatrix::symmetrize(gamma_two_raw)?;

    // Pad Gamma(x) into the B2 index set.
    let mut gamma_padded = CMatrix::zeros(size2, size2);
    gamma_padded.set_block(0, 0, gamma.as_matrix());

    // (1/n) * L_pad^T conj(L_pad) where L_pad is the Laplacian row zero-padded
    // to B2; for the form convention this is the matrix of
    // (1/n)(lap f)(x)^T conj((lap g)(x)).
    let dimension_term = if n.is_finite() {
        let mut t = CMatrix::zeros(size2, size2);
        for r in 0..size1 {
            for c in 0..size1 {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    acc += delta_row[(i, r)] * delta_row[(i, c)].conj();
                }
                t[(r, c)] = inv_n * acc;
            }
        }
        Some(t)
    } else {
        None
    };

    // Neighborhood statistics.
    let adjacency_to_x: BTreeSet<usize> = sphere_one.iter().copied().collect();
    let sphere_one_stats = sphere_one
        .iter()
        .map(|&y| {
            let mut outer = 0usize;
            let mut triangles = 0usize;
            let mut defect = CMatrix::zeros(d, d);
            for &(z, _) in graph.neighbors(y) {
                if z == x {
                    continue;
                }
                if adjacency_to_x.contains(&z) {
                    triangles += 1;
                    let hol = graph
                        .sigma(x, z)
                        .unwrap()
                        .mul(&graph.sigma(z, y).unwrap())
                        .unwrap()
                        .mul(&graph.sigma(y, x).unwrap())
                        .unwrap()
                        .conj();
                    let eye = CMatrix::identity(d);
                    defect = defect.add(&eye.sub(&hol).unwrap()).unwrap();
                } else {
                    outer += 1;
                }
            }
            SphereOneStats {
                vertex: y,
                outer_degree: outer,
                triangle_count: triangles,
                signed_triangle_defect: defect,
            }
        })
        .collect();
    let sphere_two_stats = sphere_two
        .iter()
        .map(|&z| {
            let common = graph
                .neighbors(z)
                .iter()
                .filter(|&&(v, _)| adjacency_to_x.contains(&v))
                .count();
            SphereTwoStats {
                vertex: z,
                common_neighbors: common,
            }
        })
        .collect();

    Ok(LocalOperatorBlocks {
        center: x,
        dim: d,
        ball_one,
        ball_two,
        delta_row,
        gamma,
        gamma_two,
        gamma_padded,
        dimension_term,
        gamma_hermitian_defect: gamma_defect,
        gamma_two_hermitian_defect: gamma_two_defect,
        sphere_one_stats,
        sphere_two_stats,
    })
}

fn dot_conj(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}
