//! The four transductive classifiers: harmonic propagation (GFHF), local and
//! global consistency (LGC), spectral regression on Laplacian eigenvectors
//! (LE), and greedy graph transduction via alternating minimization (GTAM).
//!
//! Each classifier maps `(graph, observed labels)` to an n×c [`ScoreMatrix`];
//! [`predict`] decodes scores to hard classes and [`accuracy`] evaluates them
//! against clean ground truth.
//!
//! The closed-form solvers are exposed both as plain functions and as
//! reusable "prepared" forms ([`HarmonicSystem`], [`LgcSolver`],
//! [`SpectralBasis`], [`GtamOperator`]) whose expensive factorizations can be
//! shared across many label configurations on the same graph.

use crate::graph::{AffinityGraph, LaplacianVariant};
use crate::labels::{one_hot, LabelState};
use crate::mat::Mat;
use crate::numerics::{least_squares, smallest_eigenpairs, CholeskyFactor, EigenPairs};
use crate::{Error, Result, Scalar};

/// Default convergence tolerance on the maximum absolute row change.
pub const DEFAULT_TOL: f64 = 1e-8;
/// Default iteration budget for the fixed-point solvers.
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Solver strategy for the classifiers that admit both forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagationMode {
    Iterative,
    Closed,
}

/// Real-valued class scores for every instance, plus solver metadata.
#[derive(Debug, Clone)]
pub struct ScoreMatrix<S> {
    pub scores: Mat<S>,
    /// Vertices whose scores carry no label information (isolated vertices,
    /// and for GFHF any unlabeled component with no labeled attachment);
    /// [`predict`] overrides them with the majority observed label.
    pub fallback: Vec<usize>,
    /// Fixed-point iterations spent, when the iterative mode ran.
    pub iterations: Option<usize>,
    pub converged: bool,
}

impl<S: Scalar> ScoreMatrix<S> {
    fn new(scores: Mat<S>, fallback: Vec<usize>) -> Self {
        debug_assert!(scores.all_finite(), "score matrix must be finite");
        ScoreMatrix { scores, fallback, iterations: None, converged: true }
    }
}

/// Unlabeled vertices with no path to any labeled vertex (isolated unlabeled
/// vertices included), in ascending order.
fn unreachable_unlabeled<S: Scalar>(graph: &AffinityGraph<S>, state: &LabelState) -> Vec<usize> {
    let n = graph.vertex_count();
    let mut reached = vec![false; n];
    let mut stack: Vec<usize> = state.labeled_indices();
    for &i in &stack {
        reached[i] = true;
    }
    while let Some(v) = stack.pop() {
        for &(u, _) in graph.neighbors(v) {
            if !reached[u] {
                reached[u] = true;
                stack.push(u);
            }
        }
    }
    (0..n).filter(|&i| !reached[i] && !state.is_labeled(i)).collect()
}

// ---------------------------------------------------------------------------
// GFHF
// ---------------------------------------------------------------------------

/// Prepared harmonic system for one (graph, labeled-mask) pair: the grounded
/// Laplacian over reachable unlabeled vertices, factored once.
pub struct HarmonicSystem<S> {
    unlabeled: Vec<usize>,
    factor: CholeskyFactor<S>,
    fallback: Vec<usize>,
}

impl<S: Scalar> HarmonicSystem<S> {
    pub fn new(graph: &AffinityGraph<S>, state: &LabelState) -> Result<Self> {
        assert_eq!(graph.vertex_count(), state.len());
        let fallback = unreachable_unlabeled(graph, state);
        let unreachable: Vec<bool> = {
            let mut m = vec![false; graph.vertex_count()];
            for &i in &fallback {
                m[i] = true;
            }
            m
        };
        let unlabeled: Vec<usize> = (0..graph.vertex_count())
            .filter(|&i| !state.is_labeled(i) && !unreachable[i])
            .collect();

        let u = unlabeled.len();
        let mut pos = vec![usize::MAX; graph.vertex_count()];
        for (row, &v) in unlabeled.iter().enumerate() {
            pos[v] = row;
        }
        let mut luu = Mat::zeros(u, u);
        for (row, &v) in unlabeled.iter().enumerate() {
            luu[(row, row)] = graph.degree(v);
            for &(j, w) in graph.neighbors(v) {
                if pos[j] != usize::MAX {
                    luu[(row, pos[j])] = -w;
                }
            }
        }
        let factor = CholeskyFactor::new(&luu)?;
        Ok(HarmonicSystem { unlabeled, factor, fallback })
    }

    /// Solve the harmonic system for the given observed labels.
    pub fn solve(
        &self,
        graph: &AffinityGraph<S>,
        state: &LabelState,
        classes: usize,
    ) -> Result<ScoreMatrix<S>> {
        let y = one_hot::<S>(state, classes);
        let u = self.unlabeled.len();
        let mut rhs = Mat::zeros(u, classes);
        for (row, &v) in self.unlabeled.iter().enumerate() {
            for &(j, w) in graph.neighbors(v) {
                if let Some(c) = state.observed(j) {
                    rhs[(row, c)] += w;
                }
            }
        }
        let fu = self.factor.solve_mat(&rhs);

        let mut scores = y;
        for (row, &v) in self.unlabeled.iter().enumerate() {
            for c in 0..classes {
                scores[(v, c)] = fu[(row, c)];
            }
        }
        Ok(ScoreMatrix::new(scores, self.fallback.clone()))
    }
}

/// Gaussian-fields harmonic label propagation.
///
/// Iterative mode repeats `F ← P F` with labeled rows re-clamped to their
/// one-hot observations; closed mode solves the grounded Laplacian system
/// `L_uu F_u = W_ul Y_l` directly. Unlabeled components with no labeled
/// attachment are excluded and flagged in [`ScoreMatrix::fallback`].
pub fn gfhf<S: Scalar>(
    graph: &AffinityGraph<S>,
    state: &LabelState,
    classes: usize,
    mode: PropagationMode,
    tol: S,
    max_iter: usize,
) -> Result<ScoreMatrix<S>> {
    assert_eq!(graph.vertex_count(), state.len());
    match mode {
        PropagationMode::Closed => HarmonicSystem::new(graph, state)?.solve(graph, state, classes),
        PropagationMode::Iterative => {
            let y = one_hot::<S>(state, classes);
            let p = graph.operator(LaplacianVariant::RandomWalk);
            let mut f = y.clone();
            let mut iterations = 0;
            let mut converged = false;
            while iterations < max_iter {
                let mut next = p.apply_mat(&f);
                for i in 0..state.len() {
                    if state.is_labeled(i) {
                        for c in 0..classes {
                            next[(i, c)] = y[(i, c)];
                        }
                    }
                }
                let delta = next.max_abs_diff(&f);
                f = next;
                iterations += 1;
                if delta < tol {
                    converged = true;
                    break;
                }
            }
            let mut out = ScoreMatrix::new(f, unreachable_unlabeled(graph, state));
            out.iterations = Some(iterations);
            out.converged = converged;
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// LGC
// ---------------------------------------------------------------------------

/// Prepared LGC solver for one (graph, alpha) pair: `I − αS` factored once.
pub struct LgcSolver<S> {
    alpha: S,
    factor: CholeskyFactor<S>,
}

impl<S: Scalar> LgcSolver<S> {
    pub fn new(graph: &AffinityGraph<S>, alpha: S) -> Result<Self> {
        check_alpha(alpha)?;
        let n = graph.vertex_count();
        let s = graph.operator(LaplacianVariant::SymmetricNormalized).to_dense();
        let mut system = s.scale(-alpha);
        for i in 0..n {
            system[(i, i)] += S::one();
        }
        let factor = CholeskyFactor::new(&system)?;
        Ok(LgcSolver { alpha, factor })
    }

    pub fn solve(&self, state: &LabelState, classes: usize) -> Result<ScoreMatrix<S>> {
        let y = one_hot::<S>(state, classes);
        let rhs = y.scale(S::one() - self.alpha);
        let scores = self.factor.solve_mat(&rhs);
        Ok(ScoreMatrix::new(scores, Vec::new()))
    }
}

fn check_alpha<S: Scalar>(alpha: S) -> Result<()> {
    if alpha <= S::zero() || alpha >= S::one() {
        return Err(Error::invalid(format!("alpha must lie strictly in (0, 1), got {alpha}")));
    }
    Ok(())
}

/// Local and global consistency: the fixed point of
/// `F ← α S F + (1−α) Y` with `S` the symmetrically normalized adjacency.
pub fn lgc<S: Scalar>(
    graph: &AffinityGraph<S>,
    state: &LabelState,
    classes: usize,
    alpha: S,
    mode: PropagationMode,
    tol: S,
    max_iter: usize,
) -> Result<ScoreMatrix<S>> {
    assert_eq!(graph.vertex_count(), state.len());
    check_alpha(alpha)?;
    match mode {
        PropagationMode::Closed => LgcSolver::new(graph, alpha)?.solve(state, classes),
        PropagationMode::Iterative => {
            let y = one_hot::<S>(state, classes);
            let injected = y.scale(S::one() - alpha);
            let s = graph.operator(LaplacianVariant::SymmetricNormalized);
            let mut f = y.clone();
            let mut iterations = 0;
            let mut converged = false;
            while iterations < max_iter {
                let mut next = s.apply_mat(&f).scale(alpha);
                for i in 0..state.len() {
                    for c in 0..classes {
                        next[(i, c)] += injected[(i, c)];
                    }
                }
                let delta = next.max_abs_diff(&f);
                f = next;
                iterations += 1;
                if delta < tol {
                    converged = true;
                    break;
                }
            }
            let mut out = ScoreMatrix::new(f, Vec::new());
            out.iterations = Some(iterations);
            out.converged = converged;
            Ok(out)
        }
    }
}

// ---------------------------------------------------------------------------
// Laplacian eigenmaps
// ---------------------------------------------------------------------------

/// Prepared spectral basis for one graph: the smoothest non-trivial
/// eigenvectors of the unnormalized Laplacian.
///
/// The Laplacian's kernel (one indicator per connected component, eigenvalue
/// zero) carries no within-component information, and on fragmented graphs
/// its multiplicity can dwarf any useful basis budget, so the basis starts at
/// the first strictly positive eigenvalue. The kernel multiplicity equals
/// the component count exactly, which makes the cut deterministic.
pub struct SpectralBasis<S> {
    eigen: EigenPairs<S>,
    kernel_dim: usize,
}

impl<S: Scalar> SpectralBasis<S> {
    /// Prepare the `p` smoothest non-trivial eigenvectors.
    pub fn new(graph: &AffinityGraph<S>, p: usize) -> Result<Self> {
        let n = graph.vertex_count();
        let kernel_dim = graph.component_count();
        if p < 1 || p > n.saturating_sub(kernel_dim) {
            return Err(Error::invalid(format!(
                "p = {p} out of range 1..={} (n = {n} minus {kernel_dim} trivial eigenfunctions)",
                n.saturating_sub(kernel_dim)
            )));
        }
        let l = graph.operator(LaplacianVariant::Unnormalized).to_dense();
        let eigen = smallest_eigenpairs(&l, p + kernel_dim)?;
        Ok(SpectralBasis { eigen, kernel_dim })
    }

    /// Number of non-trivial basis vectors held.
    pub fn basis_count(&self) -> usize {
        self.eigen.count() - self.kernel_dim
    }

    /// Non-trivial eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[S] {
        &self.eigen.values[self.kernel_dim..]
    }

    /// Fit per-class regression coefficients on the labeled rows of the first
    /// `p` non-trivial eigenvectors and extend to every vertex. Vertices in
    /// components with no labels are flagged for the prediction fallback.
    pub fn fit(
        &self,
        graph: &AffinityGraph<S>,
        state: &LabelState,
        classes: usize,
        p: usize,
    ) -> Result<ScoreMatrix<S>> {
        if p < 1 || p > self.basis_count() {
            return Err(Error::invalid(format!(
                "p = {p} out of range 1..={}",
                self.basis_count()
            )));
        }
        let labeled = state.labeled_indices();
        let l = labeled.len();
        let offset = self.kernel_dim;
        let design =
            Mat::from_fn(l, p, |row, col| self.eigen.vectors[(labeled[row], offset + col)]);
        // Signed targets: +1 for the observed class column, −1 elsewhere.
        let targets = Mat::from_fn(l, classes, |row, col| {
            if state.observed(labeled[row]) == Some(col) {
                S::one()
            } else {
                -S::one()
            }
        });
        let coeffs = least_squares(&design, &targets)?;
        let basis = Mat::from_fn(state.len(), p, |i, j| self.eigen.vectors[(i, offset + j)]);
        let scores = basis.matmul(&coeffs);
        Ok(ScoreMatrix::new(scores, unreachable_unlabeled(graph, state)))
    }
}

/// Laplacian-eigenmaps transduction: least-squares fit of the labeled data in
/// the span of the `p` smoothest non-trivial eigenvectors of `L`.
pub fn laplacian_eigenmaps<S: Scalar>(
    graph: &AffinityGraph<S>,
    state: &LabelState,
    classes: usize,
    p: usize,
) -> Result<ScoreMatrix<S>> {
    assert_eq!(graph.vertex_count(), state.len());
    SpectralBasis::new(graph, p)?.fit(graph, state, classes, p)
}

// ---------------------------------------------------------------------------
// GTAM
// ---------------------------------------------------------------------------

/// Degree-weighted label matrix: column `j` holds `D_ii Y_ij / Σ_k D_kk Y_kj`,
/// so every column with labeled degree mass sums to one and high-degree
/// vertices carry more weight.
pub fn weighted_label_matrix<S: Scalar>(graph: &AffinityGraph<S>, y: &Mat<S>) -> Mat<S> {
    let n = y.rows();
    let c = y.cols();
    let mut out = Mat::zeros(n, c);
    for j in 0..c {
        let mut mass = S::zero();
        for i in 0..n {
            mass += graph.degree(i) * y[(i, j)];
        }
        if mass <= S::zero() {
            continue;
        }
        for i in 0..n {
            out[(i, j)] = graph.degree(i) * y[(i, j)] / mass;
        }
    }
    out
}

/// Result of a GTAM run: scores, the greedily augmented label set, and the
/// objective value after the initial solve and after every greedy step.
pub struct GtamResult<S> {
    pub scores: ScoreMatrix<S>,
    pub augmented: LabelState,
    pub objective_trace: Vec<S>,
    pub steps: usize,
}

/// Prepared GTAM operator for one (graph, mu) pair.
///
/// Holds the Cholesky factor of `B = ℒ/μ + I` (ℒ the symmetric-normalized
/// Laplacian `I − S`) and the eliminated-F quadratic form `A = μ(I − B⁻¹)`,
/// for which `min_F Q(F, Y) = ½ tr(ỸᵀAỸ)`. Candidate evaluations in the
/// greedy loop then cost O(1) each while staying exact.
pub struct GtamOperator<S> {
    mu: S,
    factor: CholeskyFactor<S>,
    quad: Mat<S>,
}

impl<S: Scalar> GtamOperator<S> {
    pub fn new(graph: &AffinityGraph<S>, mu: S) -> Result<Self> {
        if mu <= S::zero() {
            return Err(Error::invalid(format!("mu must be positive, got {mu}")));
        }
        let n = graph.vertex_count();
        let s = graph.operator(LaplacianVariant::SymmetricNormalized).to_dense();
        // B = (I − S)/μ + I
        let mut b = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let lap = if i == j { S::one() - s[(i, j)] } else { -s[(i, j)] };
                b[(i, j)] = lap / mu;
            }
            b[(i, i)] += S::one();
        }
        let factor = CholeskyFactor::new(&b)?;
        let inv = factor.inverse();
        let quad = Mat::from_fn(n, n, |i, j| {
            let id = if i == j { S::one() } else { S::zero() };
            mu * (id - inv[(i, j)])
        });
        Ok(GtamOperator { mu, factor, quad })
    }

    pub fn mu(&self) -> S {
        self.mu
    }

    /// Solve `B F = Ỹ(Y)` for a fixed binary label matrix.
    pub fn solve_scores(&self, graph: &AffinityGraph<S>, y: &Mat<S>) -> Mat<S> {
        self.factor.solve_mat(&weighted_label_matrix(graph, y))
    }

    /// Run the alternating greedy minimization until every non-isolated
    /// vertex is labeled or `max_steps` greedy additions have been made.
    pub fn run(
        &self,
        graph: &AffinityGraph<S>,
        state: &LabelState,
        classes: usize,
        max_steps: usize,
    ) -> Result<GtamResult<S>> {
        let n = graph.vertex_count();
        assert_eq!(n, state.len());

        let mut observed: Vec<Option<usize>> = (0..n).map(|i| state.observed(i)).collect();
        let degrees = graph.degrees();

        // Per-class running state of the quadratic form:
        //   mass[j] = Σ_i d_i Y_ij
        //   w[j]    = A (d ∘ y_j)
        //   q[j]    = (d ∘ y_j)ᵀ A (d ∘ y_j)
        let mut mass = vec![S::zero(); classes];
        let mut w: Vec<Vec<S>> = vec![vec![S::zero(); n]; classes];
        let mut q = vec![S::zero(); classes];
        for j in 0..classes {
            let dy: Vec<S> = (0..n)
                .map(|i| if observed[i] == Some(j) { degrees[i] } else { S::zero() })
                .collect();
            mass[j] = dy.iter().copied().sum();
            w[j] = self.quad.mul_vec(&dy);
            q[j] = dy.iter().zip(&w[j]).map(|(&a, &b)| a * b).sum();
        }

        let objective = |mass: &[S], q: &[S]| -> S {
            let half = S::of_f64(0.5);
            let mut total = S::zero();
            for j in 0..classes {
                if mass[j] > S::zero() {
                    total += q[j] / (mass[j] * mass[j]);
                }
            }
            half * total
        };

        let mut candidates: Vec<usize> =
            (0..n).filter(|&i| observed[i].is_none() && !graph.is_isolated(i)).collect();
        let mut trace = vec![objective(&mass, &q)];
        let mut steps = 0;

        while !candidates.is_empty() && steps < max_steps {
            let mut best: Option<(S, usize, usize)> = None;
            for (slot, &i) in candidates.iter().enumerate() {
                let d = degrees[i];
                for j in 0..classes {
                    let new_mass = mass[j] + d;
                    let new_q = q[j] + (d + d) * w[j][i] + d * d * self.quad[(i, i)];
                    let mut total = S::zero();
                    for jj in 0..classes {
                        if jj == j {
                            if new_mass > S::zero() {
                                total += new_q / (new_mass * new_mass);
                            }
                        } else if mass[jj] > S::zero() {
                            total += q[jj] / (mass[jj] * mass[jj]);
                        }
                    }
                    let obj = S::of_f64(0.5) * total;
                    if best.is_none_or(|(b, _, _)| obj < b) {
                        best = Some((obj, slot, j));
                    }
                }
            }
            let (obj, slot, class) = best.expect("non-empty candidate set");
            let vertex = candidates.remove(slot);
            let d = degrees[vertex];
            q[class] = q[class] + (d + d) * w[class][vertex] + d * d * self.quad[(vertex, vertex)];
            mass[class] += d;
            for t in 0..n {
                w[class][t] += d * self.quad[(t, vertex)];
            }
            observed[vertex] = Some(class);
            trace.push(obj);
            steps += 1;
        }

        let augmented = LabelState::new(observed, state.flip_record().to_vec())?;
        let y = one_hot::<S>(&augmented, classes);
        let scores = self.solve_scores(graph, &y);
        let mut score_matrix = ScoreMatrix::new(scores, graph.isolated_vertices());
        score_matrix.iterations = Some(steps);
        Ok(GtamResult { scores: score_matrix, augmented, objective_trace: trace, steps })
    }
}

/// Graph transduction via alternating minimization with exact greedy label
/// additions.
pub fn gtam<S: Scalar>(
    graph: &AffinityGraph<S>,
    state: &LabelState,
    classes: usize,
    mu: S,
    max_steps: usize,
) -> Result<GtamResult<S>> {
    GtamOperator::new(graph, mu)?.run(graph, state, classes, max_steps)
}

// ---------------------------------------------------------------------------
// Decoding and evaluation
// ---------------------------------------------------------------------------

/// Per-row argmax with ties broken toward the lower class index; vertices in
/// the score matrix's fallback set and isolated vertices receive the
/// majority observed label.
pub fn predict<S: Scalar>(
    scores: &ScoreMatrix<S>,
    state: &LabelState,
    graph: &AffinityGraph<S>,
    classes: usize,
) -> Vec<usize> {
    let n = scores.scores.rows();
    let majority = state.majority_observed(classes);
    let mut override_rows = vec![false; n];
    for &i in &scores.fallback {
        override_rows[i] = true;
    }
    for i in graph.isolated_vertices() {
        override_rows[i] = true;
    }
    (0..n)
        .map(|i| {
            if override_rows[i] {
                return majority;
            }
            let row = scores.scores.row(i);
            let mut best = 0;
            for c in 1..row.len() {
                if row[c] > row[best] {
                    best = c;
                }
            }
            best
        })
        .collect()
}

/// Which instances an accuracy figure covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AccuracyScope {
    /// Transductive convention: unlabeled instances only.
    #[default]
    Unlabeled,
    All,
}

/// Fraction of correct predictions against clean ground truth over the
/// chosen scope.
pub fn accuracy(
    pred: &[usize],
    truth: &[usize],
    state: &LabelState,
    scope: AccuracyScope,
) -> Result<f64> {
    if pred.len() != truth.len() || pred.len() != state.len() {
        return Err(Error::invalid("prediction, truth and label state lengths differ"));
    }
    let indices: Vec<usize> = match scope {
        AccuracyScope::All => (0..pred.len()).collect(),
        AccuracyScope::Unlabeled => state.unlabeled_indices(),
    };
    if indices.is_empty() {
        return Err(Error::invalid("accuracy scope selects no instances"));
    }
    let hits = indices.iter().filter(|&&i| pred[i] == truth[i]).count();
    Ok(hits as f64 / indices.len() as f64)
}
