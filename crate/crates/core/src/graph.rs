//! Affinity-graph construction and the derived degree / Laplacian operators.
//!
//! Graphs are stored as per-vertex adjacency lists sorted by neighbour id.
//! Dense materialization is fine at the scales this crate targets (n < 2000)
//! and is what the eigensolver and closed-form solvers consume.

use rayon::prelude::*;

use crate::mat::Mat;
use crate::{Error, Result, Scalar};

/// Symmetric nonnegative affinity graph with cached vertex degrees.
///
/// Degrees are accumulated in adjacency order, and the operator matvecs below
/// reuse that exact summation order, so identities like `P·1 = 1` and
/// `L·1 = 0` hold exactly, not just to rounding.
#[derive(Debug, Clone)]
pub struct AffinityGraph<S> {
    n: usize,
    adj: Vec<Vec<(usize, S)>>,
    degree: Vec<S>,
}

impl<S: Scalar> AffinityGraph<S> {
    /// Build from an undirected edge list. Duplicate edges are rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize, S)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(i, j, w) in edges {
            if i >= n || j >= n {
                return Err(Error::invalid(format!("edge ({i},{j}) out of range for n={n}")));
            }
            if i == j {
                return Err(Error::invalid(format!("self loop at vertex {i}")));
            }
            if w < S::zero() {
                return Err(Error::invalid(format!("negative weight on edge ({i},{j})")));
            }
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(j, _)| j);
            if list.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::invalid("duplicate edge"));
            }
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<Vec<(usize, S)>>) -> Self {
        let n = adj.len();
        let degree = adj
            .iter()
            .map(|list| {
                let mut sum = S::zero();
                for &(_, w) in list {
                    sum += w;
                }
                sum
            })
            .collect();
        AffinityGraph { n, adj, degree }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, S)] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> S {
        self.degree[i]
    }

    pub fn degrees(&self) -> &[S] {
        &self.degree
    }

    pub fn weight(&self, i: usize, j: usize) -> S {
        match self.adj[i].binary_search_by_key(&j, |&(v, _)| v) {
            Ok(pos) => self.adj[i][pos].1,
            Err(_) => S::zero(),
        }
    }

    pub fn is_isolated(&self, i: usize) -> bool {
        self.adj[i].is_empty()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.n).filter(|&i| self.is_isolated(i)).collect()
    }

    /// Undirected edges with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, S)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(i, list)| list.iter().filter(move |&&(j, _)| i < j).map(move |&(j, w)| (i, j, w)))
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Component id per vertex, ids assigned in order of first discovery.
    pub fn connected_components(&self) -> Vec<usize> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        let mut stack = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = next;
            stack.push(start);
            while let Some(v) = stack.pop() {
                for &(u, _) in &self.adj[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().iter().max().map_or(0, |&m| m + 1)
    }

    /// Structural checks: symmetry, no self loops, nonnegative weights,
    /// cached degree equal to the row sum.
    pub fn validate(&self) -> Result<()> {
        for (i, list) in self.adj.iter().enumerate() {
            let mut sum = S::zero();
            for &(j, w) in list {
                if j == i {
                    return Err(Error::validation(format!("self loop at vertex {i}")));
                }
                if w < S::zero() {
                    return Err(Error::validation(format!("negative weight on ({i},{j})")));
                }
                if self.weight(j, i) != w {
                    return Err(Error::validation(format!("asymmetric weight on ({i},{j})")));
                }
                sum += w;
            }
            let diff = (sum - self.degree[i]).abs();
            let tol = S::of_f64(1e-12) * self.degree[i].max(S::one());
            if diff > tol {
                return Err(Error::validation(format!("degree mismatch at vertex {i}")));
            }
        }
        Ok(())
    }

    pub fn operator(&self, variant: LaplacianVariant) -> GraphOperator<'_, S> {
        GraphOperator::new(self, variant)
    }

    pub fn to_dense_weights(&self) -> Mat<S> {
        let mut w = Mat::zeros(self.n, self.n);
        for (i, list) in self.adj.iter().enumerate() {
            for &(j, wij) in list {
                w[(i, j)] = wij;
            }
        }
        w
    }
}

/// Per-vertex nearest-neighbour lists, sorted ascending by squared distance
/// with ties broken toward the lower vertex id.
#[derive(Debug, Clone)]
pub struct NeighborIndex<S> {
    k: usize,
    lists: Vec<Vec<(usize, S)>>,
}

impl<S: Scalar> NeighborIndex<S> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vertex_count(&self) -> usize {
        self.lists.len()
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, S)] {
        &self.lists[i]
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.lists[i].iter().any(|&(v, _)| v == j)
    }
}

/// All pairwise squared Euclidean distances between the rows of `features`.
pub fn pairwise_sq_euclidean<S: Scalar>(features: &Mat<S>) -> Result<Mat<S>> {
    let n = features.rows();
    if n < 2 {
        return Err(Error::invalid("need at least 2 rows for pairwise distances"));
    }
    if !features.all_finite() {
        return Err(Error::invalid("features contain non-finite values"));
    }
    let rows: Vec<Vec<S>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let xi = features.row(i);
            (0..n)
                .map(|j| {
                    if i == j {
                        return S::zero();
                    }
                    let xj = features.row(j);
                    let mut sum = S::zero();
                    for (&a, &b) in xi.iter().zip(xj) {
                        let diff = a - b;
                        sum += diff * diff;
                    }
                    sum
                })
                .collect()
        })
        .collect();
    Ok(Mat::from_rows(rows))
}

/// The `k` nearest other vertices of every vertex.
pub fn knn_index<S: Scalar>(dist: &Mat<S>, k: usize) -> Result<NeighborIndex<S>> {
    let n = dist.rows();
    assert_eq!(n, dist.cols(), "distance matrix must be square");
    if k < 1 || k > n - 1 {
        return Err(Error::invalid(format!("k = {k} out of range 1..={}", n - 1)));
    }
    let lists: Vec<Vec<(usize, S)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut cand: Vec<(usize, S)> =
                (0..n).filter(|&j| j != i).map(|j| (j, dist[(i, j)])).collect();
            cand.sort_by(|a, b| {
                a.1.partial_cmp(&b.1).expect("finite distances").then(a.0.cmp(&b.0))
            });
            cand.truncate(k);
            cand
        })
        .collect();
    Ok(NeighborIndex { k, lists })
}

/// Affinity graph with `W_ij = 1` exactly when `i` and `j` appear in each
/// other's neighbour lists.
pub fn mutual_knn_graph<S: Scalar>(index: &NeighborIndex<S>) -> AffinityGraph<S> {
    let n = index.vertex_count();
    let mut adj: Vec<Vec<(usize, S)>> = vec![Vec::new(); n];
    for i in 0..n {
        for &(j, _) in index.neighbors(i) {
            if i < j && index.contains(j, i) {
                adj[i].push((j, S::one()));
                adj[j].push((i, S::one()));
            }
        }
    }
    for list in &mut adj {
        list.sort_by_key(|&(j, _)| j);
    }
    AffinityGraph::from_adjacency(adj)
}

/// Replace the weights on the existing edge set with
/// `exp(−d_ij / (2σ²))`, keeping the edge set itself.
pub fn rbf_weights<S: Scalar>(
    dist: &Mat<S>,
    graph: &AffinityGraph<S>,
    sigma: S,
) -> Result<AffinityGraph<S>> {
    if sigma <= S::zero() {
        return Err(Error::invalid("sigma must be positive"));
    }
    let two_sigma_sq = (S::one() + S::one()) * sigma * sigma;
    let adj: Vec<Vec<(usize, S)>> = graph
        .adj
        .iter()
        .enumerate()
        .map(|(i, list)| {
            list.iter().map(|&(j, _)| (j, (-dist[(i, j)] / two_sigma_sq).exp())).collect()
        })
        .collect();
    Ok(AffinityGraph::from_adjacency(adj))
}

/// The operator variants derived from `W` and `D`: the unnormalized Laplacian
/// `L = D − W`, the symmetrically normalized adjacency `S = D^{-1/2} W D^{-1/2}`,
/// and the row-stochastic transition matrix `P = D^{-1} W`.
///
/// Rows and columns of isolated vertices are zero under the normalized
/// variants; no division by a zero degree ever happens.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplacianVariant {
    Unnormalized,
    SymmetricNormalized,
    RandomWalk,
}

/// Sparse matrix-vector view over an [`AffinityGraph`].
#[derive(Debug, Clone)]
pub struct GraphOperator<'a, S> {
    graph: &'a AffinityGraph<S>,
    variant: LaplacianVariant,
    inv_sqrt_degree: Vec<S>,
}

impl<'a, S: Scalar> GraphOperator<'a, S> {
    fn new(graph: &'a AffinityGraph<S>, variant: LaplacianVariant) -> Self {
        let inv_sqrt_degree = graph
            .degree
            .iter()
            .map(|&d| if d > S::zero() { S::one() / d.sqrt() } else { S::zero() })
            .collect();
        GraphOperator { graph, variant, inv_sqrt_degree }
    }

    pub fn dim(&self) -> usize {
        self.graph.n
    }

    pub fn matvec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.graph.n);
        (0..self.graph.n).map(|i| self.row_apply(i, x)).collect()
    }

    fn row_apply(&self, i: usize, x: &[S]) -> S {
        let g = self.graph;
        match self.variant {
            LaplacianVariant::Unnormalized => {
                let mut sum = S::zero();
                for &(j, w) in &g.adj[i] {
                    sum += w * x[j];
                }
                g.degree[i] * x[i] - sum
            }
            LaplacianVariant::SymmetricNormalized => {
                let mut sum = S::zero();
                for &(j, w) in &g.adj[i] {
                    sum += w * self.inv_sqrt_degree[j] * x[j];
                }
                sum * self.inv_sqrt_degree[i]
            }
            LaplacianVariant::RandomWalk => {
                if g.degree[i] <= S::zero() {
                    return S::zero();
                }
                let mut sum = S::zero();
                for &(j, w) in &g.adj[i] {
                    sum += w * x[j];
                }
                sum / g.degree[i]
            }
        }
    }

    /// Apply the operator to every column of `m`.
    pub fn apply_mat(&self, m: &Mat<S>) -> Mat<S> {
        let n = self.graph.n;
        assert_eq!(m.rows(), n);
        let c = m.cols();
        let mut out = Mat::zeros(n, c);
        let g = self.graph;
        for i in 0..n {
            match self.variant {
                LaplacianVariant::Unnormalized => {
                    let d = g.degree[i];
                    for col in 0..c {
                        out[(i, col)] = d * m[(i, col)];
                    }
                    for &(j, w) in &g.adj[i] {
                        for col in 0..c {
                            let delta = w * m[(j, col)];
                            out[(i, col)] -= delta;
                        }
                    }
                }
                LaplacianVariant::SymmetricNormalized => {
                    for &(j, w) in &g.adj[i] {
                        let scale = w * self.inv_sqrt_degree[j];
                        for col in 0..c {
                            out[(i, col)] += scale * m[(j, col)];
                        }
                    }
                    for col in 0..c {
                        out[(i, col)] *= self.inv_sqrt_degree[i];
                    }
                }
                LaplacianVariant::RandomWalk => {
                    if g.degree[i] <= S::zero() {
                        continue;
                    }
                    for &(j, w) in &g.adj[i] {
                        for col in 0..c {
                            out[(i, col)] += w * m[(j, col)];
                        }
                    }
                    for col in 0..c {
                        out[(i, col)] /= g.degree[i];
                    }
                }
            }
        }
        out
    }

    pub fn to_dense(&self) -> Mat<S> {
        let n = self.graph.n;
        let g = self.graph;
        let mut out = Mat::zeros(n, n);
        match self.variant {
            LaplacianVariant::Unnormalized => {
                for i in 0..n {
                    out[(i, i)] = g.degree[i];
                    for &(j, w) in &g.adj[i] {
                        out[(i, j)] = -w;
                    }
                }
            }
            LaplacianVariant::SymmetricNormalized => {
                for i in 0..n {
                    for &(j, w) in &g.adj[i] {
                        out[(i, j)] = w * self.inv_sqrt_degree[i] * self.inv_sqrt_degree[j];
                    }
                }
            }
            LaplacianVariant::RandomWalk => {
                for i in 0..n {
                    if g.degree[i] <= S::zero() {
                        continue;
                    }
                    for &(j, w) in &g.adj[i] {
                        out[(i, j)] = w / g.degree[i];
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn features(rows: Vec<Vec<f64>>) -> Mat<f64> {
        Mat::from_rows(rows)
    }

    #[test]
    fn pairwise_three_four_five() {
        let x = features(vec![vec![0.0, 0.0], vec![3.0, 4.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        assert_eq!(d[(0, 1)], 25.0);
        assert_eq!(d[(1, 0)], 25.0);
    }

    #[test]
    fn pairwise_diagonal_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let x = Mat::<f64>::from_fn(6, 3, |_, _| rng.random_range(-2.0..2.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        for i in 0..6 {
            assert_eq!(d[(i, i)], 0.0);
        }
    }

    #[test]
    fn pairwise_matches_loop_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let x = Mat::<f64>::from_fn(10, 4, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        for i in 0..10 {
            for j in 0..10 {
                let mut expect = 0.0;
                for m in 0..4 {
                    expect += (x[(i, m)] - x[(j, m)]).powi(2);
                }
                assert!((d[(i, j)] - expect).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn pairwise_rejects_non_finite() {
        let x = features(vec![vec![0.0], vec![f64::NAN]]);
        assert!(pairwise_sq_euclidean(&x).is_err());
    }

    #[test]
    fn knn_collinear_points() {
        // Points at coordinates 0, 1, 3 on a line.
        let x = features(vec![vec![0.0], vec![1.0], vec![3.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        let idx = knn_index(&d, 1).unwrap();
        assert_eq!(idx.neighbors(0)[0].0, 1);
        assert_eq!(idx.neighbors(1)[0].0, 0);
        assert_eq!(idx.neighbors(2)[0].0, 1);
    }

    #[test]
    fn knn_full_neighbourhood() {
        let x = features(vec![vec![0.0], vec![1.0], vec![3.0], vec![7.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        let idx = knn_index(&d, 3).unwrap();
        for i in 0..4 {
            let mut seen: Vec<usize> = idx.neighbors(i).iter().map(|&(j, _)| j).collect();
            seen.sort_unstable();
            let expect: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            assert_eq!(seen, expect);
        }
    }

    #[test]
    fn knn_tie_breaks_toward_lower_id() {
        // Vertices 0 and 2 are exactly equidistant from vertex 1; coincident
        // points make every pair of vertex 3's distances tie as well.
        let x = features(vec![vec![0.0], vec![1.0], vec![2.0], vec![1.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        let idx = knn_index(&d, 1).unwrap();
        // d(1,0) = d(1,2) = 1, but 3 is coincident with 1.
        assert_eq!(idx.neighbors(1)[0].0, 3);
        // d(3,0) = d(3,2) = 1 after its coincident partner; k=1 keeps 1.
        assert_eq!(idx.neighbors(3)[0].0, 1);
        // d(0,1) = d(0,3) = 1: tie broken toward vertex 1.
        assert_eq!(idx.neighbors(0)[0].0, 1);
        assert_eq!(idx.neighbors(2)[0].0, 1);
    }

    #[test]
    fn knn_rejects_out_of_range_k() {
        let x = features(vec![vec![0.0], vec![1.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        assert!(knn_index(&d, 0).is_err());
        assert!(knn_index(&d, 2).is_err());
    }

    #[test]
    fn mutual_knn_keeps_only_reciprocated_pairs() {
        let x = features(vec![vec![0.0], vec![1.0], vec![3.0]]);
        let d = pairwise_sq_euclidean(&x).unwrap();
        let idx = knn_index(&d, 1).unwrap();
        let g = mutual_knn_graph(&idx);
        // 2 chose 1, but 1 chose 0: only the 0–1 edge survives.
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.weight(0, 1), 1.0);
        assert!(g.is_isolated(2));
    }

    #[test]
    fn mutual_knn_complete_for_full_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = Mat::<f64>::from_fn(5, 2, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let idx = knn_index(&d, 4).unwrap();
        let g = mutual_knn_graph(&idx);
        for i in 0..5 {
            assert_eq!(g.degree(i), 4.0);
        }
    }

    #[test]
    fn mutual_knn_is_exactly_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let x = Mat::<f64>::from_fn(12, 3, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let g = mutual_knn_graph(&knn_index(&d, 3).unwrap());
        g.validate().unwrap();
        let w = g.to_dense_weights();
        assert_eq!(w, w.transpose());
    }

    #[test]
    fn rbf_weight_values() {
        let g = AffinityGraph::<f64>::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let sigma = 1.5f64;
        let mut dist = Mat::zeros(3, 3);
        dist[(0, 1)] = 0.0;
        dist[(1, 0)] = 0.0;
        dist[(1, 2)] = 2.0 * sigma * sigma;
        dist[(2, 1)] = 2.0 * sigma * sigma;
        let rbf = rbf_weights(&dist, &g, sigma).unwrap();
        assert_eq!(rbf.weight(0, 1), 1.0);
        assert!((rbf.weight(1, 2) - (-1.0f64).exp()).abs() <= 1e-12);
        assert_eq!(rbf.edge_count(), g.edge_count());
    }

    #[test]
    fn rbf_large_sigma_recovers_constant_weights() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = Mat::<f64>::from_fn(10, 3, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let g = mutual_knn_graph(&knn_index(&d, 3).unwrap());
        let rbf = rbf_weights(&d, &g, 1e6).unwrap();
        for (i, j, w) in rbf.edges() {
            assert!((w - 1.0).abs() <= 1e-6, "edge ({i},{j}) weight {w}");
        }
    }

    #[test]
    fn rbf_rejects_non_positive_sigma() {
        let g = AffinityGraph::<f64>::from_edges(2, &[(0, 1, 1.0)]).unwrap();
        let d = Mat::zeros(2, 2);
        assert!(rbf_weights(&d, &g, 0.0).is_err());
        assert!(rbf_weights(&d, &g, -1.0).is_err());
    }

    #[test]
    fn laplacian_triangle() {
        let g = AffinityGraph::<f64>::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
        let l = g.operator(LaplacianVariant::Unnormalized).to_dense();
        for i in 0..3 {
            assert_eq!(g.degree(i), 2.0);
            assert_eq!(l[(i, i)], 2.0);
            let row_sum: f64 = (0..3).map(|j| l[(i, j)]).sum();
            assert_eq!(row_sum, 0.0);
        }
    }

    #[test]
    fn laplacian_quadratic_form_matches_edge_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let x = Mat::<f64>::from_fn(9, 3, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let g = mutual_knn_graph(&knn_index(&d, 3).unwrap());
        let op = g.operator(LaplacianVariant::Unnormalized);
        for _ in 0..10 {
            let v: Vec<f64> = (0..9).map(|_| rng.random_range(-1.0..1.0)).collect();
            let lv = op.matvec(&v);
            let quad: f64 = v.iter().zip(&lv).map(|(a, b)| a * b).sum();
            let mut edge_sum = 0.0;
            for (i, j, w) in g.edges() {
                edge_sum += w * (v[i] - v[j]).powi(2);
            }
            assert!((quad - edge_sum).abs() <= 1e-10);
            assert!(quad >= -1e-10);
        }
    }

    #[test]
    fn random_walk_row_for_path_midpoint() {
        let g = AffinityGraph::<f64>::from_edges(3, &[(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let p = g.operator(LaplacianVariant::RandomWalk).to_dense();
        assert_eq!(p.row(1), &[0.5, 0.0, 0.5]);
    }

    #[test]
    fn random_walk_rows_sum_to_one_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = Mat::<f64>::from_fn(20, 3, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let g = mutual_knn_graph(&knn_index(&d, 4).unwrap());
        let rbf = rbf_weights(&d, &g, 0.8).unwrap();
        let op = rbf.operator(LaplacianVariant::RandomWalk);
        let ones = vec![1.0; 20];
        let p1 = op.matvec(&ones);
        for i in 0..20 {
            if rbf.is_isolated(i) {
                assert_eq!(p1[i], 0.0);
            } else {
                assert_eq!(p1[i], 1.0, "row {i} sums to {}", p1[i]);
            }
        }
    }

    #[test]
    fn laplacian_kernel_multiplicity_counts_components() {
        // Two components: a triangle and a 2-path.
        let g = AffinityGraph::<f64>::from_edges(
            6,
            &[(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0), (3, 4, 1.0), (4, 5, 1.0)],
        )
        .unwrap();
        assert_eq!(g.component_count(), 2);
        let l = g.operator(LaplacianVariant::Unnormalized).to_dense();
        let pairs = crate::numerics::smallest_eigenpairs(&l, 3).unwrap();
        assert!(pairs.values[0].abs() <= 1e-8);
        assert!(pairs.values[1].abs() <= 1e-8);
        assert!(pairs.values[2] > 1e-6);
    }

    #[test]
    fn symmetric_normalized_operator_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = Mat::<f64>::from_fn(12, 3, |_, _| rng.random_range(-1.0..1.0));
        let d = pairwise_sq_euclidean(&x).unwrap();
        let g = mutual_knn_graph(&knn_index(&d, 3).unwrap());
        let s = g.operator(LaplacianVariant::SymmetricNormalized).to_dense();
        assert_eq!(s, s.transpose());
    }

    proptest! {
        #[test]
        fn mutual_edges_are_subset_of_union_edges(seed in 0u64..500, k in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let n = 10;
            let x = Mat::<f64>::from_fn(n, 2, |_, _| rng.random_range(-1.0..1.0));
            let d = pairwise_sq_euclidean(&x).unwrap();
            let idx = knn_index(&d, k).unwrap();
            let g = mutual_knn_graph(&idx);
            for (i, j, _) in g.edges() {
                prop_assert!(idx.contains(i, j) && idx.contains(j, i));
            }
            // Union graph: every mutual edge must appear there too.
            for i in 0..n {
                for &(j, _) in idx.neighbors(i) {
                    if g.weight(i, j) > 0.0 {
                        prop_assert!(idx.contains(i, j) || idx.contains(j, i));
                    }
                }
            }
        }
    }
}
