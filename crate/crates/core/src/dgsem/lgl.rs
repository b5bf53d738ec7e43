//! Legendre-Gauss-Lobatto nodes, weights and the collocation derivative matrix.
//!
//! Nodes are the roots of `(1 - x^2) L_N'(x)`, found by Newton iteration on
//! `q = L_{N+1} - L_{N-1}` (which shares the interior roots). The derivative
//! matrix is built from barycentric weights. Together with the diagonal mass
//! matrix `M = diag(w)` it satisfies the summation-by-parts property
//! `M D + (M D)^T = diag(-1, 0, ..., 0, 1)`.

use nalgebra::DMatrix;

/// `(L_N(x), q(x), q'(x))` with `q = L_{N+1} - L_{N-1}`.
fn q_and_l(n: usize, x: f64) -> (f64, f64, f64) {
    let (mut l_nm2, mut l_nm1) = (1.0, x);
    let (mut dl_nm2, mut dl_nm1) = (0.0, 1.0);
    let mut l_n = x;
    for k in 2..=n {
        let kf = k as f64;
        l_n = (2.0 * kf - 1.0) / kf * x * l_nm1 - (kf - 1.0) / kf * l_nm2;
        let dl_n = dl_nm2 + (2.0 * kf - 1.0) * l_nm1;
        l_nm2 = l_nm1;
        l_nm1 = l_n;
        dl_nm2 = dl_nm1;
        dl_nm1 = dl_n;
    }
    let k = (n + 1) as f64;
    let l_np1 = (2.0 * k - 1.0) / k * x * l_n - (k - 1.0) / k * l_nm2;
    let dl_np1 = dl_nm2 + (2.0 * k - 1.0) * l_n;
    (l_n, l_np1 - l_nm2, dl_np1 - dl_nm2)
}

/// LGL nodes (ascending) and weights for polynomial degree `n >= 1`.
pub fn lgl_nodes_weights(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "polynomial degree must be at least 1");
    let nf = n as f64;
    let mut x = vec![0.0; n + 1];
    let mut w = vec![0.0; n + 1];
    let edge = 2.0 / (nf * (nf + 1.0));
    x[0] = -1.0;
    x[n] = 1.0;
    w[0] = edge;
    w[n] = edge;

    let pi = std::f64::consts::PI;
    for j in 1..(n + 1) / 2 {
        let jf = j as f64;
        let mut xj = -((jf + 0.25) * pi / nf - 3.0 / (8.0 * nf * pi * (jf + 0.25))).cos();
        for _ in 0..100 {
            let (_, q, dq) = q_and_l(n, xj);
            let delta = -q / dq;
            xj += delta;
            if delta.abs() <= 4.0 * f64::EPSILON * xj.abs() {
                break;
            }
        }
        let (l_n, _, _) = q_and_l(n, xj);
        x[j] = xj;
        x[n - j] = -xj;
        w[j] = edge / (l_n * l_n);
        w[n - j] = w[j];
    }
    if n.is_multiple_of(2) {
        let (l_n, _, _) = q_and_l(n, 0.0);
        x[n / 2] = 0.0;
        w[n / 2] = edge / (l_n * l_n);
    }
    (x, w)
}

/// Collocation derivative matrix on the given nodes.
pub fn derivative_matrix_on(nodes: &[f64]) -> DMatrix<f64> {
    let m = nodes.len();
    let bary: Vec<f64> = (0..m)
        .map(|j| {
            1.0 / (0..m)
                .filter(|&k| k != j)
                .map(|k| nodes[j] - nodes[k])
                .product::<f64>()
        })
        .collect();
    let mut d = DMatrix::zeros(m, m);
    for i in 0..m {
        let mut diag = 0.0;
        for j in 0..m {
            if i != j {
                d[(i, j)] = bary[j] / bary[i] / (nodes[i] - nodes[j]);
                diag -= d[(i, j)];
            }
        }
        d[(i, i)] = diag;
    }
    d
}

/// Derivative matrix on the degree-`n` LGL nodes.
pub fn derivative_matrix(n: usize) -> DMatrix<f64> {
    derivative_matrix_on(&lgl_nodes_weights(n).0)
}

/// Nodes, weights and derivative matrix for one polynomial degree.
#[derive(Clone, Debug)]
pub struct LglBasis {
    pub degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub diff: DMatrix<f64>,
}

impl LglBasis {
    pub fn new(degree: usize) -> Self {
        let (nodes, weights) = lgl_nodes_weights(degree);
        let diff = derivative_matrix_on(&nodes);
        Self {
            degree,
            nodes,
            weights,
            diff,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `max |M D + (M D)^T - B|`.
    pub fn sbp_residual(&self) -> f64 {
        let m = self.len();
        let md = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(&self.weights))
            * &self.diff;
        let mut b = DMatrix::zeros(m, m);
        b[(0, 0)] = -1.0;
        b[(m - 1, m - 1)] = 1.0;
        (&md + md.transpose() - b).amax()
    }
}
