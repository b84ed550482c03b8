use crate::scalar::Scalar;
use crate::space::domain::DomainBox;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, exact for polynomials of
/// degree `2n - 1`. Nodes ascend.
///
/// Computed in `f64` by Newton iteration on `P_n` and converted, so the rule
/// is bitwise identical for every caller.
pub fn gauss_legendre<T: Scalar>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "quadrature needs at least one point");
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (
        nodes.into_iter().map(T::lit).collect(),
        weights.into_iter().map(T::lit).collect(),
    )
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss–Legendre rule mapped to `(lo, hi)`.
pub fn gauss_legendre_on<T: Scalar>(lo: T, hi: T, n: usize) -> (Vec<T>, Vec<T>) {
    let (x, w) = gauss_legendre::<T>(n);
    let half = (hi - lo) * T::lit(0.5);
    let mid = (hi + lo) * T::lit(0.5);
    (
        x.into_iter().map(|t| mid + half * t).collect(),
        w.into_iter().map(|w| w * half).collect(),
    )
}

/// Uniform rule over one period of `(lo, hi)`; integrates trigonometric
/// polynomials of degree `< n` (in units of the fundamental frequency) exactly.
pub fn periodic_rule<T: Scalar>(lo: T, hi: T, n: usize) -> (Vec<T>, Vec<T>) {
    let h = (hi - lo) / T::from_count(n);
    ((0..n).map(|i| lo + h * T::from_count(i)).collect(), vec![h; n])
}

/// Tensor-product quadrature rule on a box.
#[derive(Debug, Clone)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<Vec<T>>,
    pub weights: Vec<T>,
}

impl<T: Scalar> QuadratureRule<T> {
    pub fn integrate(&self, f: impl Fn(&[T]) -> T) -> T {
        self.nodes.iter().zip(&self.weights).map(|(x, &w)| w * f(x)).sum()
    }
}

/// Tensor Gauss–Legendre rule with `points_per_dim` nodes along each axis;
/// exact for per-axis polynomial degree `<= 2 points_per_dim - 1`.
pub fn quadrature_rule<T: Scalar>(domain: &DomainBox<T>, points_per_dim: usize) -> QuadratureRule<T> {
    let axes: Vec<(Vec<T>, Vec<T>)> = domain
        .intervals()
        .iter()
        .map(|&(lo, hi)| gauss_legendre_on(lo, hi, points_per_dim))
        .collect();
    let mut nodes = vec![Vec::new()];
    let mut weights = vec![T::one()];
    for (x, w) in &axes {
        let mut next_nodes = Vec::with_capacity(nodes.len() * x.len());
        let mut next_weights = Vec::with_capacity(nodes.len() * x.len());
        for (node, &weight) in nodes.iter().zip(&weights) {
            for (&xi, &wi) in x.iter().zip(w) {
                let mut p = node.clone();
                p.push(xi);
                next_nodes.push(p);
                next_weights.push(weight * wi);
            }
        }
        nodes = next_nodes;
        weights = next_weights;
    }
    QuadratureRule { nodes, weights }
}
