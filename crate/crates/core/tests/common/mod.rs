#![allow(dead_code)]

use std::sync::Arc;

use coercive_kit::coercivity::Subspace;
use coercive_kit::inequalities::seed_from_env;
use coercive_kit::linalg::{m_orthonormalize, Matrix, SymMatrix};
use proptest::test_runner::{Config, RngSeed};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed_from_env());
    r.set_stream(stream);
    r
}

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(seed_from_env()),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix<f64> {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Orthogonal factor of the QR decomposition of a standard normal matrix.
pub fn random_orthogonal(n: usize, rng: &mut impl Rng) -> Matrix<f64> {
    m_orthonormalize(&gaussian(n, n, rng), &SymMatrix::identity(n)).unwrap()
}

pub fn log_uniform(lo: f64, hi: f64, rng: &mut impl Rng) -> f64 {
    (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp()
}

/// `Q diag(λ) Qᵀ` with the given eigenvalues.
pub fn with_spectrum(values: &[f64], rng: &mut impl Rng) -> SymMatrix<f64> {
    let n = values.len();
    let q = random_orthogonal(n, rng);
    let qd = Matrix::from_fn(n, n, |i, j| q[(i, j)] * values[j]);
    SymMatrix::symmetrized(qd.matmul(&q.transpose()).unwrap())
}

/// SPD metric with eigenvalues log-uniform in `[0.1, 10]`.
pub fn random_metric(n: usize, rng: &mut impl Rng) -> Arc<SymMatrix<f64>> {
    let values: Vec<f64> = (0..n).map(|_| log_uniform(0.1, 10.0, rng)).collect();
    Arc::new(with_spectrum(&values, rng))
}

/// PSD form with a kernel of dimension `k`; other eigenvalues log-uniform in `[1e-3, 1e3]`.
pub fn random_psd(n: usize, k: usize, rng: &mut impl Rng) -> SymMatrix<f64> {
    let values: Vec<f64> = (0..n)
        .map(|i| if i < k { 0.0 } else { log_uniform(1e-3, 1e3, rng) })
        .collect();
    with_spectrum(&values, rng)
}

pub fn random_subspace(metric: &Arc<SymMatrix<f64>>, dim: usize, rng: &mut impl Rng) -> Subspace<f64> {
    Subspace::from_spanning(&gaussian(metric.dim(), dim, rng), metric.clone()).unwrap()
}

pub fn random_symmetric(n: usize, rng: &mut impl Rng) -> SymMatrix<f64> {
    let g = gaussian(n, n, rng);
    SymMatrix::symmetrized(g.add(&g.transpose()).unwrap().scale(0.5))
}

/// Random PSD form with a prescribed kernel and a subspace `V` with
/// `V ∩ ker a = {0}`; resamples `V` until the angle machinery agrees.
pub struct SoundnessInstance {
    pub a: SymMatrix<f64>,
    pub metric: Arc<SymMatrix<f64>>,
    pub v: Subspace<f64>,
    pub kernel_dim: usize,
}

pub fn soundness_instance(rng: &mut impl Rng) -> SoundnessInstance {
    use coercive_kit::coercivity::{kernel_of_form, subspace_angle, KERNEL_REL_TOL};
    let n = rng.random_range(3..=20);
    let kernel_dim = rng.random_range(1..=n / 2);
    let metric = random_metric(n, rng);
    let a = random_psd(n, kernel_dim, rng);
    let kernel = kernel_of_form(&a, &metric, KERNEL_REL_TOL).unwrap();
    loop {
        let v = random_subspace(&metric, rng.random_range(1..=n - kernel_dim), rng);
        if !subspace_angle(&v, &kernel).unwrap().intersecting {
            return SoundnessInstance {
                a,
                metric,
                v,
                kernel_dim,
            };
        }
    }
}
