//! Gram, seminorm and operator-form assembly.
//!
//! Every form handled here is a sum of terms `c ∫_Ω D^s u D^t v dx`. On a
//! tensor basis each term factorizes into one-dimensional integrals, which
//! are evaluated with rules that are exact for the integrands involved.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{cholesky, Matrix, SymMatrix};
use crate::scalar::Scalar;
use crate::space::basis::{BasisFamily, BasisSpec};
use crate::space::multi_index::{enumerate_multi_indices, IndexMode, MultiIndex};
use crate::space::quadrature::{gauss_legendre_on, periodic_rule};

/// Constant-coefficient differential operator whose form `∫ (L u)(L v)` is assembled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operator {
    /// `Δ`
    Laplacian,
    /// `Δ²`
    Bilaplacian,
}

impl Operator {
    /// Highest per-axis derivative order that appears.
    pub fn order(self) -> usize {
        match self {
            Operator::Laplacian => 2,
            Operator::Bilaplacian => 4,
        }
    }

    /// Expansion `L = Σ c_s D^s`.
    pub fn terms(self, d: usize) -> Vec<(f64, MultiIndex)> {
        let second: Vec<MultiIndex> = (0..d).map(|k| MultiIndex::axis(d, k, 2)).collect();
        match self {
            Operator::Laplacian => second.into_iter().map(|s| (1.0, s)).collect(),
            Operator::Bilaplacian => {
                let mut acc: HashMap<MultiIndex, f64> = HashMap::new();
                for a in &second {
                    for b in &second {
                        *acc.entry(a.plus(b)).or_default() += 1.0;
                    }
                }
                let mut terms: Vec<(f64, MultiIndex)> = acc.into_iter().map(|(s, c)| (c, s)).collect();
                terms.sort_by(|x, y| x.1.cmp(&y.1));
                terms
            }
        }
    }
}

/// A quadratic form `Σ c ∫ D^s u D^t v`, kept as its term list.
#[derive(Debug, Clone, Default)]
pub struct FormTerms {
    terms: Vec<(f64, MultiIndex, MultiIndex)>,
}

impl FormTerms {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, coef: f64, s: MultiIndex, t: MultiIndex) {
        self.terms.push((coef, s, t));
    }

    /// `⟨u, v⟩_k = Σ_{|s|=k} (k!/s!) ∫ D^s u D^s v`: every ordered sequence of
    /// `k` partial derivatives counted once.
    pub fn seminorm(d: usize, k: usize) -> Self {
        let mut f = Self::new();
        for s in enumerate_multi_indices(d, k, IndexMode::Exact) {
            f.push(s.multinomial(), s.clone(), s);
        }
        f
    }

    /// `(u, v)_m = Σ_{k<=m} ⟨u, v⟩_k`.
    pub fn full(d: usize, m: usize) -> Self {
        let mut f = Self::new();
        for k in 0..=m {
            f.terms.extend(Self::seminorm(d, k).terms);
        }
        f
    }

    /// `∫ (L u)(L v)`.
    pub fn operator(d: usize, op: Operator) -> Self {
        let terms = op.terms(d);
        let mut f = Self::new();
        for (ca, sa) in &terms {
            for (cb, sb) in &terms {
                f.push(ca * cb, sa.clone(), sb.clone());
            }
        }
        f
    }

    fn max_order(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|(_, s, t)| s.components().iter().chain(t.components()).copied())
            .max()
            .unwrap_or(0)
    }
}

/// Number of Gauss points per axis used for a Legendre basis of `degree`
/// when derivatives up to `order` appear.
pub fn legendre_points(degree: usize, order: usize) -> usize {
    degree + order + 2
}

/// Nodes and weights along one axis that integrate every product of two
/// (differentiated) 1D basis functions exactly.
pub(crate) fn axis_rule<T: Scalar>(spec: &BasisSpec<T>, axis: usize, order: usize) -> (Vec<T>, Vec<T>) {
    let (lo, hi) = spec.domain().interval(axis);
    match spec.family() {
        BasisFamily::Legendre => gauss_legendre_on(lo, hi, legendre_points(spec.degrees()[axis], order)),
        // Products have frequency <= 2K; 4K + 4 uniform nodes resolve them.
        BasisFamily::Fourier => periodic_rule(lo, hi, 4 * spec.degrees()[axis] + 4),
    }
}

/// `∫ φ_a^{(r)} φ_b^{(q)} dx` along one axis.
pub(crate) fn axis_mixed<T: Scalar>(
    spec: &BasisSpec<T>,
    axis: usize,
    r: usize,
    q: usize,
    max_order: usize,
) -> Matrix<T> {
    let n = spec.axis_len(axis);
    let (x, w) = axis_rule(spec, axis, max_order);
    let mut out = Matrix::zeros(n, n);
    for (&xi, &wi) in x.iter().zip(&w) {
        let fr = spec.eval_axis(axis, r, xi);
        let fq = spec.eval_axis(axis, q, xi);
        for a in 0..n {
            let wa = wi * fr[a];
            for b in 0..n {
                out[(a, b)] += wa * fq[b];
            }
        }
    }
    out
}

/// Assembles a form given by its term list.
pub fn assemble_terms<T: Scalar>(spec: &BasisSpec<T>, form: &FormTerms) -> Result<SymMatrix<T>> {
    let d = spec.dim();
    for (_, s, t) in &form.terms {
        spec.check_derivative(s)?;
        spec.check_derivative(t)?;
    }
    let max_order = form.max_order();
    let mut cache: HashMap<(usize, usize, usize), Matrix<T>> = HashMap::new();
    for (_, s, t) in &form.terms {
        for k in 0..d {
            cache
                .entry((k, s[k], t[k]))
                .or_insert_with(|| axis_mixed(spec, k, s[k], t[k], max_order));
        }
    }
    let n = spec.len();
    let idx: Vec<Vec<usize>> = (0..n).map(|f| spec.split_index(f)).collect();
    let mut out = Matrix::zeros(n, n);
    for (coef, s, t) in &form.terms {
        let c = T::lit(*coef);
        let factors: Vec<&Matrix<T>> = (0..d).map(|k| &cache[&(k, s[k], t[k])]).collect();
        for i in 0..n {
            for j in 0..n {
                let mut v = c;
                for k in 0..d {
                    v *= factors[k][(idx[i][k], idx[j][k])];
                }
                out[(i, j)] += v;
            }
        }
    }
    Ok(SymMatrix::symmetrized(out))
}

/// Discrete forms of one Sobolev order on one basis.
#[derive(Debug, Clone)]
pub struct GramSet<T> {
    /// `(u, v)_m`
    pub full: Arc<SymMatrix<T>>,
    /// `⟨u, v⟩_m`
    pub semi: SymMatrix<T>,
    /// `∫ (L u)(L v)` when an operator was requested.
    pub op: Option<SymMatrix<T>>,
    pub order: usize,
}

/// Assembles `(·,·)_m` and `⟨·,·⟩_m` and checks that the full Gram matrix is SPD.
pub fn assemble_gram<T: Scalar>(spec: &BasisSpec<T>, m: usize) -> Result<GramSet<T>> {
    let d = spec.dim();
    let semi = assemble_terms(spec, &FormTerms::seminorm(d, m))?;
    let full = assemble_terms(spec, &FormTerms::full(d, m))?;
    check_spd(&full)?;
    Ok(GramSet {
        full: Arc::new(full),
        semi,
        op: None,
        order: m,
    })
}

/// [`assemble_gram`] plus the operator form.
pub fn assemble_gram_with_operator<T: Scalar>(spec: &BasisSpec<T>, m: usize, op: Operator) -> Result<GramSet<T>> {
    let mut g = assemble_gram(spec, m)?;
    g.op = Some(assemble_operator_form(spec, op)?);
    Ok(g)
}

/// `∫ (L φ_i)(L φ_j) dx`.
pub fn assemble_operator_form<T: Scalar>(spec: &BasisSpec<T>, op: Operator) -> Result<SymMatrix<T>> {
    assemble_terms(spec, &FormTerms::operator(spec.dim(), op))
}

/// Cholesky on the diagonally scaled matrix, so that the pivot test is
/// independent of the scaling of individual basis functions.
fn check_spd<T: Scalar>(m: &SymMatrix<T>) -> Result<()> {
    let diag = m.diag();
    if let Some(i) = diag.iter().position(|&v| !(v > T::zero())) {
        return Err(Error::NotPositiveDefinite {
            index: i,
            pivot: diag[i].to_f64_lossy(),
        });
    }
    let s: Vec<T> = diag.iter().map(|&v| T::one() / v.sqrt()).collect();
    let n = m.dim();
    let scaled = SymMatrix::symmetrized(Matrix::from_fn(n, n, |i, j| s[i] * m[(i, j)] * s[j]));
    cholesky(&scaled).map(|_| ())
}
