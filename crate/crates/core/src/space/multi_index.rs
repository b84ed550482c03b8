/// Multi-index `s = (s_1, …, s_d)` with order `|s| = Σ s_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

/// Whether [`enumerate_multi_indices`] returns `|s| = order` or `|s| <= order`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexMode {
    Exact,
    UpTo,
}

impl MultiIndex {
    pub fn new(components: Vec<usize>) -> Self {
        Self(components)
    }

    pub fn zero(d: usize) -> Self {
        Self(vec![0; d])
    }

    /// `r e_axis`
    pub fn axis(d: usize, axis: usize, r: usize) -> Self {
        let mut c = vec![0; d];
        c[axis] = r;
        Self(c)
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Multinomial coefficient `|s|! / Π s_k!`: the number of ordered
    /// derivative sequences `∂_{i_1} ⋯ ∂_{i_|s|}` that produce `D^s`.
    pub fn multinomial(&self) -> f64 {
        let mut acc = 1.0;
        let mut n = 0usize;
        for &c in &self.0 {
            for i in 1..=c {
                n += 1;
                acc = acc * n as f64 / i as f64;
            }
        }
        acc
    }
}

impl std::ops::Index<usize> for MultiIndex {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

/// All multi-indices in `d` variables of the given order (or up to it),
/// lexicographically sorted.
pub fn enumerate_multi_indices(d: usize, order: usize, mode: IndexMode) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0; d];
    fill(&mut current, 0, order, mode, &mut out);
    out
}

fn fill(current: &mut Vec<usize>, pos: usize, remaining: usize, mode: IndexMode, out: &mut Vec<MultiIndex>) {
    let d = current.len();
    if pos == d {
        if mode == IndexMode::UpTo || remaining == 0 {
            out.push(MultiIndex(current.clone()));
        }
        return;
    }
    if pos + 1 == d && mode == IndexMode::Exact {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill(current, pos + 1, remaining - v, mode, out);
    }
    current[pos] = 0;
}
