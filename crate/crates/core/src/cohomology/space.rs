use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::linalg::SparseVec;
use super::CohomologyError;
use crate::scalar::{GaussRational, Monomial, Poly};
use crate::tensor::Multivector;

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Exponent vectors in `n` variables of total degree at most `d`, ordered
/// by total degree, then lexicographically descending (`x² > xy > y²`).
pub fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for deg in 0..=d {
        let mut level = Vec::new();
        let mut cur = vec![0u32; n];
        fill(&mut cur, 0, deg, &mut level);
        out.extend(level);
    }
    out
}

fn fill(cur: &mut Monomial, pos: usize, left: u32, out: &mut Vec<Monomial>) {
    let n = cur.len();
    if n == 0 {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if pos == n - 1 {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for e in (0..=left).rev() {
        cur[pos] = e;
        fill(cur, pos + 1, left - e, out);
    }
    cur[pos] = 0;
}

/// Increasing `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `k`-vector fields on `ℝⁿ` with polynomial coefficients of degree `≤ D`.
/// Basis: `x^m ∂_I` ordered by index set `I` (lexicographic), then by
/// monomial `m` (see [`monomials`]). Dimension `C(n,k)·C(n+D, D)`.
#[derive(Clone, Debug)]
pub struct TruncatedSpace {
    n: usize,
    k: usize,
    max_deg: u32,
    index_sets: Vec<Vec<usize>>,
    monos: Vec<Monomial>,
    mono_pos: BTreeMap<Monomial, usize>,
    set_pos: BTreeMap<Vec<usize>, usize>,
}

impl TruncatedSpace {
    pub fn new(n: usize, k: usize, max_deg: u32) -> Self {
        let index_sets = subsets(n, k);
        let monos = monomials(n, max_deg);
        let mono_pos = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let set_pos = index_sets.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Self { n, k, max_deg, index_sets, monos, mono_pos, set_pos }
    }

    pub fn patch_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn max_poly_degree(&self) -> u32 {
        self.max_deg
    }

    pub fn dim(&self) -> usize {
        self.index_sets.len() * self.monos.len()
    }

    /// Basis element number `idx`.
    pub fn basis_element(&self, idx: usize) -> Multivector {
        let m = self.monos.len();
        let set = &self.index_sets[idx / m];
        let mono = self.monos[idx % m].clone();
        Multivector::from_components(self.n, self.k, [(set.clone(), Poly::monomial(mono, GaussRational::from_int(1)))])
    }

    pub fn basis(&self) -> impl Iterator<Item = Multivector> + '_ {
        (0..self.dim()).map(|i| self.basis_element(i))
    }

    /// Coordinates of `w`; fails when a coefficient exceeds the degree bound.
    pub fn coords(&self, w: &Multivector) -> Result<SparseVec, CohomologyError> {
        assert_eq!(w.dim(), self.n, "patch mismatch");
        assert_eq!(w.degree(), self.k, "degree mismatch");
        let m = self.monos.len();
        let mut out = SparseVec::new();
        for (set, c) in w.comps() {
            let s = self.set_pos[set];
            for (mono, x) in c.terms() {
                let Some(&p) = self.mono_pos.get(mono) else {
                    return Err(CohomologyError::OutsideTruncation { degree: mono.iter().sum(), bound: self.max_deg });
                };
                out.insert(s * m + p, x.clone());
            }
        }
        Ok(out)
    }

    pub fn element(&self, v: &SparseVec) -> Multivector {
        let mut w = Multivector::zero(self.n, self.k);
        for (i, c) in v {
            w = &w + &self.basis_element(*i).scale_const(c);
        }
        w
    }
}
