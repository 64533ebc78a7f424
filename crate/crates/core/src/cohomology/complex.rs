use alloc::vec::Vec;

use super::linalg::{rank, SparseVec};
use super::space::{subsets, TruncatedSpace};
use super::CohomologyError;
use crate::scalar::Poly;
use crate::tensor::{coord_form, poisson_bracket_1forms, schouten, sharp, DiffForm, Multivector};

/// Lichnerowicz coboundary `d_π w = −[π, w]`.
pub fn d_pi(pi: &Multivector, w: &Multivector) -> Multivector {
    -schouten(pi, w)
}

/// `d_π w` assembled from its values on coordinate coframe tuples:
/// `Σ_h (−1)^h (♯λ_h)(w(..λ̂_h..)) + Σ_{h<s} (−1)^{h+s} w({λ_h, λ_s}_π, ..λ̂_h..λ̂_s..)`.
pub fn d_pi_by_evaluation(pi: &Multivector, w: &Multivector) -> Multivector {
    let n = w.dim();
    let k = w.degree();
    let mut out = Multivector::zero(n, k + 1);
    for idx in subsets(n, k + 1) {
        let lam: Vec<DiffForm> = idx.iter().map(|&i| coord_form(n, i)).collect();
        let v = coboundary_value(pi, w, &lam);
        if !v.is_zero() {
            out.add_component(&idx, &v);
        }
    }
    out
}

/// Right-hand side of the coboundary formula at arbitrary 1-forms.
pub fn coboundary_value(pi: &Multivector, w: &Multivector, lam: &[DiffForm]) -> Poly {
    let n = w.dim();
    let mut acc = Poly::zero(n);
    for h in 0..lam.len() {
        let rest: Vec<DiffForm> = without(lam, &[h]);
        let f = w.eval(&rest);
        let t = crate::tensor::pairing(&DiffForm::scalar(f).d(), &sharp(pi, &lam[h]));
        acc = if h % 2 == 0 { &acc + &t } else { &acc - &t };
    }
    for h in 0..lam.len() {
        for s in h + 1..lam.len() {
            let mut args = alloc::vec![poisson_bracket_1forms(pi, &lam[h], &lam[s])];
            args.extend(without(lam, &[h, s]));
            let t = w.eval(&args);
            acc = if (h + s) % 2 == 0 { &acc + &t } else { &acc - &t };
        }
    }
    acc
}

pub(crate) fn without<T: Clone>(xs: &[T], skip: &[usize]) -> Vec<T> {
    xs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, x)| x.clone()).collect()
}

/// Refuses `π` unless it is Poisson with coefficients of degree at most 1,
/// the condition for degree-truncated multivectors to form a subcomplex.
pub fn require_truncatable(pi: &Multivector) -> Result<(), CohomologyError> {
    let deg = pi.comps().filter_map(|(_, c)| c.degree()).max().unwrap_or(0);
    if deg > 1 {
        return Err(CohomologyError::DegreeTooHigh { degree: deg });
    }
    let j = schouten(pi, pi);
    if !j.is_zero() {
        return Err(CohomologyError::NotPoisson(j));
    }
    Ok(())
}

/// Images of the basis of `χ^k_{≤D}` under `d_π`, in coordinates of `χ^{k+1}_{≤D}`.
pub fn differential_columns(pi: &Multivector, k: usize, max_deg: u32) -> Result<Vec<SparseVec>, CohomologyError> {
    let n = pi.dim();
    let dom = TruncatedSpace::new(n, k, max_deg);
    let cod = TruncatedSpace::new(n, k + 1, max_deg);
    dom.basis().map(|e| cod.coords(&d_pi(pi, &e))).collect()
}

/// Dimensions, ranks and Betti numbers of the truncated Lichnerowicz complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyTable {
    pub max_deg: u32,
    /// `dim χ^k_{≤D}` for `k = 0..=k_max`.
    pub dims: Vec<usize>,
    /// `rank(d_π : χ^k → χ^{k+1})` for `k = 0..=k_max`.
    pub ranks: Vec<usize>,
    /// `dim ker d_π − rank d_π` in each degree.
    pub betti: Vec<usize>,
}

/// Cohomology of `(χ^•_{≤D}, d_π)` up to degree `k_max`. These are
/// dimensions of the truncated complex, not of the full Poisson cohomology.
pub fn poisson_cohomology(pi: &Multivector, max_deg: u32, k_max: usize) -> Result<CohomologyTable, CohomologyError> {
    require_truncatable(pi)?;
    let n = pi.dim();
    if n == 0 {
        return Err(CohomologyError::EmptyPatch);
    }
    let k_max = k_max.min(n);
    let mut dims = Vec::new();
    let mut ranks = Vec::new();
    for k in 0..=k_max {
        dims.push(TruncatedSpace::new(n, k, max_deg).dim());
        ranks.push(if k == n { 0 } else { rank(&differential_columns(pi, k, max_deg)?) });
    }
    let betti = (0..=k_max).map(|k| dims[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect();
    Ok(CohomologyTable { max_deg, dims, ranks, betti })
}
