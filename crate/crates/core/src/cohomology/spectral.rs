//! First terms of the spectral sequence of the filtration by `P`-degree,
//! on the degree-truncated complex. Requires constant `A`, so that the
//! projectors preserve the truncation.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::complex::{d_pi, require_truncatable};
use super::grading::{bigrade, sigma_prime, sigma_second};
use super::linalg::{kernel, rank, Echelon, SparseVec};
use super::space::{binomial, monomials, subsets, TruncatedSpace};
use super::CohomologyError;
use crate::scalar::{GaussRational, Poly};
use crate::structures::{check_integrability, Arg, CheckReport, ConditionBuilder, Projectors, StructureError};
use crate::tensor::{Endomorphism, Multivector};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectralOptions {
    /// Choose `E₂` representatives from the kernel basis in reverse order.
    /// Dimensions must not depend on this.
    pub reverse_representatives: bool,
}

/// Tables indexed `[i][j]` with `i` the `P`-degree (`0..=rank P`) and `j`
/// the `Q`-degree (`0..=rank Q`), matching `E_r^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralTables {
    pub q_rank: usize,
    pub p_rank: usize,
    pub max_deg: u32,
    /// `dim E₀^{ij} = dim E₁^{ij} = dim χ^{ji}` truncated.
    pub e1: Vec<Vec<usize>>,
    pub e2: Vec<Vec<usize>>,
    pub e3: Vec<Vec<usize>>,
    /// Rank of the map induced by `σ′` from `E₂^{ij}` to `E₂^{i+2, j−1}`.
    pub sigma_prime_ranks: BTreeMap<(usize, usize), usize>,
    /// `dim H^j(ann P)` for the zero anchor and bracket: `dim Γ∧^j Q` truncated.
    pub ann_p_dims: Vec<usize>,
    /// Filtration stability, closedness of `σ′` on `E₂` and `σ″² = 0` on row 0.
    pub report: CheckReport,
}

struct Cell {
    /// Basis of `χ^{ji}` in coordinates of `χ^{i+j}_{≤D}`.
    basis: Vec<SparseVec>,
    /// `σ″` of each basis element, in coordinates of `χ^{i+j+1}_{≤D}`.
    sigma2: Vec<SparseVec>,
}

/// `E₁`, `E₂`, `E₃` dimension tables of the truncated complex for an
/// integrable quasi-classical pair with constant `A` and `deg π ≤ 1`.
pub fn spectral_terms(pi: &Multivector, a: &Endomorphism, max_deg: u32, opts: SpectralOptions) -> Result<SpectralTables, CohomologyError> {
    if !a.is_constant() {
        return Err(CohomologyError::NonConstantA);
    }
    let pr = Projectors::new(a)?;
    let integ = check_integrability(a, pi)?;
    if !integ.passed() {
        return Err(CohomologyError::Structure(StructureError::Precondition(integ)));
    }
    require_truncatable(pi)?;
    let n = a.dim();
    let qb = constant_basis(&pr.q);
    let pb = constant_basis(&pr.p);
    let (q, p) = (qb.len(), pb.len());
    let monos = monomials(n, max_deg);
    let spaces: Vec<TruncatedSpace> = (0..=n + 1).map(|k| TruncatedSpace::new(n, k.min(n), max_deg)).collect();
    let mut filt = ConditionBuilder::new("filtration:stable", "d_π(F_h) ⊆ F_h");
    let mut row0 = ConditionBuilder::new("spectral:row0-complex", "σ″² = 0 on χ^{0•}");
    let mut cells: BTreeMap<(usize, usize), Cell> = BTreeMap::new();
    for j in 0..=q {
        for i in 0..=p {
            let mut basis = Vec::new();
            let mut sigma2 = Vec::new();
            for qi in subsets(q, j) {
                for pj in subsets(p, i) {
                    let mut frame = Multivector::scalar(Poly::one(n));
                    for &t in &qi {
                        frame = frame.wedge(&qb[t]);
                    }
                    for &t in &pj {
                        frame = frame.wedge(&pb[t]);
                    }
                    for m in &monos {
                        let w = frame.scale(&Poly::monomial(m.clone(), GaussRational::from_int(1)));
                        let dw = d_pi(pi, &w);
                        for comp in bigrade(&dw, &pr) {
                            if comp.j < i {
                                filt.check(vec![Arg::Index("Q-degree", j), Arg::Index("P-degree", i)], comp.value);
                            }
                        }
                        let s2 = sigma_second(pi, &pr, &w);
                        if j == 0 {
                            row0.check(vec![Arg::Index("P-degree", i)], sigma_second(pi, &pr, &s2));
                        }
                        basis.push(spaces[i + j].coords(&w)?);
                        sigma2.push(if i + j < n { spaces[i + j + 1].coords(&s2)? } else { SparseVec::new() });
                    }
                }
            }
            cells.insert((i, j), Cell { basis, sigma2 });
        }
    }
    let mut e1 = vec![vec![0; q + 1]; p + 1];
    let mut e2 = vec![vec![0; q + 1]; p + 1];
    let mut reps: BTreeMap<(usize, usize), Vec<SparseVec>> = BTreeMap::new();
    let mut images: BTreeMap<(usize, usize), Vec<SparseVec>> = BTreeMap::new();
    for (&(i, j), cell) in &cells {
        e1[i][j] = cell.basis.len();
        let image: Vec<SparseVec> = if i == 0 { Vec::new() } else { cells[&(i - 1, j)].sigma2.clone() };
        let mut ker: Vec<SparseVec> = kernel(&cell.sigma2).iter().map(|c| combine(c, &cell.basis)).collect();
        if opts.reverse_representatives {
            ker.reverse();
        }
        let mut ech = Echelon::new();
        for v in &image {
            ech.insert(v);
        }
        let chosen: Vec<SparseVec> = ker.into_iter().filter(|v| ech.insert(v).is_none()).collect();
        e2[i][j] = chosen.len();
        reps.insert((i, j), chosen);
        images.insert((i, j), image);
    }
    let mut closed = ConditionBuilder::new("spectral:sigma-prime-closed", "σ′ maps σ″-cocycles to σ″-cocycles");
    let mut sigma_prime_ranks = BTreeMap::new();
    for (&(i, j), rs) in &reps {
        if j == 0 || i + 2 > p || rs.is_empty() {
            continue;
        }
        let target = (i + 2, j - 1);
        let mut ech = Echelon::new();
        let nb = images[&target].len();
        for v in &images[&target] {
            ech.insert(v);
        }
        for v in &reps[&target] {
            ech.insert(v);
        }
        let cod = &spaces[i + j + 1];
        let mut cols = Vec::new();
        for v in rs {
            let w = spaces[i + j].element(v);
            let sp = cod.coords(&sigma_prime(pi, &pr, &w))?;
            let (res, combo) = ech.reduce(&sp);
            if !res.is_empty() {
                closed.fail(vec![Arg::Index("P-degree", i), Arg::Index("Q-degree", j)], cod.element(&res));
            }
            cols.push(combo.into_iter().filter(|(k, _)| *k >= nb).map(|(k, c)| (k - nb, c)).collect::<SparseVec>());
        }
        sigma_prime_ranks.insert((i, j), rank(&cols));
    }
    let mut e3 = e2.clone();
    for i in 0..=p {
        for j in 0..=q {
            let out = sigma_prime_ranks.get(&(i, j)).copied().unwrap_or(0);
            let inc = if i >= 2 { sigma_prime_ranks.get(&(i - 2, j + 1)).copied().unwrap_or(0) } else { 0 };
            e3[i][j] = e2[i][j] - out - inc;
        }
    }
    let ann_p_dims = (0..=q).map(|j| binomial(q, j) * binomial(n + max_deg as usize, max_deg as usize)).collect();
    let mut report = CheckReport::new();
    report.push(filt.finish());
    report.push(row0.finish());
    report.push(closed.finish());
    Ok(SpectralTables { q_rank: q, p_rank: p, max_deg, e1, e2, e3, sigma_prime_ranks, ann_p_dims, report })
}

fn combine(c: &SparseVec, basis: &[SparseVec]) -> SparseVec {
    let mut out = SparseVec::new();
    for (k, x) in c {
        super::linalg::axpy(&mut out, x, &basis[*k]);
    }
    out
}

/// Independent columns of a constant projector, in column order.
fn constant_basis(pr: &Endomorphism) -> Vec<Multivector> {
    let n = pr.dim();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for c in 0..n {
        let col = pr.column(c);
        let v: SparseVec = (0..n)
            .filter_map(|r| {
                let x = col.coeff(r).constant_term();
                if num_traits::Zero::is_zero(&x) {
                    None
                } else {
                    Some((r, x))
                }
            })
            .collect();
        if !v.is_empty() && ech.insert(&v).is_none() {
            out.push(col);
        }
    }
    out
}
