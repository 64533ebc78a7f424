//! Exact linear algebra over ℚ(i) on sparse vectors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::GaussRational;

/// Sparse vector: index ↦ nonzero coefficient.
pub type SparseVec = BTreeMap<usize, GaussRational>;

/// `v ← v + c·w`, dropping cancelled entries.
pub fn axpy(v: &mut SparseVec, c: &GaussRational, w: &SparseVec) {
    for (k, x) in w {
        let t = c * x;
        match v.get_mut(k) {
            Some(y) => {
                *y += &t;
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    v.insert(*k, t);
                }
            }
        }
    }
}

/// Row echelon basis of a subspace, built incrementally. Every stored vector
/// has coefficient 1 at its pivot, which is its smallest index, and pivots
/// are distinct. Optionally tracks each stored vector as a combination of
/// the inserted inputs.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    inputs: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis. Returns the residual and the
    /// combination `c` of inputs with `v = residual + Σ c_m input_m`.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut r = v.clone();
        let mut combo = SparseVec::new();
        let mut cursor = 0usize;
        loop {
            let next = r.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = r[&k].clone();
            let (row, rc) = &self.rows[&k];
            axpy(&mut r, &-&c, row);
            axpy(&mut combo, &c, rc);
            cursor = k + 1;
        }
        (r, combo)
    }

    /// Inserts `v` as input number `self.inputs()`. Returns the residual
    /// combination when `v` is dependent: then `Σ c_m input_m = 0` with
    /// `c` the returned vector (a kernel element of the input list).
    pub fn insert(&mut self, v: &SparseVec) -> Option<SparseVec> {
        let id = self.inputs;
        self.inputs += 1;
        let (r, combo) = self.reduce(v);
        let mut own = SparseVec::new();
        own.insert(id, GaussRational::from_int(1));
        axpy(&mut own, &GaussRational::from_int(-1), &combo);
        match r.iter().next() {
            None => Some(own),
            Some((&k, lead)) => {
                let inv = lead.inv().expect("nonzero lead");
                let row: SparseVec = r.iter().map(|(i, x)| (*i, x * &inv)).collect();
                let rc: SparseVec = own.iter().map(|(i, x)| (*i, x * &inv)).collect();
                self.rows.insert(k, (row, rc));
                None
            }
        }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }
}

/// Rank of a list of sparse vectors.
pub fn rank(vectors: &[SparseVec]) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// Basis of `{c : Σ c_m v_m = 0}`, one vector per dependent input, in
/// input order.
pub fn kernel(vectors: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    vectors.iter().filter_map(|v| e.insert(v)).collect()
}

/// Rank of a dense matrix by fraction-free (Bareiss) elimination. Rows are
/// first scaled to Gaussian-integer entries; every division is exact.
pub fn rank_of_rows(rows: &[Vec<GaussRational>], ncols: usize) -> usize {
    let mut m: Vec<Vec<GaussRational>> = rows
        .iter()
        .map(|r| {
            let l = r.iter().fold(num_bigint::BigInt::from(1), |acc, x| num_integer::Integer::lcm(&acc, &x.denom_lcm()));
            let s = GaussRational::real(num_rational::BigRational::from_integer(l));
            r.iter().map(|x| x * &s).collect()
        })
        .collect();
    let nrows = m.len();
    let mut prev = GaussRational::from_int(1);
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let t = &(&m[r][c] * &m[i][j]) - &(&m[i][c] * &m[r][j]);
                m[i][j] = &t / &prev;
            }
            m[i][c] = GaussRational::from_int(0);
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}
