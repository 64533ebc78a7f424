//! The Lichnerowicz–Poisson complex on degree-truncated polynomial
//! multivectors, its `(Q, P)` bigrading and triple grading, the first terms
//! of the associated spectral sequence, and the quotient Lie algebroid on `P*`.
//!
//! Truncation: multivectors with coefficients of degree `≤ D` form a
//! subcomplex only when `deg π ≤ 1`; higher-degree `π` is refused.

use core::fmt;

mod complex;
mod grading;
pub mod linalg;
mod quotient;
mod space;
mod spectral;

pub use complex::{
    coboundary_value, d_pi, d_pi_by_evaluation, differential_columns, poisson_cohomology, require_truncatable,
    CohomologyTable,
};
pub use grading::{
    bigrade, check_grading, check_triple_grading, grading_samples, sigma_prime, sigma_second, sigma_second_split,
    sigma_split, slot_split, triple_grade, triple_grade_with_frame, BigradedComponent, SigmaSplit, TripleComponent,
};
pub use linalg::{kernel, rank, rank_of_rows, Echelon, SparseVec};
pub use quotient::{check_quotient_well_defined, quotient_algebroid_bracket};
pub use space::{binomial, monomials, subsets, TruncatedSpace};
pub use spectral::{spectral_terms, SpectralOptions, SpectralTables};

use crate::structures::StructureError;
use crate::tensor::Multivector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomologyError {
    /// Coefficients of `π` of degree ≥ 2 do not preserve the truncation.
    DegreeTooHigh { degree: u32 },
    /// `[π, π] ≠ 0`; carries the value.
    NotPoisson(Multivector),
    /// An element has a coefficient beyond the degree bound.
    OutsideTruncation { degree: u32, bound: u32 },
    /// Projectors of a non-constant `A` do not preserve the truncation.
    NonConstantA,
    EmptyPatch,
    Structure(StructureError),
}

impl From<StructureError> for CohomologyError {
    fn from(e: StructureError) -> Self {
        CohomologyError::Structure(e)
    }
}

impl fmt::Display for CohomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomologyError::DegreeTooHigh { degree } => write!(
                f,
                "π has coefficients of degree {degree}; d_π raises coefficient degree by deg π − 1, so degree-truncated multivectors form a subcomplex only when deg π ≤ 1"
            ),
            CohomologyError::NotPoisson(_) => f.write_str("[π, π] ≠ 0, so d_π is not a coboundary"),
            CohomologyError::OutsideTruncation { degree, bound } => {
                write!(f, "coefficient of degree {degree} exceeds the truncation bound {bound}")
            }
            CohomologyError::NonConstantA => {
                f.write_str("spectral terms need constant A: the projectors of a non-constant A do not preserve the truncation")
            }
            CohomologyError::EmptyPatch => f.write_str("zero-dimensional patch"),
            CohomologyError::Structure(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CohomologyError {}
