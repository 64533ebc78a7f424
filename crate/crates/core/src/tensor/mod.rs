//! Exterior calculus of multivector fields and differential forms with
//! polynomial coefficients, endomorphism fields, and the classical
//! concomitants built from them.
//!
//! Conventions: contractions act on the first slot, `♯_π α = i(α)π`, and the
//! Schouten bracket is normalised so that `d_π = −[π, ·]`.

use core::fmt;

mod alt;
mod calculus;
mod endo;

pub use alt::{AltDisplay, AltTensor, Co, Contra, DiffForm, IndexSet, Multivector, Variance};
pub use calculus::{
    bivector_eval, c_concomitant, coord_form, coord_vector, cr_tensor, flat, nijenhuis, pairing,
    poisson_bracket_1forms, schouten, schouten_concomitant, sharp,
};
pub use endo::{embed, Endomorphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorError {
    PatchMismatch { left: usize, right: usize },
    DegreeMismatch { expected: usize, found: usize },
    /// Contraction into a degree-0 tensor.
    ScalarInterior,
}

impl fmt::Display for TensorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorError::PatchMismatch { left, right } => write!(f, "patch mismatch: dimension {left} vs {right}"),
            TensorError::DegreeMismatch { expected, found } => {
                write!(f, "expected a tensor of degree {expected}, found degree {found}")
            }
            TensorError::ScalarInterior => f.write_str("interior product into a degree-0 tensor"),
        }
    }
}

impl core::error::Error for TensorError {}

fn same_patch(a: usize, b: usize) -> Result<(), TensorError> {
    if a == b {
        Ok(())
    } else {
        Err(TensorError::PatchMismatch { left: a, right: b })
    }
}

fn need_degree(expected: usize, found: usize) -> Result<(), TensorError> {
    if expected == found {
        Ok(())
    } else {
        Err(TensorError::DegreeMismatch { expected, found })
    }
}

/// Lie bracket `[X,Y]^i = X^j ∂_j Y^i − Y^j ∂_j X^i` of two vector fields.
pub fn lie_bracket(x: &Multivector, y: &Multivector) -> Result<Multivector, TensorError> {
    same_patch(x.dim(), y.dim())?;
    need_degree(1, x.degree())?;
    need_degree(1, y.degree())?;
    Ok(schouten(x, y))
}

/// Interior product of a degree-1 tensor into a tensor of the opposite variance.
pub fn interior_product<V: Variance>(v: &AltTensor<V::Dual>, t: &AltTensor<V>) -> Result<AltTensor<V>, TensorError> {
    same_patch(v.dim(), t.dim())?;
    need_degree(1, v.degree())?;
    if t.degree() == 0 {
        return Err(TensorError::ScalarInterior);
    }
    Ok(t.contract(v))
}
