//! Exact decision procedures for the structures built from an F structure
//! `A` and a bivector `π`, each returning a [`CheckReport`] whose failing
//! conditions carry witnesses on the coordinate (co)basis.

mod checks;
mod contact;
mod distributions;
mod instance;
mod report;

pub use checks::{
    check_classical_crf, check_classical_crf_frame, check_cr_type, check_f_structure, check_hamiltonian_variants,
    check_integrability, check_integrability_alt, check_local_form, check_quasi_classical, check_transverse_concomitant,
    product_instance,
};
pub use contact::{
    check_almost_contact, check_contact_poisson, check_generalized_normality, check_normal_classical,
    check_normality, contact_product, ContactProduct,
};
pub use distributions::{check_involutive, check_nonholonomic_poisson_submanifold, check_projectable};
pub use instance::{AdaptedFrame, ContactPair, Projectors, StructureError, StructureInstance};
pub use report::{
    Arg, ArgDisplay, CheckReport, Condition, ConditionBuilder, TensorValue, ValueDisplay, Verdict, Witness,
    MAX_WITNESSES,
};

use crate::tensor::{coord_form, coord_vector, DiffForm, Endomorphism, Multivector};

/// `pr_H`, `pr_H̄`, `pr_Q`, `pr_P` of an F structure.
pub fn projectors(a: &Endomorphism) -> Result<Projectors, StructureError> {
    Projectors::new(a)
}

pub(crate) fn frame(n: usize) -> alloc::vec::Vec<Multivector> {
    (0..n).map(|i| coord_vector(n, i)).collect()
}

pub(crate) fn coframe(n: usize) -> alloc::vec::Vec<DiffForm> {
    (0..n).map(|i| coord_form(n, i)).collect()
}
