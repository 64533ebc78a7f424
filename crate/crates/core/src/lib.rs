#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod scalar;
pub mod tensor;
pub mod biggeom;
pub mod structures;
pub mod cohomology;
