//! Bounded chain complexes of based free modules: construction and
//! validation, shifts and tensor totalizations with signs, homology with
//! concrete generators over the integers, fields, and graded polynomial
//! rings, symmetric-group actions on tensor powers, and Euler classes.

mod chain;
mod equivariant;
mod euler;
mod homology;

pub use chain::{solve_map, tensor_block_of, ChainComplex, ChainMap, ComplexError};
pub use equivariant::{
    action_matrix_on_homology, character_on_homology, kn_module, perm_of_cycle_type,
    predicted_character, tensor_power_equivariant, EquivariantComplex, KnModule,
};
pub use euler::{euler_class, sigma_of_class, VirtualGradedClass};
pub use homology::{homology, induced_map, Homology, HomologyDescriptor, InducedMap};
