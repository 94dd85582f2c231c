//! Exact scalar arithmetic and linear algebra over the supported rings.

mod error;
mod field;
mod grading;
mod int;
mod matrix;
mod ring;
mod scalar;

pub use error::ArithError;
pub use field::{
    field_kernel, field_pivot_columns, field_rank, field_solve, FieldElim, Offer, ReducedColumn,
};
pub use grading::{graded_slice, monomial_count, monomials_of_degree, SliceIndex};
pub use int::{col_hermite, is_unimodular, smith_normal_form, Hermite, IntMat, SnfResult};
pub use matrix::SparseMatrix;
pub use ring::{BaseField, PolyRing, Ring};
pub use scalar::{MPoly, Monomial, Scalar};
