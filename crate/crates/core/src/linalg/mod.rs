//! Exact integer and rational linear algebra: dense matrices, Smith normal
//! form, lattice indices and finite abelian groups. No floating point.

mod group;
mod lattice;
mod matrix;
mod qmodz;
mod smith;

pub use group::AbelianGroup;
pub use lattice::{
    bordered_lattice_index, congruence_lattice, hermite_basis, integer_kernel, lattices_equal,
    quotient_structure, rational_inverse, solve_left_rational,
};
pub use matrix::IntMatrix;
pub use qmodz::QmodZ;
pub use smith::{smith_normal_form, SmithDecomposition};

pub type Integer = num_bigint::BigInt;
pub type Rational = num_rational::BigRational;
