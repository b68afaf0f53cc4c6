//! Exact and floating-point polynomial algebra: scalars, polynomials,
//! rational functions, matrix polynomials, and Smith / Smith-McMillan forms.

mod field;
mod matrix;
mod poly;
mod polymatrix;
mod ratfn;
mod roots;
mod smith;

pub use field::{format_rational, parse_rational, Field, FieldMode, Rational};
pub use field::rat;
pub use matrix::Matrix;
pub use poly::Poly;
pub use polymatrix::PolyMatrix;
pub use ratfn::{RationalFn, RationalMatrix};
pub use roots::{exact_roots, roots_squarefree, Root};
pub(crate) use roots::sort_roots;
pub use smith::{
    multiplicity_index, multiplicity_index_at_factor, smith_decomposition, smith_form, smith_mcmillan,
    smith_mcmillan_decomposition, zero_pole_polys, IndexKind, SmithDecomposition, SmithForm,
    SmithMcMillanDecomposition, SmithMcMillanForm,
};
