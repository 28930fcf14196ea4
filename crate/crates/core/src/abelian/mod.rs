//! Exact integer linear algebra and finitely generated abelian groups.

mod group;
mod matrix;
mod smith;

use thiserror::Error;

pub use group::{
    cokernel, gcd, induced_tensor_hom, tensor, tensor_power, theorem_a1_check, A1Report, Counterexample, FgAbGroup,
    GroupHom, TensorHom,
};
pub use matrix::{IntegerMatrix, SparseMatrix};
pub use smith::{invariant_factors_sparse, rank_sparse, smith_normal_form, SmithForm};

#[derive(Debug, Error)]
pub enum AbelianError {
    #[error("{len} entries do not fill a {rows}x{cols} matrix")]
    Shape { rows: usize, cols: usize, len: usize },
    #[error("invariant factors {0:?} must be >= 2 and form a divisibility chain")]
    InvalidFactor(Vec<i64>),
    #[error("homomorphism matrix is {found:?}, expected {expected:?}")]
    HomShape {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("image of domain generator {generator} is not killed by its order")]
    NotWellDefined { generator: usize },
    #[error("tensor power must be at least 1")]
    ZeroPower,
    #[error("nontriviality of f⊗1_G was lost at tensor power {k}: {cx:?}", k = .0.k, cx = .0)]
    Counterexample(Box<Counterexample>),
}
