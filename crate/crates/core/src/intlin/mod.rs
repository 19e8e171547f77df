//! Exact integer linear algebra.
//!
//! Everything here is generic over an [`IntScalar`]; the rest of the crate
//! uses the arbitrary precision instantiation ([`crate::IntMatrix`]).
//! Fixed-width instantiations are available for callers that can bound
//! their intermediates, but overflow is then the caller's problem.

mod lattice;
mod matrix;
mod snf;

pub use lattice::{
    det, fix_of_linear, hermite_rows, inverse_unimodular, is_unimodular, left_null_basis,
    quotient_structure, solve_left, LeftSolution, QuotientClass, QuotientStructure,
};
pub use matrix::Matrix;
pub use snf::{snf, SnfDecomposition};

use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};
use std::fmt::{Debug, Display};

/// Exact integer scalar: anything with Euclidean division and a sign.
pub trait IntScalar:
    Clone + Debug + Display + Integer + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_i64_exact(v: i64) -> Self {
        Self::from_i64(v).expect("scalar cannot represent i64 value")
    }
}

impl<T> IntScalar for T where
    T: Clone
        + Debug
        + Display
        + Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Row vector times matrix: `v · M`.
pub fn row_times<T: IntScalar>(v: &[T], m: &Matrix<T>) -> Vec<T> {
    assert_eq!(v.len(), m.rows(), "row vector length must equal matrix rows");
    (0..m.cols())
        .map(|j| {
            v.iter()
                .enumerate()
                .fold(T::zero(), |acc, (i, x)| acc + x.clone() * m[(i, j)].clone())
        })
        .collect()
}

pub fn vec_add<T: IntScalar>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn vec_sub<T: IntScalar>(a: &[T], b: &[T]) -> Vec<T> {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn vec_neg<T: IntScalar>(a: &[T]) -> Vec<T> {
    a.iter().map(|x| -x.clone()).collect()
}

pub fn vec_scale<T: IntScalar>(a: &[T], k: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * k.clone()).collect()
}

pub fn dot<T: IntScalar>(a: &[T], b: &[T]) -> T {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

pub fn is_zero_vec<T: IntScalar>(a: &[T]) -> bool {
    a.iter().all(|x| x.is_zero())
}
