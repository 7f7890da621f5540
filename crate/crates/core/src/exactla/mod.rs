//! Exact linear algebra over ℚ and prime fields.
//!
//! Tensor products use the lexicographic basis with the left factor major,
//! which is what [`Matrix::kron`] produces. Dual spaces are coordinatized by
//! the dual basis, so the dual of a map is its transpose and the canonical
//! map into the double dual is the identity matrix.

mod matrix;
mod quotient;
mod scalar;

use thiserror::Error;

pub use matrix::Matrix;
pub use quotient::{induced_on_quotient, quotient_by, QuotientSpace, SpanCoords};
pub use scalar::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("malformed scalar {0:?}")]
    BadScalar(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("map does not descend to the quotient")]
    NotWellDefined,
    #[error("vectors are linearly dependent")]
    Dependent,
}

/// Free-standing form of [`Matrix::rref`].
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    m.rref()
}

pub fn kernel_basis(m: &Matrix) -> Matrix {
    m.kernel_basis()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    a.kron(b)
}

/// Left-folded Kronecker product of several factors.
pub fn kron_all(parts: &[&Matrix]) -> Matrix {
    let mut it = parts.iter();
    let first = (*it.next().expect("at least one factor")).clone();
    it.fold(first, |acc, m| acc.kron(m))
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
        prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
            let q = Field::Rationals;
            Matrix::from_vec(
                q,
                rows,
                cols,
                v.into_iter().map(|x| q.from_i64(x)).collect(),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn kron_is_multiplicative(
            a in small_matrix(2, 3), c in small_matrix(3, 2),
            b in small_matrix(2, 2), d in small_matrix(2, 1),
        ) {
            prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
        }

        #[test]
        fn rank_nullity(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
        }

        #[test]
        fn quotient_identity_descends(rel in (0usize..4).prop_flat_map(|r| small_matrix(r, 4))) {
            let q = Field::Rationals;
            let qs = quotient_by(q, 4, &rel).unwrap();
            prop_assert_eq!(qs.dim, 4 - rel.rank());
            prop_assert!(qs.projection.mul(&rel.transpose()).is_zero());
            let id = induced_on_quotient(&qs, &qs, &Matrix::identity(q, 4)).unwrap();
            prop_assert!(id.is_identity());
        }

        #[test]
        fn rational_scalars_roundtrip(n in -1000i64..1000, d in 1i64..1000) {
            let q = Field::Rationals;
            let s = q.ratio(n, d);
            prop_assert_eq!(q.parse(&s.to_string()).unwrap(), s);
        }

        #[test]
        fn residue_scalars_roundtrip(n in any::<i64>()) {
            let f = Field::Prime(1_000_003);
            let s = f.from_i64(n);
            prop_assert_eq!(f.parse(&s.to_string()).unwrap(), s);
        }
    }
}
