//! Exact field arithmetic and dense matrix kernels.

mod field;
mod matrix;

pub use field::{Field, Scalar};
pub use matrix::{dot, is_zero_vector, rank_of, Echelon, Matrix, SpanSolver};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("entries from different fields")]
    FieldMismatch,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("{0} is not a prime below 2^31")]
    InvalidModulus(u32),
    #[error("cannot parse scalar: {0}")]
    Parse(String),
}

/// Linear combination `Σ cᵢ·vᵢ` of equal-length vectors.
pub fn combine(field: Field, len: usize, coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = vec![field.zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = &*o + &(c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(max_dim: usize) -> impl Strategy<Value = (usize, usize, Vec<i64>)> {
        (0..=max_dim, 0..=max_dim).prop_flat_map(|(r, c)| (Just(r), Just(c), prop::collection::vec(-5i64..=5, r * c)))
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, data) in int_matrix(5)) {
            let m = Matrix::from_vec(Field::Rational, r, c, data.iter().map(|&x| Field::Rational.from_i64(x)).collect()).unwrap();
            let kernel = m.kernel_basis();
            prop_assert_eq!(m.rank() + kernel.len(), c);
            for v in &kernel {
                prop_assert!(is_zero_vector(&m.mul_vec(v)));
            }
        }

        #[test]
        fn solve_is_exact((r, c, data) in int_matrix(5), rhs in prop::collection::vec(-5i64..=5, 5)) {
            let f = Field::Rational;
            let m = Matrix::from_vec(f, r, c, data.iter().map(|&x| f.from_i64(x)).collect()).unwrap();
            let b: Vec<Scalar> = rhs[..r].iter().map(|&x| f.from_i64(x)).collect();
            if let Some(x) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x), b);
            }
        }

        // Minors of a 4x4 matrix with entries in [-5, 5] are below 4!·5⁴ = 15000,
        // so no nonzero minor vanishes modulo this prime.
        #[test]
        fn rank_agrees_across_fields((r, c, data) in int_matrix(4)) {
            let fp = Field::prime(1_000_003).unwrap();
            let over_q = Matrix::from_vec(Field::Rational, r, c, data.iter().map(|&x| Field::Rational.from_i64(x)).collect()).unwrap();
            let over_p = Matrix::from_vec(fp, r, c, data.iter().map(|&x| fp.from_i64(x)).collect()).unwrap();
            prop_assert_eq!(over_q.rank(), over_p.rank());
        }
    }
}
