//! Exact linear algebra over the Gaussian rationals and integer lattice membership.
//!
//! Every other module computes dimensions and kernels through this layer;
//! nothing here ever rounds.

mod lattice;
mod matrix;
mod scalar;
mod subspace;

pub use lattice::IntLattice;
pub use matrix::{Matrix, RowReduction};
pub use scalar::{Scalar, ScalarParseError};
pub use subspace::{QuotientBasis, QuotientClassifier, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactAlgError {
    #[error("ambient dimensions differ ({left} vs {right})")]
    AmbientMismatch { left: usize, right: usize },
    #[error("quotient denominator is not contained in the numerator")]
    NotASubspace,
}

/// `a - b` for vectors.
pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `a + b` for vectors.
pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_scale(a: &[Scalar], c: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * c).collect()
}

pub fn is_zero_vec(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}

/// `sum_i coeffs[i] * vectors[i]`; `len` is the common vector length.
pub fn combine(len: usize, coeffs: &[Scalar], vectors: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o += &(c * x);
            }
        }
    }
    out
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec((-2i64..3, -1i64..2), r * c).prop_map(move |entries| {
                let rows =
                    entries.chunks(c).map(|ch| ch.iter().map(|&(a, b)| Scalar::gaussian(a, b)).collect()).collect();
                Matrix::from_rows(c, rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(m.rank() + Subspace::kernel(&m).dim(), m.cols());
            for v in Subspace::kernel(&m).basis() {
                prop_assert!(is_zero_vec(&m.mul_vec(&v)));
            }
        }

        #[test]
        fn quotient_dimension(m in small_matrix(), keep in 0usize..4) {
            let v = Subspace::from_rows(m.clone());
            let basis = v.basis();
            let w = Subspace::span(m.cols(), &basis[..keep.min(basis.len())]);
            let q = v.quotient_basis(&w).unwrap();
            prop_assert_eq!(q.dim, v.dim() - w.dim());
        }

        #[test]
        fn lattice_membership_ignores_unimodular_changes(
            a in -3i64..4, b in -3i64..4, c in -3i64..4, d in -3i64..4,
            k in -3i64..4, x in -6i64..7, y in -6i64..7,
        ) {
            let g1 = vec![a, b];
            let g2 = vec![c, d];
            // g2 + k g1 with g1 is a unimodular recombination
            let g2k = vec![c + k * a, d + k * b];
            let l1 = IntLattice::new(2, vec![g1.clone(), g2]).unwrap();
            let l2 = IntLattice::new(2, vec![g2k, g1]).unwrap();
            prop_assert_eq!(l1.contains(&[x, y]).unwrap(), l2.contains(&[x, y]).unwrap());
        }

        #[test]
        fn lattice_contains_its_combinations(
            a in -3i64..4, b in -3i64..4, c in -3i64..4, d in -3i64..4,
            m in -3i64..4, n in -3i64..4,
        ) {
            let l = IntLattice::new(2, vec![vec![a, b], vec![c, d]]).unwrap();
            prop_assert!(l.contains(&[m * a + n * c, m * b + n * d]).unwrap());
        }
    }
}
