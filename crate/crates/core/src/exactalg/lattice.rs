use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::ExactAlgError;

/// A sublattice of `Z^k` given by generators.
///
/// Membership is decided against the Hermite normal form of the generators,
/// so it does not depend on which generating set was supplied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    ambient: usize,
    generators: Vec<Vec<i64>>,
    /// Nonzero HNF rows with strictly increasing pivot columns.
    hnf: Vec<(usize, Vec<BigInt>)>,
}

impl IntLattice {
    pub fn new(ambient: usize, generators: Vec<Vec<i64>>) -> Result<Self, ExactAlgError> {
        for g in &generators {
            if g.len() != ambient {
                return Err(ExactAlgError::AmbientMismatch { left: ambient, right: g.len() });
            }
        }
        let rows = generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let hnf = hermite_rows(ambient, rows);
        Ok(IntLattice { ambient, generators, hnf })
    }

    /// The zero lattice.
    pub fn trivial(ambient: usize) -> Self {
        IntLattice { ambient, generators: Vec::new(), hnf: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.hnf.len()
    }

    /// Whether `v` is an integer combination of the generators.
    pub fn contains(&self, v: &[i64]) -> Result<bool, ExactAlgError> {
        if v.len() != self.ambient {
            return Err(ExactAlgError::AmbientMismatch { left: self.ambient, right: v.len() });
        }
        let mut rest: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        for (pivot, row) in &self.hnf {
            if rest[..*pivot].iter().any(|x| !x.is_zero()) {
                return Ok(false);
            }
            let (q, r) = rest[*pivot].div_rem(&row[*pivot]);
            if !r.is_zero() {
                return Ok(false);
            }
            if !q.is_zero() {
                for (x, y) in rest.iter_mut().zip(row) {
                    *x -= &q * y;
                }
            }
        }
        Ok(rest.iter().all(Zero::is_zero))
    }
}

/// Row-style Hermite normal form by repeated extended-gcd row operations.
fn hermite_rows(cols: usize, mut rows: Vec<Vec<BigInt>>) -> Vec<(usize, Vec<BigInt>)> {
    let mut out: Vec<(usize, Vec<BigInt>)> = Vec::new();
    for c in 0..cols {
        let active: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
        let Some((&first, others)) = active.split_first() else {
            continue;
        };
        let mut pivot = rows[first].clone();
        for &i in others {
            let a = pivot[c].clone();
            let b = rows[i][c].clone();
            let e = a.extended_gcd(&b);
            // [x y; -b/g a/g] is unimodular
            let (ag, bg) = (&a / &e.gcd, &b / &e.gcd);
            let new_pivot: Vec<BigInt> = pivot.iter().zip(&rows[i]).map(|(p, r)| &e.x * p + &e.y * r).collect();
            let new_other: Vec<BigInt> = pivot.iter().zip(&rows[i]).map(|(p, r)| &ag * r - &bg * p).collect();
            pivot = new_pivot;
            rows[i] = new_other;
        }
        if pivot[c].is_negative() {
            pivot.iter_mut().for_each(|x| *x = -x.clone());
        }
        rows.remove(first);
        // reduce earlier pivot rows into the canonical range [0, pivot)
        for (pc, prow) in out.iter_mut() {
            let _ = pc;
            let (q, _) = prow[c].div_mod_floor(&pivot[c]);
            if !q.is_zero() {
                for (x, y) in prow.iter_mut().zip(&pivot) {
                    *x -= &q * y;
                }
            }
        }
        out.push((c, pivot));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_lattice() {
        let l = IntLattice::new(1, vec![vec![2]]).unwrap();
        assert!(!l.contains(&[3]).unwrap());
        assert!(l.contains(&[-4]).unwrap());
    }

    #[test]
    fn zero_vector_always_member() {
        assert!(IntLattice::trivial(2).contains(&[0, 0]).unwrap());
        assert!(IntLattice::new(2, vec![vec![3, 5]]).unwrap().contains(&[0, 0]).unwrap());
    }

    #[test]
    fn index_two_lattice() {
        let l = IntLattice::new(2, vec![vec![1, 1], vec![1, -1]]).unwrap();
        assert!(l.contains(&[2, 0]).unwrap());
        assert!(!l.contains(&[1, 0]).unwrap());
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(IntLattice::new(2, vec![vec![1]]).is_err());
        assert!(IntLattice::trivial(2).contains(&[1]).is_err());
    }
}
