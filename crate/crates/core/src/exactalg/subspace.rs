use super::{ExactAlgError, Matrix, Scalar};

/// A linear subspace of `Q(i)^n`, stored by its reduced row-echelon basis.
///
/// Because the echelon basis is unique, two subspaces are equal exactly when
/// their structs are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

/// Coset representatives of `V / W`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub dim: usize,
    pub representatives: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of the coordinate vectors `e_i` for `i` in `range`.
    pub fn coordinate(ambient: usize, range: std::ops::Range<usize>) -> Self {
        let mut basis = Matrix::zeros(range.len(), ambient);
        for (k, i) in range.clone().enumerate() {
            basis[(k, i)] = Scalar::one();
        }
        Subspace { ambient, basis, pivots: range.collect() }
    }

    pub fn span(ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        Self::from_rows(Matrix::from_rows(ambient, vectors.to_vec()))
    }

    /// Row space of `m`.
    pub fn from_rows(mut m: Matrix) -> Self {
        let ambient = m.cols();
        let pivots = m.rref_in_place();
        let basis = m.submatrix(0..pivots.len(), 0..ambient);
        Subspace { ambient, basis, pivots }
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix) -> Self {
        Self::from_rows(m.transpose())
    }

    /// Null space of `m` (the `kernel_basis` operation).
    pub fn kernel(m: &Matrix) -> Self {
        let vs = m.kernel_vectors();
        Self::span(m.cols(), &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors in reduced echelon form.
    pub fn basis(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    pub fn basis_matrix(&self) -> &Matrix {
        &self.basis
    }

    fn check_ambient(&self, other: usize) -> Result<(), ExactAlgError> {
        if self.ambient != other {
            return Err(ExactAlgError::AmbientMismatch { left: self.ambient, right: other });
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let rest = self.reduce(v);
        if rest.iter().all(Scalar::is_zero) {
            Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
        } else {
            None
        }
    }

    /// `v` minus its echelon projection; zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector length differs from ambient dimension");
        let mut out = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !b.is_zero() {
                    let d = &f * b;
                    out[j] -= &d;
                }
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, w: &Subspace) -> bool {
        w.ambient == self.ambient && w.basis.row_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, ExactAlgError> {
        self.check_ambient(other.ambient)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        Ok(Subspace::from_rows(self.basis.vstack(&other.basis)))
    }

    /// `U ∩ W`, from the kernel of the stacked system `[U^T | -W^T]`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, ExactAlgError> {
        self.check_ambient(other.ambient)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let stacked = self.basis.transpose().hstack(&other.basis.transpose().scale(&Scalar::from_int(-1)));
        let k = self.dim();
        let vectors: Vec<Vec<Scalar>> = stacked
            .kernel_vectors()
            .into_iter()
            .map(|c| {
                let mut v = vec![Scalar::zero(); self.ambient];
                for (i, a) in c[..k].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in self.basis.row(i).iter().enumerate() {
                        if !b.is_zero() {
                            v[j] += &(a * b);
                        }
                    }
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, &vectors))
    }

    /// Rows spanning the annihilator: `self = { x : C x = 0 }`.
    pub fn constraints(&self) -> Matrix {
        let vs = self.basis.kernel_vectors();
        Matrix::from_rows(self.ambient, vs)
    }

    /// `{ v : f v ∈ W }` for a map `f` whose target is the ambient space of `W`.
    pub fn preimage(f: &Matrix, w: &Subspace) -> Result<Subspace, ExactAlgError> {
        if f.rows() != w.ambient {
            return Err(ExactAlgError::AmbientMismatch { left: f.rows(), right: w.ambient });
        }
        let c = w.constraints();
        if c.rows() == 0 {
            return Ok(Subspace::full(f.cols()));
        }
        Ok(Subspace::kernel(&c.mul(f)))
    }

    /// Image of this subspace under `f`.
    pub fn map(&self, f: &Matrix) -> Result<Subspace, ExactAlgError> {
        if f.cols() != self.ambient {
            return Err(ExactAlgError::AmbientMismatch { left: f.cols(), right: self.ambient });
        }
        let imgs: Vec<Vec<Scalar>> = self.basis.row_vectors().iter().map(|v| f.mul_vec(v)).collect();
        Ok(Subspace::span(f.rows(), &imgs))
    }

    /// Coset representatives for `self / w`, canonical given both subspaces.
    pub fn quotient_basis(&self, w: &Subspace) -> Result<QuotientBasis, ExactAlgError> {
        self.check_ambient(w.ambient)?;
        if !self.contains_subspace(w) {
            return Err(ExactAlgError::NotASubspace);
        }
        let reduced: Vec<Vec<Scalar>> = self.basis.row_vectors().iter().map(|v| w.reduce(v)).collect();
        let reps = Subspace::span(self.ambient, &reduced);
        Ok(QuotientBasis { dim: reps.dim(), representatives: reps.basis() })
    }

    /// Embeds vectors of this ambient space into a larger one at `offset`.
    pub fn embed(&self, ambient: usize, offset: usize) -> Subspace {
        assert!(offset + self.ambient <= ambient);
        let mut m = Matrix::zeros(self.dim(), ambient);
        for i in 0..self.dim() {
            for j in 0..self.ambient {
                m[(i, offset + j)] = self.basis[(i, j)].clone();
            }
        }
        Subspace { ambient, basis: m, pivots: self.pivots.iter().map(|p| p + offset).collect() }
    }
}

/// Classifies vectors of `V` modulo `W ⊆ V` against fixed coset representatives.
#[derive(Clone, Debug)]
pub struct QuotientClassifier {
    denominator: Subspace,
    representatives: Subspace,
}

impl QuotientClassifier {
    pub fn new(numerator: &Subspace, denominator: Subspace) -> Result<Self, ExactAlgError> {
        let q = numerator.quotient_basis(&denominator)?;
        Ok(QuotientClassifier { representatives: Subspace::span(numerator.ambient(), &q.representatives), denominator })
    }

    pub fn dim(&self) -> usize {
        self.representatives.dim()
    }

    pub fn representatives(&self) -> Vec<Vec<Scalar>> {
        self.representatives.basis()
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Coordinates of the class of `v`; `None` if `v ∉ W ⊕ span(reps)`.
    pub fn classify(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let rest = self.denominator.reduce(v);
        self.representatives.coordinates(&rest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[&str]) -> Vec<Scalar> {
        xs.iter().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn kernel_of_zero_and_identity() {
        assert_eq!(Subspace::kernel(&Matrix::zeros(4, 4)), Subspace::full(4));
        assert_eq!(Subspace::kernel(&Matrix::identity(3)), Subspace::zero(3));
    }

    #[test]
    fn kernel_of_gaussian_row() {
        let m = Matrix::from_rows(2, vec![v(&["1", "i"])]);
        assert_eq!(Subspace::kernel(&m), Subspace::span(2, &[v(&["-i", "1"])]));
    }

    #[test]
    fn intersect_coordinate_axes() {
        let e1 = Subspace::span(2, &[v(&["1", "0"])]);
        let e2 = Subspace::span(2, &[v(&["0", "1"])]);
        assert!(e1.intersect(&e2).unwrap().is_zero());
        let diag = Subspace::span(2, &[v(&["1", "1"])]);
        assert_eq!(Subspace::full(2).intersect(&diag).unwrap(), diag);
    }

    #[test]
    fn quotient_of_plane_by_axis() {
        let e1 = Subspace::span(2, &[v(&["1", "0"])]);
        let q = Subspace::full(2).quotient_basis(&e1).unwrap();
        assert_eq!(q.dim, 1);
        assert_eq!(q.representatives, vec![v(&["0", "1"])]);
        assert_eq!(e1.quotient_basis(&Subspace::full(2)), Err(ExactAlgError::NotASubspace));
    }

    #[test]
    fn preimage_of_diagonal_under_projection() {
        let f = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        let w = Subspace::span(2, &[v(&["1", "1"])]);
        let pre = Subspace::preimage(&f, &w).unwrap();
        assert_eq!(pre, Subspace::span(2, &[v(&["0", "1"])]));
    }

    #[test]
    fn ambient_mismatch_is_reported() {
        assert!(Subspace::full(2).sum(&Subspace::full(3)).is_err());
        assert!(Subspace::full(2).intersect(&Subspace::full(3)).is_err());
    }

    #[test]
    fn classifier_reads_coset_coordinates() {
        let w = Subspace::span(3, &[v(&["1", "1", "0"])]);
        let c = QuotientClassifier::new(&Subspace::full(3), w).unwrap();
        assert_eq!(c.dim(), 2);
        let a = c.classify(&v(&["2", "2", "0"])).unwrap();
        assert!(a.iter().all(Scalar::is_zero));
        let b = c.classify(&v(&["0", "1", "5"])).unwrap();
        let back: Vec<Scalar> =
            (0..3).map(|j| c.representatives().iter().zip(&b).map(|(r, x)| &r[j] * x).sum()).collect();
        assert!(c
            .denominator()
            .contains(&v(&["0", "1", "5"]).iter().zip(&back).map(|(a, b)| a - b).collect::<Vec<_>>()));
    }
}
