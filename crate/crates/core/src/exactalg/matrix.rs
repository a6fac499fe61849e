use std::fmt;
use std::ops::{Index, IndexMut};

use super::Scalar;

/// Dense matrix over `Q(i)`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of a full row reduction.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    pub rref: Matrix,
    /// Invertible matrix with `transform * m == rref`.
    pub transform: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Scalar::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            data.extend(r);
        }
        Matrix { rows: n, cols, data }
    }

    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged matrix columns");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(cols, rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Scalar> {
        self.row(i).to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(Scalar::conj).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        self.transpose().conj()
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in add");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in sub");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in mul_vec");
        let nz: Vec<usize> = (0..v.len()).filter(|&k| !v[k].is_zero()).collect();
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for &k in &nz {
                    let a = &self[(i, k)];
                    if !a.is_zero() {
                        acc += &(a * &v[k]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Rows `rs` and columns `cs` (half-open ranges).
    pub fn submatrix(&self, rs: std::ops::Range<usize>, cs: std::ops::Range<usize>) -> Matrix {
        let mut m = Matrix::zeros(rs.len(), cs.len());
        for (i, r) in rs.clone().enumerate() {
            for (j, c) in cs.clone().enumerate() {
                m[(i, j)] = self[(r, c)].clone();
            }
        }
        m
    }

    pub fn select_columns(&self, cs: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cs.len());
        for i in 0..self.rows {
            for (j, &c) in cs.iter().enumerate() {
                m[(i, j)] = self[(i, c)].clone();
            }
        }
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "row mismatch in hstack");
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "column mismatch in vstack");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// In-place reduction to reduced row-echelon form. Returns pivot columns.
    ///
    /// Pivots are the first nonzero entry in the lowest-index remaining row,
    /// so the outcome depends only on the matrix.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in c..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self[(r, c)].inv().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..cols {
                    if !self[(r, j)].is_zero() {
                        let v = &self[(r, j)] * &inv;
                        self[(r, j)] = v;
                    }
                }
            }
            let pivot_row: Vec<(usize, Scalar)> =
                (c..cols).filter(|&j| !self[(r, j)].is_zero()).map(|j| (j, self[(r, j)].clone())).collect();
            for i in 0..rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for (j, pv) in &pivot_row {
                    let delta = &f * pv;
                    self[(i, *j)] -= &delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref_in_place().len()
    }

    /// Full reduction with the transformation matrix tracked.
    pub fn row_reduce(&self) -> RowReduction {
        let mut aug = self.hstack(&Matrix::identity(self.rows));
        // Pivots can only land in the left block: the identity keeps full row rank
        // but reduction stops considering a row once it has been used.
        let all = aug.rref_in_place();
        let pivots: Vec<usize> = all.into_iter().filter(|&c| c < self.cols).collect();
        let rank = pivots.len();
        RowReduction {
            rank,
            rref: aug.submatrix(0..self.rows, 0..self.cols),
            transform: aug.submatrix(0..self.rows, self.cols..self.cols + self.rows),
            pivots,
        }
    }

    /// Basis of the null space as column vectors, one per free column.
    pub fn kernel_vectors(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -&m[(i, f)];
                }
                v
            })
            .collect()
    }

    /// Some solution `x` of `self * x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        let sol = self.solve_many(&Matrix::from_columns(self.rows, &[b.to_vec()]))?;
        Some(sol.column(0))
    }

    /// Some solution `X` of `self * X = B`, column by column.
    pub fn solve_many(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "row mismatch in solve");
        let mut aug = self.hstack(b);
        let pivots = aug.rref_in_place();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(p, j)] = aug[(i, self.cols + j)].clone();
            }
        }
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let r = Matrix::zeros(2, 2).row_reduce();
        assert_eq!(r.rank, 0);
        assert!(r.rref.is_zero());
    }

    #[test]
    fn identity_reduces_to_itself() {
        let id = Matrix::identity(3);
        let r = id.row_reduce();
        assert_eq!(r.rank, 3);
        assert_eq!(r.rref, id);
    }

    #[test]
    fn gaussian_rank_one_example() {
        // second row is i times the first
        let m = Matrix::from_rows(2, vec![vec![s("1"), s("i")], vec![s("i"), s("-1")]]);
        assert_eq!(m.row_reduce().rank, 1);
        assert_eq!(m.row(1).to_vec(), m.row(0).iter().map(|x| x * &Scalar::i()).collect::<Vec<_>>());
    }

    #[test]
    fn transform_times_input_is_rref() {
        let m = Matrix::from_rows(
            3,
            vec![vec![s("1"), s("2"), s("i")], vec![s("2"), s("4"), s("2*i")], vec![s("0"), s("1/2"), s("3-i")]],
        );
        let r = m.row_reduce();
        assert_eq!(r.transform.mul(&m), r.rref);
        assert_eq!(r.rank, 2);
        assert!(r.transform.is_invertible());
    }

    #[test]
    fn solve_finds_consistent_solutions_only() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, 0]]);
        assert!(m.solve(&[s("1"), s("1")]).is_none());
        let x = m.solve(&[s("3"), s("0")]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![s("3"), s("0")]);
    }
}
