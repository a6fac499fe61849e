use std::collections::HashMap;

use super::{CharExpr, ModelError, ModelSpec, Monomial, Names, Part, TwistedElement};
use crate::exactalg::{Matrix, Scalar};

#[derive(Clone, Debug)]
struct Cell {
    labels: Vec<String>,
    elements: Vec<TwistedElement>,
    del: Matrix,
    delbar: Matrix,
}

/// A finite first-quadrant bicomplex on the grid `0..=pmax × 0..=qmax`.
///
/// `del(p, q)` maps cell `(p, q)` to `(p+1, q)` and `delbar(p, q)` maps it to
/// `(p, q+1)`; maps leaving the grid have zero rows. Bicomplexes assembled
/// from a model also carry their basis elements, which gives them a product.
#[derive(Clone, Debug)]
pub struct Bicomplex {
    pmax: usize,
    qmax: usize,
    cells: Vec<Cell>,
    algebraic: bool,
    names: Names,
}

/// Which differential a totalization uses.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TotDifferential {
    Full,
    Del,
    DelBar,
}

impl Bicomplex {
    fn idx(&self, p: usize, q: usize) -> usize {
        p * (self.qmax + 1) + q
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.pmax, self.qmax)
    }

    pub fn top_degree(&self) -> usize {
        self.pmax + self.qmax
    }

    pub fn in_grid(&self, p: usize, q: usize) -> bool {
        p <= self.pmax && q <= self.qmax
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        if self.in_grid(p, q) {
            self.cells[self.idx(p, q)].labels.len()
        } else {
            0
        }
    }

    pub fn total_dim(&self) -> usize {
        self.cells.iter().map(|c| c.labels.len()).sum()
    }

    /// `∂ : (p, q) → (p+1, q)`.
    pub fn del(&self, p: usize, q: usize) -> &Matrix {
        &self.cells[self.idx(p, q)].del
    }

    /// `∂̄ : (p, q) → (p, q+1)`.
    pub fn delbar(&self, p: usize, q: usize) -> &Matrix {
        &self.cells[self.idx(p, q)].delbar
    }

    pub fn part(&self, part: Part, p: usize, q: usize) -> &Matrix {
        match part {
            Part::Del => self.del(p, q),
            Part::DelBar => self.delbar(p, q),
        }
    }

    pub fn labels(&self, p: usize, q: usize) -> &[String] {
        &self.cells[self.idx(p, q)].labels
    }

    pub fn elements(&self, p: usize, q: usize) -> Option<&[TwistedElement]> {
        self.algebraic.then(|| self.cells[self.idx(p, q)].elements.as_slice())
    }

    pub fn is_algebraic(&self) -> bool {
        self.algebraic
    }

    pub fn names(&self) -> &Names {
        &self.names
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..=self.pmax).flat_map(move |p| (0..=self.qmax).map(move |q| (p, q)))
    }

    /// The empty bicomplex on a single cell.
    pub fn empty() -> Self {
        Bicomplex::from_parts(0, 0, &[vec![0]], |_, _| Matrix::zeros(0, 0), |_, _| Matrix::zeros(0, 0))
            .expect("empty bicomplex is valid")
    }

    /// An abstract bicomplex; `dims[p][q]` gives cell dimensions and the
    /// closures give `∂` and `∂̄` out of each cell.
    pub fn from_parts(
        pmax: usize,
        qmax: usize,
        dims: &[Vec<usize>],
        del: impl Fn(usize, usize) -> Matrix,
        delbar: impl Fn(usize, usize) -> Matrix,
    ) -> Result<Self, ModelError> {
        let dim = |p: usize, q: usize| {
            if p <= pmax && q <= qmax {
                dims[p][q]
            } else {
                0
            }
        };
        let mut cells = Vec::new();
        for p in 0..=pmax {
            for q in 0..=qmax {
                let n = dim(p, q);
                let dl = if p < pmax { del(p, q) } else { Matrix::zeros(0, n) };
                let db = if q < qmax { delbar(p, q) } else { Matrix::zeros(0, n) };
                if dl.cols() != n || dl.rows() != dim(p + 1, q) || db.cols() != n || db.rows() != dim(p, q + 1) {
                    return Err(ModelError::Shape(format!("differential out of cell ({p},{q}) has the wrong size")));
                }
                cells.push(Cell {
                    labels: (0..n).map(|i| format!("e{p}{q}.{i}")).collect(),
                    elements: Vec::new(),
                    del: dl,
                    delbar: db,
                });
            }
        }
        let b = Bicomplex { pmax, qmax, cells, algebraic: false, names: Names::default() };
        b.verify_axioms()?;
        Ok(b)
    }

    /// `∂∂ = 0`, `∂̄∂̄ = 0` and `∂∂̄ + ∂̄∂ = 0` on every cell.
    pub fn verify_axioms(&self) -> Result<(), ModelError> {
        for (p, q) in self.cells() {
            if p < self.pmax && !self.del(p + 1, q).mul(self.del(p, q)).is_zero() {
                return Err(ModelError::Axiom(format!("∂∂ ≠ 0 on ({p},{q})")));
            }
            if q < self.qmax && !self.delbar(p, q + 1).mul(self.delbar(p, q)).is_zero() {
                return Err(ModelError::Axiom(format!("∂̄∂̄ ≠ 0 on ({p},{q})")));
            }
            if p < self.pmax && q < self.qmax {
                let a = self.del(p, q + 1).mul(self.delbar(p, q));
                let b = self.delbar(p + 1, q).mul(self.del(p, q));
                if !a.add(&b).is_zero() {
                    return Err(ModelError::Axiom(format!("∂∂̄ + ∂̄∂ ≠ 0 on ({p},{q})")));
                }
            }
        }
        Ok(())
    }

    /// Cells making up `Tot^k` in increasing `p`, as `(p, offset, dim)`.
    pub fn tot_layout(&self, k: usize) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for p in 0..=self.pmax.min(k) {
            let q = k - p;
            if q > self.qmax {
                continue;
            }
            let n = self.dim(p, q);
            out.push((p, off, n));
            off += n;
        }
        out
    }

    pub fn tot_dim(&self, k: usize) -> usize {
        self.tot_layout(k).iter().map(|c| c.2).sum()
    }

    /// First coordinate of `F^p Tot^k`, the span of cells with `p' ≥ p`.
    pub fn filtration_offset(&self, k: usize, p: usize) -> usize {
        self.tot_layout(k).iter().filter(|c| c.0 < p).map(|c| c.2).sum()
    }

    /// Offset of cell `(p, k-p)` inside `Tot^k`.
    pub fn tot_offset(&self, k: usize, p: usize) -> usize {
        self.tot_layout(k).iter().find(|c| c.0 == p).map(|c| c.1).unwrap_or_else(|| self.tot_dim(k))
    }

    /// Matrix of `Tot^k → Tot^{k+1}` for the chosen differential.
    pub fn tot_matrix(&self, k: usize, which: TotDifferential) -> Matrix {
        let src = self.tot_layout(k);
        let dst = self.tot_layout(k + 1);
        let rows = dst.iter().map(|c| c.2).sum();
        let cols = src.iter().map(|c| c.2).sum();
        let mut entries = vec![vec![Scalar::zero(); cols]; rows];
        let offset_of = |p: usize| dst.iter().find(|c| c.0 == p).map(|c| c.1);
        for &(p, off, n) in &src {
            let q = k - p;
            let mut blocks = Vec::new();
            if which != TotDifferential::DelBar && p < self.pmax {
                if let Some(o) = offset_of(p + 1) {
                    blocks.push((o, self.del(p, q)));
                }
            }
            if which != TotDifferential::Del && q < self.qmax {
                if let Some(o) = offset_of(p) {
                    blocks.push((o, self.delbar(p, q)));
                }
            }
            for (o, m) in blocks {
                for i in 0..m.rows() {
                    for j in 0..n {
                        let v = &m[(i, j)];
                        if !v.is_zero() {
                            entries[o + i][off + j] += v;
                        }
                    }
                }
            }
        }
        Matrix::from_rows(cols, entries)
    }

    /// Total complex with `d = ∂ + ∂̄` (or one of the parts), graded by `p + q`.
    pub fn tot(&self, which: TotDifferential) -> GradedComplex {
        let top = self.top_degree();
        let dims: Vec<usize> = (0..=top).map(|k| self.tot_dim(k)).collect();
        let d = (0..=top).map(|k| self.tot_matrix(k, which)).collect();
        let labels = (0..=top)
            .map(|k| self.tot_layout(k).iter().flat_map(|&(p, _, _)| self.labels(p, k - p).to_vec()).collect())
            .collect();
        let elements = self.algebraic.then(|| {
            (0..=top)
                .map(|k| {
                    self.tot_layout(k)
                        .iter()
                        .flat_map(|&(p, _, _)| self.cells[self.idx(p, k - p)].elements.clone())
                        .collect()
                })
                .collect()
        });
        GradedComplex::build(dims, d, labels, elements, self.names.clone())
    }

    /// Column `p` as a complex under `∂̄`, graded by `q`.
    pub fn column(&self, p: usize) -> GradedComplex {
        let dims: Vec<usize> = (0..=self.qmax).map(|q| self.dim(p, q)).collect();
        let d = (0..=self.qmax).map(|q| self.delbar(p, q).clone()).collect();
        let labels = (0..=self.qmax).map(|q| self.labels(p, q).to_vec()).collect();
        GradedComplex::build(dims, d, labels, None, self.names.clone())
    }

    /// Per-cell matrices of the inclusion of `self` into `ambient`, matching basis elements.
    pub fn inclusion_into(&self, ambient: &Bicomplex) -> Result<HashMap<(usize, usize), Matrix>, ModelError> {
        if !self.algebraic || !ambient.algebraic || self.shape() != ambient.shape() {
            return Err(ModelError::Shape("inclusion needs two model bicomplexes on the same grid".into()));
        }
        let mut out = HashMap::new();
        for (p, q) in self.cells() {
            let amb = &ambient.cells[ambient.idx(p, q)].elements;
            let pos: HashMap<&TwistedElement, usize> = amb.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let sub = &self.cells[self.idx(p, q)].elements;
            let mut cols = Vec::with_capacity(sub.len());
            for e in sub {
                let i = *pos.get(e).ok_or_else(|| ModelError::NotClosed {
                    element: e.display(&self.names).to_string(),
                    term: "ambient basis".into(),
                })?;
                let mut v = vec![Scalar::zero(); amb.len()];
                v[i] = Scalar::one();
                cols.push(v);
            }
            out.insert((p, q), Matrix::from_columns(amb.len(), &cols));
        }
        Ok(out)
    }
}

/// Builds the bicomplex spanned by the monomials the selection accepts, each
/// carrying the character prefactor the selection assigns to it.
pub fn assemble_bicomplex(
    model: &ModelSpec,
    selection: impl Fn(Monomial) -> Option<CharExpr>,
) -> Result<Bicomplex, ModelError> {
    let (pmax, qmax) = model.shape();
    let names = model.names();
    let mut bases = Vec::new();
    let mut index: HashMap<TwistedElement, usize> = HashMap::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            let elems: Vec<TwistedElement> = model
                .monomials(p, q)
                .into_iter()
                .filter_map(|m| selection(m).map(|c| TwistedElement::new(c, m)))
                .collect();
            for (i, e) in elems.iter().enumerate() {
                index.insert(e.clone(), i);
            }
            bases.push(elems);
        }
    }
    let cell = |p: usize, q: usize| p * (qmax + 1) + q;
    let mut cells = Vec::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            let elems = &bases[cell(p, q)];
            let mut mats = Vec::new();
            for (part, tp, tq) in [(Part::Del, p + 1, q), (Part::DelBar, p, q + 1)] {
                let rows = if tp <= pmax && tq <= qmax { bases[cell(tp, tq)].len() } else { 0 };
                let mut entries = vec![vec![Scalar::zero(); elems.len()]; rows];
                for (j, e) in elems.iter().enumerate() {
                    for (m, c) in model.d_element(e, part) {
                        let target = TwistedElement::new(e.prefactor.clone(), m);
                        match index.get(&target) {
                            Some(&i) if rows > 0 => entries[i][j] = c,
                            _ => {
                                return Err(ModelError::NotClosed {
                                    element: e.display(&names).to_string(),
                                    term: target.display(&names).to_string(),
                                })
                            }
                        }
                    }
                }
                mats.push(Matrix::from_rows(elems.len(), entries));
            }
            let delbar = mats.pop().expect("two parts");
            let del = mats.pop().expect("two parts");
            cells.push(Cell {
                labels: elems.iter().map(|e| e.display(&names).to_string()).collect(),
                elements: elems.clone(),
                del,
                delbar,
            });
        }
    }
    let b = Bicomplex { pmax, qmax, cells, algebraic: true, names };
    b.verify_axioms()?;
    Ok(b)
}

/// A cochain complex graded `0..=top`, with `d[k] : C^k → C^{k+1}`.
/// Complexes coming from a model also know their basis elements and hence
/// the product of basis elements.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub dims: Vec<usize>,
    pub d: Vec<Matrix>,
    pub labels: Vec<Vec<String>>,
    elements: Option<Vec<Vec<TwistedElement>>>,
    index: HashMap<TwistedElement, (usize, usize)>,
    names: Names,
}

impl GradedComplex {
    fn build(
        dims: Vec<usize>,
        d: Vec<Matrix>,
        labels: Vec<Vec<String>>,
        elements: Option<Vec<Vec<TwistedElement>>>,
        names: Names,
    ) -> Self {
        let mut index = HashMap::new();
        if let Some(el) = &elements {
            for (k, basis) in el.iter().enumerate() {
                for (i, e) in basis.iter().enumerate() {
                    index.insert(e.clone(), (k, i));
                }
            }
        }
        GradedComplex { dims, d, labels, elements, index, names }
    }

    /// An abstract complex; `d[k]` must be `dims[k+1] × dims[k]` (the last may be `0 × dims[top]`).
    pub fn from_parts(dims: Vec<usize>, d: Vec<Matrix>) -> Result<Self, ModelError> {
        if d.len() != dims.len() {
            return Err(ModelError::Shape("one differential per degree is required".into()));
        }
        for (k, m) in d.iter().enumerate() {
            let rows = dims.get(k + 1).copied().unwrap_or(0);
            if m.cols() != dims[k] || m.rows() != rows {
                return Err(ModelError::Shape(format!("differential in degree {k} has the wrong size")));
            }
            if k + 1 < d.len() && !d[k + 1].mul(m).is_zero() {
                return Err(ModelError::Axiom(format!("d∘d ≠ 0 in degree {k}")));
            }
        }
        let labels = dims.iter().enumerate().map(|(k, &n)| (0..n).map(|i| format!("e{k}.{i}")).collect()).collect();
        Ok(GradedComplex::build(dims, d, labels, None, Names::default()))
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.dims.get(k).copied().unwrap_or(0)
    }

    /// `d : C^{k-1} → C^k`, a zero matrix for `k = 0`.
    pub fn d_into(&self, k: usize) -> Matrix {
        if k == 0 {
            Matrix::zeros(self.dim(0), 0)
        } else {
            self.d[k - 1].clone()
        }
    }

    pub fn verify_d_squared(&self) -> bool {
        self.d.windows(2).all(|w| w[1].mul(&w[0]).is_zero())
    }

    pub fn has_product(&self) -> bool {
        self.elements.is_some()
    }

    pub fn elements(&self, k: usize) -> Option<&[TwistedElement]> {
        self.elements.as_ref().map(|e| e[k].as_slice())
    }

    /// Product of the `i`-th basis element of degree `k` and the `j`-th of
    /// degree `l`: a signed basis element of degree `k+l`, or zero.
    pub fn basis_product(&self, k: usize, i: usize, l: usize, j: usize) -> Result<Option<(i32, usize)>, ModelError> {
        let el = self.elements.as_ref().ok_or_else(|| ModelError::Shape("complex has no product".into()))?;
        let (a, b) = (&el[k][i], &el[l][j]);
        let Some((sign, e)) = a.wedge(b) else {
            return Ok(None);
        };
        match self.index.get(&e) {
            Some(&(deg, idx)) if deg == k + l => Ok(Some((sign, idx))),
            _ => Err(ModelError::ProductNotClosed {
                left: a.display(&self.names).to_string(),
                right: b.display(&self.names).to_string(),
            }),
        }
    }

    /// Bilinear extension of the basis product.
    pub fn product(&self, k: usize, x: &[Scalar], l: usize, y: &[Scalar]) -> Result<Vec<Scalar>, ModelError> {
        let mut out = vec![Scalar::zero(); self.dim(k + l)];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if let Some((s, idx)) = self.basis_product(k, i, l, j)? {
                    let v = xi * yj;
                    out[idx] += &if s < 0 { -v } else { v };
                }
            }
        }
        Ok(out)
    }
}

/// Degreewise matrices of `Tot(sub) → Tot(ambient)` induced by the cell inclusions.
pub fn tot_inclusion(sub: &Bicomplex, ambient: &Bicomplex) -> Result<Vec<Matrix>, ModelError> {
    let cells = sub.inclusion_into(ambient)?;
    Ok((0..=sub.top_degree()).map(|k| tot_block_map(sub, ambient, k, |p, q| cells[&(p, q)].clone())).collect())
}

/// Block-diagonal map `Tot^k(a) → Tot^k(b)` from per-cell maps.
pub fn tot_block_map(a: &Bicomplex, b: &Bicomplex, k: usize, cell: impl Fn(usize, usize) -> Matrix) -> Matrix {
    let mut m = Matrix::zeros(b.tot_dim(k), a.tot_dim(k));
    for (p, off, n) in a.tot_layout(k) {
        let q = k - p;
        if !b.in_grid(p, q) {
            continue;
        }
        let block = cell(p, q);
        let boff = b.tot_offset(k, p);
        for i in 0..block.rows() {
            for j in 0..n {
                if !block[(i, j)].is_zero() {
                    m[(boff + i, off + j)] = block[(i, j)].clone();
                }
            }
        }
    }
    m
}
