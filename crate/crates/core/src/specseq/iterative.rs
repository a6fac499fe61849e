use std::collections::BTreeMap;

use super::{check_page_invariants, degeneracy_step, CellPage, Page, PageStack, SpecSeqError};
use crate::algebra::{Bicomplex, TotDifferential};
use crate::exactalg::{combine, is_zero_vec, vec_sub, Matrix, QuotientClassifier, Scalar, Subspace};

/// Page data at level `s ≥ 1`. Classes are zig-zags `z_0, …, z_{s-1}` stored
/// as vectors of `Tot^{p+q}` with `dz = ∂ z_{s-1}`.
struct LevelCell {
    reps: Vec<Vec<Scalar>>,
    leads: Vec<Vec<Scalar>>,
    /// Level 1: `ker ∂̄ / im ∂̄` inside the cell.
    classifier: Option<QuotientClassifier>,
    /// Level `s ≥ 2`: the chosen basis, as columns in level `s-1` coordinates.
    basis_in_prev: Option<Matrix>,
    dout: Matrix,
    /// For each class: `(u, W)` with `∂ z_{s-1} = d_s-image leads + ∂̄u + dW`.
    corrections: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

struct Engine<'a> {
    b: &'a Bicomplex,
    d: Vec<Matrix>,
    levels: Vec<BTreeMap<(usize, usize), LevelCell>>,
}

fn internal(msg: String) -> SpecSeqError {
    SpecSeqError::Internal(msg)
}

impl Engine<'_> {
    fn cell_slice(&self, k: usize, p: usize, v: &[Scalar]) -> Vec<Scalar> {
        let off = self.b.tot_offset(k, p);
        v[off..off + self.b.dim(p, k - p)].to_vec()
    }

    fn cell_embed(&self, k: usize, p: usize, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.b.tot_dim(k)];
        let off = self.b.tot_offset(k, p);
        out[off..off + v.len()].clone_from_slice(v);
        out
    }

    /// The source of `d_s` landing in `(a, b)`.
    fn source(&self, s: usize, a: usize, b: usize) -> Option<(usize, usize)> {
        let sp = a.checked_sub(s)?;
        let sq = b + s - 1;
        self.b.in_grid(sp, sq).then_some((sp, sq))
    }

    /// Writes `y ∈ A^{a,b}` (a survivor to level `s`) as
    /// `sum c_i lead_i + ∂̄u + dW` with `u, W ∈ Tot^{a+b-1}`.
    fn classify(
        &self,
        s: usize,
        a: usize,
        b: usize,
        y: &[Scalar],
    ) -> Result<(Vec<Scalar>, Vec<Scalar>, Vec<Scalar>), SpecSeqError> {
        let k = a + b;
        let below = if k == 0 { 0 } else { self.b.tot_dim(k - 1) };
        let cell = &self.levels[s - 1][&(a, b)];
        if s == 1 {
            let cl = cell.classifier.as_ref().expect("level one classifier");
            let c = cl.classify(y).ok_or_else(|| internal(format!("element of ({a},{b}) is not ∂̄-closed")))?;
            let residual = vec_sub(y, &combine(y.len(), &c, &cell.leads));
            let u = if is_zero_vec(&residual) {
                vec![Scalar::zero(); below]
            } else {
                let q = b.checked_sub(1).ok_or_else(|| internal(format!("nonzero residual in ({a},0)")))?;
                let uc = self
                    .b
                    .delbar(a, q)
                    .solve(&residual)
                    .ok_or_else(|| internal(format!("residual in ({a},{b}) is not ∂̄-exact")))?;
                self.cell_embed(k - 1, a, &uc)
            };
            return Ok((c, u, vec![Scalar::zero(); below]));
        }
        let (c0, mut u, mut w) = self.classify(s - 1, a, b, y)?;
        let basis = cell.basis_in_prev.as_ref().expect("basis for level ≥ 2");
        let prev = &self.levels[s - 2];
        let src = self.source(s - 1, a, b);
        let din = src.map_or_else(|| Matrix::zeros(c0.len(), 0), |t| prev[&t].dout.clone());
        let x = basis
            .hstack(&din)
            .solve(&c0)
            .ok_or_else(|| internal(format!("class in ({a},{b}) does not survive to page {s}")))?;
        let (beta, alpha) = x.split_at(basis.cols());
        if let Some(t) = src {
            let sc = &prev[&t];
            for (m, am) in alpha.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let (um, wm) = &sc.corrections[m];
                for i in 0..below {
                    u[i] -= &(am * &um[i]);
                    w[i] += &(am * &(&sc.reps[m][i] - &wm[i]));
                }
            }
        }
        Ok((beta.to_vec(), u, w))
    }

    /// Computes `d_s` and its corrections out of every cell of level `s`.
    fn fill_differentials(&mut self, s: usize) -> Result<(), SpecSeqError> {
        let keys: Vec<(usize, usize)> = self.levels[s - 1].keys().copied().collect();
        for (p, q) in keys {
            let k = p + q;
            let reps = self.levels[s - 1][&(p, q)].reps.clone();
            let target = (q + 1).checked_sub(s).map(|tq| (p + s, tq)).filter(|&(a, b)| self.b.in_grid(a, b));
            let mut cols = Vec::new();
            let mut corr = Vec::new();
            for z in &reps {
                let dz = self.d[k].mul_vec(z);
                match target {
                    Some((a, b)) => {
                        let y = self.cell_slice(k + 1, a, &dz);
                        if self.cell_embed(k + 1, a, &y) != dz {
                            return Err(internal(format!("zig-zag from ({p},{q}) has d outside ({a},{b})")));
                        }
                        let (c, u, w) = self.classify(s, a, b, &y)?;
                        cols.push(c);
                        corr.push((u, w));
                    }
                    None => {
                        if !is_zero_vec(&dz) {
                            return Err(internal(format!("zig-zag from ({p},{q}) leaves the grid")));
                        }
                        corr.push((Vec::new(), Vec::new()));
                    }
                }
            }
            let rows = target.map_or(0, |t| self.levels[s - 1][&t].reps.len());
            let cell = self.levels[s - 1].get_mut(&(p, q)).expect("cell");
            cell.dout = Matrix::from_columns(rows, &cols);
            if cols.is_empty() {
                cell.dout = Matrix::zeros(rows, reps.len());
            }
            cell.corrections = corr;
        }
        Ok(())
    }

    /// Level `s + 1` as the homology of `d_s`, with zig-zags extended by one step.
    fn next_level(&mut self, s: usize) -> Result<(), SpecSeqError> {
        let mut next = BTreeMap::new();
        for (&(a, b), cell) in &self.levels[s - 1] {
            let k = a + b;
            let n = cell.reps.len();
            let kernel = Subspace::kernel(&cell.dout);
            let image = match self.source(s, a, b) {
                Some(t) => Subspace::image(&self.levels[s - 1][&t].dout),
                None => Subspace::zero(n),
            };
            let basis = QuotientClassifier::new(&kernel, image)?.representatives();
            let mut reps = Vec::new();
            let mut leads = Vec::new();
            for kv in &basis {
                let z = combine(self.b.tot_dim(k), kv, &cell.reps);
                let lead = combine(self.b.dim(a, b), kv, &cell.leads);
                let target = (b + 1).checked_sub(s).map(|tq| (a + s, tq)).filter(|&(x, y)| self.b.in_grid(x, y));
                let z = match target {
                    Some((ta, tb)) => {
                        let y = self.cell_slice(k + 1, ta, &self.d[k].mul_vec(&z));
                        let (c, u, w) = self.classify(s, ta, tb, &y)?;
                        if !is_zero_vec(&c) {
                            return Err(internal(format!("kernel class at ({a},{b}) has nonzero d_{s}")));
                        }
                        vec_sub(&vec_sub(&z, &w), &u)
                    }
                    None => z,
                };
                let dz = self.d[k].mul_vec(&z);
                let lower = self.b.filtration_offset(k + 1, a + s + 1);
                if !is_zero_vec(&dz[..lower]) {
                    return Err(internal(format!("extended zig-zag at ({a},{b}) is too short")));
                }
                reps.push(z);
                leads.push(lead);
            }
            let basis_m = Matrix::from_columns(n, &basis);
            next.insert(
                (a, b),
                LevelCell {
                    reps,
                    leads,
                    classifier: None,
                    basis_in_prev: Some(basis_m),
                    dout: Matrix::zeros(0, 0),
                    corrections: Vec::new(),
                },
            );
        }
        self.levels.push(next);
        Ok(())
    }
}

/// Pages by iterated homology: `E_1 = H_∂̄`, then `E_{s+1} = H(E_s, d_s)`
/// with `d_s` computed on explicitly lifted zig-zags.
pub fn pages_iterative(b: &Bicomplex) -> Result<PageStack, SpecSeqError> {
    let (pmax, qmax) = b.shape();
    let top = b.top_degree();
    let mut e =
        Engine { b, d: (0..=top).map(|k| b.tot_matrix(k, TotDifferential::Full)).collect(), levels: Vec::new() };
    let mut first = BTreeMap::new();
    for (p, q) in b.cells() {
        let kernel = Subspace::kernel(b.delbar(p, q));
        let image = if q == 0 { Subspace::zero(b.dim(p, q)) } else { Subspace::image(b.delbar(p, q - 1)) };
        let cl = QuotientClassifier::new(&kernel, image)?;
        let leads = cl.representatives();
        let reps = leads.iter().map(|l| e.cell_embed(p + q, p, l)).collect();
        first.insert(
            (p, q),
            LevelCell {
                reps,
                leads,
                classifier: Some(cl),
                basis_in_prev: None,
                dout: Matrix::zeros(0, 0),
                corrections: Vec::new(),
            },
        );
    }
    e.levels.push(first);
    let r_max = pmax + 1;
    for s in 1..=r_max {
        e.fill_differentials(s)?;
        if s < r_max {
            e.next_level(s)?;
        }
    }
    let mut pages = Vec::new();
    let mut zero = Page { r: 0, cells: BTreeMap::new(), dr: BTreeMap::new(), classifiers: None };
    for (p, q) in b.cells() {
        let n = b.dim(p, q);
        let reps = (0..n)
            .map(|i| {
                let mut v = vec![Scalar::zero(); n];
                v[i] = Scalar::one();
                e.cell_embed(p + q, p, &v)
            })
            .collect();
        zero.cells.insert((p, q), CellPage { dim: n, reps });
        zero.dr.insert((p, q), if q < qmax { b.delbar(p, q).clone() } else { Matrix::zeros(0, n) });
    }
    pages.push(zero);
    for (s, level) in e.levels.iter().enumerate() {
        let mut page = Page { r: s + 1, cells: BTreeMap::new(), dr: BTreeMap::new(), classifiers: None };
        for (&key, cell) in level {
            page.cells.insert(key, CellPage { dim: cell.reps.len(), reps: cell.reps.clone() });
            page.dr.insert(key, cell.dout.clone());
        }
        pages.push(page);
    }
    let degeneracy = degeneracy_step(&pages)?;
    let stack = PageStack { shape: (pmax, qmax), pages, degeneracy_step: degeneracy };
    check_page_invariants(&stack)?;
    Ok(stack)
}
