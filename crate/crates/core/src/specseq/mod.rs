//! Pages of the column-filtration spectral sequence of a finite bicomplex,
//! by two independent algorithms, plus degeneracy, Frölicher identities,
//! Künneth products and maps induced on pages.

pub(crate) mod direct;
mod induced;
mod iterative;
mod kunneth;

use std::collections::BTreeMap;

pub use direct::{pages_direct, pages_direct_with};
pub use induced::{induced_page_maps, page_pd_check, PageMaps, PagePd};
pub use iterative::pages_iterative;
pub use kunneth::{kunneth, tensor, KunnethReport};

use crate::algebra::ModelError;
use crate::exactalg::{ExactAlgError, Matrix, QuotientClassifier, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpecSeqError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linear(#[from] ExactAlgError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// One cell of a page: its dimension and representatives in `Tot^{p+q}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellPage {
    pub dim: usize,
    pub reps: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub cells: BTreeMap<(usize, usize), CellPage>,
    /// `d_r` out of each cell, towards `(p + r, q - r + 1)`; zero-row matrices leave the grid.
    pub dr: BTreeMap<(usize, usize), Matrix>,
    pub(crate) classifiers: Option<BTreeMap<(usize, usize), QuotientClassifier>>,
}

impl Page {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.cells.get(&(p, q)).map_or(0, |c| c.dim)
    }

    pub fn total_dim(&self, k: usize) -> usize {
        self.cells.iter().filter(|((p, q), _)| p + q == k).map(|(_, c)| c.dim).sum()
    }

    pub fn dims(&self) -> BTreeMap<(usize, usize), usize> {
        self.cells.iter().map(|(&k, c)| (k, c.dim)).collect()
    }

    pub fn dr_is_zero(&self) -> bool {
        self.dr.values().all(Matrix::is_zero)
    }

    pub fn dr_rank(&self, p: usize, q: usize) -> usize {
        self.dr.get(&(p, q)).map_or(0, Matrix::rank)
    }

    pub fn total_dr_rank(&self) -> usize {
        self.dr.values().map(Matrix::rank).sum()
    }

    /// Coordinates in `E_r^{p,q}` of a vector of `Z_r^{p,q}` (direct pages only).
    pub fn classify(&self, p: usize, q: usize, v: &[Scalar]) -> Option<Vec<Scalar>> {
        self.classifiers.as_ref()?.get(&(p, q))?.classify(v)
    }

    pub fn target(&self, p: usize, q: usize) -> Option<(usize, usize)> {
        let tq = (q + 1).checked_sub(self.r)?;
        Some((p + self.r, tq))
    }
}

#[derive(Clone, Debug)]
pub struct PageStack {
    pub shape: (usize, usize),
    pub pages: Vec<Page>,
    pub degeneracy_step: usize,
}

impl PageStack {
    pub fn page(&self, r: usize) -> &Page {
        &self.pages[r.min(self.pages.len() - 1)]
    }

    /// The last page, which equals `E_∞`.
    pub fn infinity(&self) -> &Page {
        self.pages.last().expect("at least one page")
    }

    pub fn r_max(&self) -> usize {
        self.pages.len() - 1
    }

    pub fn dims_table(&self) -> Vec<BTreeMap<(usize, usize), usize>> {
        self.pages.iter().map(Page::dims).collect()
    }
}

/// `min { r ≥ 1 : d_s = 0 for all s ≥ r }`, confirmed by dimension stabilization.
pub fn degeneracy_step(pages: &[Page]) -> Result<usize, SpecSeqError> {
    let mut r = 1;
    for (s, page) in pages.iter().enumerate().skip(1) {
        let zero = page.dr_is_zero();
        if let Some(next) = pages.get(s + 1) {
            let stable = (0..=page.cells.keys().map(|(p, q)| p + q).max().unwrap_or(0))
                .all(|k| page.total_dim(k) == next.total_dim(k));
            if zero != stable {
                return Err(SpecSeqError::Internal(format!(
                    "page {s}: d_s vanishing and dimension stability disagree"
                )));
            }
        }
        if !zero {
            r = s + 1;
        }
    }
    Ok(r)
}

/// Frölicher identity `sum_{p+q=k} dim E_∞^{p,q} = b_k` for every `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrolicherVerdict {
    pub rows: Vec<(usize, usize, usize)>,
    pub ok: bool,
}

pub fn frolicher_check(stack: &PageStack, betti: &[usize]) -> FrolicherVerdict {
    let inf = stack.infinity();
    let rows: Vec<(usize, usize, usize)> = betti.iter().enumerate().map(|(k, &b)| (k, inf.total_dim(k), b)).collect();
    let ok = rows.iter().all(|&(_, e, b)| e == b);
    FrolicherVerdict { rows, ok }
}

/// Checks the page invariants: `d_r ∘ d_r = 0` and
/// `dim E_{r+1} = dim ker d_r - rank(incoming d_r)` cell by cell.
pub fn check_page_invariants(stack: &PageStack) -> Result<(), SpecSeqError> {
    for w in stack.pages.windows(2) {
        let (page, next) = (&w[0], &w[1]);
        for (&(p, q), cell) in &page.cells {
            let out = &page.dr[&(p, q)];
            if let Some(t) = page.target(p, q) {
                if let Some(m2) = page.dr.get(&t) {
                    if m2.rows() > 0 && out.rows() > 0 && !m2.mul(out).is_zero() {
                        return Err(SpecSeqError::Internal(format!("d_{0} ∘ d_{0} ≠ 0 at ({p},{q})", page.r)));
                    }
                }
            }
            let source = if page.r == 0 {
                q.checked_sub(1).map(|sq| (p, sq))
            } else {
                p.checked_sub(page.r).map(|sp| (sp, q + page.r - 1))
            };
            let incoming = source.and_then(|s| page.dr.get(&s)).map_or(0, Matrix::rank);
            let kernel = cell.dim - out.rank();
            if next.dim(p, q) != kernel - incoming {
                return Err(SpecSeqError::Internal(format!("page {} dimension mismatch at ({p},{q})", page.r + 1)));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
