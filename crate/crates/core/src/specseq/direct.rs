use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use super::{check_page_invariants, degeneracy_step, CellPage, Page, PageStack, SpecSeqError};
use crate::algebra::{Bicomplex, TotDifferential};
use crate::exactalg::{Matrix, QuotientClassifier, Subspace};

/// Runs `f` over `items`, on the rayon pool when `parallel` is set; order is preserved.
pub(crate) fn map_cells<T: Sync, U: Send>(parallel: bool, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    if parallel {
        items.par_iter().map(f).collect()
    } else {
        items.iter().map(f).collect()
    }
}

struct Filtration<'a> {
    b: &'a Bicomplex,
    d: Vec<Matrix>,
    pmax: i64,
}

impl Filtration<'_> {
    /// First coordinate of `F^p Tot^k`.
    fn offset(&self, k: usize, p: i64) -> usize {
        self.b.filtration_offset(k, p.clamp(0, self.pmax + 1) as usize)
    }

    /// Cache key of `Z_r^p`: the clamped filtration indices of source and target.
    fn key(&self, k: usize, p: i64, r: i64) -> (usize, i64, i64) {
        let from = p.clamp(0, self.pmax + 1);
        let to = if r <= 0 { from } else { (p + r).clamp(0, self.pmax + 1) };
        (k, from, to)
    }

    /// `{ x ∈ F^from Tot^k : dx ∈ F^to }`; `Z_r^p` is `from = p, to = p + r`,
    /// and `r ≤ 0` gives `F^p`.
    fn z(&self, k: usize, from: i64, to: i64) -> Subspace {
        let n = self.b.tot_dim(k);
        let off = self.offset(k, from);
        if to <= from {
            return Subspace::coordinate(n, off..n);
        }
        let rows = self.offset(k + 1, to);
        let m = self.d[k].submatrix(0..rows, off..n);
        Subspace::kernel(&m).embed(n, off)
    }
}

/// Pages `E_0 .. E_{pmax+1}` from the filtration formulas
/// `E_r^{p,q} = Z_r^{p,q} / (Z_{r-1}^{p+1,q-1} + d Z_{r-1}^{p-r+1,q+r-2})`.
pub fn pages_direct(b: &Bicomplex) -> Result<PageStack, SpecSeqError> {
    pages_direct_with(b, None, false)
}

pub fn pages_direct_with(b: &Bicomplex, r_max: Option<usize>, parallel: bool) -> Result<PageStack, SpecSeqError> {
    let (pmax, qmax) = b.shape();
    let top = b.top_degree();
    let f = Filtration { b, d: (0..=top).map(|k| b.tot_matrix(k, TotDifferential::Full)).collect(), pmax: pmax as i64 };
    let r_max = r_max.unwrap_or(pmax + 1).max(pmax + 1);
    let cells: Vec<(usize, usize)> = b.cells().collect();
    let mut cache: HashMap<(usize, i64, i64), Subspace> = HashMap::new();
    let mut pages = Vec::new();
    for r in 0..=r_max as i64 {
        let mut wanted: Vec<(usize, i64, i64)> = Vec::new();
        for &(p, q) in &cells {
            let (k, p) = (p + q, p as i64);
            let mut keys = vec![(k, p, r), (k, p + 1, r - 1)];
            if k > 0 {
                keys.push((k - 1, p - r + 1, r - 1));
            }
            for (kk, pp, rr) in keys {
                let key = f.key(kk, pp, rr);
                if !cache.contains_key(&key) && !wanted.contains(&key) {
                    wanted.push(key);
                }
            }
        }
        let computed = map_cells(parallel, &wanted, |&(k, p, r)| f.z(k, p, r));
        cache.extend(wanted.into_iter().zip(computed));
        let get = |k: usize, p: i64, r: i64| &cache[&f.key(k, p, r)];
        let classifiers = map_cells(parallel, &cells, |&(p, q)| {
            let (k, pi) = (p + q, p as i64);
            let mut denom = get(k, pi + 1, r - 1).clone();
            if k > 0 {
                let src = get(k - 1, pi - r + 1, r - 1);
                denom = denom.sum(&src.map(&f.d[k - 1])?)?;
            }
            QuotientClassifier::new(get(k, pi, r), denom)
        });
        let classifiers: BTreeMap<(usize, usize), QuotientClassifier> =
            cells.iter().copied().zip(classifiers.into_iter().collect::<Result<Vec<_>, _>>()?).collect();
        let ru = r as usize;
        let mut dr = BTreeMap::new();
        let mut page_cells = BTreeMap::new();
        for &(p, q) in &cells {
            let cl = &classifiers[&(p, q)];
            let reps = cl.representatives();
            let k = p + q;
            let target = (q + 1).checked_sub(ru).map(|tq| (p + ru, tq)).filter(|&(tp, tq)| tp <= pmax && tq <= qmax);
            let m = match target {
                Some(t) => {
                    let tcl = &classifiers[&t];
                    let cols = reps
                        .iter()
                        .map(|x| {
                            tcl.classify(&f.d[k].mul_vec(x)).ok_or_else(|| {
                                SpecSeqError::Internal(format!("d_{r} of a class at ({p},{q}) is not a cycle"))
                            })
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    Matrix::from_columns(tcl.dim(), &cols)
                }
                // past the grid F^{p+r} Tot^{k+1} is zero, so d_r vanishes
                None => Matrix::zeros(0, cl.dim()),
            };
            dr.insert((p, q), m);
            page_cells.insert((p, q), CellPage { dim: cl.dim(), reps });
        }
        pages.push(Page { r: ru, cells: page_cells, dr, classifiers: Some(classifiers) });
    }
    let degeneracy = degeneracy_step(&pages)?;
    let stack = PageStack { shape: (pmax, qmax), pages, degeneracy_step: degeneracy };
    check_page_invariants(&stack)?;
    Ok(stack)
}
