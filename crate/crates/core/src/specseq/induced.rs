use std::collections::BTreeMap;

use super::{direct::pages_direct_with, PageStack, SpecSeqError};
use crate::algebra::{tot_inclusion, Bicomplex, TotDifferential};
use crate::exactalg::Matrix;

#[derive(Clone, Debug)]
pub struct PageMaps {
    pub sub: PageStack,
    pub ambient: PageStack,
    /// Per page, the induced map on each cell.
    pub maps: Vec<BTreeMap<(usize, usize), Matrix>>,
    pub injective: Vec<bool>,
}

/// Maps `E_r(sub) → E_r(ambient)` induced by an inclusion of model bicomplexes.
pub fn induced_page_maps(sub: &Bicomplex, ambient: &Bicomplex, parallel: bool) -> Result<PageMaps, SpecSeqError> {
    let cells = sub.inclusion_into(ambient)?;
    for (p, q) in sub.cells() {
        let i = &cells[&(p, q)];
        let (pmax, qmax) = sub.shape();
        if p < pmax && ambient.del(p, q).mul(i) != cells[&(p + 1, q)].mul(sub.del(p, q)) {
            return Err(SpecSeqError::Internal(format!("inclusion does not commute with ∂ at ({p},{q})")));
        }
        if q < qmax && ambient.delbar(p, q).mul(i) != cells[&(p, q + 1)].mul(sub.delbar(p, q)) {
            return Err(SpecSeqError::Internal(format!("inclusion does not commute with ∂̄ at ({p},{q})")));
        }
    }
    let tot = tot_inclusion(sub, ambient)?;
    let s = pages_direct_with(sub, None, parallel)?;
    let a = pages_direct_with(ambient, None, parallel)?;
    let mut maps = Vec::new();
    let mut injective = Vec::new();
    for (ps, pa) in s.pages.iter().zip(&a.pages) {
        let mut page_maps = BTreeMap::new();
        let mut inj = true;
        for (&(p, q), cell) in &ps.cells {
            let cols = cell
                .reps
                .iter()
                .map(|x| {
                    pa.classify(p, q, &tot[p + q].mul_vec(x))
                        .ok_or_else(|| SpecSeqError::Internal(format!("image of a class at ({p},{q}) is not a cycle")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let m = if cols.is_empty() {
                Matrix::zeros(pa.dim(p, q), 0)
            } else {
                Matrix::from_columns(pa.dim(p, q), &cols)
            };
            inj &= m.rank() == cell.dim;
            page_maps.insert((p, q), m);
        }
        maps.push(page_maps);
        injective.push(inj);
    }
    Ok(PageMaps { sub: s, ambient: a, maps, injective })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PagePd {
    pub r: usize,
    /// `dim E_r^{p,q} = dim E_r^{P-p,Q-q}` for every cell.
    pub dual_dims: bool,
    /// Bottom and top cells one-dimensional and every pairing into the top nondegenerate.
    pub pairing: bool,
}

/// PD-type check of every page, with the product induced on representatives.
pub fn page_pd_check(b: &Bicomplex, stack: &PageStack) -> Result<Vec<PagePd>, SpecSeqError> {
    // the volume cell; a sub-algebra on a larger grid stops short of the corner
    let pmax = b.cells().filter(|&(p, q)| b.dim(p, q) > 0).map(|(p, _)| p).max().unwrap_or(0);
    let qmax = b.cells().filter(|&(p, q)| b.dim(p, q) > 0).map(|(_, q)| q).max().unwrap_or(0);
    let n = pmax + qmax;
    let tot = b.tot(TotDifferential::Full);
    let mut out = Vec::new();
    for page in &stack.pages {
        let inside = |p: usize, q: usize| p <= pmax && q <= qmax;
        let dual_dims =
            page.cells.iter().all(
                |(&(p, q), c)| {
                    if inside(p, q) {
                        c.dim == page.dim(pmax - p, qmax - q)
                    } else {
                        c.dim == 0
                    }
                },
            );
        let mut pairing = page.dim(0, 0) == 1 && page.dim(pmax, qmax) == 1;
        if pairing {
            for (&(p, q), cell) in page.cells.iter().filter(|(&(p, q), _)| inside(p, q)) {
                let partner = &page.cells[&(pmax - p, qmax - q)];
                if partner.dim != cell.dim {
                    pairing = false;
                    break;
                }
                let mut m = Matrix::zeros(cell.dim, partner.dim);
                for (i, x) in cell.reps.iter().enumerate() {
                    for (j, y) in partner.reps.iter().enumerate() {
                        let xy = tot.product(p + q, x, n - p - q, y)?;
                        let c = page.classify(pmax, qmax, &xy).ok_or_else(|| {
                            SpecSeqError::Internal(format!(
                                "product of classes at ({p},{q}) is not a cycle on page {}",
                                page.r
                            ))
                        })?;
                        m[(i, j)] = c[0].clone();
                    }
                }
                if !m.is_invertible() {
                    pairing = false;
                    break;
                }
            }
        }
        out.push(PagePd { r: page.r, dual_dims, pairing });
    }
    Ok(out)
}
