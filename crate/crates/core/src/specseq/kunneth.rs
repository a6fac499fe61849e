use std::collections::HashMap;

use super::SpecSeqError;
use crate::algebra::{Bicomplex, TotDifferential};
use crate::exactalg::{Matrix, Scalar};
use crate::hodge::cohomology_dims;

type Key = (usize, usize, usize, usize, usize, usize);

/// Tensor product bicomplex with `∂(x⊗y) = ∂x⊗y + (-1)^{|x|} x⊗∂y`, and likewise for `∂̄`.
pub fn tensor(a: &Bicomplex, b: &Bicomplex) -> Result<Bicomplex, SpecSeqError> {
    let ((pa, qa), (pb, qb)) = (a.shape(), b.shape());
    let (pmax, qmax) = (pa + pb, qa + qb);
    let mut bases: Vec<Vec<Vec<Key>>> = vec![vec![Vec::new(); qmax + 1]; pmax + 1];
    for p1 in 0..=pa {
        for q1 in 0..=qa {
            for p2 in 0..=pb {
                for q2 in 0..=qb {
                    for i in 0..a.dim(p1, q1) {
                        for j in 0..b.dim(p2, q2) {
                            bases[p1 + p2][q1 + q2].push((p1, q1, i, p2, q2, j));
                        }
                    }
                }
            }
        }
    }
    for row in bases.iter_mut() {
        for cell in row.iter_mut() {
            cell.sort();
        }
    }
    let index: HashMap<Key, usize> =
        bases.iter().flatten().flat_map(|cell| cell.iter().enumerate().map(|(i, &k)| (k, i))).collect();
    let dims: Vec<Vec<usize>> = bases.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
    let build = |p: usize, q: usize, holo: bool| {
        let (tp, tq) = if holo { (p + 1, q) } else { (p, q + 1) };
        let mut m = Matrix::zeros(dims[tp][tq], dims[p][q]);
        for (col, &(p1, q1, i, p2, q2, j)) in bases[p][q].iter().enumerate() {
            let sign = if (p1 + q1) % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            let (left_ok, right_ok) = if holo { (p1 < pa, p2 < pb) } else { (q1 < qa, q2 < qb) };
            if left_ok {
                let da = if holo { a.del(p1, q1) } else { a.delbar(p1, q1) };
                let (np1, nq1) = if holo { (p1 + 1, q1) } else { (p1, q1 + 1) };
                for r in 0..da.rows() {
                    let v = &da[(r, i)];
                    if !v.is_zero() {
                        m[(index[&(np1, nq1, r, p2, q2, j)], col)] += v;
                    }
                }
            }
            if right_ok {
                let db = if holo { b.del(p2, q2) } else { b.delbar(p2, q2) };
                let (np2, nq2) = if holo { (p2 + 1, q2) } else { (p2, q2 + 1) };
                for r in 0..db.rows() {
                    let v = &db[(r, j)];
                    if !v.is_zero() {
                        m[(index[&(p1, q1, i, np2, nq2, r)], col)] += &(v * &sign);
                    }
                }
            }
        }
        m
    };
    Ok(Bicomplex::from_parts(pmax, qmax, &dims, |p, q| build(p, q, true), |p, q| build(p, q, false))?)
}

#[derive(Clone, Debug)]
pub struct KunnethReport {
    pub product: Bicomplex,
    pub dims: Vec<usize>,
    pub expected: Vec<usize>,
    pub ok: bool,
}

/// Tensor product with the check `dim H^k(a ⊗ b) = sum_{i+j=k} dim H^i(a) dim H^j(b)`.
pub fn kunneth(a: &Bicomplex, b: &Bicomplex) -> Result<KunnethReport, SpecSeqError> {
    let product = tensor(a, b)?;
    let ha = cohomology_dims(&a.tot(TotDifferential::Full));
    let hb = cohomology_dims(&b.tot(TotDifferential::Full));
    let dims = cohomology_dims(&product.tot(TotDifferential::Full));
    let mut expected = vec![0; dims.len()];
    for (i, x) in ha.iter().enumerate() {
        for (j, y) in hb.iter().enumerate() {
            expected[i + j] += x * y;
        }
    }
    let ok = dims == expected;
    Ok(KunnethReport { product, dims, expected, ok })
}
