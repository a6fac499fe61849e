use std::collections::BTreeMap;

use itertools::Itertools;

use super::{
    build_b_corr, build_b_mmtt, build_full, corr_twist, mmtt_twist, on_lattice, require, resolve_characters,
    CharacterResolution, SolvError,
};
use crate::algebra::{
    assemble_bicomplex, Bicomplex, CharExpr, GenType, GradedComplex, ModelSpec, Monomial, Role, TotDifferential,
};
use crate::exactalg::{Matrix, Scalar};
use crate::hodge::{check_pd_type, cohomology_dims};
use crate::specseq::{induced_page_maps, kunneth, pages_direct_with, PageStack};

/// Cohomology of the Koszul complex `(⋀⟨x_1..x_n⟩, w ∧ ·)`.
pub fn koszul_cohomology(w: &[Scalar]) -> Vec<usize> {
    let n = w.len();
    let bases: Vec<Vec<u64>> =
        (0..=n).map(|k| (0..n).combinations(k).map(|s| s.iter().fold(0u64, |a, &i| a | 1 << i)).collect()).collect();
    let index: Vec<BTreeMap<u64, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, &m)| (m, i)).collect()).collect();
    let mut d = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let rows = if k < n { bases[k + 1].len() } else { 0 };
        let mut m = Matrix::zeros(rows, bases[k].len());
        if k < n {
            for (col, &mask) in bases[k].iter().enumerate() {
                for (i, c) in w.iter().enumerate() {
                    if c.is_zero() || mask & 1 << i != 0 {
                        continue;
                    }
                    let before = (mask & ((1u64 << i) - 1)).count_ones();
                    let v = if before % 2 == 0 { c.clone() } else { -c };
                    m[(index[k + 1][&(mask | 1 << i)], col)] = v;
                }
            }
        }
        d.push(m);
    }
    let dims = bases.iter().map(Vec::len).collect();
    let complex = GradedComplex::from_parts(dims, d).expect("Koszul complex has consistent shapes");
    cohomology_dims(&complex)
}

/// One block `λμ⁻¹ ⋀ℂⁿ ⊗ A_μ` of `D` and the Koszul complex of its twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulBlock {
    pub weight: CharExpr,
    pub prefactor: CharExpr,
    /// `None` if the twist is not a form on the abelian factor alone.
    pub cohomology: Option<Vec<usize>>,
    pub exact: bool,
}

#[derive(Clone, Debug)]
pub struct CdSplit {
    pub b: Bicomplex,
    pub c: Bicomplex,
    pub d: Bicomplex,
    pub dims_add_up: bool,
    /// Every block of `C` carries the trivial twist, so `C` sits in the untwisted algebra.
    pub c_untwisted: bool,
    pub e2_d_zero: bool,
    pub e2_b_equals_c: bool,
    pub koszul: Vec<KoszulBlock>,
    pub stack_b: PageStack,
    pub stack_c: PageStack,
    pub stack_d: PageStack,
}

impl CdSplit {
    pub fn ok(&self) -> bool {
        self.dims_add_up
            && self.c_untwisted
            && self.e2_d_zero
            && self.e2_b_equals_c
            && self.koszul.iter().all(|k| k.exact)
    }
}

fn koszul_block(model: &ModelSpec, weight: CharExpr, prefactor: CharExpr) -> KoszulBlock {
    let w = model.weight(&prefactor);
    let abelian: Vec<usize> = (0..model.n_generators())
        .filter(|&g| model.generators[g].kind == GenType::Holomorphic && model.generators[g].role == Role::Abelian)
        .collect();
    let supported = w.0.iter().enumerate().all(|(g, c)| c.is_zero() || abelian.contains(&g));
    let cohomology = supported.then(|| koszul_cohomology(&abelian.iter().map(|&g| w.0[g].clone()).collect::<Vec<_>>()));
    let exact = cohomology.as_ref().is_some_and(|h| h.iter().all(|&x| x == 0));
    KoszulBlock { weight, prefactor, cohomology, exact }
}

/// Splits `B` into `C` (blocks with `μ` trivial on the lattice) and `D`
/// (the rest, twisted by a nontrivial holomorphic character) and checks
/// that `D` dies at `E₂`.
pub fn split_cd(model: &ModelSpec, res: &CharacterResolution, parallel: bool) -> Result<CdSplit, SolvError> {
    let b = build_b_corr(model, res)?;
    let in_c = |m: Monomial| on_lattice(model, &model.action_char(m));
    let c = assemble_bicomplex(model, |m| corr_twist(model, res, m).filter(|_| in_c(m)))?;
    let d = assemble_bicomplex(model, |m| corr_twist(model, res, m).filter(|_| !in_c(m)))?;
    let dims_add_up = b.cells().all(|(p, q)| b.dim(p, q) == c.dim(p, q) + d.dim(p, q));
    let c_untwisted = c.cells().all(|(p, q)| c.elements(p, q).unwrap_or(&[]).iter().all(|e| e.prefactor.is_trivial()));

    let mut d_blocks: BTreeMap<CharExpr, CharExpr> = BTreeMap::new();
    for (p, q) in d.cells() {
        for e in d.elements(p, q).unwrap_or(&[]) {
            d_blocks.entry(model.action_char(e.monomial)).or_insert_with(|| e.prefactor.clone());
        }
    }
    let koszul = d_blocks.into_iter().map(|(mu, pre)| koszul_block(model, mu, pre)).collect();

    let stack_b = pages_direct_with(&b, None, parallel)?;
    let stack_c = pages_direct_with(&c, None, parallel)?;
    let stack_d = pages_direct_with(&d, None, parallel)?;
    let e2_d_zero = stack_d.page(2).cells.values().all(|cell| cell.dim == 0);
    let e2_b_equals_c = b.cells().all(|(p, q)| stack_b.page(2).dim(p, q) == stack_c.page(2).dim(p, q));
    Ok(CdSplit { b, c, d, dims_add_up, c_untwisted, e2_d_zero, e2_b_equals_c, koszul, stack_b, stack_c, stack_d })
}

#[derive(Clone, Debug)]
pub struct SpsReport {
    /// Degeneracy step of the untwisted algebra `⋀(ℂⁿ ⊕ n)*_C`.
    pub r_nil: usize,
    pub r_g: usize,
    pub bound_ok: bool,
    pub split: CdSplit,
    /// Injectivity of `E_r(C) → E_r(⋀(ℂⁿ ⊕ n)*_C)` page by page; empty if `C` is twisted.
    pub injective: Vec<bool>,
    pub c_pd_type: bool,
    pub ambient: PageStack,
}

impl SpsReport {
    pub fn ok(&self) -> bool {
        self.bound_ok
            && self.split.ok()
            && !self.injective.is_empty()
            && self.injective.iter().all(|&x| x)
            && self.c_pd_type
    }
}

/// Degeneracy bound `r(B) ≤ max(2, r(⋀(ℂⁿ ⊕ n)*_C))` for a semi-direct model,
/// with the split and page-injection evidence behind it.
pub fn pipeline_sps(model: &ModelSpec, parallel: bool) -> Result<SpsReport, SolvError> {
    require(model, model.flags.assumption12, "assumption12")?;
    let res = resolve_characters(model)?;
    let split = split_cd(model, &res, parallel)?;
    let full = build_full(model)?;
    let (ambient, injective) = if split.c_untwisted {
        let maps = induced_page_maps(&split.c, &full, parallel)?;
        (maps.ambient, maps.injective)
    } else {
        (pages_direct_with(&full, None, parallel)?, Vec::new())
    };
    let r_nil = ambient.degeneracy_step;
    let r_g = split.stack_b.degeneracy_step;
    let c_pd_type = check_pd_type(&split.c.tot(TotDifferential::Full)).is_pd;
    Ok(SpsReport { r_nil, r_g, bound_ok: r_g <= r_nil.max(2), split, injective, c_pd_type, ambient })
}

/// One block `(ν ⋀g₊*) ⊗ ((1/ν̄) V_ν̄)` of the complex parallelizable model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosBlock {
    /// Action character `ᾱ_I` of the antiholomorphic monomials in the block.
    pub anti_char: CharExpr,
    pub del_cohomology: Vec<usize>,
    pub delbar_cohomology: Vec<usize>,
    pub kunneth_ok: bool,
    /// `E₂` of the tensor product equals the product of the two cohomologies.
    pub e2_ok: bool,
}

#[derive(Clone, Debug)]
pub struct CosReport {
    pub bicomplex: Bicomplex,
    pub stack: PageStack,
    pub r: usize,
    pub r_ok: bool,
    pub blocks: Vec<CosBlock>,
    /// Cell dimensions of `B` equal the sum of the block tensor products.
    pub splitting_ok: bool,
    pub e2_expected: BTreeMap<(usize, usize), usize>,
    pub e2_formula_ok: bool,
}

impl CosReport {
    pub fn ok(&self) -> bool {
        self.r_ok && self.splitting_ok && self.e2_formula_ok && self.blocks.iter().all(|b| b.kunneth_ok && b.e2_ok)
    }
}

/// Degeneracy at `E₂` for a complex parallelizable model, with `E₂` checked
/// against the block tensor formula `⊕ H_∂(ν⋀g₊*) ⊗ H_∂̄((1/ν̄)V_ν̄)`.
pub fn pipeline_cos(model: &ModelSpec, parallel: bool) -> Result<CosReport, SolvError> {
    let bicomplex = build_b_mmtt(model)?;
    let stack = pages_direct_with(&bicomplex, None, parallel)?;
    let holo = model.mask_of(|g| g.kind == GenType::Holomorphic);
    let anti = model.mask_of(|g| g.kind == GenType::Antiholomorphic);
    let (_, qmax) = model.shape();

    let mut keys: Vec<CharExpr> = Vec::new();
    for q in 0..=qmax {
        for m in model.monomials(0, q) {
            if mmtt_twist(model, anti, m).is_some() {
                keys.push(model.action_char(m));
            }
        }
    }
    let keys: Vec<CharExpr> = keys.into_iter().sorted().dedup().collect();

    let mut blocks = Vec::new();
    let mut e2_expected: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut cell_dims: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for a in keys {
        let nu = model.conj_char(&a).inverse();
        let x = assemble_bicomplex(model, |m| (m.0 & !holo == 0).then(|| nu.clone()))?;
        let y = assemble_bicomplex(model, |m| (m.0 & !anti == 0 && model.action_char(m) == a).then(|| a.clone()))?;
        let hx = cohomology_dims(&x.tot(TotDifferential::Full));
        let hy = cohomology_dims(&y.tot(TotDifferential::Full));
        let report = kunneth(&x, &y)?;
        let block_stack = pages_direct_with(&report.product, Some(2), parallel)?;
        let mut e2_ok = true;
        for (p, &h1) in hx.iter().enumerate() {
            for (q, &h2) in hy.iter().enumerate() {
                *e2_expected.entry((p, q)).or_default() += h1 * h2;
                e2_ok &= block_stack.page(2).dim(p, q) == h1 * h2;
            }
        }
        for (p, q) in report.product.cells() {
            *cell_dims.entry((p, q)).or_default() += report.product.dim(p, q);
        }
        blocks.push(CosBlock { anti_char: a, del_cohomology: hx, delbar_cohomology: hy, kunneth_ok: report.ok, e2_ok });
    }
    let splitting_ok =
        bicomplex.cells().all(|(p, q)| cell_dims.get(&(p, q)).copied().unwrap_or(0) == bicomplex.dim(p, q));
    let e2_formula_ok =
        bicomplex.cells().all(|(p, q)| stack.page(2).dim(p, q) == e2_expected.get(&(p, q)).copied().unwrap_or(0));
    let r = stack.degeneracy_step;
    Ok(CosReport { bicomplex, stack, r, r_ok: r <= 2, blocks, splitting_ok, e2_expected, e2_formula_ok })
}
