//! Bundled models with expected numbers, each tagged with where it comes from.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{Bicomplex, ModelSpec};
use crate::cli::{parse_model, ModelFileError};
use crate::solvmodel::{
    betti_numbers, dolbeault_dims, euler_checks, manifold_bicomplex, pipeline_cos, pipeline_sps, Construction,
    SolvError,
};
use crate::specseq::{pages_direct_with, PageStack};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Printed in the literature the model is taken from.
    Literature(&'static str),
    /// Follows from a classical formula or a short hand computation.
    ClosedForm(&'static str),
    /// Computed by this engine (both page algorithms agreeing) and frozen.
    Recomputed(&'static str),
}

impl Origin {
    pub fn kind(&self) -> &'static str {
        match self {
            Origin::Literature(_) => "literature",
            Origin::ClosedForm(_) => "closed-form",
            Origin::Recomputed(_) => "recomputed",
        }
    }

    pub fn note(&self) -> &'static str {
        match self {
            Origin::Literature(n) | Origin::ClosedForm(n) | Origin::Recomputed(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    /// The complex parallelizable pipeline passes.
    Cos,
    /// The semi-direct pipeline passes.
    Sps,
    /// Euler characteristic and duality verdicts.
    Euler,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Quantity {
    Dolbeault(usize, usize),
    Betti(usize),
    /// Total dimension of `E₁` in degree `k`.
    E1Total(usize),
    /// Dimension of a cell of the model bicomplex itself.
    BDim(usize, usize),
    Rstep,
    Verdict(Check),
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Dolbeault(p, q) => write!(f, "h{p}{q}"),
            Quantity::Betti(k) => write!(f, "b{k}"),
            Quantity::E1Total(k) => write!(f, "e1_total{k}"),
            Quantity::BDim(p, q) => write!(f, "dimB{p}{q}"),
            Quantity::Rstep => write!(f, "rstep"),
            Quantity::Verdict(c) => write!(f, "verdict_{}", format!("{c:?}").to_lowercase()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Exactly(usize),
    AtLeast(usize),
    Pass,
}

impl Value {
    fn accepts(self, computed: usize) -> bool {
        match self {
            Value::Exactly(v) => computed == v,
            Value::AtLeast(v) => computed >= v,
            Value::Pass => computed == 1,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exactly(v) => write!(f, "{v}"),
            Value::AtLeast(v) => write!(f, ">={v}"),
            Value::Pass => write!(f, "pass"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub quantity: Quantity,
    pub value: Value,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub text: &'static str,
    pub expected: Vec<Expected>,
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("unknown corpus entry `{0}`")]
    Unknown(String),
    #[error(transparent)]
    Parse(#[from] ModelFileError),
    #[error(transparent)]
    Solv(#[from] SolvError),
    #[error(transparent)]
    SpecSeq(#[from] crate::specseq::SpecSeqError),
}

const FILES: [(&str, &str); 8] = [
    ("torus1", include_str!("../../corpus/torus1.model")),
    ("torus3", include_str!("../../corpus/torus3.model")),
    ("iwasawa", include_str!("../../corpus/iwasawa.model")),
    ("example1-b2pi", include_str!("../../corpus/example1-b2pi.model")),
    ("example1-b1", include_str!("../../corpus/example1-b1.model")),
    ("example2", include_str!("../../corpus/example2.model")),
    ("example2-nilfactor", include_str!("../../corpus/example2-nilfactor.model")),
    ("nakamura", include_str!("../../corpus/nakamura.model")),
];

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn exact(quantity: Quantity, v: usize, origin: Origin) -> Expected {
    Expected { quantity, value: Value::Exactly(v), origin }
}

fn passes(check: Check, origin: Origin) -> Expected {
    Expected { quantity: Quantity::Verdict(check), value: Value::Pass, origin }
}

fn betti(values: &[usize], origin: Origin) -> Vec<Expected> {
    values.iter().enumerate().map(|(k, &v)| exact(Quantity::Betti(k), v, origin)).collect()
}

fn dolbeault(rows: &[&[usize]], origin: Origin) -> Vec<Expected> {
    let mut out = Vec::new();
    for (p, row) in rows.iter().enumerate() {
        for (q, &v) in row.iter().enumerate() {
            out.push(exact(Quantity::Dolbeault(p, q), v, origin));
        }
    }
    out
}

fn torus(n: usize) -> Vec<Expected> {
    let origin = Origin::ClosedForm("binomial tables of a complex torus");
    let mut out = Vec::new();
    for p in 0..=n {
        for q in 0..=n {
            out.push(exact(Quantity::Dolbeault(p, q), binom(n, p) * binom(n, q), origin));
        }
    }
    out.extend((0..=2 * n).map(|k| exact(Quantity::Betti(k), binom(2 * n, k), origin)));
    out.push(exact(Quantity::Rstep, 1, Origin::ClosedForm("all differentials vanish")));
    out.push(passes(Check::Cos, Origin::ClosedForm("abelian")));
    out.push(passes(Check::Euler, origin));
    out
}

fn expected_for(name: &str) -> Vec<Expected> {
    match name {
        "torus1" => torus(1),
        "torus3" => torus(3),
        "iwasawa" => {
            let mut out = betti(
                &[1, 4, 8, 10, 8, 4, 1],
                Origin::ClosedForm("Lie algebra cohomology of the complex Heisenberg algebra"),
            );
            out.extend(dolbeault(
                &[&[1, 2, 2, 1], &[3, 6, 6, 3], &[3, 6, 6, 3], &[1, 2, 2, 1]],
                Origin::ClosedForm("H_∂̄ = ⋀g₊* ⊗ H(⋀g₋*) for complex parallelizable nilmanifolds"),
            ));
            out.push(exact(
                Quantity::Rstep,
                2,
                Origin::Recomputed("d₁ ≠ 0 and d₂ = 0 on every cell, both page algorithms"),
            ));
            out.push(passes(Check::Cos, Origin::ClosedForm("complex parallelizable")));
            out.push(passes(Check::Euler, Origin::ClosedForm("parallelizable, so all Chern classes vanish")));
            out
        }
        "example1-b2pi" => {
            let mut out = dolbeault(
                &[&[1, 3, 3, 1], &[3, 9, 9, 3], &[3, 9, 9, 3], &[1, 3, 3, 1]],
                Origin::Literature("Dolbeault cohomology is that of the complex 3-torus"),
            );
            out.extend(betti(&[1, 2, 5, 8, 5, 2, 1], Origin::Recomputed("de Rham cohomology of Tot B")));
            out.push(exact(Quantity::Betti(1), 2, Origin::Literature("dim H¹ = 2")));
            out.push(exact(Quantity::E1Total(1), 6, Origin::Literature("h^{1,0} + h^{0,1} = 3 + 3")));
            out.push(exact(Quantity::Rstep, 2, Origin::ClosedForm("E₁ ≠ E_∞ in degree 1 and r ≤ 2")));
            out.push(passes(Check::Sps, Origin::Literature("degeneracy bound for semi-direct products")));
            out.push(passes(Check::Euler, Origin::ClosedForm("χ = 0 and Serre duality")));
            out
        }
        "example1-b1" => {
            let mut out = dolbeault(
                &[&[1, 1, 1, 1], &[1, 3, 3, 1], &[1, 3, 3, 1], &[1, 1, 1, 1]],
                Origin::Recomputed("only the untwisted blocks survive for this lattice"),
            );
            out.extend(betti(&[1, 2, 5, 8, 5, 2, 1], Origin::Recomputed("de Rham cohomology of Tot B")));
            out.push(exact(Quantity::Rstep, 1, Origin::Recomputed("all d_r vanish from E₁")));
            out.push(passes(Check::Sps, Origin::Literature("degeneracy bound for semi-direct products")));
            out.push(passes(Check::Euler, Origin::ClosedForm("χ = 0 and Serre duality")));
            out
        }
        "example2" => {
            let lit = Origin::Literature("listed Dolbeault numbers");
            let mut out: Vec<Expected> = [
                ((1, 0), 1),
                ((0, 1), 2),
                ((2, 0), 0),
                ((1, 1), 3),
                ((0, 2), 1),
                ((3, 0), 1),
                ((0, 3), 2),
                ((2, 1), 4),
                ((1, 2), 6),
            ]
            .into_iter()
            .map(|((p, q), v)| exact(Quantity::Dolbeault(p, q), v, lit))
            .collect();
            out.push(exact(Quantity::Dolbeault(0, 4), 2, Origin::ClosedForm("column sum 1 − 2 + 1 − 2 + h^{0,4} = 0")));
            let frol = Origin::Literature("Frölicher equalities sum h^{p,q} = b_k");
            out.extend([(1, 3), (2, 4), (3, 13)].map(|(k, v)| exact(Quantity::Betti(k), v, frol)));
            out.push(exact(Quantity::Betti(4), 22, Origin::ClosedForm("χ = 0 with b₀..b₃ and Poincaré duality")));
            let basis = Origin::Literature("listed bases of B");
            out.extend(
                [((1, 0), 2), ((1, 1), 8), ((2, 1), 12), ((1, 2), 12), ((3, 0), 2), ((0, 3), 2)]
                    .map(|((p, q), v)| exact(Quantity::BDim(p, q), v, basis)),
            );
            out.push(exact(Quantity::Rstep, 1, Origin::Literature("degenerates at E₁")));
            out.push(passes(Check::Sps, Origin::Literature("degeneracy bound for semi-direct products")));
            out.push(passes(Check::Euler, Origin::Literature("χ = 0 and Hirzebruch–Riemann–Roch")));
            out
        }
        "example2-nilfactor" => {
            let mut out =
                betti(&[1, 3, 5, 6, 5, 3, 1], Origin::Recomputed("Lie algebra cohomology of the nilpotent factor"));
            out.extend(dolbeault(
                &[&[1, 3, 3, 1], &[1, 3, 3, 1], &[1, 3, 3, 1], &[1, 3, 3, 1]],
                Origin::Recomputed("Dolbeault cohomology of the invariant forms"),
            ));
            out.push(Expected {
                quantity: Quantity::Rstep,
                value: Value::AtLeast(3),
                origin: Origin::Literature("known lower bound"),
            });
            out.push(exact(Quantity::Rstep, 3, Origin::Recomputed("d₂ ≠ 0 and d₃ = 0")));
            out.push(passes(Check::Euler, Origin::ClosedForm("nilmanifold, χ = 0")));
            out
        }
        "nakamura" => {
            let mut out = betti(
                &[1, 2, 3, 4, 3, 2, 1],
                Origin::Recomputed("de Rham cohomology of the complex parallelizable model"),
            );
            out.extend(dolbeault(
                &[&[1, 1, 1, 1], &[3, 3, 3, 3], &[3, 3, 3, 3], &[1, 1, 1, 1]],
                Origin::Recomputed("Dolbeault cohomology of the complex parallelizable model"),
            ));
            out.push(exact(Quantity::Rstep, 2, Origin::Recomputed("d₁ ≠ 0 and d₂ = 0")));
            out.push(passes(Check::Cos, Origin::Literature("E₂ degeneracy for complex parallelizable solvmanifolds")));
            out.push(passes(Check::Euler, Origin::ClosedForm("parallelizable, so all Chern classes vanish")));
            out
        }
        _ => Vec::new(),
    }
}

pub fn corpus_list() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn corpus_get(name: &str) -> Result<CorpusEntry, CorpusError> {
    let &(name, text) = FILES.iter().find(|(n, _)| *n == name).ok_or_else(|| CorpusError::Unknown(name.to_string()))?;
    // parsing here keeps the invariant that every entry is a valid model
    parse_model(text)?;
    Ok(CorpusEntry { name, text, expected: expected_for(name) })
}

impl CorpusEntry {
    pub fn model(&self) -> ModelSpec {
        parse_model(self.text).expect("corpus entries parse")
    }
}

/// The numbers of one model that corpus entries refer to.
#[derive(Clone, Debug)]
pub struct Measurement {
    pub construction: Construction,
    pub bicomplex: Bicomplex,
    pub stack: PageStack,
    pub dolbeault: BTreeMap<(usize, usize), usize>,
    pub betti: Vec<usize>,
}

pub fn measure(model: &ModelSpec, parallel: bool) -> Result<Measurement, CorpusError> {
    let (construction, bicomplex) = manifold_bicomplex(model)?;
    let stack = pages_direct_with(&bicomplex, None, parallel)?;
    let dolbeault = dolbeault_dims(&bicomplex);
    let betti = betti_numbers(&bicomplex);
    Ok(Measurement { construction, bicomplex, stack, dolbeault, betti })
}

impl Measurement {
    fn value(&self, model: &ModelSpec, q: Quantity, parallel: bool) -> Result<usize, CorpusError> {
        Ok(match q {
            Quantity::Dolbeault(p, q) => self.dolbeault.get(&(p, q)).copied().unwrap_or(0),
            Quantity::Betti(k) => self.betti.get(k).copied().unwrap_or(0),
            Quantity::E1Total(k) => self.stack.page(1).total_dim(k),
            Quantity::BDim(p, q) => self.bicomplex.dim(p, q),
            Quantity::Rstep => self.stack.degeneracy_step,
            Quantity::Verdict(Check::Cos) => pipeline_cos(model, parallel)?.ok() as usize,
            Quantity::Verdict(Check::Sps) => pipeline_sps(model, parallel)?.ok() as usize,
            Quantity::Verdict(Check::Euler) => {
                let (p, q) = self.bicomplex.shape();
                euler_checks(&self.dolbeault, &self.betti, p.max(q)).ok() as usize
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diff {
    pub expected: Expected,
    pub computed: usize,
    pub ok: bool,
}

#[derive(Clone, Debug)]
pub struct CorpusRun {
    pub name: &'static str,
    pub measurement: Measurement,
    pub rows: Vec<Diff>,
}

impl CorpusRun {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|d| d.ok)
    }

    pub fn diffs(&self) -> impl Iterator<Item = &Diff> {
        self.rows.iter().filter(|d| !d.ok)
    }
}

/// Recomputes an entry and compares against every expected number.
pub fn corpus_run(name: &str, parallel: bool) -> Result<CorpusRun, CorpusError> {
    let entry = corpus_get(name)?;
    let model = entry.model();
    let measurement = measure(&model, parallel)?;
    let mut rows = Vec::new();
    for e in entry.expected {
        let computed = measurement.value(&model, e.quantity, parallel)?;
        rows.push(Diff { ok: e.value.accepts(computed), expected: e, computed });
    }
    Ok(CorpusRun { name: entry.name, measurement, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_parses_and_has_expectations() {
        for name in corpus_list() {
            let e = corpus_get(name).unwrap();
            assert!(!e.expected.is_empty(), "{name}");
        }
        assert!(matches!(corpus_get("klein"), Err(CorpusError::Unknown(_))));
    }

    #[test]
    fn torus3_has_no_diffs() {
        let run = corpus_run("torus3", false).unwrap();
        assert!(run.ok(), "{:?}", run.diffs().collect::<Vec<_>>());
    }
}
