//! Finite models of solvmanifolds: unitary parts of characters, weight
//! decompositions, the two twisted subcomplexes, the C/D split and the
//! degeneracy pipelines for complex parallelizable and semi-direct models.

mod euler;
mod pipeline;

use std::collections::BTreeMap;

pub use euler::{euler_checks, EulerReport};
pub use pipeline::{
    koszul_cohomology, pipeline_cos, pipeline_sps, split_cd, CdSplit, CosBlock, CosReport, KoszulBlock, SpsReport,
};

use crate::algebra::{
    assemble_bicomplex, Bicomplex, CharExpr, GenType, ModelError, ModelSpec, Monomial, Part, Role, TotDifferential,
    Weight,
};
use crate::exactalg::{ExactAlgError, Matrix, Scalar};
use crate::hodge::cohomology_dims;
use crate::specseq::SpecSeqError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolvError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    SpecSeq(#[from] SpecSeqError),
    #[error(transparent)]
    Linear(#[from] ExactAlgError),
    #[error("unitary part of {character} has log-derivative {weight}, which no integer exponent vector over the base characters reaches")]
    UncoveredCharacter { character: String, weight: String },
    #[error("declared unitary part of {character} is {declared}, but the log-derivative forces {computed}")]
    OverrideMismatch { character: String, declared: String, computed: String },
    #[error("model `{model}` is not flagged {flag}")]
    MissingFlag { model: String, flag: &'static str },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Unitary parts and holomorphic quotients of the action characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterResolution {
    /// Unitary part of each base character.
    pub base: Vec<CharExpr>,
    /// One entry per declared generator.
    pub generators: Vec<GeneratorResolution>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorResolution {
    pub generator: usize,
    pub alpha: CharExpr,
    pub beta: CharExpr,
    pub gamma: CharExpr,
    /// `α β⁻¹`, holomorphic.
    pub beta_quotient: CharExpr,
    /// `ᾱ γ⁻¹`, holomorphic.
    pub gamma_quotient: CharExpr,
    pub beta_trivial: bool,
    pub gamma_trivial: bool,
}

impl CharacterResolution {
    /// Unitary part of an arbitrary character; the map is multiplicative.
    pub fn unitary_part(&self, c: &CharExpr) -> CharExpr {
        let n = self.base.len();
        c.0.iter().enumerate().fold(CharExpr::trivial(n), |acc, (k, &e)| acc.mul(&self.base[k].pow(e)))
    }
}

pub(crate) fn on_lattice(model: &ModelSpec, c: &CharExpr) -> bool {
    model.lattice.contains(&c.0).expect("the lattice lives on the base character exponents")
}

/// The weight of the unitary character whose (0,1) part agrees with `w`.
fn unitary_target(model: &ModelSpec, w: &Weight) -> Weight {
    let mut u = Weight::zero(model.n_generators());
    for (g, gen) in model.generators.iter().enumerate() {
        u.0[g] = match gen.kind {
            GenType::Antiholomorphic => w.0[g].clone(),
            GenType::Holomorphic => -w.0[gen.conj].conj(),
        };
    }
    u
}

pub(crate) fn format_weight(model: &ModelSpec, w: &Weight) -> String {
    let terms: Vec<String> =
        w.0.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(g, c)| format!("({c})*{}", model.generators[g].name))
            .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn is_holomorphic_weight(model: &ModelSpec, w: &Weight) -> bool {
    w.0.iter().enumerate().all(|(g, c)| c.is_zero() || model.generators[g].kind == GenType::Holomorphic)
}

/// Solves for the unitary part of every base character from its log-derivative.
///
/// The unitary part `β` of `α` has the same (0,1) part as `α` and, being
/// unitary, its (1,0) part is minus the conjugate of that. `β` is then
/// written over the base characters; a declared unitary part overrides the
/// solution when its log-derivative agrees.
pub fn resolve_characters(model: &ModelSpec) -> Result<CharacterResolution, SolvError> {
    let n = model.n_chars();
    let names = model.names();
    let columns: Vec<Vec<Scalar>> = model.base_chars.iter().map(|c| c.weight.0.clone()).collect();
    let system = Matrix::from_columns(model.n_generators(), &columns);
    let mut base = Vec::with_capacity(n);
    for c in &model.base_chars {
        let target = unitary_target(model, &c.weight);
        if let Some(declared) = &c.unitary_part {
            if model.weight(declared) != target {
                return Err(SolvError::OverrideMismatch {
                    character: c.name.clone(),
                    declared: declared.display(&names.characters).to_string(),
                    computed: format_weight(model, &target),
                });
            }
            base.push(declared.clone());
            continue;
        }
        let uncovered =
            || SolvError::UncoveredCharacter { character: c.name.clone(), weight: format_weight(model, &target) };
        let x = if n == 0 {
            if target.is_zero() {
                Vec::new()
            } else {
                return Err(uncovered());
            }
        } else {
            system.solve(&target.0).ok_or_else(uncovered)?
        };
        let ints: Option<Vec<i64>> = x.iter().map(Scalar::as_integer).collect();
        base.push(CharExpr(ints.ok_or_else(uncovered)?));
    }
    let mut res = CharacterResolution { base, generators: Vec::new() };
    for (g, gen) in model.generators.iter().enumerate().filter(|(_, g)| g.declared) {
        let alpha = gen.action_char.clone();
        let beta = res.unitary_part(&alpha);
        let gamma = res.unitary_part(&model.conj_char(&alpha));
        let beta_quotient = alpha.mul(&beta.inverse());
        let gamma_quotient = model.conj_char(&alpha).mul(&gamma.inverse());
        for q in [&beta_quotient, &gamma_quotient] {
            if !is_holomorphic_weight(model, &model.weight(q)) {
                return Err(SolvError::Internal(format!(
                    "quotient {} is not holomorphic",
                    q.display(&names.characters)
                )));
            }
        }
        res.generators.push(GeneratorResolution {
            generator: g,
            beta_trivial: on_lattice(model, &beta),
            gamma_trivial: on_lattice(model, &gamma),
            alpha,
            beta,
            gamma,
            beta_quotient,
            gamma_quotient,
        });
    }
    Ok(res)
}

/// Which exterior algebra to split by weight.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Decomposition {
    /// `⋀ n*_C`: monomials in the nilpotent-factor generators of both types.
    Nilpotent,
    /// `⋀ g₊*`: holomorphic monomials, grouped as `V_ν` with `α_I = 1/ν`.
    Holomorphic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightBlock {
    /// `μ` for the nilpotent split, `ν` for the holomorphic one.
    pub weight: CharExpr,
    pub basis: Vec<Monomial>,
    /// `λ μ⁻¹` for the nilpotent split, `ν ν̄⁻¹` for the holomorphic one.
    pub prefactor: CharExpr,
    /// Whether the block enters the twisted model (its selecting character is trivial on the lattice).
    pub selected: bool,
}

pub fn weight_decomposition(model: &ModelSpec, which: Decomposition) -> Result<Vec<WeightBlock>, SolvError> {
    let res = match which {
        Decomposition::Nilpotent => Some(resolve_characters(model)?),
        Decomposition::Holomorphic => None,
    };
    let mask = match which {
        Decomposition::Nilpotent => model.mask_of(|g| g.role == Role::Nil),
        Decomposition::Holomorphic => model.mask_of(|g| g.kind == GenType::Holomorphic),
    };
    let (pmax, qmax) = model.shape();
    let mut blocks: BTreeMap<CharExpr, Vec<Monomial>> = BTreeMap::new();
    for p in 0..=pmax {
        for q in 0..=qmax {
            for m in model.monomials(p, q).into_iter().filter(|m| m.0 & !mask == 0) {
                let mu = model.action_char(m);
                let key = match which {
                    Decomposition::Nilpotent => mu,
                    Decomposition::Holomorphic => mu.inverse(),
                };
                blocks.entry(key).or_default().push(m);
            }
        }
    }
    let names = model.names();
    let mut out = Vec::with_capacity(blocks.len());
    for (weight, basis) in blocks {
        for &m in &basis {
            let image = match which {
                Decomposition::Nilpotent => model.d_total(m),
                Decomposition::Holomorphic => model.d_monomial(m, Part::Del),
            };
            if let Some(t) = image.keys().find(|t| t.0 & !mask != 0 || model.action_char(**t) != model.action_char(m)) {
                return Err(SolvError::Internal(format!(
                    "weight block {} is not closed: d of a basis monomial contains a term {:?}",
                    weight.display(&names.characters),
                    t
                )));
            }
        }
        let (prefactor, selected) = match &res {
            Some(res) => {
                let lambda = res.unitary_part(&weight);
                (lambda.mul(&weight.inverse()), on_lattice(model, &lambda))
            }
            None => {
                let twist = weight.mul(&model.conj_char(&weight).inverse());
                let selected = on_lattice(model, &twist);
                (twist, selected)
            }
        };
        out.push(WeightBlock { weight, basis, prefactor, selected });
    }
    Ok(out)
}

fn require(model: &ModelSpec, ok: bool, flag: &'static str) -> Result<(), SolvError> {
    if ok {
        Ok(())
    } else {
        Err(SolvError::MissingFlag { model: model.name.clone(), flag })
    }
}

/// Twist of the antiholomorphic part of `m` in `⋀g₊* ⊗ B_Γ`: `ᾱ_I / α_I`, if trivial on the lattice.
pub(crate) fn mmtt_twist(model: &ModelSpec, anti_mask: u64, m: Monomial) -> Option<CharExpr> {
    let a = model.action_char(Monomial(m.0 & anti_mask));
    let twist = a.mul(&model.conj_char(&a).inverse());
    on_lattice(model, &twist).then_some(twist)
}

/// `⋀g₊* ⊗ B_Γ` for a complex parallelizable model: the antiholomorphic
/// monomials `x̄_I` with `ᾱ_I/α_I` trivial on the lattice, carrying that twist.
pub fn build_b_mmtt(model: &ModelSpec) -> Result<Bicomplex, SolvError> {
    require(model, model.flags.complex_parallelizable, "complex_parallelizable")?;
    let anti = model.mask_of(|g| g.kind == GenType::Antiholomorphic);
    Ok(assemble_bicomplex(model, |m| mmtt_twist(model, anti, m))?)
}

/// Twist `λ μ⁻¹` of a monomial with total action character `μ`, if `λ` is trivial on the lattice.
pub(crate) fn corr_twist(model: &ModelSpec, res: &CharacterResolution, m: Monomial) -> Option<CharExpr> {
    let mu = model.action_char(m);
    let lambda = res.unitary_part(&mu);
    on_lattice(model, &lambda).then(|| lambda.mul(&mu.inverse()))
}

/// The subcomplex spanned by `x_I ∧ α_J⁻¹β_J y_J ∧ x̄_K ∧ ᾱ_L⁻¹γ_L ȳ_L` with
/// `β_J γ_L` trivial on the lattice.
///
/// Per generator the twist is `α⁻¹ β(α)`, and `β` is multiplicative, so
/// the twist of a monomial is `λ μ⁻¹` with `μ` its action character and
/// `λ` the unitary part of `μ`.
pub fn build_b_corr(model: &ModelSpec, res: &CharacterResolution) -> Result<Bicomplex, SolvError> {
    Ok(assemble_bicomplex(model, |m| corr_twist(model, res, m))?)
}

/// The untwisted exterior bicomplex on all generators.
pub fn build_full(model: &ModelSpec) -> Result<Bicomplex, SolvError> {
    let n = model.n_chars();
    Ok(assemble_bicomplex(model, |_| Some(CharExpr::trivial(n)))?)
}

/// Which finite model stands in for the manifold.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Construction {
    /// The semi-direct product model `B^{*,*}`.
    Corr,
    /// `⋀g₊* ⊗ B_Γ`.
    Mmtt,
    /// The invariant forms, as for a nilmanifold.
    Invariant,
}

impl Construction {
    pub fn as_str(self) -> &'static str {
        match self {
            Construction::Corr => "semi-direct model B",
            Construction::Mmtt => "complex parallelizable model",
            Construction::Invariant => "invariant forms",
        }
    }
}

/// The model bicomplex for the manifold the description encodes.
pub fn manifold_bicomplex(model: &ModelSpec) -> Result<(Construction, Bicomplex), SolvError> {
    if model.flags.assumption12 {
        let res = resolve_characters(model)?;
        Ok((Construction::Corr, build_b_corr(model, &res)?))
    } else if model.flags.complex_parallelizable {
        Ok((Construction::Mmtt, build_b_mmtt(model)?))
    } else {
        Ok((Construction::Invariant, build_full(model)?))
    }
}

/// Dolbeault dimensions `h^{p,q}` (cohomology of the columns under `∂̄`).
pub fn dolbeault_dims(b: &Bicomplex) -> BTreeMap<(usize, usize), usize> {
    let (pmax, _) = b.shape();
    let mut out = BTreeMap::new();
    for p in 0..=pmax {
        for (q, h) in cohomology_dims(&b.column(p)).into_iter().enumerate() {
            out.insert((p, q), h);
        }
    }
    out
}

/// Betti numbers of `Tot`.
pub fn betti_numbers(b: &Bicomplex) -> Vec<usize> {
    cohomology_dims(&b.tot(TotDifferential::Full))
}

#[cfg(test)]
mod tests;
