//! Character-twisted exterior bicomplexes built from a model description.

mod bicomplex;
mod ce;
mod character;
mod model;
mod monomial;

pub use bicomplex::{assemble_bicomplex, tot_block_map, tot_inclusion, Bicomplex, GradedComplex, TotDifferential};
pub use ce::{ce_differential, Bracket};
pub use character::{BaseCharacter, CharExpr, CharKind, Weight};
pub(crate) use model::add_into;
pub use model::{
    build_model, conj_name, BaseCharDesc, GenType, Generator, GeneratorDesc, ModelDescription, ModelFlags, ModelSpec,
    Part, QuadExpr, Role, MAX_GENERATORS,
};
pub use monomial::{wedge_sign, Monomial, Names, TwistedElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModelError {
    #[error("name `{0}` is declared twice")]
    DuplicateName(String),
    #[error("{context}: unknown generator `{name}`")]
    UnknownGenerator { context: String, name: String },
    #[error("{context}: unknown base character `{name}`")]
    UnknownCharacter { context: String, name: String },
    #[error("base character {character}: {part} mentions `{generator}` of the wrong type")]
    WrongTypeInDlog { character: String, part: String, generator: String },
    #[error("base character {character}: dlog data is inconsistent with kind `{kind}`")]
    KindMismatch { character: String, kind: String },
    #[error("base character {character}: conjugation is not an involution")]
    ConjugationNotInvolution { character: String },
    #[error("base character {character}: the declared conjugate has a different log-derivative")]
    ConjugateWeightMismatch { character: String },
    #[error("base character {character}: dlog is not closed")]
    DlogNotClosed { character: String },
    #[error("lattice generators must have {expected} entries")]
    LatticeDimension { expected: usize },
    #[error("generator {generator}: differential term of degree {degree}, expected 2")]
    BadTermDegree { generator: String, degree: usize },
    #[error("generator {generator}: term {term} has a bidegree the complex structure does not allow")]
    NonIntegrable { generator: String, term: String },
    #[error("generator {generator}: term {term} has action character {found}, expected {expected}")]
    NonHomogeneous { generator: String, term: String, expected: String, found: String },
    #[error("generator {generator}: term {term} is not of type (2,0) in a complex parallelizable model")]
    NotComplexParallelizable { generator: String, term: String },
    #[error("generator {generator}: d(d {generator}) is not zero")]
    DSquaredNonzero { generator: String },
    #[error("{0} generators exceed the supported maximum")]
    TooManyGenerators(usize),
    #[error("selection is not closed: d({element}) contains {term}")]
    NotClosed { element: String, term: String },
    #[error("selection is not closed under products: {left} ^ {right}")]
    ProductNotClosed { left: String, right: String },
    #[error("bicomplex axiom fails: {0}")]
    Axiom(String),
    #[error("bracket [{0},{1}] is not antisymmetric")]
    Antisymmetry(usize, usize),
    #[error("Jacobi identity fails for ({0},{1},{2})")]
    Jacobi(usize, usize, usize),
    #[error("inconsistent bicomplex data: {0}")]
    Shape(String),
}
