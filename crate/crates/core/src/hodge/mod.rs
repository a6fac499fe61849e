//! Finite Hodge theory on PD-type complexes: Poincaré duality checks, the
//! antilinear star, adjoint differential, Laplacian, harmonic decomposition
//! and cohomology.

use crate::algebra::{GradedComplex, ModelError, Monomial};
use crate::exactalg::{ExactAlgError, Matrix, QuotientClassifier, Scalar, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HodgeError {
    #[error("complex is not of PD type: {0}")]
    NotPdType(String),
    #[error("d* is not the adjoint of d in degree {0}")]
    Adjointness(usize),
    #[error("Hodge decomposition fails in degree {degree}: {reason}")]
    Decomposition { degree: usize, reason: String },
    #[error("map is not a chain map in degree {0}")]
    ChainMap(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Linear(#[from] ExactAlgError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub is_pd: bool,
    pub top_degree: usize,
    /// Label of the volume element, when the top degree is one-dimensional.
    pub volume: Option<String>,
    pub failures: Vec<(usize, String)>,
}

/// Pairing matrix `P[i][j]` = coefficient of the volume element in `e_i ∧ f_j`
/// for `e_i` in degree `k` and `f_j` in degree `n - k`.
pub fn pairing(c: &GradedComplex, k: usize) -> Result<Matrix, HodgeError> {
    let n = volume_degree(c);
    let (rows, cols) = (c.dim(k), c.dim(n - k));
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if let Some((s, idx)) = c.basis_product(k, i, n - k, j)? {
                if idx == 0 {
                    m[(i, j)] = Scalar::from_int(s as i64);
                }
            }
        }
    }
    Ok(m)
}

/// Highest degree with a nonzero space; a sub-algebra assembled on a
/// larger grid has its volume form there rather than in the grid's top degree.
pub fn volume_degree(c: &GradedComplex) -> usize {
    (0..=c.top()).rev().find(|&k| c.dim(k) > 0).unwrap_or(0)
}

/// Checks the PD-type axioms of a graded algebra with differential.
pub fn check_pd_type(c: &GradedComplex) -> PdReport {
    let n = volume_degree(c);
    let mut failures = Vec::new();
    if !c.has_product() {
        failures.push((0, "no product structure".to_string()));
        return PdReport { is_pd: false, top_degree: n, volume: None, failures };
    }
    let unit_ok =
        c.dim(0) == 1 && c.elements(0).is_some_and(|e| e[0].monomial == Monomial::ONE && e[0].prefactor.is_trivial());
    if !unit_ok {
        failures.push((0, format!("degree 0 is not spanned by 1 (dim {})", c.dim(0))));
    }
    if c.dim(n) != 1 {
        failures.push((n, format!("top degree has dimension {}", c.dim(n))));
    } else {
        for k in 0..=n {
            match pairing(c, k) {
                Ok(p) if p.is_invertible() => {}
                Ok(_) => failures.push((k, format!("pairing with degree {} is degenerate", n - k))),
                Err(e) => failures.push((k, e.to_string())),
            }
        }
    }
    if !c.d[0].is_zero() {
        failures.push((0, "d is nonzero on degree 0".into()));
    }
    if n > 0 && !c.d[n - 1].is_zero() {
        failures.push((n - 1, "d is nonzero into the top degree".into()));
    }
    let volume = (c.dim(n) == 1).then(|| c.labels[n][0].clone());
    PdReport { is_pd: failures.is_empty(), top_degree: n, volume, failures }
}

/// The antilinear star `∗̄x = S_k · conj(x)` with `α ∧ ∗̄β = h(α, β) v`
/// for the metric making the basis orthonormal.
#[derive(Clone, Debug)]
pub struct BarStar {
    pub matrices: Vec<Matrix>,
}

impl BarStar {
    pub fn new(c: &GradedComplex) -> Result<Self, HodgeError> {
        let n = volume_degree(c);
        if c.dim(n) != 1 || !c.has_product() {
            return Err(HodgeError::NotPdType("no one-dimensional top degree".into()));
        }
        let mut matrices = Vec::new();
        for k in 0..=c.top() {
            if k > n {
                matrices.push(Matrix::zeros(0, 0));
                continue;
            }
            let p = pairing(c, k)?;
            // e_j ∧ ∗̄e_i = δ_ij v  ⇔  P S = I
            let s = p
                .solve_many(&Matrix::identity(p.rows()))
                .filter(|_| p.is_invertible())
                .ok_or_else(|| HodgeError::NotPdType(format!("degenerate pairing in degree {k}")))?;
            matrices.push(s);
        }
        Ok(BarStar { matrices })
    }

    pub fn apply(&self, k: usize, x: &[Scalar]) -> Vec<Scalar> {
        let cx: Vec<Scalar> = x.iter().map(Scalar::conj).collect();
        self.matrices[k].mul_vec(&cx)
    }
}

#[derive(Clone, Debug)]
pub struct HodgeData {
    pub d: Vec<Matrix>,
    /// `dstar[k] : A^k → A^{k-1}` (zero columns-only matrix for `k = 0`).
    pub dstar: Vec<Matrix>,
    pub laplacian: Vec<Matrix>,
    pub harmonic: Vec<Subspace>,
    pub exact: Vec<Subspace>,
    pub coexact: Vec<Subspace>,
}

/// `d* = -∗̄ d ∗̄` and `Δ = dd* + d*d`, with adjointness checked against `d^H`.
pub fn laplacian(c: &GradedComplex) -> Result<HodgeData, HodgeError> {
    let n = volume_degree(c);
    let star = BarStar::new(c)?;
    let mut dstar = Vec::with_capacity(c.top() + 1);
    for k in 0..=c.top() {
        if k == 0 {
            dstar.push(Matrix::zeros(0, c.dim(0)));
            continue;
        }
        if k > n {
            dstar.push(c.d[k - 1].adjoint());
            continue;
        }
        // d*_k = -S_{n-k+1} conj(D_{n-k}) conj(S_k)
        let m =
            star.matrices[n - k + 1].mul(&c.d[n - k].conj()).mul(&star.matrices[k].conj()).scale(&Scalar::from_int(-1));
        if m != c.d[k - 1].adjoint() {
            return Err(HodgeError::Adjointness(k));
        }
        dstar.push(m);
    }
    Ok(assemble(c, dstar))
}

/// Laplacian built from the conjugate transpose of `d`; this needs no
/// product and agrees with [`laplacian`] on PD-type complexes.
pub fn laplacian_adjoint(c: &GradedComplex) -> HodgeData {
    let dstar = (0..=c.top()).map(|k| if k == 0 { Matrix::zeros(0, c.dim(0)) } else { c.d[k - 1].adjoint() }).collect();
    assemble(c, dstar)
}

fn assemble(c: &GradedComplex, dstar: Vec<Matrix>) -> HodgeData {
    let n = c.top();
    let mut lap = Vec::with_capacity(n + 1);
    let mut harmonic = Vec::new();
    let mut exact = Vec::new();
    let mut coexact = Vec::new();
    for k in 0..=n {
        let dim = c.dim(k);
        let mut l = Matrix::zeros(dim, dim);
        if k > 0 {
            l = l.add(&c.d[k - 1].mul(&dstar[k]));
        }
        if k < n {
            l = l.add(&dstar[k + 1].mul(&c.d[k]));
        }
        harmonic.push(Subspace::kernel(&l));
        exact.push(Subspace::image(&c.d_into(k)));
        coexact.push(if k < n { Subspace::image(&dstar[k + 1]) } else { Subspace::zero(dim) });
        lap.push(l);
    }
    HodgeData { d: c.d.clone(), dstar, laplacian: lap, harmonic, exact, coexact }
}

/// `A^k = H^k ⊕ dA^{k-1} ⊕ d*A^{k+1}`, verified.
/// Complexes without a product use the conjugate-transpose adjoint.
pub fn hodge_decompose(c: &GradedComplex, k: usize) -> Result<(Subspace, Subspace, Subspace), HodgeError> {
    let data = if c.has_product() { laplacian(c)? } else { laplacian_adjoint(c) };
    decompose_from(&data, c, k)
}

pub(crate) fn decompose_from(
    data: &HodgeData,
    c: &GradedComplex,
    k: usize,
) -> Result<(Subspace, Subspace, Subspace), HodgeError> {
    let (h, e, ce) = (data.harmonic[k].clone(), data.exact[k].clone(), data.coexact[k].clone());
    let fail = |reason: &str| HodgeError::Decomposition { degree: k, reason: reason.into() };
    if h.dim() + e.dim() + ce.dim() != c.dim(k) {
        return Err(fail("dimensions do not add up"));
    }
    if !h.intersect(&e)?.is_zero() || !h.intersect(&ce)?.is_zero() || !e.intersect(&ce)?.is_zero() {
        return Err(fail("summands intersect"));
    }
    let kernel = Subspace::kernel(&c.d[k]);
    if h.dim() != kernel.dim() - e.dim() || !kernel.contains_subspace(&h) {
        return Err(fail("harmonic space does not match ker d / im d"));
    }
    Ok((h, e, ce))
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub dims: Vec<usize>,
    pub representatives: Vec<Vec<Vec<Scalar>>>,
    /// Whether the representatives are harmonic (PD-type route).
    pub harmonic: bool,
    /// Cohomology pairing nondegenerate and `dim H^k = dim H^{n-k}`; `None` without PD type.
    pub pd_of_cohomology: Option<bool>,
}

/// `dim ker d_k - rank d_{k-1}` for every degree.
pub fn cohomology_dims(c: &GradedComplex) -> Vec<usize> {
    let ranks: Vec<usize> = c.d.iter().map(Matrix::rank).collect();
    (0..=c.top()).map(|k| c.dim(k) - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

/// `ker d / im d` by ranks, with canonical coset representatives.
pub fn cohomology_by_rank(c: &GradedComplex) -> Vec<QuotientClassifier> {
    (0..=c.top())
        .map(|k| {
            let kernel = Subspace::kernel(&c.d[k]);
            let image = Subspace::image(&c.d_into(k));
            QuotientClassifier::new(&kernel, image).expect("im d ⊆ ker d")
        })
        .collect()
}

/// Cohomology with harmonic representatives when the complex is PD-type,
/// cross-checked against the rank route.
pub fn cohomology(c: &GradedComplex) -> Result<Cohomology, HodgeError> {
    let ranks = cohomology_by_rank(c);
    let dims: Vec<usize> = ranks.iter().map(QuotientClassifier::dim).collect();
    if !check_pd_type(c).is_pd {
        return Ok(Cohomology {
            dims,
            representatives: ranks.iter().map(QuotientClassifier::representatives).collect(),
            harmonic: false,
            pd_of_cohomology: None,
        });
    }
    let data = laplacian(c)?;
    for k in 0..=c.top() {
        decompose_from(&data, c, k)?;
        if data.harmonic[k].dim() != dims[k] {
            return Err(HodgeError::Decomposition { degree: k, reason: "harmonic and rank routes disagree".into() });
        }
    }
    let reps: Vec<Vec<Vec<Scalar>>> = data.harmonic.iter().map(Subspace::basis).collect();
    let n = volume_degree(c);
    let mut pd = true;
    for k in 0..=n {
        if dims[k] != dims[n - k] {
            pd = false;
            continue;
        }
        let mut m = Matrix::zeros(dims[k], dims[n - k]);
        for (i, a) in reps[k].iter().enumerate() {
            for (j, b) in reps[n - k].iter().enumerate() {
                m[(i, j)] = c.product(k, a, n - k, b)?[0].clone();
            }
        }
        pd &= m.is_invertible();
    }
    Ok(Cohomology { dims, representatives: reps, harmonic: true, pd_of_cohomology: Some(pd) })
}

#[derive(Clone, Debug)]
pub struct InducedMap {
    pub matrices: Vec<Matrix>,
    pub injective: Vec<bool>,
}

/// Map on cohomology induced by a chain map `f[k] : A^k → B^k`.
pub fn induced_map(a: &GradedComplex, b: &GradedComplex, f: &[Matrix]) -> Result<InducedMap, HodgeError> {
    for k in 0..=a.top() {
        if k < a.top() && b.d[k].mul(&f[k]) != f[k + 1].mul(&a.d[k]) {
            return Err(HodgeError::ChainMap(k));
        }
    }
    let ha = cohomology_by_rank(a);
    let hb = cohomology_by_rank(b);
    let mut matrices = Vec::new();
    let mut injective = Vec::new();
    for k in 0..=a.top() {
        let cols: Vec<Vec<Scalar>> = ha[k]
            .representatives()
            .iter()
            .map(|r| hb[k].classify(&f[k].mul_vec(r)).ok_or(HodgeError::ChainMap(k)))
            .collect::<Result<_, _>>()?;
        let m = Matrix::from_columns(hb[k].dim(), &cols);
        injective.push(m.rank() == ha[k].dim());
        matrices.push(m);
    }
    Ok(InducedMap { matrices, injective })
}

#[cfg(test)]
mod tests;
