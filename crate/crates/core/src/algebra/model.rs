use std::collections::{BTreeMap, HashMap, HashSet};

use super::{wedge_sign, BaseCharacter, CharExpr, CharKind, ModelError, Monomial, Names, TwistedElement, Weight};
use crate::exactalg::{IntLattice, Scalar};

/// Whether a generator is a (1,0)- or a (0,1)-form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum GenType {
    Holomorphic,
    Antiholomorphic,
}

impl GenType {
    pub fn bidegree(self) -> (usize, usize) {
        match self {
            GenType::Holomorphic => (1, 0),
            GenType::Antiholomorphic => (0, 1),
        }
    }

    pub fn conj(self) -> GenType {
        match self {
            GenType::Holomorphic => GenType::Antiholomorphic,
            GenType::Antiholomorphic => GenType::Holomorphic,
        }
    }
}

/// Which factor of `C^n ⋉ N` a generator belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum Role {
    Abelian,
    #[default]
    Nil,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct ModelFlags {
    pub complex_parallelizable: bool,
    /// The semi-direct product hypotheses, including the Dolbeault isomorphism
    /// for the nilmanifold factor, which is accepted as declared.
    pub assumption12: bool,
}

/// A quadratic expression `sum c · g_a ∧ g_b`, keyed by canonical monomial.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QuadExpr(pub BTreeMap<Monomial, Scalar>);

impl QuadExpr {
    pub fn zero() -> Self {
        QuadExpr(BTreeMap::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Adds `c · g_a ∧ g_b`; a repeated generator contributes nothing.
    pub fn add_term(&mut self, c: Scalar, a: usize, b: usize) {
        if let Some((sign, m)) = Monomial::from_indices(&[a, b]) {
            let v = if sign < 0 { -c } else { c };
            add_into(&mut self.0, m, &v);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.0.iter()
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = map.entry(m).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        map.remove(&m);
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Generator {
    pub name: String,
    pub kind: GenType,
    pub action_char: CharExpr,
    pub differential: QuadExpr,
    pub role: Role,
    pub conj: usize,
    pub declared: bool,
}

/// Unresolved model input, as produced by the file parser or by hand.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct ModelDescription {
    pub name: String,
    pub base_chars: Vec<BaseCharDesc>,
    pub lattice: Vec<Vec<i64>>,
    pub generators: Vec<GeneratorDesc>,
    pub flags: ModelFlags,
}

#[derive(Clone, PartialEq, Debug)]
pub struct BaseCharDesc {
    pub name: String,
    pub kind: CharKind,
    /// Conjugate as `(base character name, exponent)`.
    pub conj: (String, i64),
    pub dlog10: Vec<(String, Scalar)>,
    pub dlog01: Vec<(String, Scalar)>,
    pub unitary_part: Option<Vec<(String, i64)>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct GeneratorDesc {
    pub name: String,
    pub kind: GenType,
    pub action_char: Vec<(String, i64)>,
    /// Terms `coefficient · a ∧ b`.
    pub differential: Vec<(Scalar, Vec<String>)>,
    pub role: Role,
}

/// A validated model: generators (declared ones first, then synthesized
/// conjugates), base characters, triviality lattice and flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModelSpec {
    pub name: String,
    pub base_chars: Vec<BaseCharacter>,
    pub lattice: IntLattice,
    pub generators: Vec<Generator>,
    pub flags: ModelFlags,
    del10: Vec<QuadExpr>,
    del01: Vec<QuadExpr>,
}

/// Which component of `d = ∂ + ∂̄`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Part {
    Del,
    DelBar,
}

pub const MAX_GENERATORS: usize = 48;

impl ModelSpec {
    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn n_chars(&self) -> usize {
        self.base_chars.len()
    }

    pub fn trivial_char(&self) -> CharExpr {
        CharExpr::trivial(self.n_chars())
    }

    pub fn names(&self) -> Names {
        Names {
            generators: self.generators.iter().map(|g| g.name.clone()).collect(),
            characters: self.base_chars.iter().map(|c| c.name.clone()).collect(),
        }
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn declared(&self) -> impl Iterator<Item = &Generator> {
        self.generators.iter().filter(|g| g.declared)
    }

    pub fn indices_of(&self, kind: GenType) -> Vec<usize> {
        (0..self.generators.len()).filter(|&i| self.generators[i].kind == kind).collect()
    }

    /// Grid extents: number of (1,0) and (0,1) generators.
    pub fn shape(&self) -> (usize, usize) {
        (self.indices_of(GenType::Holomorphic).len(), self.indices_of(GenType::Antiholomorphic).len())
    }

    pub fn bidegree(&self, m: Monomial) -> (usize, usize) {
        m.indices().fold((0, 0), |(p, q), i| match self.generators[i].kind {
            GenType::Holomorphic => (p + 1, q),
            GenType::Antiholomorphic => (p, q + 1),
        })
    }

    pub fn mask_of(&self, pred: impl Fn(&Generator) -> bool) -> u64 {
        self.generators.iter().enumerate().filter(|(_, g)| pred(g)).fold(0, |acc, (i, _)| acc | 1 << i)
    }

    /// Log-derivative of a character.
    pub fn weight(&self, c: &CharExpr) -> Weight {
        let mut w = Weight::zero(self.n_generators());
        for (k, &e) in c.0.iter().enumerate() {
            w.add_scaled(&self.base_chars[k].weight, e);
        }
        w
    }

    /// Complex conjugate of a character via the declared involution.
    pub fn conj_char(&self, c: &CharExpr) -> CharExpr {
        let mut out = CharExpr::trivial(self.n_chars());
        for (k, &e) in c.0.iter().enumerate() {
            let (target, sign) = self.base_chars[k].conj;
            out.0[target] += e * sign;
        }
        out
    }

    /// Conjugate 1-form: `conj(sum w_g g) = sum conj(w_g) conj(g)`.
    pub fn conj_weight(&self, w: &Weight) -> Weight {
        let mut out = Weight::zero(self.n_generators());
        for (g, c) in w.0.iter().enumerate() {
            out.0[self.generators[g].conj] = c.conj();
        }
        out
    }

    /// Total action character of a monomial.
    pub fn action_char(&self, m: Monomial) -> CharExpr {
        m.indices().fold(self.trivial_char(), |acc, i| acc.mul(&self.generators[i].action_char))
    }

    /// Conjugate monomial with the reordering sign.
    pub fn conj_monomial(&self, m: Monomial) -> (i32, Monomial) {
        let idx: Vec<usize> = m.indices().map(|i| self.generators[i].conj).collect();
        Monomial::from_indices(&idx).expect("conjugation is a bijection on generators")
    }

    pub fn generator_part(&self, g: usize, part: Part) -> &QuadExpr {
        match part {
            Part::Del => &self.del10[g],
            Part::DelBar => &self.del01[g],
        }
    }

    /// `∂` or `∂̄` of a prefactor-free monomial by the Leibniz rule.
    pub fn d_monomial(&self, m: Monomial, part: Part) -> BTreeMap<Monomial, Scalar> {
        let mut out = BTreeMap::new();
        for (t, g) in m.indices().enumerate() {
            let below = m.0 & ((1u64 << g) - 1);
            let above = m.0 & !((1u64 << g << 1).wrapping_sub(1));
            let sign_t = if t % 2 == 0 { 1 } else { -1 };
            for (mm, c) in self.generator_part(g, part).terms() {
                let Some(s1) = wedge_sign(below, mm.0) else {
                    continue;
                };
                let Some(s2) = wedge_sign(below | mm.0, above) else {
                    continue;
                };
                let s = sign_t * s1 * s2;
                let v = if s < 0 { -c } else { c.clone() };
                add_into(&mut out, Monomial(below | mm.0 | above), &v);
            }
        }
        out
    }

    /// `d(τ·m) = τ·(dlog τ ∧ m + d m)`, split into `∂` or `∂̄`.
    pub fn d_element(&self, e: &TwistedElement, part: Part) -> BTreeMap<Monomial, Scalar> {
        let mut out = self.d_monomial(e.monomial, part);
        if !e.prefactor.is_trivial() {
            let w = self.weight(&e.prefactor);
            let wanted = match part {
                Part::Del => GenType::Holomorphic,
                Part::DelBar => GenType::Antiholomorphic,
            };
            for (g, c) in w.0.iter().enumerate() {
                if c.is_zero() || self.generators[g].kind != wanted {
                    continue;
                }
                if let Some(s) = wedge_sign(1 << g, e.monomial.0) {
                    let v = if s < 0 { -c } else { c.clone() };
                    add_into(&mut out, Monomial(e.monomial.0 | 1 << g), &v);
                }
            }
        }
        out
    }

    /// Full `d = ∂ + ∂̄` of a prefactor-free monomial.
    pub fn d_total(&self, m: Monomial) -> BTreeMap<Monomial, Scalar> {
        let mut out = self.d_monomial(m, Part::Del);
        for (k, v) in self.d_monomial(m, Part::DelBar) {
            add_into(&mut out, k, &v);
        }
        out
    }

    /// Basis of all monomials of bidegree `(p, q)` in lexicographic index order.
    pub fn monomials(&self, p: usize, q: usize) -> Vec<Monomial> {
        use itertools::Itertools;
        (0..self.n_generators())
            .combinations(p + q)
            .map(|idx| Monomial::from_indices(&idx).expect("distinct indices").1)
            .filter(|&m| self.bidegree(m) == (p, q))
            .collect()
    }
}

struct Resolver<'a> {
    generators: HashMap<&'a str, usize>,
    chars: HashMap<&'a str, usize>,
}

impl Resolver<'_> {
    fn generator(&self, context: &str, name: &str) -> Result<usize, ModelError> {
        self.generators
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownGenerator { context: context.into(), name: name.into() })
    }

    fn character(&self, context: &str, name: &str) -> Result<usize, ModelError> {
        self.chars
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownCharacter { context: context.into(), name: name.into() })
    }

    fn char_expr(&self, context: &str, n: usize, factors: &[(String, i64)]) -> Result<CharExpr, ModelError> {
        let mut c = CharExpr::trivial(n);
        for (name, e) in factors {
            c.0[self.character(context, name)?] += e;
        }
        Ok(c)
    }
}

/// Name of the synthesized conjugate of a declared generator.
pub fn conj_name(name: &str) -> String {
    format!("c{name}")
}

/// Validates a description and synthesizes conjugate generators.
pub fn build_model(desc: &ModelDescription) -> Result<ModelSpec, ModelError> {
    let declared = desc.generators.len();
    if 2 * declared > MAX_GENERATORS {
        return Err(ModelError::TooManyGenerators(2 * declared));
    }
    let mut gen_names: Vec<String> = desc.generators.iter().map(|g| g.name.clone()).collect();
    gen_names.extend(desc.generators.iter().map(|g| conj_name(&g.name)));
    let mut seen = HashSet::new();
    for n in gen_names.iter().chain(desc.base_chars.iter().map(|c| &c.name)) {
        if !seen.insert(n.as_str()) {
            return Err(ModelError::DuplicateName(n.clone()));
        }
    }
    let resolver = Resolver {
        generators: gen_names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect(),
        chars: desc.base_chars.iter().enumerate().map(|(i, c)| (c.name.as_str(), i)).collect(),
    };
    let n_chars = desc.base_chars.len();
    let n_gens = 2 * declared;
    let kind_of = |i: usize| {
        if i < declared {
            desc.generators[i].kind
        } else {
            desc.generators[i - declared].kind.conj()
        }
    };

    let mut base_chars = Vec::with_capacity(n_chars);
    for c in &desc.base_chars {
        let ctx = format!("base character {}", c.name);
        let mut w = Weight::zero(n_gens);
        for (part, entries, expected) in
            [("dlog10", &c.dlog10, GenType::Holomorphic), ("dlog01", &c.dlog01, GenType::Antiholomorphic)]
        {
            for (gname, coeff) in entries {
                let g = resolver.generator(&ctx, gname)?;
                if kind_of(g) != expected {
                    return Err(ModelError::WrongTypeInDlog {
                        character: c.name.clone(),
                        part: part.into(),
                        generator: gname.clone(),
                    });
                }
                w.0[g] += coeff;
            }
        }
        let conj = (resolver.character(&ctx, &c.conj.0)?, c.conj.1);
        if conj.1 != 1 && conj.1 != -1 {
            return Err(ModelError::ConjugationNotInvolution { character: c.name.clone() });
        }
        let unitary_part = match &c.unitary_part {
            Some(f) => Some(resolver.char_expr(&ctx, n_chars, f)?),
            None => None,
        };
        base_chars.push(BaseCharacter { name: c.name.clone(), kind: c.kind, weight: w, conj, unitary_part });
    }

    let lattice = IntLattice::new(n_chars, desc.lattice.clone())
        .map_err(|_| ModelError::LatticeDimension { expected: n_chars })?;

    let mut generators = Vec::with_capacity(n_gens);
    for (i, g) in desc.generators.iter().enumerate() {
        let ctx = format!("generator {}", g.name);
        let action_char = resolver.char_expr(&ctx, n_chars, &g.action_char)?;
        let mut d = QuadExpr::zero();
        for (coeff, factors) in &g.differential {
            if factors.len() != 2 {
                return Err(ModelError::BadTermDegree { generator: g.name.clone(), degree: factors.len() });
            }
            let a = resolver.generator(&ctx, &factors[0])?;
            let b = resolver.generator(&ctx, &factors[1])?;
            d.add_term(coeff.clone(), a, b);
        }
        generators.push(Generator {
            name: g.name.clone(),
            kind: g.kind,
            action_char,
            differential: d,
            role: g.role,
            conj: i + declared,
            declared: true,
        });
    }

    let mut spec = ModelSpec {
        name: desc.name.clone(),
        base_chars,
        lattice,
        generators,
        flags: desc.flags,
        del10: Vec::new(),
        del01: Vec::new(),
    };
    // conjugates: d(conj g) = conj(d g)
    for i in 0..declared {
        let g = spec.generators[i].clone();
        let mut d = QuadExpr::zero();
        for (m, c) in g.differential.terms() {
            let idx: Vec<usize> = m.indices().map(|j| if j < declared { j + declared } else { j - declared }).collect();
            d.add_term(c.conj(), idx[0], idx[1]);
        }
        spec.generators.push(Generator {
            name: conj_name(&g.name),
            kind: g.kind.conj(),
            action_char: spec.conj_char(&g.action_char),
            differential: d,
            role: g.role,
            conj: i,
            declared: false,
        });
    }

    validate_characters(&spec)?;
    split_differentials(&mut spec)?;
    validate_generators(&spec)?;
    Ok(spec)
}

fn validate_characters(spec: &ModelSpec) -> Result<(), ModelError> {
    let holo = spec.indices_of(GenType::Holomorphic);
    for (k, c) in spec.base_chars.iter().enumerate() {
        let w = &c.weight;
        let part_zero = |kind: GenType| (0..w.0.len()).all(|g| spec.generators[g].kind != kind || w.0[g].is_zero());
        let ok = match c.kind {
            CharKind::Holomorphic => part_zero(GenType::Antiholomorphic),
            CharKind::Antiholomorphic => part_zero(GenType::Holomorphic),
            CharKind::Unitary => holo.iter().all(|&g| w.0[spec.generators[g].conj] == -w.0[g].conj()),
            CharKind::General => true,
        };
        if !ok {
            return Err(ModelError::KindMismatch { character: c.name.clone(), kind: c.kind.as_str().into() });
        }
        let unit = CharExpr::unit(spec.n_chars(), k);
        if spec.conj_char(&spec.conj_char(&unit)) != unit {
            return Err(ModelError::ConjugationNotInvolution { character: c.name.clone() });
        }
        if spec.weight(&spec.conj_char(&unit)) != spec.conj_weight(w) {
            return Err(ModelError::ConjugateWeightMismatch { character: c.name.clone() });
        }
    }
    Ok(())
}

/// Splits each generator differential into its `∂` and `∂̄` parts and checks types.
fn split_differentials(spec: &mut ModelSpec) -> Result<(), ModelError> {
    let names = spec.names();
    let mut del10 = Vec::new();
    let mut del01 = Vec::new();
    for g in &spec.generators {
        let (p0, q0) = g.kind.bidegree();
        let mut a = QuadExpr::zero();
        let mut b = QuadExpr::zero();
        for (m, c) in g.differential.terms() {
            let (p, q) = spec.bidegree(*m);
            let term = TwistedElement::plain(spec.n_chars(), *m).display(&names).to_string();
            if p == p0 + 1 && q == q0 {
                add_into(&mut a.0, *m, c);
            } else if p == p0 && q == q0 + 1 {
                add_into(&mut b.0, *m, c);
            } else {
                return Err(ModelError::NonIntegrable { generator: g.name.clone(), term });
            }
        }
        del10.push(a);
        del01.push(b);
    }
    spec.del10 = del10;
    spec.del01 = del01;
    Ok(())
}

fn validate_generators(spec: &ModelSpec) -> Result<(), ModelError> {
    let names = spec.names();
    for g in spec.generators.iter() {
        for (m, _) in g.differential.terms() {
            let found = spec.action_char(*m);
            if found != g.action_char {
                return Err(ModelError::NonHomogeneous {
                    generator: g.name.clone(),
                    term: TwistedElement::plain(spec.n_chars(), *m).display(&names).to_string(),
                    expected: g.action_char.display(&names.characters).to_string(),
                    found: found.display(&names.characters).to_string(),
                });
            }
            if spec.flags.complex_parallelizable && g.kind == GenType::Holomorphic && spec.bidegree(*m) != (2, 0) {
                return Err(ModelError::NotComplexParallelizable {
                    generator: g.name.clone(),
                    term: TwistedElement::plain(spec.n_chars(), *m).display(&names).to_string(),
                });
            }
        }
        // d(d g) = 0
        let mut dd = BTreeMap::new();
        for (m, c) in g.differential.terms() {
            for (m2, c2) in spec.d_total(*m) {
                add_into(&mut dd, m2, &(c * &c2));
            }
        }
        if !dd.is_empty() {
            return Err(ModelError::DSquaredNonzero { generator: g.name.clone() });
        }
    }
    for c in &spec.base_chars {
        let mut total = BTreeMap::new();
        for (h, ch) in c.weight.0.iter().enumerate() {
            if ch.is_zero() {
                continue;
            }
            for (m, v) in spec.generators[h].differential.terms() {
                add_into(&mut total, *m, &(ch * v));
            }
        }
        if !total.is_empty() {
            return Err(ModelError::DlogNotClosed { character: c.name.clone() });
        }
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(n, d)
    }

    fn gen(name: &str, chars: &[(&str, i64)], d: &[(i64, &str, &str)]) -> GeneratorDesc {
        GeneratorDesc {
            name: name.into(),
            kind: GenType::Holomorphic,
            action_char: chars.iter().map(|(c, e)| (c.to_string(), *e)).collect(),
            differential: d
                .iter()
                .map(|(c, a, b)| (Scalar::from_int(*c), vec![a.to_string(), b.to_string()]))
                .collect(),
            role: Role::Nil,
        }
    }

    pub(crate) fn example2(chi_of_y2: i64) -> ModelDescription {
        let mut x1 = gen("x1", &[], &[]);
        x1.role = Role::Abelian;
        ModelDescription {
            name: "example2".into(),
            base_chars: vec![BaseCharDesc {
                name: "chi".into(),
                kind: CharKind::Unitary,
                conj: ("chi".into(), -1),
                dlog10: vec![("x1".into(), s(1, 2))],
                dlog01: vec![("cx1".into(), s(-1, 2))],
                unitary_part: None,
            }],
            lattice: vec![vec![2]],
            generators: vec![
                x1,
                gen("y1", &[("chi", 1)], &[]),
                gen("y2", &[("chi", chi_of_y2)], &[(1, "y1", "cy1")]),
                gen("y3", &[("chi", -1)], &[(1, "cy1", "y2")]),
            ],
            flags: ModelFlags { complex_parallelizable: false, assumption12: true },
        }
    }

    #[test]
    fn example2_builds_with_conjugates() {
        let m = build_model(&example2(0)).unwrap();
        assert_eq!(m.n_generators(), 8);
        assert_eq!(m.generators[5].name, "cy1");
        assert_eq!(m.shape(), (4, 4));
        assert_eq!(m.monomials(1, 1).len(), 16);
    }

    #[test]
    fn inhomogeneous_differential_is_rejected() {
        assert!(matches!(build_model(&example2(1)), Err(ModelError::NonHomogeneous { .. })));
    }

    #[test]
    fn torus_without_characters() {
        let desc = ModelDescription { name: "t".into(), generators: vec![gen("z", &[], &[])], ..Default::default() };
        let m = build_model(&desc).unwrap();
        assert_eq!(m.shape(), (1, 1));
    }

    #[test]
    fn unit_algebra_from_empty_description() {
        let m = build_model(&ModelDescription::default()).unwrap();
        assert_eq!(m.n_generators(), 0);
        assert_eq!(m.monomials(0, 0), vec![Monomial::ONE]);
    }

    #[test]
    fn d_commutes_with_conjugation() {
        let m = build_model(&example2(0)).unwrap();
        for mask in 0u64..256 {
            let mono = Monomial(mask);
            let (s0, cm) = m.conj_monomial(mono);
            let lhs: BTreeMap<Monomial, Scalar> = m
                .d_total(mono)
                .into_iter()
                .map(|(k, v)| {
                    let (s1, ck) = m.conj_monomial(k);
                    (ck, if s1 < 0 { -v.conj() } else { v.conj() })
                })
                .collect();
            let rhs: BTreeMap<Monomial, Scalar> =
                m.d_total(cm).into_iter().map(|(k, v)| (k, if s0 < 0 { -v } else { v })).collect();
            assert_eq!(lhs, rhs, "mask {mask:b}");
        }
    }

    #[test]
    fn leibniz_on_basis_pairs() {
        let m = build_model(&example2(0)).unwrap();
        let wedge_map = |a: &BTreeMap<Monomial, Scalar>, b: Monomial, left: bool| {
            let mut out = BTreeMap::new();
            for (k, v) in a {
                let pair = if left { k.wedge(b) } else { b.wedge(*k) };
                if let Some((s, r)) = pair {
                    add_into(&mut out, r, &if s < 0 { -v.clone() } else { v.clone() });
                }
            }
            out
        };
        for a in 0u64..256 {
            for b in (0u64..256).step_by(7) {
                let (ma, mb) = (Monomial(a), Monomial(b));
                let Some((s, ab)) = ma.wedge(mb) else {
                    continue;
                };
                let mut lhs = m.d_total(ab);
                if s < 0 {
                    lhs.values_mut().for_each(|v| *v = -v.clone());
                }
                let mut rhs = wedge_map(&m.d_total(ma), mb, true);
                let sign = if ma.degree() % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                for (k, v) in wedge_map(&m.d_total(mb), ma, false) {
                    add_into(&mut rhs, k, &(&v * &sign));
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let mut d = example2(0);
        d.base_chars[0].kind = CharKind::Holomorphic;
        assert!(matches!(build_model(&d), Err(ModelError::KindMismatch { .. })));
    }

    #[test]
    fn non_closed_dlog_is_rejected() {
        let mut d = example2(0);
        d.base_chars[0].dlog10 = vec![("y2".into(), s(1, 1))];
        d.base_chars[0].dlog01 = vec![("cy2".into(), s(-1, 1))];
        assert!(matches!(build_model(&d), Err(ModelError::DlogNotClosed { .. })));
    }

    #[test]
    fn d_squared_nonzero_is_rejected() {
        let desc = ModelDescription {
            name: "bad".into(),
            generators: vec![
                gen("a", &[], &[]),
                gen("b", &[], &[]),
                gen("c", &[], &[(1, "a", "b")]),
                gen("e", &[], &[]),
                gen("f", &[], &[(1, "c", "e")]),
            ],
            ..Default::default()
        };
        assert!(matches!(build_model(&desc), Err(ModelError::DSquaredNonzero { .. })));
    }
}
