//! Seeded random instances for the self-checks: abstract bicomplexes built
//! from squares and zig-zags, and 2-step nilpotent models with a
//! weight-zero sub-algebra.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::algebra::{
    assemble_bicomplex, build_model, Bicomplex, CharExpr, GenType, GeneratorDesc, ModelDescription, ModelFlags,
    ModelSpec, Monomial, Role,
};
use crate::exactalg::{Matrix, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_nonzero(rng: &mut SeededRng) -> Scalar {
    loop {
        let (re, im) = (rng.gen_range(-2..=2), if rng.gen_bool(0.3) { rng.gen_range(-1..=1) } else { 0 });
        if re != 0 || im != 0 {
            return Scalar::gaussian(re, im);
        }
    }
}

/// A random invertible matrix `L U` with unit diagonals.
fn random_invertible(rng: &mut SeededRng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            if rng.gen_bool(0.5) {
                l[(i, j)] = Scalar::from_int(rng.gen_range(-2..=2));
            }
            if rng.gen_bool(0.5) {
                u[(j, i)] = Scalar::from_int(rng.gen_range(-2..=2));
            }
        }
    }
    l.mul(&u)
}

struct Pieces {
    pmax: usize,
    qmax: usize,
    cells: Vec<(usize, usize)>,
    /// `(part is ∂, source, target, coefficient)`
    arrows: Vec<(bool, usize, usize, Scalar)>,
}

impl Pieces {
    fn element(&mut self, p: usize, q: usize) -> usize {
        self.cells.push((p, q));
        self.cells.len() - 1
    }

    fn square(&mut self, rng: &mut SeededRng, p: usize, q: usize) {
        let (a, b, c, e) =
            (self.element(p, q), self.element(p + 1, q), self.element(p, q + 1), self.element(p + 1, q + 1));
        let (x, y) = (small_nonzero(rng), small_nonzero(rng));
        // ∂a = b, ∂̄a = c, ∂̄b = x e, ∂c = -x e
        self.arrows.push((true, a, b, Scalar::one()));
        self.arrows.push((false, a, c, y.clone()));
        self.arrows.push((false, b, e, x.clone()));
        let yinv = y.inv().expect("nonzero");
        self.arrows.push((true, c, e, -(&x * &yinv)));
    }

    /// Lower elements at `(p+i, q-i)`, upper ones at `(p+i, q-i+1)`; the two
    /// end uppers are optional.
    fn zigzag(&mut self, rng: &mut SeededRng, p: usize, q: usize, len: usize, first: bool, last: bool) {
        let lowers: Vec<usize> = (0..len).map(|i| self.element(p + i, q - i)).collect();
        for i in 0..=len {
            if (i == 0 && !first) || (i == len && !last) {
                continue;
            }
            let (up, uq) = (p + i, q + 1 - i);
            if up > self.pmax || uq > self.qmax {
                continue;
            }
            let u = self.element(up, uq);
            if i < len {
                self.arrows.push((false, lowers[i], u, small_nonzero(rng)));
            }
            if i > 0 {
                self.arrows.push((true, lowers[i - 1], u, small_nonzero(rng)));
            }
        }
    }
}

/// A random valid bicomplex on the `(pmax+1) × (qmax+1)` grid: a direct sum
/// of dots, squares and zig-zags, scrambled by a random basis change in each cell.
pub fn random_bicomplex(rng: &mut SeededRng, pmax: usize, qmax: usize) -> Bicomplex {
    let mut pieces = Pieces { pmax, qmax, cells: Vec::new(), arrows: Vec::new() };
    let count = rng.gen_range(2..=6);
    for _ in 0..count {
        match rng.gen_range(0..3) {
            0 => {
                let (p, q) = (rng.gen_range(0..=pmax), rng.gen_range(0..=qmax));
                pieces.element(p, q);
            }
            1 if pmax > 0 && qmax > 0 => {
                let (p, q) = (rng.gen_range(0..pmax), rng.gen_range(0..qmax));
                pieces.square(rng, p, q);
            }
            _ => {
                let p = rng.gen_range(0..=pmax);
                let q = rng.gen_range(0..=qmax);
                let max_len = (pmax - p).min(q) + 1;
                let len = rng.gen_range(1..=max_len);
                let (first, last) = (rng.gen_bool(0.6), rng.gen_bool(0.6));
                pieces.zigzag(rng, p, q, len, first, last);
            }
        }
    }

    let mut dims = vec![vec![0usize; qmax + 1]; pmax + 1];
    let mut local = Vec::with_capacity(pieces.cells.len());
    for &(p, q) in &pieces.cells {
        local.push(dims[p][q]);
        dims[p][q] += 1;
    }
    let mut raw_del: Vec<Vec<Matrix>> = (0..=pmax)
        .map(|p| (0..=qmax).map(|q| Matrix::zeros(if p < pmax { dims[p + 1][q] } else { 0 }, dims[p][q])).collect())
        .collect();
    let mut raw_delbar: Vec<Vec<Matrix>> = (0..=pmax)
        .map(|p| (0..=qmax).map(|q| Matrix::zeros(if q < qmax { dims[p][q + 1] } else { 0 }, dims[p][q])).collect())
        .collect();
    for (is_del, s, t, c) in &pieces.arrows {
        let (p, q) = pieces.cells[*s];
        let m = if *is_del { &mut raw_del[p][q] } else { &mut raw_delbar[p][q] };
        m[(local[*t], local[*s])] = c.clone();
    }
    let change: Vec<Vec<Matrix>> =
        dims.iter().map(|row| row.iter().map(|&n| random_invertible(rng, n)).collect()).collect();
    let inverse: Vec<Vec<Matrix>> = change
        .iter()
        .map(|row| row.iter().map(|m| m.solve_many(&Matrix::identity(m.rows())).expect("invertible")).collect())
        .collect();
    Bicomplex::from_parts(
        pmax,
        qmax,
        &dims,
        |p, q| change[p + 1][q].mul(&raw_del[p][q]).mul(&inverse[p][q]),
        |p, q| change[p][q + 1].mul(&raw_delbar[p][q]).mul(&inverse[p][q]),
    )
    .expect("sums of squares and zig-zags satisfy the axioms")
}

/// A random 2-step nilpotent model with `declared` holomorphic generators,
/// homogeneous for integer weights `w(z_i)`, `w(z̄_i) = -w(z_i)`: a closed
/// first layer and a second layer with `(2,0) + (1,1)` differentials.
#[derive(Clone, Debug)]
pub struct RandomModel {
    pub model: ModelSpec,
    /// Weight of each declared generator.
    pub weights: Vec<i64>,
}

pub fn random_nilpotent_model(rng: &mut SeededRng, declared: usize) -> RandomModel {
    let first = rng.gen_range(1..=declared.max(1)).min(declared);
    let names: Vec<String> = (1..=declared).map(|i| format!("z{i}")).collect();
    let weights: Vec<i64> =
        (0..declared).map(|i| if i < first { rng.gen_range(-1..=1) } else { rng.gen_range(-2..=2) }).collect();
    let mut generators = Vec::new();
    for (i, name) in names.iter().enumerate() {
        let mut differential = Vec::new();
        if i >= first {
            for a in 0..first {
                for b in 0..first {
                    if a < b && weights[a] + weights[b] == weights[i] && rng.gen_bool(0.7) {
                        differential.push((small_nonzero(rng), vec![names[a].clone(), names[b].clone()]));
                    }
                    if weights[a] - weights[b] == weights[i] && rng.gen_bool(0.7) {
                        differential.push((small_nonzero(rng), vec![names[a].clone(), format!("c{}", names[b])]));
                    }
                }
            }
        }
        generators.push(GeneratorDesc {
            name: name.clone(),
            kind: GenType::Holomorphic,
            action_char: Vec::new(),
            differential,
            role: Role::Nil,
        });
    }
    let desc = ModelDescription {
        name: format!("random-nil-{declared}"),
        generators,
        flags: ModelFlags::default(),
        ..Default::default()
    };
    let model = build_model(&desc).expect("2-step nilpotent data is a valid model");
    RandomModel { model, weights }
}

/// The untwisted exterior algebra of a random model and its weight-zero
/// sub-algebra, which contains the volume form and is a sub-bicomplex
/// because every differential is weight-homogeneous.
pub fn random_subalgebra(random: &RandomModel) -> (Bicomplex, Bicomplex) {
    let model = &random.model;
    let n = model.n_chars();
    let full = assemble_bicomplex(model, |_| Some(CharExpr::trivial(n))).expect("full algebra is closed");
    let declared = random.weights.len();
    let weight = |m: Monomial| -> i64 {
        (0..model.n_generators())
            .filter(|&g| m.0 & 1 << g != 0)
            .map(|g| if g < declared { random.weights[g] } else { -random.weights[g - declared] })
            .sum()
    };
    let sub = assemble_bicomplex(model, |m| (weight(m) == 0).then(|| CharExpr::trivial(n)))
        .expect("weight spaces are sub-bicomplexes");
    (sub, full)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::TotDifferential;
    use crate::hodge::check_pd_type;
    use crate::specseq::{induced_page_maps, page_pd_check};

    #[test]
    fn random_bicomplexes_are_reproducible() {
        let a = random_bicomplex(&mut rng(7), 3, 3);
        let b = random_bicomplex(&mut rng(7), 3, 3);
        assert_eq!(a.shape(), b.shape());
        for (p, q) in a.cells() {
            assert_eq!(a.del(p, q), b.del(p, q));
            assert_eq!(a.delbar(p, q), b.delbar(p, q));
        }
    }

    #[test]
    fn random_models_are_pd_type() {
        let mut r = rng(11);
        for _ in 0..10 {
            let m = random_nilpotent_model(&mut r, 3);
            let (sub, full) = random_subalgebra(&m);
            assert!(check_pd_type(&full.tot(TotDifferential::Full)).is_pd);
            assert!(check_pd_type(&sub.tot(TotDifferential::Full)).is_pd);
            let maps = induced_page_maps(&sub, &full, false).unwrap();
            assert!(maps.injective.iter().all(|&x| x));
            let pd = page_pd_check(&sub, &maps.sub).unwrap();
            assert!(pd.iter().all(|p| p.dual_dims && p.pairing));
        }
    }
}
