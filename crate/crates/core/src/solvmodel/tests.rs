use super::*;
use crate::cli::parse_model;
use crate::exactalg::Scalar;

const EXAMPLE1: &str = include_str!("../../corpus/example1-b2pi.model");
const EXAMPLE1_B1: &str = include_str!("../../corpus/example1-b1.model");
const EXAMPLE2: &str = include_str!("../../corpus/example2.model");
const NAKAMURA: &str = include_str!("../../corpus/nakamura.model");
const IWASAWA: &str = include_str!("../../corpus/iwasawa.model");
const TORUS3: &str = include_str!("../../corpus/torus3.model");

fn model(text: &str) -> ModelSpec {
    parse_model(text).unwrap()
}

fn labels(b: &Bicomplex, p: usize, q: usize) -> Vec<String> {
    b.labels(p, q).to_vec()
}

#[test]
fn unitary_character_is_its_own_unitary_part() {
    let m = model(EXAMPLE2);
    let res = resolve_characters(&m).unwrap();
    assert_eq!(res.base, vec![CharExpr(vec![1])]);
    for g in &res.generators {
        assert_eq!(g.beta, g.alpha);
        assert_eq!(g.gamma, m.conj_char(&g.alpha));
        assert!(g.beta_quotient.is_trivial() && g.gamma_quotient.is_trivial());
    }
}

#[test]
fn real_exponential_resolves_to_rotation() {
    let m = model(EXAMPLE1);
    let res = resolve_characters(&m).unwrap();
    // a = e^x has unitary part s = e^{-iy}; s is unitary already
    assert_eq!(res.base, vec![CharExpr(vec![0, 1]), CharExpr(vec![0, 1])]);
    let y1 = &res.generators[1];
    assert_eq!(y1.beta, CharExpr(vec![0, 1]));
    // α β⁻¹ = e^x e^{iy} = e^z
    let w = m.weight(&y1.beta_quotient);
    let x1 = m.generator_index("x1").unwrap();
    for (g, c) in w.0.iter().enumerate() {
        assert_eq!(*c, if g == x1 { Scalar::one() } else { Scalar::zero() });
    }
    assert!(y1.beta_trivial);
}

#[test]
fn resolution_is_idempotent() {
    for text in [EXAMPLE1, EXAMPLE2, NAKAMURA] {
        let m = model(text);
        let res = resolve_characters(&m).unwrap();
        for b in &res.base {
            assert_eq!(m.weight(&res.unitary_part(b)), m.weight(b));
        }
    }
}

#[test]
fn declared_unitary_part_is_checked() {
    let good = EXAMPLE1.replace("conj = a, dlog10", "conj = a, unitary = s, dlog10");
    assert!(resolve_characters(&model(&good)).is_ok());
    let bad = EXAMPLE1.replace("conj = a, dlog10", "conj = a, unitary = s^-1, dlog10");
    assert!(matches!(resolve_characters(&model(&bad)), Err(SolvError::OverrideMismatch { .. })));
}

#[test]
fn missing_unitary_base_character_is_reported() {
    let text = "name = e
[scalars]
h = 1/2
[base_chars]
a: kind = general, conj = a, dlog10 = h*x1, dlog01 = h*cx1
[generators]
x1: type = 10, char = 1, role = abelian
y1: type = 10, char = a
";
    assert!(matches!(resolve_characters(&model(text)), Err(SolvError::UncoveredCharacter { .. })));
}

#[test]
fn nilpotent_weights_of_example2() {
    let m = model(EXAMPLE2);
    let blocks = weight_decomposition(&m, Decomposition::Nilpotent).unwrap();
    let y1 = m.generator_index("y1").unwrap();
    let cy3 = m.generator_index("cy3").unwrap();
    let mono = crate::algebra::Monomial(1 << y1 | 1 << cy3);
    let block = blocks.iter().find(|b| b.basis.contains(&mono)).unwrap();
    assert_eq!(block.weight, CharExpr(vec![2]));
    assert!(block.selected);
    assert_eq!(blocks.iter().map(|b| b.basis.len()).sum::<usize>(), 64);
}

#[test]
fn nilpotent_weights_of_example1() {
    let blocks = weight_decomposition(&model(EXAMPLE1), Decomposition::Nilpotent).unwrap();
    let exps: Vec<i64> = blocks.iter().map(|b| b.weight.0[0]).collect();
    assert_eq!(exps, vec![-2, -1, 0, 1, 2]);
    assert_eq!(blocks.iter().map(|b| b.basis.len()).collect::<Vec<_>>(), vec![1, 4, 6, 4, 1]);
}

#[test]
fn trivial_action_gives_one_block() {
    let blocks = weight_decomposition(&model(TORUS3), Decomposition::Nilpotent).unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0].basis, vec![crate::algebra::Monomial::ONE]);
    let blocks = weight_decomposition(&model(IWASAWA), Decomposition::Holomorphic).unwrap();
    assert_eq!(blocks.len(), 1);
    assert_eq!(blocks[0].basis.len(), 8);
}

#[test]
fn example2_bases_match_the_listed_ones() {
    let m = model(EXAMPLE2);
    let b = build_b_corr(&m, &resolve_characters(&m).unwrap()).unwrap();
    assert_eq!(labels(&b, 1, 0), vec!["x1", "y2"]);
    assert_eq!(labels(&b, 0, 3), vec!["cx1^cy1^cy3", "cy1^cy2^cy3"]);
    assert_eq!(labels(&b, 2, 0), vec!["x1^y2", "y1^y3"]);
    let dims: Vec<usize> = [(1, 1), (2, 1), (1, 2), (3, 0)].iter().map(|&(p, q)| b.dim(p, q)).collect();
    assert_eq!(dims, vec![8, 12, 12, 2]);
}

#[test]
fn trivial_characters_give_full_model() {
    let m = model(TORUS3);
    let b = build_b_corr(&m, &resolve_characters(&m).unwrap()).unwrap();
    assert_eq!(b.total_dim(), 64);
    assert_eq!(build_b_mmtt(&model(IWASAWA)).unwrap().total_dim(), 64);
}

#[test]
fn nakamura_selects_paired_indices() {
    let b = build_b_mmtt(&model(NAKAMURA)).unwrap();
    assert_eq!(labels(&b, 0, 1), vec!["cx1"]);
    assert_eq!(labels(&b, 0, 2), vec!["cx2^cx3"]);
    assert_eq!(labels(&b, 0, 3), vec!["cx1^cx2^cx3"]);
}

#[test]
fn mmtt_needs_flag() {
    assert!(matches!(build_b_mmtt(&model(EXAMPLE2)), Err(SolvError::MissingFlag { .. })));
}

#[test]
fn example2_has_empty_d() {
    let m = model(EXAMPLE2);
    let s = split_cd(&m, &resolve_characters(&m).unwrap(), false).unwrap();
    assert_eq!(s.d.total_dim(), 0);
    assert!(s.ok());
}

#[test]
fn example1_split_kills_d_at_e2() {
    let m = model(EXAMPLE1);
    let s = split_cd(&m, &resolve_characters(&m).unwrap(), false).unwrap();
    assert!(s.d.total_dim() > 0);
    assert_eq!(s.koszul.len(), 4);
    assert!(s.ok(), "{:?}", s.koszul);
    // the lattice of b = 1 drops every twisted block
    let m = model(EXAMPLE1_B1);
    let s = split_cd(&m, &resolve_characters(&m).unwrap(), false).unwrap();
    assert_eq!(s.d.total_dim(), 0);
}

#[test]
fn koszul_complex_is_exact_for_nonzero_weight() {
    assert_eq!(koszul_cohomology(&[Scalar::one(), Scalar::zero(), Scalar::gaussian(2, -1)]), vec![0, 0, 0, 0]);
    assert_eq!(koszul_cohomology(&[Scalar::zero(), Scalar::zero()]), vec![1, 2, 1]);
    assert_eq!(koszul_cohomology(&[]), vec![1]);
}

#[test]
fn cos_pipeline_on_complex_parallelizable_models() {
    for (text, r) in [(TORUS3, 1), (IWASAWA, 2), (NAKAMURA, 2)] {
        let rep = pipeline_cos(&model(text), false).unwrap();
        assert_eq!(rep.r, r);
        assert!(rep.ok(), "{:?}", rep.blocks);
    }
}

#[test]
fn sps_pipeline_sharpness() {
    let rep = pipeline_sps(&model(EXAMPLE2), false).unwrap();
    assert!(rep.r_nil >= 3);
    assert_eq!(rep.r_g, 1);
    assert!(rep.ok());
    let rep = pipeline_sps(&model(EXAMPLE1), false).unwrap();
    assert_eq!((rep.r_nil, rep.r_g), (1, 2));
    assert!(rep.ok());
}

#[test]
fn example2_tables() {
    let (c, b) = manifold_bicomplex(&model(EXAMPLE2)).unwrap();
    assert_eq!(c, Construction::Corr);
    let h = dolbeault_dims(&b);
    let cells = [(1, 0), (0, 1), (2, 0), (3, 0), (0, 3), (2, 1), (1, 2)];
    assert_eq!(cells.map(|c| h[&c]), [1, 2, 0, 1, 2, 4, 6]);
    let betti = betti_numbers(&b);
    assert_eq!(&betti[..4], &[1, 3, 6, 13]);
    assert!(euler_checks(&h, &betti, 4).ok());
}
