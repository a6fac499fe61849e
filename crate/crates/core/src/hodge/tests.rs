use super::*;
use crate::algebra::{assemble_bicomplex, Monomial, TotDifferential};
use crate::cli::parse_model;

const TORUS1: &str = "name = t\n[generators]\nx1: type = 10, char = 1\n";
const TORUS2: &str = "name = t2\n[generators]\nx1: type = 10, char = 1\nx2: type = 10, char = 1\n";
const HEIS: &str =
    "name = h\n[generators]\na: type = 10, char = 1\nb: type = 10, char = 1\nc: type = 10, char = 1, d = a^b\n";

fn full(text: &str) -> GradedComplex {
    let m = parse_model(text).unwrap();
    let n = m.n_chars();
    assemble_bicomplex(&m, |_| Some(crate::algebra::CharExpr::trivial(n))).unwrap().tot(TotDifferential::Full)
}

fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[test]
fn exterior_algebra_is_pd() {
    for text in [TORUS1, TORUS2, HEIS] {
        let r = check_pd_type(&full(text));
        assert!(r.is_pd, "{:?}", r.failures);
    }
}

#[test]
fn star_on_one_pair() {
    let c = full(TORUS1);
    let star = BarStar::new(&c).unwrap();
    // Tot^1 lists cell (0,1) before (1,0): cx1, x1
    assert_eq!(c.labels[1], vec!["cx1".to_string(), "x1".to_string()]);
    assert_eq!(star.apply(1, &unit(2, 1)), unit(2, 0));
    assert_eq!(star.apply(0, &unit(1, 0)), unit(1, 0));
    assert_eq!(star.apply(2, &unit(1, 0)), unit(1, 0));
    assert_eq!(c.labels[2][0], "x1^cx1");
}

#[test]
fn star_is_antilinear() {
    let c = full(TORUS1);
    let star = BarStar::new(&c).unwrap();
    let x = vec![Scalar::zero(), Scalar::i()];
    assert_eq!(star.apply(1, &x), vec![-Scalar::i(), Scalar::zero()]);
}

#[test]
fn star_squared_sign_law() {
    let c = full(HEIS);
    let star = BarStar::new(&c).unwrap();
    let n = c.top();
    for k in 0..=n {
        for i in 0..c.dim(k) {
            let x = unit(c.dim(k), i);
            let twice = star.apply(n - k, &star.apply(k, &x));
            let sign = if (k * (n - k)) % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
            assert_eq!(twice, crate::exactalg::vec_scale(&x, &sign));
        }
    }
}

#[test]
fn adjointness_and_decomposition() {
    let c = full(HEIS);
    let data = laplacian(&c).unwrap();
    for k in 0..=c.top() {
        decompose_from(&data, &c, k).unwrap();
    }
    let h = cohomology(&c).unwrap();
    assert!(h.harmonic);
    assert_eq!(h.pd_of_cohomology, Some(true));
    let n = c.top();
    for k in 0..=n {
        assert_eq!(h.dims[k], h.dims[n - k]);
    }
}

#[test]
fn zero_differential_everything_harmonic() {
    let c = full(TORUS2);
    let data = laplacian(&c).unwrap();
    for k in 0..=c.top() {
        assert!(data.laplacian[k].is_zero());
        assert_eq!(data.harmonic[k].dim(), c.dim(k));
    }
    assert_eq!(cohomology(&c).unwrap().dims, vec![1, 4, 6, 4, 1]);
}

#[test]
fn two_term_complex_has_no_harmonics() {
    let c = GradedComplex::from_parts(vec![1, 1], vec![Matrix::from_i64(&[&[3]]), Matrix::zeros(0, 1)]).unwrap();
    let (h, e, ce) = hodge_decompose(&c, 0).unwrap();
    assert_eq!((h.dim(), e.dim(), ce.dim()), (0, 0, 1));
    let (h, e, ce) = hodge_decompose(&c, 1).unwrap();
    assert_eq!((h.dim(), e.dim(), ce.dim()), (0, 1, 0));
}

#[test]
fn subalgebra_without_partner_fails_pd() {
    // ⋀⟨x1⟩ alone is PD of dimension 1; dropping only the volume x1∧x̄1 is not
    let m = parse_model(TORUS1).unwrap();
    let b = assemble_bicomplex(&m, |mono| (mono.0 != 0b11).then(|| crate::algebra::CharExpr::trivial(0))).unwrap();
    let r = check_pd_type(&b.tot(TotDifferential::Full));
    assert!(!r.is_pd);
    assert!(!r.failures.is_empty());
}

#[test]
fn inclusion_of_harmonic_subalgebra_is_injective() {
    let m = parse_model(TORUS1).unwrap();
    let amb = assemble_bicomplex(&m, |_| Some(crate::algebra::CharExpr::trivial(0))).unwrap();
    let sub = assemble_bicomplex(&m, |mono| {
        (mono == Monomial::ONE || mono == Monomial(0b11)).then(|| crate::algebra::CharExpr::trivial(0))
    })
    .unwrap();
    let (a, b) = (sub.tot(TotDifferential::Full), amb.tot(TotDifferential::Full));
    assert!(check_pd_type(&a).is_pd);
    let f = crate::algebra::tot_inclusion(&sub, &amb).unwrap();
    let map = induced_map(&a, &b, &f).unwrap();
    assert!(map.injective.iter().all(|&x| x));
}
