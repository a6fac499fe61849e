use super::*;
use crate::algebra::{assemble_bicomplex, Bicomplex, CharExpr, TotDifferential};
use crate::cli::parse_model;
use crate::hodge::cohomology_dims;

pub(crate) const IWASAWA: &str = "name = iwasawa
[generators]
w1: type = 10, char = 1
w2: type = 10, char = 1
w3: type = 10, char = 1, d = w1^w2
[flags]
complex_parallelizable = true
";

pub(crate) const NILFACTOR: &str = "name = nil
[generators]
y1: type = 10, char = 1
y2: type = 10, char = 1, d = y1^cy1
y3: type = 10, char = 1, d = cy1^y2
";

pub(crate) fn full(text: &str) -> Bicomplex {
    let m = parse_model(text).unwrap();
    let n = m.n_chars();
    assemble_bicomplex(&m, |_| Some(CharExpr::trivial(n))).unwrap()
}

fn agree(b: &Bicomplex) -> (PageStack, PageStack) {
    let d = pages_direct(b).unwrap();
    let it = pages_iterative(b).unwrap();
    assert_eq!(d.dims_table(), it.dims_table());
    assert_eq!(d.degeneracy_step, it.degeneracy_step);
    for (a, b) in d.pages.iter().zip(&it.pages) {
        let ra: Vec<usize> = a.dr.values().map(|m| m.rank()).collect();
        let rb: Vec<usize> = b.dr.values().map(|m| m.rank()).collect();
        assert_eq!(ra, rb, "page {}", a.r);
    }
    (d, it)
}

#[test]
fn torus_degenerates_at_one() {
    let b = full("name = t\n[generators]\nz1: type = 10, char = 1\nz2: type = 10, char = 1\n");
    let (d, _) = agree(&b);
    assert_eq!(d.degeneracy_step, 1);
    assert_eq!(d.page(1).dims(), d.page(0).dims());
}

#[test]
fn zero_bicomplex_pages() {
    let b = Bicomplex::empty();
    let (d, _) = agree(&b);
    assert_eq!(d.degeneracy_step, 1);
}

#[test]
fn iwasawa_degenerates_at_two() {
    let b = full(IWASAWA);
    let (d, _) = agree(&b);
    assert_eq!(d.degeneracy_step, 2);
    assert!(d.page(1).total_dr_rank() > 0);
    assert!(d.page(2).dr_is_zero());
    let betti = cohomology_dims(&b.tot(TotDifferential::Full));
    assert!(frolicher_check(&d, &betti).ok);
}

#[test]
fn nilmanifold_factor_needs_three_pages() {
    let b = full(NILFACTOR);
    let (d, _) = agree(&b);
    assert!(d.degeneracy_step >= 3, "r = {}", d.degeneracy_step);
    let betti = cohomology_dims(&b.tot(TotDifferential::Full));
    assert!(frolicher_check(&d, &betti).ok);
}

#[test]
fn first_page_is_column_cohomology() {
    let b = full(NILFACTOR);
    let d = pages_direct(&b).unwrap();
    for p in 0..=3 {
        let col = cohomology_dims(&b.column(p));
        for (q, &h) in col.iter().enumerate() {
            assert_eq!(d.page(1).dim(p, q), h);
        }
    }
}

#[test]
fn pages_are_pd_on_exterior_algebras() {
    for text in [IWASAWA, NILFACTOR] {
        let b = full(text);
        let d = pages_direct(&b).unwrap();
        for v in page_pd_check(&b, &d).unwrap() {
            assert!(v.dual_dims && v.pairing, "{text} page {}", v.r);
        }
    }
}

#[test]
fn kunneth_of_tori() {
    let t = full("name = t\n[generators]\nz: type = 10, char = 1\n");
    let k = kunneth(&t, &t).unwrap();
    assert!(k.ok);
    assert_eq!(k.dims, vec![1, 4, 6, 4, 1]);
    let unit = full("name = u\n[generators]\n");
    let k = kunneth(&unit, &t).unwrap();
    assert_eq!(k.dims, vec![1, 2, 1]);
    assert!(k.ok);
}

#[test]
fn identity_inclusion_is_injective() {
    let b = full(IWASAWA);
    let maps = induced_page_maps(&b, &b, false).unwrap();
    assert!(maps.injective.iter().all(|&x| x));
}
