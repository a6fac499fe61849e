use frolicher::algebra::TotDifferential;
use frolicher::exactalg::Scalar;
use frolicher::hodge::{check_pd_type, cohomology_dims};
use frolicher::random::{random_bicomplex, random_nilpotent_model, random_subalgebra, rng};
use frolicher::solvmodel::koszul_cohomology;
use frolicher::specseq::{frolicher_check, induced_page_maps, pages_direct, pages_iterative};
use proptest::prelude::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |a, i| a * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn koszul_complex_of_nonzero_weight_is_exact(w in proptest::collection::vec((-3i64..4, -2i64..3), 1..5)) {
        let w: Vec<Scalar> = w.into_iter().map(|(a, b)| Scalar::gaussian(a, b)).collect();
        let h = koszul_cohomology(&w);
        if w.iter().all(Scalar::is_zero) {
            prop_assert_eq!(h, (0..=w.len()).map(|k| binom(w.len(), k)).collect::<Vec<_>>());
        } else {
            prop_assert!(h.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn scalars_print_and_parse_back(a in -20i64..20, b in 1i64..9, c in -20i64..20, d in 1i64..9) {
        let x = Scalar::new(
            num_rational::BigRational::new(a.into(), b.into()),
            num_rational::BigRational::new(c.into(), d.into()),
        );
        prop_assert_eq!(x.to_string().parse::<Scalar>().unwrap(), x);
    }

    #[test]
    fn page_algorithms_agree(seed in any::<u64>(), pmax in 1usize..4, qmax in 1usize..4) {
        let b = random_bicomplex(&mut rng(seed), pmax, qmax);
        let direct = pages_direct(&b).unwrap();
        let iterative = pages_iterative(&b).unwrap();
        prop_assert_eq!(direct.degeneracy_step, iterative.degeneracy_step);
        prop_assert_eq!(direct.dims_table(), iterative.dims_table());
        let betti = cohomology_dims(&b.tot(TotDifferential::Full));
        prop_assert!(frolicher_check(&direct, &betti).ok);
    }

    #[test]
    fn weight_zero_subalgebras_inject_on_every_page(seed in any::<u64>()) {
        let m = random_nilpotent_model(&mut rng(seed), 2);
        let (sub, full) = random_subalgebra(&m);
        prop_assert!(check_pd_type(&sub.tot(TotDifferential::Full)).is_pd);
        let maps = induced_page_maps(&sub, &full, false).unwrap();
        prop_assert!(maps.injective.iter().all(|&x| x));
    }
}
