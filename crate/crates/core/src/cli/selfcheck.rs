//! The invariant suite on seeded random instances and on the corpus.

use rand::Rng;

use crate::algebra::{tot_inclusion, Bicomplex, GradedComplex, TotDifferential};
use crate::corpus::{corpus_get, corpus_list};
use crate::hodge::{check_pd_type, cohomology_dims, decompose_from, induced_map, laplacian, laplacian_adjoint};
use crate::random::{random_bicomplex, random_nilpotent_model, random_subalgebra, rng};
use crate::solvmodel::{manifold_bicomplex, pipeline_sps};
use crate::specseq::{
    check_page_invariants, frolicher_check, induced_page_maps, page_pd_check, pages_direct_with, pages_iterative,
    PageStack,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub name: &'static str,
    pub passed: usize,
    pub total: usize,
    pub first_failure: Option<String>,
}

impl Tally {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub tallies: Vec<Tally>,
}

impl SuiteReport {
    fn record(&mut self, name: &'static str, instance: &str, outcome: Result<bool, String>) {
        let i = match self.tallies.iter().position(|t| t.name == name) {
            Some(i) => i,
            None => {
                self.tallies.push(Tally { name, passed: 0, total: 0, first_failure: None });
                self.tallies.len() - 1
            }
        };
        let t = &mut self.tallies[i];
        t.total += 1;
        match outcome {
            Ok(true) => t.passed += 1,
            Ok(false) => {
                t.first_failure.get_or_insert_with(|| instance.to_string());
            }
            Err(e) => {
                t.first_failure.get_or_insert_with(|| format!("{instance}: {e}"));
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.tallies.iter().all(Tally::ok)
    }

    pub fn get(&self, name: &str) -> Option<&Tally> {
        self.tallies.iter().find(|t| t.name == name)
    }

    /// All named properties pass (and were exercised at least once).
    pub fn all_ok(&self, names: &[&str]) -> bool {
        names.iter().all(|n| self.get(n).is_some_and(|t| t.ok() && t.total > 0))
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for t in other.tallies {
            match self.tallies.iter_mut().find(|x| x.name == t.name) {
                Some(x) => {
                    x.passed += t.passed;
                    x.total += t.total;
                    if x.first_failure.is_none() {
                        x.first_failure = t.first_failure;
                    }
                }
                None => self.tallies.push(t),
            }
        }
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Both page algorithms, the page invariants and the Frölicher identity.
fn oracle_checks(s: &mut SuiteReport, id: &str, b: &Bicomplex, parallel: bool) -> Option<PageStack> {
    let direct = match pages_direct_with(b, None, parallel) {
        Ok(d) => d,
        Err(e) => {
            s.record("oracle_agreement", id, Err(err(e)));
            return None;
        }
    };
    let agree = pages_iterative(b).map_err(err).map(|it| {
        it.degeneracy_step == direct.degeneracy_step
            && (0..direct.pages.len().max(it.pages.len())).all(|r| direct.page(r).dims() == it.page(r).dims())
    });
    s.record("oracle_agreement", id, agree);
    s.record("page_invariants", id, check_page_invariants(&direct).map(|_| true).map_err(err));
    let betti = cohomology_dims(&b.tot(TotDifferential::Full));
    s.record("frolicher_identity", id, Ok(frolicher_check(&direct, &betti).ok));
    Some(direct)
}

/// Adjointness (inside [`laplacian`]), the three-part decomposition and
/// harmonic dimensions against ranks, in every degree.
fn hodge_checks(s: &mut SuiteReport, id: &str, c: &GradedComplex, with_product: bool) {
    let data = if with_product {
        match laplacian(c) {
            Ok(d) => {
                s.record("adjointness", id, Ok(true));
                d
            }
            Err(e) => {
                s.record("adjointness", id, Err(err(e)));
                return;
            }
        }
    } else {
        laplacian_adjoint(c)
    };
    let ranks = cohomology_dims(c);
    let decomposed = (0..=c.top()).try_for_each(|k| decompose_from(&data, c, k).map(|_| ())).map(|_| true).map_err(err);
    s.record("hodge_decomposition", id, decomposed);
    s.record("harmonic_equals_rank", id, Ok((0..=c.top()).all(|k| data.harmonic[k].dim() == ranks[k])));
}

fn page_pd(s: &mut SuiteReport, id: &str, b: &Bicomplex, stack: &PageStack) {
    let pd = page_pd_check(b, stack).map(|v| v.iter().all(|p| p.dual_dims && p.pairing)).map_err(err);
    s.record("page_pd", id, pd);
}

/// `count` random bicomplexes and `count / 4` random models with their
/// weight-zero sub-algebras, all from `seed`.
pub fn random_suite(seed: u64, count: usize, parallel: bool) -> SuiteReport {
    let mut s = SuiteReport::default();
    let mut r = rng(seed);
    for i in 0..count {
        let (pmax, qmax) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let b = random_bicomplex(&mut r, pmax, qmax);
        let id = format!("bicomplex {i}");
        s.record("bicomplex_axioms", &id, b.verify_axioms().map(|_| true).map_err(err));
        oracle_checks(&mut s, &id, &b, parallel);
        hodge_checks(&mut s, &id, &b.tot(TotDifferential::Full), false);
    }
    for i in 0..count / 4 {
        let declared = r.gen_range(2..=3);
        let m = random_nilpotent_model(&mut r, declared);
        let (sub, full) = random_subalgebra(&m);
        for (which, b) in [("full", &full), ("sub", &sub)] {
            let id = format!("model {i} {which}");
            let tot = b.tot(TotDifferential::Full);
            s.record("pd_type", &id, Ok(check_pd_type(&tot).is_pd));
            hodge_checks(&mut s, &id, &tot, true);
            if let Some(stack) = oracle_checks(&mut s, &id, b, parallel) {
                page_pd(&mut s, &id, b, &stack);
            }
        }
        let id = format!("model {i}");
        let cohom = tot_inclusion(&sub, &full)
            .map_err(err)
            .and_then(|f| {
                induced_map(&sub.tot(TotDifferential::Full), &full.tot(TotDifferential::Full), &f).map_err(err)
            })
            .map(|m| m.injective.iter().all(|&x| x));
        s.record("induced_injective", &id, cohom);
        let pages = induced_page_maps(&sub, &full, parallel).map(|m| m.injective.iter().all(|&x| x)).map_err(err);
        s.record("page_injective", &id, pages);
    }
    s
}

/// The same properties on every corpus model; page injections use the
/// `C ⊂ ⋀(ℂⁿ ⊕ n)*` inclusion of the semi-direct models.
pub fn corpus_suite(parallel: bool) -> SuiteReport {
    let mut s = SuiteReport::default();
    for name in corpus_list() {
        let model = corpus_get(name).expect("corpus entries parse").model();
        let b = match manifold_bicomplex(&model) {
            Ok((_, b)) => b,
            Err(e) => {
                s.record("bicomplex_axioms", name, Err(err(e)));
                continue;
            }
        };
        s.record("bicomplex_axioms", name, b.verify_axioms().map(|_| true).map_err(err));
        let tot = b.tot(TotDifferential::Full);
        let pd = check_pd_type(&tot).is_pd;
        s.record("pd_type", name, Ok(pd));
        let stack = oracle_checks(&mut s, name, &b, parallel);
        if pd {
            hodge_checks(&mut s, name, &tot, true);
            if let Some(stack) = stack {
                page_pd(&mut s, name, &b, &stack);
            }
        }
        if model.flags.assumption12 {
            let rep = pipeline_sps(&model, parallel).map_err(err);
            s.record("page_injective", name, rep.map(|r| !r.injective.is_empty() && r.injective.iter().all(|&x| x)));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_random_suite_passes() {
        let s = random_suite(3, 8, false);
        assert!(s.ok(), "{:?}", s.tallies.iter().filter(|t| !t.ok()).collect::<Vec<_>>());
        assert_eq!(s.get("oracle_agreement").unwrap().total, 8 + 2 * 2);
    }

    #[test]
    fn failures_are_tallied() {
        let mut s = SuiteReport::default();
        s.record("x", "a", Ok(true));
        s.record("x", "b", Ok(false));
        s.record("x", "c", Err("boom".into()));
        let t = s.get("x").unwrap();
        assert_eq!((t.passed, t.total, t.first_failure.as_deref()), (1, 3, Some("b")));
        assert!(!s.ok());
    }
}
