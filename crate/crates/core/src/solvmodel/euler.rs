use std::collections::BTreeMap;

/// Euler characteristic and duality verdicts on Dolbeault and de Rham tables
/// of a compact complex `n`-fold with trivial Chern classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub n: usize,
    pub chi: i64,
    pub chi_zero: bool,
    /// `sum_q (-1)^q h^{p,q}` for each `p`.
    pub column_sums: Vec<i64>,
    pub columns_zero: bool,
    /// `b_k = b_{2n-k}`.
    pub poincare: bool,
    /// `h^{p,q} = h^{n-p,n-q}`.
    pub serre: bool,
}

impl EulerReport {
    pub fn ok(&self) -> bool {
        self.chi_zero && self.columns_zero && self.poincare && self.serre
    }
}

fn alternating(values: impl Iterator<Item = usize>) -> i64 {
    values.enumerate().map(|(k, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) }).sum()
}

pub fn euler_checks(dolbeault: &BTreeMap<(usize, usize), usize>, betti: &[usize], n: usize) -> EulerReport {
    let h = |p: usize, q: usize| dolbeault.get(&(p, q)).copied().unwrap_or(0);
    let b = |k: usize| betti.get(k).copied().unwrap_or(0);
    let chi = alternating((0..=2 * n).map(b));
    let column_sums: Vec<i64> = (0..=n).map(|p| alternating((0..=n).map(|q| h(p, q)))).collect();
    let poincare = (0..=2 * n).all(|k| b(k) == b(2 * n - k)) && betti.len() <= 2 * n + 1;
    let serre = (0..=n).all(|p| (0..=n).all(|q| h(p, q) == h(n - p, n - q)))
        && dolbeault.iter().all(|(&(p, q), &v)| v == 0 || (p <= n && q <= n));
    EulerReport {
        n,
        chi,
        chi_zero: chi == 0,
        columns_zero: column_sums.iter().all(|&s| s == 0),
        column_sums,
        poincare,
        serre,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn torus_tables_pass() {
        for n in 1..5 {
            let dol = (0..=n).flat_map(|p| (0..=n).map(move |q| ((p, q), binom(n, p) * binom(n, q)))).collect();
            let betti: Vec<usize> = (0..=2 * n).map(|k| binom(2 * n, k)).collect();
            let r = euler_checks(&dol, &betti, n);
            assert!(r.ok(), "{r:?}");
        }
    }

    #[test]
    fn broken_duality_is_reported() {
        let dol: BTreeMap<_, _> = [((0, 0), 1), ((1, 1), 1), ((0, 1), 1)].into_iter().collect();
        let r = euler_checks(&dol, &[1, 1, 1], 1);
        assert!(!r.serre);
        assert!(!r.chi_zero);
        assert!(r.poincare);
    }
}
