use std::collections::BTreeMap;

use super::{add_into, wedge_sign, ModelError, Monomial, QuadExpr};
use crate::exactalg::Scalar;

/// Structure constants of a Lie algebra: `[e_a, e_b] = sum_k c[a][b][k] e_k`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bracket {
    pub dim: usize,
    pub constants: Vec<Vec<Vec<Scalar>>>,
}

impl Bracket {
    pub fn abelian(dim: usize) -> Self {
        Bracket { dim, constants: vec![vec![vec![Scalar::zero(); dim]; dim]; dim] }
    }

    /// Sets `[e_a, e_b] = sum c e_k` together with `[e_b, e_a]`.
    pub fn set(&mut self, a: usize, b: usize, value: &[(usize, Scalar)]) {
        for k in 0..self.dim {
            self.constants[a][b][k] = Scalar::zero();
            self.constants[b][a][k] = Scalar::zero();
        }
        for (k, c) in value {
            self.constants[a][b][*k] += c;
            self.constants[b][a][*k] -= c;
        }
    }

    fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (a, xa) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let xy = xa * yb;
                for (k, c) in self.constants[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&xy * c);
                    }
                }
            }
        }
        out
    }
}

/// Chevalley-Eilenberg differentials of the dual basis, with the convention
/// `dξ(X, Y) = -ξ([X, Y])`, so `dω^k = -sum_{a<b} c[a][b][k] ω^a ∧ ω^b`.
pub fn ce_differential(br: &Bracket) -> Result<Vec<QuadExpr>, ModelError> {
    let n = br.dim;
    for a in 0..n {
        for b in a..n {
            let ok = (0..n).all(|k| br.constants[a][b][k] == -br.constants[b][a][k].clone());
            if !ok {
                return Err(ModelError::Antisymmetry(a, b));
            }
        }
    }
    let unit = |i: usize| {
        let mut v = vec![Scalar::zero(); n];
        v[i] = Scalar::one();
        v
    };
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let (ea, eb, ec) = (unit(a), unit(b), unit(c));
                let t1 = br.bracket(&br.bracket(&ea, &eb), &ec);
                let t2 = br.bracket(&br.bracket(&eb, &ec), &ea);
                let t3 = br.bracket(&br.bracket(&ec, &ea), &eb);
                if t1.iter().zip(&t2).zip(&t3).any(|((x, y), z)| !(x + y + z.clone()).is_zero()) {
                    return Err(ModelError::Jacobi(a, b, c));
                }
            }
        }
    }
    let mut d = vec![QuadExpr::zero(); n];
    for (k, dk) in d.iter_mut().enumerate() {
        for a in 0..n {
            for b in a + 1..n {
                let c = &br.constants[a][b][k];
                if !c.is_zero() {
                    dk.add_term(-c.clone(), a, b);
                }
            }
        }
    }
    for (k, dk) in d.iter().enumerate() {
        if !d_of_quadratic(&d, dk).is_empty() {
            return Err(ModelError::DSquaredNonzero { generator: format!("ω{}", k + 1) });
        }
    }
    Ok(d)
}

/// `d` applied to a quadratic expression by the Leibniz rule.
fn d_of_quadratic(d: &[QuadExpr], q: &QuadExpr) -> BTreeMap<Monomial, Scalar> {
    let mut out = BTreeMap::new();
    for (m, c) in q.terms() {
        let idx: Vec<usize> = m.indices().collect();
        let (a, b) = (idx[0], idx[1]);
        // d(ω^a ∧ ω^b) = dω^a ∧ ω^b - ω^a ∧ dω^b
        for (t, c2) in d[a].terms() {
            if let Some(s) = wedge_sign(t.0, 1 << b) {
                let v = c * c2;
                add_into(&mut out, Monomial(t.0 | 1 << b), &if s < 0 { -v } else { v });
            }
        }
        for (t, c2) in d[b].terms() {
            if let Some(s) = wedge_sign(1 << a, t.0) {
                let v = c * c2;
                add_into(&mut out, Monomial(t.0 | 1 << a), &if s < 0 { v } else { -v });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abelian_has_zero_differential() {
        let d = ce_differential(&Bracket::abelian(4)).unwrap();
        assert!(d.iter().all(QuadExpr::is_zero));
    }

    #[test]
    fn heisenberg_sign() {
        let mut br = Bracket::abelian(3);
        br.set(0, 1, &[(2, Scalar::from_int(-1))]);
        let d = ce_differential(&br).unwrap();
        let mut expected = QuadExpr::zero();
        expected.add_term(Scalar::one(), 0, 1);
        assert_eq!(d[2], expected);
        assert!(d[0].is_zero() && d[1].is_zero());
    }

    #[test]
    fn iwasawa_is_type_20() {
        let mut br = Bracket::abelian(3);
        br.set(0, 1, &[(2, Scalar::from_int(-1))]);
        let d = ce_differential(&br).unwrap();
        assert_eq!(d[2].terms().next().map(|(m, c)| (*m, c.clone())), Some((Monomial(0b011), Scalar::one())));
    }

    #[test]
    fn jacobi_failure_is_reported() {
        // [e0,e1]=e1, [e1,e2]=e0, [e0,e2]=0 violates Jacobi
        let mut br = Bracket::abelian(3);
        br.set(0, 1, &[(1, Scalar::one())]);
        br.set(1, 2, &[(0, Scalar::one())]);
        assert!(matches!(ce_differential(&br), Err(ModelError::Jacobi(0, 1, 2))));
    }

    #[test]
    fn non_antisymmetric_table_is_rejected() {
        let mut br = Bracket::abelian(2);
        br.constants[0][1][0] = Scalar::one();
        assert!(matches!(ce_differential(&br), Err(ModelError::Antisymmetry(0, 1))));
    }
}
