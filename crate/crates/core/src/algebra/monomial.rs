use std::fmt;

use super::CharExpr;

/// Exterior monomial: a set of generator indices, read in increasing order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(i: usize) -> Monomial {
        Monomial(1u64 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Option<(i32, Monomial)> {
        let mut sign = 1;
        let mut acc = Monomial::ONE;
        for &i in indices {
            let (s, m) = acc.wedge(Monomial::generator(i))?;
            sign *= s;
            acc = m;
        }
        Some((sign, acc))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// `self ∧ other` as a sign and a monomial; `None` when a generator repeats.
    pub fn wedge(self, other: Monomial) -> Option<(i32, Monomial)> {
        wedge_sign(self.0, other.0).map(|s| (s, Monomial(self.0 | other.0)))
    }
}

/// Sign of reordering `a ∧ b` into increasing order, for disjoint masks.
pub fn wedge_sign(a: u64, b: u64) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> j >> 1).count_ones();
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

/// A basis element `prefactor · monomial`: a character function times an exterior monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TwistedElement {
    pub prefactor: CharExpr,
    pub monomial: Monomial,
}

impl TwistedElement {
    pub fn new(prefactor: CharExpr, monomial: Monomial) -> Self {
        TwistedElement { prefactor, monomial }
    }

    pub fn plain(n_chars: usize, monomial: Monomial) -> Self {
        TwistedElement { prefactor: CharExpr::trivial(n_chars), monomial }
    }

    pub fn degree(&self) -> usize {
        self.monomial.degree()
    }

    /// Prefactors multiply and monomials merge with their permutation sign.
    pub fn wedge(&self, other: &TwistedElement) -> Option<(i32, TwistedElement)> {
        let (sign, m) = self.monomial.wedge(other.monomial)?;
        Some((sign, TwistedElement { prefactor: self.prefactor.mul(&other.prefactor), monomial: m }))
    }

    pub fn display<'a>(&'a self, names: &'a Names) -> impl fmt::Display + 'a {
        ElementDisplay { e: self, names }
    }
}

/// Generator and base-character names for rendering basis elements.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Names {
    pub generators: Vec<String>,
    pub characters: Vec<String>,
}

struct ElementDisplay<'a> {
    e: &'a TwistedElement,
    names: &'a Names,
}

impl fmt::Display for ElementDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.e.prefactor.is_trivial() {
            write!(f, "[{}]", self.e.prefactor.display(&self.names.characters))?;
        }
        if self.e.monomial == Monomial::ONE {
            return write!(f, "1");
        }
        let parts: Vec<&str> = self.e.monomial.indices().map(|i| self.names.generators[i].as_str()).collect();
        write!(f, "{}", parts.join("^"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_generator_vanishes() {
        let x1 = Monomial::generator(0);
        assert!(x1.wedge(x1).is_none());
    }

    #[test]
    fn transposition_sign() {
        let (y1, y2) = (Monomial::generator(1), Monomial::generator(2));
        let (s, m) = y2.wedge(y1).unwrap();
        assert_eq!(s, -1);
        assert_eq!(m, Monomial(0b110));
    }

    #[test]
    fn prefactors_cancel() {
        let chi = CharExpr::from(vec![1]);
        let a = TwistedElement::new(chi.clone(), Monomial::generator(1));
        let b = TwistedElement::new(chi.inverse(), Monomial::generator(7));
        let (s, e) = a.wedge(&b).unwrap();
        assert_eq!(s, 1);
        assert!(e.prefactor.is_trivial());
        assert_eq!(e.monomial, Monomial((1 << 1) | (1 << 7)));
    }

    #[test]
    fn graded_commutativity_on_monomials() {
        for a in 0u64..64 {
            for b in 0u64..64 {
                if let (Some(s1), Some(s2)) = (wedge_sign(a, b), wedge_sign(b, a)) {
                    let parity = (a.count_ones() * b.count_ones()) % 2;
                    assert_eq!(s1 * s2, if parity == 0 { 1 } else { -1 });
                }
            }
        }
    }
}
