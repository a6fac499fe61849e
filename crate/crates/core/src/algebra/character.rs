use std::fmt;

use crate::exactalg::Scalar;

/// A character written multiplicatively over the declared base characters.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct CharExpr(pub Vec<i64>);

impl CharExpr {
    pub fn trivial(n: usize) -> Self {
        CharExpr(vec![0; n])
    }

    pub fn unit(n: usize, k: usize) -> Self {
        let mut v = vec![0; n];
        v[k] = 1;
        CharExpr(v)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.0
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &CharExpr) -> CharExpr {
        CharExpr(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> CharExpr {
        CharExpr(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, k: i64) -> CharExpr {
        CharExpr(self.0.iter().map(|a| a * k).collect())
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        CharDisplay { c: self, names }
    }
}

impl From<Vec<i64>> for CharExpr {
    fn from(v: Vec<i64>) -> Self {
        CharExpr(v)
    }
}

struct CharDisplay<'a> {
    c: &'a CharExpr,
    names: &'a [String],
}

impl fmt::Display for CharDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .c
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| if e == 1 { self.names[k].clone() } else { format!("{}^{}", self.names[k], e) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CharKind {
    Holomorphic,
    Antiholomorphic,
    Unitary,
    General,
}

impl CharKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CharKind::Holomorphic => "holomorphic",
            CharKind::Antiholomorphic => "antiholomorphic",
            CharKind::Unitary => "unitary",
            CharKind::General => "general",
        }
    }

    pub fn parse(s: &str) -> Option<CharKind> {
        Some(match s {
            "holomorphic" => CharKind::Holomorphic,
            "antiholomorphic" => CharKind::Antiholomorphic,
            "unitary" => CharKind::Unitary,
            "general" => CharKind::General,
            _ => return None,
        })
    }
}

/// Logarithmic derivative of a character: a closed 1-form, stored densely
/// over all generators. Holomorphic generators carry the (1,0) part,
/// antiholomorphic ones the (0,1) part.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Weight(pub Vec<Scalar>);

impl Weight {
    pub fn zero(n_generators: usize) -> Self {
        Weight(vec![Scalar::zero(); n_generators])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn add_scaled(&mut self, other: &Weight, k: i64) {
        if k == 0 {
            return;
        }
        let c = Scalar::from_int(k);
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            if !b.is_zero() {
                *a += &(b * &c);
            }
        }
    }
}

/// A declared base character with its log-derivative and conjugation rule.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BaseCharacter {
    pub name: String,
    pub kind: CharKind,
    pub weight: Weight,
    /// `conj(self) = base[conj.0]^conj.1`.
    pub conj: (usize, i64),
    /// Optional declared unitary part, checked against the computed one.
    pub unitary_part: Option<CharExpr>,
}
