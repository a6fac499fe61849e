//! Gaussian rationals `a + b i` with arbitrary-precision rational parts.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of the field `Q(i)`.
///
/// Both parts are kept in lowest terms with a positive denominator, so
/// structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar(Complex<BigRational>);

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar(Complex::new(re, im))
    }

    pub fn zero() -> Self {
        Scalar(Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(Complex::new(BigRational::from_integer(n.into()), BigRational::zero()))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(Complex::new(BigRational::new(num.into(), den.into()), BigRational::zero()))
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar(Complex::new(BigRational::from_integer(re.into()), BigRational::from_integer(im.into())))
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.re.is_one() && self.0.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar(self.0.conj())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.0.im.is_zero() {
            return Some(Scalar(Complex::new(self.0.re.recip(), BigRational::zero())));
        }
        let norm = &self.0.re * &self.0.re + &self.0.im * &self.0.im;
        Some(Scalar(Complex::new(&self.0.re / &norm, -(&self.0.im / &norm))))
    }

    /// `Some(n)` when the value is an integer that fits into `i64`.
    pub fn as_integer(&self) -> Option<i64> {
        use num_traits::ToPrimitive;
        if !self.0.im.is_zero() || !self.0.re.is_integer() {
            return None;
        }
        self.0.re.to_integer().to_i64()
    }

    fn mul_ref(&self, rhs: &Scalar) -> Scalar {
        // Real operands dominate every model; skip the full complex product for them.
        match (self.0.im.is_zero(), rhs.0.im.is_zero()) {
            (true, true) => Scalar(Complex::new(&self.0.re * &rhs.0.re, BigRational::zero())),
            (true, false) => Scalar(Complex::new(&self.0.re * &rhs.0.re, &self.0.re * &rhs.0.im)),
            (false, true) => Scalar(Complex::new(&self.0.re * &rhs.0.re, &self.0.im * &rhs.0.re)),
            (false, false) => Scalar(&self.0 * &rhs.0),
        }
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        if im.is_zero() {
            return fmt_rational(re, f);
        }
        if !re.is_zero() {
            fmt_rational(re, f)?;
            if im.is_positive() {
                write!(f, "+")?;
            }
        }
        if im.is_one() {
            write!(f, "i")
        } else if (-im).is_one() {
            write!(f, "-i")
        } else {
            fmt_rational(im, f)?;
            write!(f, "*i")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when a scalar literal is malformed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed scalar at offset {offset}: {message}")]
pub struct ScalarParseError {
    pub offset: usize,
    pub message: String,
}

struct LiteralCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> LiteralCursor<'a> {
    fn err(&self, message: &str) -> ScalarParseError {
        ScalarParseError { offset: self.pos, message: message.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        std::str::from_utf8(&self.bytes[start..self.pos]).ok()?.parse().ok()
    }

    /// `int ['/' posint]`
    fn rational(&mut self) -> Result<Option<BigRational>, ScalarParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let den = self.digits().ok_or_else(|| self.err("expected denominator digits"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(BigRational::new(num, den)))
        } else {
            Ok(Some(BigRational::from_integer(num)))
        }
    }

    /// Parses one signed term; returns (value, is_imaginary).
    fn term(&mut self, leading: bool) -> Result<(BigRational, bool), ScalarParseError> {
        let mut negative = false;
        match self.peek() {
            Some(b'+') => self.pos += 1,
            Some(b'-') => {
                negative = true;
                self.pos += 1
            }
            _ if !leading => return Err(self.err("expected '+' or '-'")),
            _ => {}
        }
        let value = self.rational()?;
        let imaginary = match (value.is_some(), self.peek()) {
            (true, Some(b'*')) => {
                self.pos += 1;
                if self.peek() != Some(b'i') {
                    return Err(self.err("expected 'i' after '*'"));
                }
                self.pos += 1;
                true
            }
            (false, Some(b'i')) => {
                self.pos += 1;
                true
            }
            (true, _) => false,
            (false, _) => return Err(self.err("expected a number or 'i'")),
        };
        let mut v = value.unwrap_or_else(BigRational::one);
        if negative {
            v = -v;
        }
        Ok((v, imaginary))
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;

    /// Accepts `a/b+c/d*i` with either part optional, e.g. `3`, `-1/2`, `i`,
    /// `-2*i`, `1+i`, `1/2-3/4*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut cur = LiteralCursor { bytes: s.as_bytes(), pos: 0 };
        if s.is_empty() {
            return Err(cur.err("empty literal"));
        }
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let (mut seen_re, mut seen_im) = (false, false);
        let mut leading = true;
        while cur.pos < cur.bytes.len() {
            let at = cur.pos;
            let (v, imaginary) = cur.term(leading)?;
            leading = false;
            if imaginary {
                if seen_im {
                    return Err(ScalarParseError { offset: at, message: "duplicate imaginary part".into() });
                }
                seen_im = true;
                im = v;
            } else {
                if seen_re || seen_im {
                    return Err(ScalarParseError { offset: at, message: "real part must come first".into() });
                }
                seen_re = true;
                re = v;
            }
        }
        Ok(Scalar::new(re, im))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0.clone())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else {
        Scalar(&a.0 + &b.0)
    }
});
forward_binop!(Sub, sub, |a, b| {
    if b.is_zero() {
        a.clone()
    } else {
        Scalar(&a.0 - &b.0)
    }
});
forward_binop!(Mul, mul, |a, b| {
    if a.is_zero() || b.is_zero() {
        Scalar::zero()
    } else if a.is_one() {
        b.clone()
    } else if b.is_one() {
        a.clone()
    } else {
        a.mul_ref(b)
    }
});
forward_binop!(Div, div, |a, b| {
    let inv = b.inv().expect("division by zero scalar");
    a * &inv
});

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if !rhs.is_zero() {
            self.0 = &self.0 + &rhs.0;
        }
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self += &rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if !rhs.is_zero() {
            self.0 = &self.0 - &rhs.0;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn parses_all_literal_shapes() {
        assert_eq!(s("3"), Scalar::from_int(3));
        assert_eq!(s("-1/2"), Scalar::from_ratio(-1, 2));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("2*i"), Scalar::gaussian(0, 2));
        assert_eq!(s("1+i"), Scalar::gaussian(1, 1));
        assert_eq!(
            s("1/2-3/4*i"),
            Scalar::new(BigRational::new(1.into(), 2.into()), BigRational::new((-3).into(), 4.into()))
        );
        assert_eq!(s("2/4"), Scalar::from_ratio(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        let e = "1//2".parse::<Scalar>().unwrap_err();
        assert_eq!(e.offset, 2);
        assert!("".parse::<Scalar>().is_err());
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("i+1".parse::<Scalar>().is_err());
        assert!("2*".parse::<Scalar>().is_err());
        assert!("1+i+i".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["0", "3", "-1/2", "i", "-i", "1+i", "1/2-3/4*i", "-5/3*i"] {
            assert_eq!(s(text).to_string(), text);
            assert_eq!(s(&s(text).to_string()), s(text));
        }
    }

    #[test]
    fn field_arithmetic_is_exact() {
        let a = s("1/3+2*i");
        let b = s("-3/7+1/5*i");
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
        assert_eq!(&s("i") * &s("i"), Scalar::from_int(-1));
        assert_eq!((&a + &b) - &b, a);
        assert!(Scalar::zero().inv().is_none());
        assert_eq!(a.conj().conj(), a);
    }
}
