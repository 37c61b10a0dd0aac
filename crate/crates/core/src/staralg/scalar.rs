use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::StarAlgError;

/// Complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat::real(BigRational::from_integer(n.into()))
    }

    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `|z|²`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl Zero for GaussRat {
    fn zero() -> Self {
        GaussRat::default()
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRat {
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    /// Panics on division by zero, like the rational types underneath.
    fn div(self, o: &GaussRat) -> GaussRat {
        self * &o.inv().expect("division by zero")
    }
}

impl Add for GaussRat {
    type Output = GaussRat;
    fn add(self, o: GaussRat) -> GaussRat {
        &self + &o
    }
}

impl Sub for GaussRat {
    type Output = GaussRat;
    fn sub(self, o: GaussRat) -> GaussRat {
        &self - &o
    }
}

impl Mul for GaussRat {
    type Output = GaussRat;
    fn mul(self, o: GaussRat) -> GaussRat {
        &self * &o
    }
}

impl Div for GaussRat {
    type Output = GaussRat;
    fn div(self, o: GaussRat) -> GaussRat {
        &self / &o
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{} i", self.im),
            (false, false) if self.im.is_negative() => write!(f, "{}-{} i", self.re, -self.im.clone()),
            (false, false) => write!(f, "{}+{} i", self.re, self.im),
        }
    }
}

fn parse_rational(s: &str, whole: &str) -> Result<BigRational, StarAlgError> {
    BigRational::from_str(s).map_err(|_| StarAlgError::Parse(format!("bad scalar `{whole}`")))
}

/// Accepts `a/b`, `c/d i`, `a/b+c/d i`, `a-ci`, `i`, `-i` (whitespace ignored).
impl FromStr for GaussRat {
    type Err = StarAlgError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(StarAlgError::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix('i') else {
            return Ok(GaussRat::real(parse_rational(&s, input)?));
        };
        // The imaginary part starts at the last sign that is not leading.
        let split = body.char_indices().rev().find(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i);
        let (re_part, im_part) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() { BigRational::zero() } else { parse_rational(re_part, input)? };
        let im = match im_part {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other), input)?,
        };
        Ok(GaussRat { re, im })
    }
}

impl serde::Serialize for GaussRat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for GaussRat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-1/2", "3/4 i", "-2 i", "1/2+3/4 i", "1/2-3/4 i", "-1-1 i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("i"), GaussRat::i());
        assert_eq!(g("-i"), -GaussRat::i());
        assert_eq!(g("2+i"), GaussRat::from_int(2) + GaussRat::i());
        assert_eq!(g("1/2 + 1/3i").to_string(), "1/2+1/3 i");
        assert!("x".parse::<GaussRat>().is_err());
        assert!("".parse::<GaussRat>().is_err());
        assert!("1/0".parse::<GaussRat>().is_err());
    }

    #[test]
    fn field_laws_on_samples() {
        let xs = [g("1/2+3 i"), g("-2/3 i"), g("5"), g("-1+1 i")];
        for a in &xs {
            assert_eq!(&(a * &a.inv().unwrap()), &GaussRat::one());
            assert_eq!(a.conj().conj(), *a);
            assert!((a * &a.conj()).is_real());
            for b in &xs {
                assert_eq!((a * b).conj(), &a.conj() * &b.conj());
                assert_eq!(&(&(a + b) - b), a);
                assert_eq!(&(&(a * b) / b), a);
            }
        }
        assert!(GaussRat::zero().inv().is_none());
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }
}
