//! Exact complex numbers with rational real and imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use dashu::integer::IBig;
use dashu::rational::RBig;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: RBig,
    im: RBig,
}

impl Scalar {
    pub const ZERO: Scalar = Scalar {
        re: RBig::ZERO,
        im: RBig::ZERO,
    };
    pub const ONE: Scalar = Scalar {
        re: RBig::ONE,
        im: RBig::ZERO,
    };
    pub const I: Scalar = Scalar {
        re: RBig::ZERO,
        im: RBig::ONE,
    };

    pub fn new(re: RBig, im: RBig) -> Self {
        Scalar { re, im }
    }

    pub fn real(re: RBig) -> Self {
        Scalar { re, im: RBig::ZERO }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar::real(RBig::from(v))
    }

    /// `(re_num/re_den) + i (im_num/im_den)`. Panics on a zero denominator.
    pub fn from_ratios(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Scalar {
            re: ratio(re_num, re_den),
            im: ratio(im_num, im_den),
        }
    }

    pub fn re(&self) -> &RBig {
        &self.re
    }

    pub fn im(&self) -> &RBig {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re == RBig::ZERO && self.im == RBig::ZERO
    }

    pub fn is_one(&self) -> bool {
        self.re == RBig::ONE && self.im == RBig::ZERO
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|z|²`, exact.
    pub fn norm_sq(&self) -> RBig {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64().value(), self.im.to_f64().value())
    }

    /// Parses the two-field form `re im` used by symbol files.
    pub fn parse_pair(re: &str, im: &str) -> Result<Self> {
        Ok(Scalar {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }

    /// Writes the two-field form `re im`.
    pub fn to_pair_string(&self) -> String {
        format!("{} {}", self.re, self.im)
    }
}

fn ratio(num: i64, den: i64) -> RBig {
    assert!(den != 0, "zero denominator");
    RBig::from(num) / RBig::from(den)
}

/// Parses an integer or `p/q` rational. Accepts U+2212 as a minus sign.
pub fn parse_rational(s: &str) -> Result<RBig> {
    let cleaned = s.trim().replace('\u{2212}', "-");
    let bad = || Error::Input(format!("bad rational {s:?}"));
    match cleaned.split_once('/') {
        Some((n, d)) => {
            let n: IBig = n.trim().parse().map_err(|_| bad())?;
            let d: IBig = d.trim().parse().map_err(|_| bad())?;
            if d == IBig::ZERO {
                return Err(Error::Input(format!("zero denominator in {s:?}")));
            }
            Ok(RBig::from(n) / RBig::from(d))
        }
        None => {
            let n: IBig = cleaned.parse().map_err(|_| bad())?;
            Ok(RBig::from(n))
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;

    fn add(self, rhs: Scalar) -> Scalar {
        Scalar {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        if self.im == RBig::ZERO && rhs.im == RBig::ZERO {
            return Scalar::real(&self.re * &rhs.re);
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        Scalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<RBig> for Scalar {
    fn from(v: RBig) -> Self {
        Scalar::real(v)
    }
}

/// `re+imi` / `re-|im|i`, with rationals printed as `p/q`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < RBig::ZERO {
            write!(f, "{}-{}i", self.re, -&self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('\u{2212}', "-").replace(' ', "");
        let body = t
            .strip_suffix('i')
            .ok_or_else(|| Error::Input(format!("scalar must end in 'i': {s:?}")))?;
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(p, _)| p)
            .last()
            .ok_or_else(|| {
                Error::Input(format!("scalar needs a real and an imaginary part: {s:?}"))
            })?;
        let (re, im) = body.split_at(split);
        let im = im.strip_prefix('+').unwrap_or(im);
        Ok(Scalar {
            re: parse_rational(re)?,
            im: parse_rational(im)?,
        })
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let a = Scalar::from_ratios(1, 3, 0, 1);
        let three = Scalar::from_int(3);
        assert_eq!(&a * &three, Scalar::ONE);
        let i = Scalar::I;
        assert_eq!(&i * &i, Scalar::from_int(-1));
        assert_eq!(
            &(&i + &Scalar::ONE) * &(&Scalar::ONE - &i),
            Scalar::from_int(2)
        );
    }

    #[test]
    fn conjugation_and_norm() {
        let z = Scalar::from_ratios(3, 2, -2, 1);
        assert_eq!(z.conj(), Scalar::from_ratios(3, 2, 2, 1));
        assert_eq!(z.norm_sq(), ratio(25, 4));
    }

    #[test]
    fn display_and_parse() {
        let z = Scalar::from_ratios(-3, 2, -1, 5);
        assert_eq!(z.to_string(), "-3/2-1/5i");
        assert_eq!(z.to_string().parse::<Scalar>().unwrap(), z);
        assert_eq!(Scalar::from_int(2).to_string(), "2+0i");
        assert_eq!("2+0i".parse::<Scalar>().unwrap(), Scalar::from_int(2));
        assert_eq!("0-1i".parse::<Scalar>().unwrap(), -Scalar::I);
        assert!("2".parse::<Scalar>().is_err());
    }

    #[test]
    fn pair_format() {
        let z = Scalar::parse_pair("-3/2", "4").unwrap();
        assert_eq!(z, Scalar::from_ratios(-3, 2, 4, 1));
        assert_eq!(z.to_pair_string(), "-3/2 4");
        assert!(Scalar::parse_pair("1/0", "0").is_err());
        assert!(Scalar::parse_pair("x", "0").is_err());
    }
}
