//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// The coefficient field all scalars of a computation live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// The rationals, with arbitrary-precision numerators and denominators.
    Rational,
    /// The prime field of the given order (`p < 2^31`).
    Prime(u32),
}

impl Field {
    /// Builds a prime field, rejecting composite or oversized moduli.
    pub fn prime(p: u32) -> Result<Self, LinalgError> {
        if !(2..(1 << 31)).contains(&p) || !is_prime(p) {
            return Err(LinalgError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// Maps an exact rational into this field. Fails over `F_p` when `p` divides the denominator.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, LinalgError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let num = reduce(q.numer(), p);
                let den = reduce(q.denom(), p);
                if den == 0 {
                    return Err(LinalgError::Parse(format!("denominator of {q} vanishes mod {p}")));
                }
                Ok(Scalar::Residue {
                    value: mul_mod(num, inv_mod(den, p), p),
                    modulus: p,
                })
            }
        }
    }

    /// Parses `"n"`, `"p/q"` or `"n mod p"` into this field.
    pub fn parse(self, text: &str) -> Result<Scalar, LinalgError> {
        let text = text.trim();
        if let Some((value, modulus)) = text.split_once("mod") {
            let modulus: u32 = modulus
                .trim()
                .parse()
                .map_err(|_| LinalgError::Parse(format!("bad modulus in {text:?}")))?;
            if self != Field::Prime(modulus) {
                return Err(LinalgError::FieldMismatch);
            }
            return self.parse(value);
        }
        let q: BigRational = match text.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n
                    .trim()
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("bad numerator in {text:?}")))?;
                let d: BigInt = d
                    .trim()
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("bad denominator in {text:?}")))?;
                if d.is_zero() {
                    return Err(LinalgError::Parse(format!("zero denominator in {text:?}")));
                }
                BigRational::new(n, d)
            }
            None => {
                let n: BigInt = text
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("not an exact scalar: {text:?}")))?;
                BigRational::from_integer(n)
            }
        };
        self.from_rational(&q)
    }

    /// Whether the scalar belongs to this field instance.
    pub fn contains(self, s: &Scalar) -> bool {
        match (self, s) {
            (Field::Rational, Scalar::Rational(_)) => true,
            (Field::Prime(p), Scalar::Residue { value, modulus }) => *modulus == p && *value < p,
            _ => false,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An element of a [`Field`].
///
/// Rationals are kept in lowest terms with a positive denominator (the
/// `BigRational` normal form); residues lie in `[0, modulus)`. Arithmetic
/// between scalars of different fields is a logic error and panics; matrices
/// check field membership at construction so this never happens on validated
/// data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inv_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    /// Small-integer view, used when a scalar is known to be a dimension count or sign.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Residue { value, .. } => Some(*value as i64),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("scalar field mismatch: {} vs {}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32,
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus: p }, Scalar::Residue { value: b, modulus: q }) if p == q => {
                Scalar::Residue {
                    value: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

fn reduce(n: &BigInt, p: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(p));
    r.abs().to_u32().expect("residue fits in u32")
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // a^(p-2) by square-and-multiply
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

fn is_prime(p: u32) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_normalize() {
        let q = Field::Rational;
        let x = q.parse("6/-4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!(q.parse(" 4/2 ").unwrap().to_string(), "2");
    }

    #[test]
    fn residues_stay_in_range() {
        let f = Field::prime(7).unwrap();
        let x = f.from_i64(-1);
        assert_eq!(x, Scalar::Residue { value: 6, modulus: 7 });
        assert_eq!(f.parse("3/4").unwrap(), f.from_i64(6)); // 4 * 6 = 24 = 3 mod 7
        assert_eq!(f.parse("5 mod 7").unwrap(), f.from_i64(5));
        assert!((&x * &x.inv().unwrap()).is_one());
        assert_eq!((-&f.zero()), f.zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Field::prime(8).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Rational.parse("x").is_err());
        assert!(Field::prime(5).unwrap().parse("1/5").is_err());
        assert!(matches!(
            Field::Rational.parse("1 mod 5"),
            Err(LinalgError::FieldMismatch)
        ));
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixed_arithmetic_panics() {
        let _ = &Field::Rational.one() + &Field::Prime(3).one();
    }
}
