use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{DgError, Result};

/// The exact coefficient ring of a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    IntegersMod(u64),
    Rationals,
}

impl Ring {
    pub fn is_field(self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::IntegersMod(p) => is_prime(p),
        }
    }

    pub fn zero(self) -> Coefficient {
        Coefficient::from_i64(self, 0)
    }

    pub fn one(self) -> Coefficient {
        Coefficient::from_i64(self, 1)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u64;
    while q.saturating_mul(q) <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::IntegersMod(p) => write!(f, "Zmod:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = DgError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            _ => {
                let p = s
                    .strip_prefix("Zmod:")
                    .ok_or_else(|| DgError::Invalid(format!("unknown ring {s}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| DgError::Invalid(format!("bad modulus in {s}")))?;
                if p < 2 {
                    return Err(DgError::Invalid(format!("modulus must be at least 2: {s}")));
                }
                Ok(Ring::IntegersMod(p))
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An element of an exact commutative ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Int(BigInt),
    Mod { value: u64, modulus: u64 },
    Rat(BigRational),
}

impl Coefficient {
    pub fn from_i64(ring: Ring, v: i64) -> Self {
        match ring {
            Ring::Integers => Coefficient::Int(BigInt::from(v)),
            Ring::Rationals => Coefficient::Rat(BigRational::from_integer(BigInt::from(v))),
            Ring::IntegersMod(p) => Coefficient::Mod {
                value: (v as i128).rem_euclid(p as i128) as u64,
                modulus: p,
            },
        }
    }

    /// Image of an integer-valued rational in `ring`, failing when the denominator is not a unit.
    pub fn from_rational(ring: Ring, q: &BigRational) -> Result<Self> {
        match ring {
            Ring::Rationals => Ok(Coefficient::Rat(q.clone())),
            Ring::Integers => {
                if q.is_integer() {
                    Ok(Coefficient::Int(q.to_integer()))
                } else {
                    Err(DgError::Invalid(format!("{q} is not an integer")))
                }
            }
            Ring::IntegersMod(p) => {
                let num = reduce_big(q.numer(), p);
                let den = reduce_big(q.denom(), p);
                let inv = mod_inverse(den, p)
                    .ok_or_else(|| DgError::NotUnit(format!("{} mod {p}", q.denom())))?;
                Ok(Coefficient::Mod {
                    value: mul_mod(num, inv, p),
                    modulus: p,
                })
            }
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Coefficient::Int(_) => Ring::Integers,
            Coefficient::Rat(_) => Ring::Rationals,
            Coefficient::Mod { modulus, .. } => Ring::IntegersMod(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_zero(),
            Coefficient::Rat(v) => v.is_zero(),
            Coefficient::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_one(),
            Coefficient::Rat(v) => v.is_one(),
            Coefficient::Mod { value, .. } => *value == 1,
        }
    }

    /// True when the value is -1 in its ring.
    pub fn is_minus_one(&self) -> bool {
        self.neg().is_one()
    }

    pub fn neg(&self) -> Self {
        match self {
            Coefficient::Int(v) => Coefficient::Int(-v),
            Coefficient::Rat(v) => Coefficient::Rat(-v),
            Coefficient::Mod { value, modulus } => Coefficient::Mod {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn check(&self, other: &Self) {
        debug_assert_eq!(self.ring(), other.ring(), "mixed coefficient rings");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a + b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a + b),
            (Coefficient::Mod { value: a, modulus }, Coefficient::Mod { value: b, .. }) => {
                Coefficient::Mod {
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed coefficient rings"),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        match (self, other) {
            (Coefficient::Int(a), Coefficient::Int(b)) => Coefficient::Int(a * b),
            (Coefficient::Rat(a), Coefficient::Rat(b)) => Coefficient::Rat(a * b),
            (Coefficient::Mod { value: a, modulus }, Coefficient::Mod { value: b, .. }) => {
                Coefficient::Mod {
                    value: mul_mod(*a, *b, *modulus),
                    modulus: *modulus,
                }
            }
            _ => panic!("mixed coefficient rings"),
        }
    }

    /// Multiplicative inverse when the value is a unit.
    pub fn inverse(&self) -> Option<Self> {
        match self {
            Coefficient::Int(v) => {
                if v.is_one() || (-v).is_one() {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Coefficient::Rat(v) => {
                if v.is_zero() {
                    None
                } else {
                    Some(Coefficient::Rat(v.recip()))
                }
            }
            Coefficient::Mod { value, modulus } => {
                mod_inverse(*value, *modulus).map(|value| Coefficient::Mod {
                    value,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    /// `(-1)^k` in `ring`.
    pub fn sign(ring: Ring, k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            ring.one()
        } else {
            ring.one().neg()
        }
    }

    /// The exact value as a rational number; modular values use their representative in [0, p).
    pub fn to_rational(&self) -> BigRational {
        match self {
            Coefficient::Int(v) => BigRational::from_integer(v.clone()),
            Coefficient::Rat(v) => v.clone(),
            Coefficient::Mod { value, .. } => BigRational::from_integer(BigInt::from(*value)),
        }
    }

    /// Parses a value such as `3`, `-2`, `5/7` into `ring`.
    pub fn parse(ring: Ring, s: &str) -> Result<Self> {
        let bad = || DgError::Invalid(format!("bad coefficient {s}"));
        let q = if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)
        };
        Coefficient::from_rational(ring, &q)
    }

    /// Value as an `i64` when it fits; modular values give their representative.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coefficient::Int(v) => v.to_i64(),
            Coefficient::Rat(v) if v.is_integer() => v.to_integer().to_i64(),
            Coefficient::Rat(_) => None,
            Coefficient::Mod { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Int(v) => v.is_negative(),
            Coefficient::Rat(v) => v.is_negative(),
            Coefficient::Mod { .. } => false,
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Int(v) => write!(f, "{v}"),
            Coefficient::Rat(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Coefficient::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

fn reduce_big(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("reduced value fits")
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(p as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(p as i128) as u64)
}
